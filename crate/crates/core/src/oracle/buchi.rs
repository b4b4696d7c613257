//! Qualitative Büchi games, solved by nested attractors.

use crate::arena::Player;
use crate::product::{ProductArena, VertexSet};

/// A bare game graph: owners, successors and predecessors by index.
#[derive(Debug, Clone, Default)]
pub(crate) struct GameGraph {
    pub owner: Vec<Player>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
}

impl GameGraph {
    pub fn from_edges(owner: Vec<Player>, succ: Vec<Vec<usize>>) -> Self {
        let mut pred = vec![Vec::new(); owner.len()];
        for (u, list) in succ.iter().enumerate() {
            for &t in list {
                pred[t].push(u);
            }
        }
        GameGraph { owner, succ, pred }
    }

    pub fn from_product(product: &ProductArena) -> Self {
        let a = product.arena();
        let owner = a.vertices().map(|v| a.owner(v)).collect();
        let succ = a
            .vertices()
            .map(|v| a.successors(v).iter().map(|&(t, _)| t.index()).collect())
            .collect();
        GameGraph::from_edges(owner, succ)
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    /// Vertices of `within` from which `player` forces a visit to `target`
    /// while staying in `within`.
    fn attractor(&self, player: Player, target: &[bool], within: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut attr = vec![false; n];
        let mut count: Vec<usize> = (0..n)
            .map(|u| self.succ[u].iter().filter(|&&t| within[t]).count())
            .collect();
        let mut stack = Vec::new();
        for u in 0..n {
            if within[u] && target[u] {
                attr[u] = true;
                stack.push(u);
            }
        }
        while let Some(t) = stack.pop() {
            for &u in &self.pred[t] {
                if !within[u] || attr[u] {
                    continue;
                }
                let join = if self.owner[u] == player {
                    true
                } else {
                    count[u] -= 1;
                    count[u] == 0
                };
                if join {
                    attr[u] = true;
                    stack.push(u);
                }
            }
        }
        attr
    }

    /// Where Player 0 can force infinitely many visits to `goal`.
    pub fn buchi(&self, goal: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut current = vec![true; n];
        loop {
            let reach = self.attractor(Player::Zero, goal, &current);
            let trap: Vec<bool> = (0..n).map(|u| current[u] && !reach[u]).collect();
            if !trap.iter().any(|&b| b) {
                return current;
            }
            let lost = self.attractor(Player::One, &trap, &current);
            for u in 0..n {
                current[u] &= !lost[u];
            }
        }
    }
}

/// Player 0's winning region for "visit `goal` infinitely often"; weights
/// are ignored.
pub fn buchi_attractor(product: &ProductArena, goal: &VertexSet) -> VertexSet {
    let g = GameGraph::from_product(product);
    let goal: Vec<bool> = (0..g.len()).map(|i| goal.contains(i.into())).collect();
    let win = g.buchi(&goal);
    VertexSet::from_fn(win.len(), |i| win[i])
}
