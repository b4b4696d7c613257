//! Exact values of fixed strategies, computed on the restricted graph.
//!
//! Player 0 strategies are valued by the supremum over consistent plays,
//! Player 1 strategies by the infimum.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arena::{Arena, Player, VertexId};
use crate::dfa::Dfa;
use crate::error::GameError;
use crate::memory::MemoryStructure;
use crate::product::ProductArena;
use crate::strategy::{lift_to_product, restrict, FiniteStateStrategy, RestrictedGraph};
use crate::weight::ExtWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// `val_G`: the heaviest gap between consecutive goal visits.
    Limit,
    /// `val^R`: the weight up to the first goal visit.
    Reach,
}

struct Graph<'a> {
    g: &'a RestrictedGraph,
    goal: Vec<bool>,
}

impl Graph<'_> {
    fn len(&self) -> usize {
        self.g.len()
    }

    /// Whether a cycle avoiding the goal lies among `allowed` nodes.
    fn has_goal_free_cycle(&self, allowed: &[bool]) -> bool {
        // Iterative three-color DFS over non-goal allowed nodes.
        let n = self.len();
        let mut color = vec![0u8; n];
        for root in 0..n {
            if color[root] != 0 || !allowed[root] || self.goal[root] {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (u, ref mut i)) = stack.last_mut() {
                if let Some(&(t, _)) = self.g.succ[u].get(*i) {
                    *i += 1;
                    if !allowed[t] || self.goal[t] {
                        continue;
                    }
                    match color[t] {
                        0 => {
                            color[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    color[u] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    /// Longest weight from each root to the next goal node strictly later.
    /// The goal-free part reachable from the roots must be acyclic.
    fn longest_to_goal(&self, roots: impl IntoIterator<Item = usize>) -> Vec<Option<ExtWeight>> {
        let mut memo: Vec<Option<ExtWeight>> = vec![None; self.len()];
        for root in roots {
            if memo[root].is_some() {
                continue;
            }
            // Post-order DFS: a node is finished once all non-goal successors are.
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (u, ref mut i)) = stack.last_mut() {
                if let Some(&(t, _)) = self.g.succ[u].get(*i) {
                    *i += 1;
                    if !self.goal[t] && memo[t].is_none() {
                        stack.push((t, 0));
                    }
                    continue;
                }
                let best = self.g.succ[u]
                    .iter()
                    .map(|&(t, w)| {
                        let rest = if self.goal[t] {
                            ExtWeight::ZERO
                        } else {
                            memo[t].expect("acyclic")
                        };
                        rest.checked_add(w).unwrap_or(ExtWeight::INFINITY)
                    })
                    .max()
                    .unwrap_or(ExtWeight::ZERO);
                memo[u] = Some(best);
                stack.pop();
            }
        }
        memo
    }

    /// Shortest weights from `source` to goal nodes, at least one step,
    /// passing only through non-goal nodes.
    fn shortest_segments(&self, source: usize) -> Vec<ExtWeight> {
        let n = self.len();
        let mut dist = vec![ExtWeight::INFINITY; n];
        let mut heap = BinaryHeap::new();
        let relax = |u: usize, d: ExtWeight, dist: &mut Vec<ExtWeight>, heap: &mut BinaryHeap<_>| {
            for &(t, w) in &self.g.succ[u] {
                let x = d.checked_add(w).unwrap_or(ExtWeight::INFINITY);
                if x < dist[t] {
                    dist[t] = x;
                    heap.push(Reverse((x, t)));
                }
            }
        };
        relax(source, ExtWeight::ZERO, &mut dist, &mut heap);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] || self.goal[u] {
                continue;
            }
            relax(u, d, &mut dist, &mut heap);
        }
        (0..n)
            .map(|t| if self.goal[t] { dist[t] } else { ExtWeight::INFINITY })
            .collect()
    }

    fn reachable_avoiding_goal(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            if self.goal[u] {
                continue;
            }
            for &(t, _) in &self.g.succ[u] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn sup_limit(&self) -> ExtWeight {
        if self.has_goal_free_cycle(&vec![true; self.len()]) {
            return ExtWeight::INFINITY;
        }
        self.longest_to_goal(0..self.len())
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(ExtWeight::ZERO)
    }

    fn sup_reach(&self, start: usize) -> ExtWeight {
        if self.goal[start] {
            return ExtWeight::ZERO;
        }
        let allowed = self.reachable_avoiding_goal(start);
        if self.has_goal_free_cycle(&allowed) {
            return ExtWeight::INFINITY;
        }
        self.longest_to_goal([start])[start].expect("root is solved")
    }

    fn inf_reach(&self, start: usize) -> ExtWeight {
        if self.goal[start] {
            return ExtWeight::ZERO;
        }
        self.shortest_segments(start)
            .into_iter()
            .min()
            .unwrap_or(ExtWeight::INFINITY)
    }

    /// Least `b` such that a play from `start` keeps every gap at most `b`
    /// and visits the goal infinitely often.
    fn inf_limit(&self, start: usize) -> ExtWeight {
        let n = self.len();
        // Segment graph on {start} ∪ goal nodes.
        let sources: Vec<usize> = std::iter::once(start)
            .chain((0..n).filter(|&u| self.goal[u] && u != start))
            .collect();
        let seg: Vec<Vec<ExtWeight>> = sources.iter().map(|&s| self.shortest_segments(s)).collect();
        let mut candidates: Vec<ExtWeight> = seg
            .iter()
            .flatten()
            .copied()
            .filter(|x| x.is_finite())
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let slot = |u: usize| sources.iter().position(|&s| s == u);
        let k = sources.len();
        for b in candidates {
            // Segment edges within budget, between slots.
            let adj: Vec<Vec<usize>> = seg
                .iter()
                .map(|row| (0..n).filter(|&t| row[t] <= b).filter_map(slot).collect())
                .collect();
            let mut reach = vec![false; k];
            let mut stack = vec![0usize];
            reach[0] = true;
            while let Some(i) = stack.pop() {
                for &j in &adj[i] {
                    if !reach[j] {
                        reach[j] = true;
                        stack.push(j);
                    }
                }
            }
            // Some reachable goal node lies on a budget cycle.
            for i in (0..k).filter(|&i| reach[i] && self.goal[sources[i]]) {
                let mut seen = vec![false; k];
                let mut stack = adj[i].clone();
                while let Some(j) = stack.pop() {
                    if j == i {
                        return b;
                    }
                    if !seen[j] {
                        seen[j] = true;
                        stack.extend_from_slice(&adj[j]);
                    }
                }
            }
        }
        ExtWeight::INFINITY
    }
}

/// Value of a strategy on the product arena itself from product vertex
/// `start`.
pub fn evaluate_on_product(
    product: &ProductArena,
    strategy: &FiniteStateStrategy,
    start: VertexId,
    objective: Objective,
) -> Result<ExtWeight, GameError> {
    let g = restrict(product.arena(), strategy, &[start])?;
    let goal = g.configs.iter().map(|&(v, _)| product.goal().contains(v)).collect();
    let graph = Graph { g: &g, goal };
    let s = g.starts[0];
    Ok(match (strategy.player(), objective) {
        (Player::Zero, Objective::Limit) => graph.sup_limit(),
        (Player::Zero, Objective::Reach) => graph.sup_reach(s),
        (Player::One, Objective::Limit) => graph.inf_limit(s),
        (Player::One, Objective::Reach) => graph.inf_reach(s),
    })
}

/// Values of a base-arena strategy from every base vertex, each play
/// starting in `(v, init(v))`.
pub fn evaluate_base_strategy(
    product: &ProductArena,
    memory: &MemoryStructure,
    strategy: &FiniteStateStrategy,
    objective: Objective,
) -> Result<Vec<ExtWeight>, GameError> {
    let lifted = lift_to_product(product, strategy)?;
    product
        .base()
        .vertices()
        .map(|v| evaluate_on_product(product, &lifted, product.initial_vertex(memory, v), objective))
        .collect()
}

fn evaluate_for(
    player: Player,
    arena: &Arena,
    dfa: &Dfa,
    strategy: &FiniteStateStrategy,
    v: VertexId,
) -> Result<ExtWeight, GameError> {
    if strategy.player() != player {
        return Err(GameError::PlayerMismatch);
    }
    let (product, memory) = ProductArena::from_dfa(arena, dfa)?;
    let lifted = lift_to_product(&product, strategy)?;
    evaluate_on_product(&product, &lifted, product.initial_vertex(&memory, v), Objective::Limit)
}

/// `sup` of `val_G` over plays from `v` consistent with a Player 0 strategy.
pub fn evaluate_strategy_value_p0(
    arena: &Arena,
    dfa: &Dfa,
    strategy: &FiniteStateStrategy,
    v: VertexId,
) -> Result<ExtWeight, GameError> {
    evaluate_for(Player::Zero, arena, dfa, strategy, v)
}

/// `inf` of `val_G` over plays from `v` consistent with a Player 1 strategy.
pub fn evaluate_strategy_value_p1(
    arena: &Arena,
    dfa: &Dfa,
    strategy: &FiniteStateStrategy,
    v: VertexId,
) -> Result<ExtWeight, GameError> {
    evaluate_for(Player::One, arena, dfa, strategy, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ArenaBuilder;
    use crate::product::VertexSet;
    use crate::reach::{positional_reach_p0, solve_reach};
    use crate::samples::{figure2, figure3};

    #[test]
    fn figure2_sigma_reach_value() {
        let p = figure2();
        let sol = solve_reach(&p, p.goal()).unwrap();
        let sigma = positional_reach_p0(&p, &sol).unwrap();
        let got = evaluate_on_product(&p, &sigma, VertexId(4), Objective::Reach).unwrap();
        assert_eq!(got, ExtWeight::from(11));
    }

    #[test]
    fn goal_self_loop_costs_its_weight() {
        let mut b = ArenaBuilder::new();
        let x = b.vertex("x", Player::Zero, "a");
        b.edge(x, x, 3);
        let arena = b.build().unwrap();
        let p = ProductArena::with_goal(arena.clone(), VertexSet::full(1)).unwrap();
        let sigma = FiniteStateStrategy::positional(&arena, Player::Zero, vec![Some(x)]).unwrap();
        assert_eq!(
            evaluate_on_product(&p, &sigma, x, Objective::Limit).unwrap(),
            ExtWeight::from(3)
        );
    }

    #[test]
    fn figure3_unique_play_from_v0() {
        let p = figure3();
        let a = p.arena();
        let choice = a
            .vertices()
            .map(|v| (a.owner(v) == Player::One).then(|| a.successors(v)[0].0))
            .collect();
        let tau = FiniteStateStrategy::positional(a, Player::One, choice).unwrap();
        assert_eq!(
            evaluate_on_product(&p, &tau, VertexId(0), Objective::Limit).unwrap(),
            ExtWeight::from(4)
        );
        // From v2 every play ends in the goal-free loop at v4.
        assert_eq!(
            evaluate_on_product(&p, &tau, VertexId(2), Objective::Limit).unwrap(),
            ExtWeight::INFINITY
        );
    }

    #[test]
    fn wrong_player_is_rejected() {
        let (arena, dfa) = crate::samples::figure3_instance();
        let choice = arena
            .vertices()
            .map(|v| (arena.owner(v) == Player::One).then(|| arena.successors(v)[0].0))
            .collect();
        let tau = FiniteStateStrategy::positional(&arena, Player::One, choice).unwrap();
        assert_eq!(
            evaluate_strategy_value_p0(&arena, &dfa, &tau, VertexId(0)),
            Err(GameError::PlayerMismatch)
        );
        assert_eq!(
            evaluate_strategy_value_p1(&arena, &dfa, &tau, VertexId(0)).unwrap(),
            ExtWeight::from(4)
        );
    }
}
