//! Weighted reachability games: the least fixed point of `ℓ_{F'}`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arena::{Arena, Player, VertexId};
use crate::error::GameError;
use crate::memory::MemoryStructure;
use crate::product::{ProductArena, VertexSet};
use crate::ranking::{first_stable_index, Ranking};
use crate::strategy::{compose_memory, FiniteStateStrategy};
use crate::weight::{ExtWeight, Overflow};

/// The iteration from the all-∞ ranking, kept in full.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachSolution {
    pub fixpoint: Ranking,
    /// `trace[0]` is all-∞ and the last two entries are equal.
    pub trace: Vec<Ranking>,
    pub settling: Vec<usize>,
    pub goal: VertexSet,
}

/// A least fixed point together with a well-founded order witnessing it.
///
/// For every finite non-goal Player 0 vertex there is an optimal successor
/// with strictly smaller `order`; following those reaches the goal. Goal
/// vertices and ∞-ranked vertices have the smallest orders of their class
/// (1 and 0 respectively when built from settling times).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSolution {
    pub values: Ranking,
    pub order: Vec<usize>,
}

impl From<&ReachSolution> for LevelSolution {
    fn from(s: &ReachSolution) -> Self {
        LevelSolution {
            values: s.fixpoint.clone(),
            order: s.settling.clone(),
        }
    }
}

/// Min (Player 0) or max (Player 1) of `w + r(s)` over successors.
pub(crate) fn best_step(arena: &Arena, r: &Ranking, v: VertexId) -> Result<ExtWeight, Overflow> {
    let mut vals = arena
        .successors(v)
        .iter()
        .map(|&(s, w)| r[s].checked_add(w));
    let first = vals.next().expect("every vertex has a successor")?;
    vals.try_fold(first, |acc, x| {
        let x = x?;
        Ok(match arena.owner(v) {
            Player::Zero => acc.min(x),
            Player::One => acc.max(x),
        })
    })
}

/// One application of `ℓ_{F'}`.
pub fn lift_reach(
    r: &Ranking,
    goal: &VertexSet,
    product: &ProductArena,
) -> Result<Ranking, Overflow> {
    let arena = product.arena();
    let mut out = r.clone();
    for v in arena.vertices() {
        out[v] = if goal.contains(v) {
            ExtWeight::ZERO
        } else {
            r[v].min(best_step(arena, r, v)?)
        };
    }
    Ok(out)
}

/// Iterates [`lift_reach`] from all-∞ until two consecutive rankings agree.
pub fn solve_reach(product: &ProductArena, goal: &VertexSet) -> Result<ReachSolution, GameError> {
    let n = product.num_vertices();
    if goal.universe() != n {
        return Err(GameError::ArenaMismatch("goal set does not match the arena".into()));
    }
    let bound = n + 1;
    let mut trace = vec![Ranking::constant(n, ExtWeight::INFINITY)];
    loop {
        let next = lift_reach(trace.last().expect("nonempty"), goal, product)?;
        let done = &next == trace.last().expect("nonempty");
        trace.push(next);
        if done {
            break;
        }
        // A still-changing ranking may not lie beyond index `bound`.
        if trace.len() - 1 > bound {
            return Err(GameError::IterationBound {
                solver: "reachability iteration",
                bound,
            });
        }
    }
    let fixpoint = trace.last().expect("nonempty").clone();
    let settling = first_stable_index(&trace, &fixpoint);
    Ok(ReachSolution {
        fixpoint,
        trace,
        settling,
        goal: goal.clone(),
    })
}

pub fn settling_times(solution: &ReachSolution) -> &[usize] {
    &solution.settling
}

/// The same least fixed point by a Dijkstra-style sweep.
///
/// A Player 0 vertex is settled at its smallest tentative value; a Player 1
/// vertex once all successors are settled. `order` is the settle position
/// (goal vertices first, starting at 1; 0 for unreachable vertices).
pub fn reach_fixpoint_dijkstra(
    product: &ProductArena,
    goal: &VertexSet,
) -> Result<LevelSolution, Overflow> {
    let arena = product.arena();
    let n = arena.num_vertices();
    let mut dist = vec![ExtWeight::INFINITY; n];
    let mut order = vec![0usize; n];
    let mut done = vec![false; n];
    let mut pending: Vec<usize> = arena.vertices().map(|v| arena.successors(v).len()).collect();
    let mut worst = vec![ExtWeight::ZERO; n];
    let mut heap = BinaryHeap::new();
    for v in goal.iter() {
        dist[v.index()] = ExtWeight::ZERO;
        heap.push(Reverse((ExtWeight::ZERO, v.0)));
    }
    let mut settled = 0;
    while let Some(Reverse((d, v))) = heap.pop() {
        let v = VertexId(v);
        if done[v.index()] {
            continue;
        }
        done[v.index()] = true;
        settled += 1;
        order[v.index()] = settled;
        for &(u, w) in arena.predecessors(v) {
            let i = u.index();
            if done[i] || goal.contains(u) {
                continue;
            }
            let cand = d.checked_add(w)?;
            match arena.owner(u) {
                Player::Zero => {
                    if cand < dist[i] {
                        dist[i] = cand;
                        heap.push(Reverse((cand, u.0)));
                    }
                }
                Player::One => {
                    worst[i] = worst[i].max(cand);
                    pending[i] -= 1;
                    if pending[i] == 0 {
                        dist[i] = worst[i];
                        heap.push(Reverse((worst[i], u.0)));
                    }
                }
            }
        }
    }
    Ok(LevelSolution {
        values: Ranking::from_values(dist),
        order,
    })
}

/// `cmplt_{F'}(r)`: goal vertices take the cost of reaching the goal once
/// more; other vertices keep their rank.
pub fn completion(
    r: &Ranking,
    goal: &VertexSet,
    product: &ProductArena,
) -> Result<Ranking, Overflow> {
    let arena = product.arena();
    let mut out = r.clone();
    for v in goal.iter() {
        out[v] = best_step(arena, r, v)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccessorMode {
    /// Player 0 vertices with finite rank also need `t_s(v) = t_s(v̄) + 1`.
    Strict,
    Relaxed,
}

/// First successor `s` (by index) with `target = w + r(s)` and `extra(s)`.
pub(crate) fn first_successor_where(
    arena: &Arena,
    r: &Ranking,
    v: VertexId,
    target: ExtWeight,
    mut extra: impl FnMut(VertexId) -> bool,
) -> Option<VertexId> {
    arena
        .successors(v)
        .iter()
        .find(|&&(s, w)| r[s].checked_add(w).ok() == Some(target) && extra(s))
        .map(|&(s, _)| s)
}

/// A successor `v̄` with `r*(v) = w(v, v̄) + r*(v̄)`, smallest index first.
pub fn optimal_successor(
    product: &ProductArena,
    solution: &ReachSolution,
    v: VertexId,
    mode: SuccessorMode,
) -> Result<VertexId, GameError> {
    let arena = product.arena();
    let r = &solution.fixpoint;
    let t = &solution.settling;
    let strict = mode == SuccessorMode::Strict
        && arena.owner(v) == Player::Zero
        && r[v].is_finite();
    first_successor_where(arena, r, v, r[v], |s| {
        !strict || t[v.index()] == t[s.index()] + 1
    })
    .ok_or_else(|| GameError::NoOptimalSuccessor(arena.name(v).to_string()))
}

fn smallest_successor(arena: &Arena, v: VertexId) -> VertexId {
    arena.successors(v)[0].0
}

/// The positional strategy `σ'` on the product.
pub fn positional_reach_p0(
    product: &ProductArena,
    solution: &ReachSolution,
) -> Result<FiniteStateStrategy, GameError> {
    let arena = product.arena();
    let mut choice = vec![None; arena.num_vertices()];
    for v in arena.vertices().filter(|&v| arena.owner(v) == Player::Zero) {
        choice[v.index()] = Some(if solution.goal.contains(v) {
            smallest_successor(arena, v)
        } else {
            optimal_successor(product, solution, v, SuccessorMode::Strict)?
        });
    }
    FiniteStateStrategy::positional(arena, Player::Zero, choice)
}

/// The positional strategy `τ'` on the product.
pub fn positional_reach_p1(
    product: &ProductArena,
    solution: &ReachSolution,
) -> Result<FiniteStateStrategy, GameError> {
    let arena = product.arena();
    let mut choice = vec![None; arena.num_vertices()];
    for v in arena.vertices().filter(|&v| arena.owner(v) == Player::One) {
        choice[v.index()] = Some(if solution.goal.contains(v) {
            smallest_successor(arena, v)
        } else {
            optimal_successor(product, solution, v, SuccessorMode::Relaxed)?
        });
    }
    FiniteStateStrategy::positional(arena, Player::One, choice)
}

/// `σ'` composed through `memory` into a strategy on the base arena.
pub fn extract_strategy_reach_p0(
    product: &ProductArena,
    solution: &ReachSolution,
    memory: &MemoryStructure,
) -> Result<FiniteStateStrategy, GameError> {
    compose_memory(memory, product, &positional_reach_p0(product, solution)?)
}

/// `τ'` composed through `memory` into a strategy on the base arena.
pub fn extract_strategy_reach_p1(
    product: &ProductArena,
    solution: &ReachSolution,
    memory: &MemoryStructure,
) -> Result<FiniteStateStrategy, GameError> {
    compose_memory(memory, product, &positional_reach_p1(product, solution)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{figure2, figure3};

    fn ranks(values: &[Option<u64>]) -> Ranking {
        Ranking::from_values(
            values
                .iter()
                .map(|v| v.map_or(ExtWeight::INFINITY, ExtWeight::from))
                .collect(),
        )
    }

    const I: Option<u64> = None;

    #[test]
    fn figure2_first_lift() {
        let p = figure2();
        let r1 = ranks(&[Some(0), I, I, I, I, I, I]);
        let r2 = lift_reach(&r1, p.goal(), &p).unwrap();
        assert_eq!(r2, ranks(&[Some(0), I, Some(4), I, Some(99), I, I]));
    }

    #[test]
    fn empty_goal_keeps_everything_infinite() {
        let p = figure2();
        let inf = Ranking::constant(7, ExtWeight::INFINITY);
        let empty = VertexSet::empty(7);
        assert_eq!(lift_reach(&inf, &empty, &p).unwrap(), inf);
        assert_eq!(completion(&inf, &empty, &p).unwrap(), inf);
    }

    #[test]
    fn full_goal_stabilizes_after_two_lifts() {
        let p = figure3();
        let sol = solve_reach(&p, &VertexSet::full(5)).unwrap();
        assert_eq!(sol.trace.len(), 3);
        assert_eq!(sol.fixpoint, Ranking::constant(5, ExtWeight::ZERO));
        assert!(sol.settling.iter().all(|&t| t == 1));
    }

    #[test]
    fn figure2_settling_times() {
        let p = figure2();
        let sol = solve_reach(&p, p.goal()).unwrap();
        assert_eq!(sol.settling, vec![1, 3, 2, 3, 4, 0, 0]);
    }

    #[test]
    fn figure2_optimal_successors() {
        let p = figure2();
        let sol = solve_reach(&p, p.goal()).unwrap();
        let succ = |v: u32, mode| optimal_successor(&p, &sol, VertexId(v), mode).unwrap();
        assert_eq!(succ(4, SuccessorMode::Strict), VertexId(3));
        assert_eq!(succ(2, SuccessorMode::Strict), VertexId(0));
        assert_eq!(succ(1, SuccessorMode::Relaxed), VertexId(2));
        assert_eq!(succ(5, SuccessorMode::Relaxed), VertexId(6));
    }

    #[test]
    fn figure3_completion_of_first_level() {
        let p = figure3();
        let lfp = solve_reach(&p, p.goal()).unwrap().fixpoint;
        let done = completion(&lfp, p.goal(), &p).unwrap();
        assert_eq!(done, ranks(&[Some(4), Some(2), Some(3), I, I]));
    }

    #[test]
    fn self_loop_goal_completion() {
        let mut b = crate::arena::ArenaBuilder::new();
        let x = b.vertex("x", Player::Zero, "a");
        b.edge(x, x, 6);
        let p = ProductArena::with_goal(b.build().unwrap(), VertexSet::full(1)).unwrap();
        let lfp = solve_reach(&p, p.goal()).unwrap().fixpoint;
        assert_eq!(completion(&lfp, p.goal(), &p).unwrap()[x], ExtWeight::from(6));
    }

    #[test]
    fn dijkstra_matches_iteration_on_samples() {
        for p in [figure2(), figure3()] {
            let sol = solve_reach(&p, p.goal()).unwrap();
            let fast = reach_fixpoint_dijkstra(&p, p.goal()).unwrap();
            assert_eq!(fast.values, sol.fixpoint);
        }
    }
}
