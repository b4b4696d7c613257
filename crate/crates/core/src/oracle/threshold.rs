//! Limit values through a counter product and qualitative Büchi solving.
//!
//! For a bound `b`, configurations carry the weight accumulated since the
//! last goal visit. Exceeding `b` leads to a losing sink, entering the goal
//! within budget resets the counter. Player 0 wins the Büchi game on this
//! product from `(v, 0)` iff she can keep every gap at most `b` while
//! visiting the goal infinitely often.

use std::collections::BTreeMap;

use super::buchi::GameGraph;
use crate::arena::{Arena, Player, VertexId};
use crate::dfa::Dfa;
use crate::error::GameError;
use crate::memory::MemoryStructure;
use crate::product::{ProductArena, VertexSet};
use crate::weight::ExtWeight;

/// Counter configurations within budget `b`, plus one overflow sink.
#[derive(Debug, Clone)]
pub struct CounterProduct {
    pub bound: u64,
    graph: GameGraph,
    goal: Vec<bool>,
    width: usize,
}

impl CounterProduct {
    pub fn new(product: &ProductArena, goal: &VertexSet, bound: u64) -> Result<Self, GameError> {
        let a = product.arena();
        let n = a.num_vertices();
        let width = bound
            .checked_add(1)
            .and_then(|w| usize::try_from(w).ok())
            .filter(|w| w.checked_mul(n).is_some_and(|t| t < 1 << 26))
            .ok_or(GameError::TooLarge {
                size: (bound as u128 + 1) * n as u128,
                limit: 1 << 26,
            })?;
        let sink = n * width;
        let mut owner = Vec::with_capacity(sink + 1);
        let mut succ = Vec::with_capacity(sink + 1);
        let mut is_goal = vec![false; sink + 1];
        for v in a.vertices() {
            for c in 0..width as u64 {
                owner.push(a.owner(v));
                succ.push(
                    a.successors(v)
                        .iter()
                        .map(|&(t, w)| match c.checked_add(w) {
                            Some(x) if x <= bound => {
                                if goal.contains(t) {
                                    t.index() * width
                                } else {
                                    t.index() * width + x as usize
                                }
                            }
                            _ => sink,
                        })
                        .collect(),
                );
            }
            if goal.contains(v) {
                is_goal[v.index() * width] = true;
            }
        }
        owner.push(Player::Zero);
        succ.push(vec![sink]);
        Ok(CounterProduct {
            bound,
            graph: GameGraph::from_edges(owner, succ),
            goal: is_goal,
            width,
        })
    }

    pub fn num_configs(&self) -> usize {
        self.graph.len()
    }

    /// `threshold_buchi` restricted to counter value 0.
    pub fn winning(&self) -> VertexSet {
        let win = self.graph.buchi(&self.goal);
        let n = (self.graph.len() - 1) / self.width;
        VertexSet::from_fn(n, |v| win[v * self.width])
    }
}

/// Product vertices from which every gap can be kept at most `b` while the
/// goal is visited infinitely often.
pub fn threshold_buchi(
    product: &ProductArena,
    goal: &VertexSet,
    b: u64,
) -> Result<VertexSet, GameError> {
    Ok(CounterProduct::new(product, goal, b)?.winning())
}

/// `(|V_prod| + 1) · W`, the largest finite value possible.
pub fn value_cap(arena: &Arena) -> u64 {
    (arena.num_vertices() as u64 + 1).saturating_mul(arena.max_weight())
}

/// The least `b` admitting a win, for every product vertex, by binary
/// search over `[0, value_cap]`. Winning sets must grow with `b`.
pub fn oracle_limit_values_product(
    product: &ProductArena,
    goal: &VertexSet,
) -> Result<Vec<ExtWeight>, GameError> {
    let cap = value_cap(product.arena());
    let mut cache: BTreeMap<u64, VertexSet> = BTreeMap::new();
    let mut win = |b: u64| -> Result<VertexSet, GameError> {
        if let Some(s) = cache.get(&b) {
            return Ok(s.clone());
        }
        let set = threshold_buchi(product, goal, b)?;
        let below = cache.range(..b).next_back().map(|(_, s)| s);
        let above = cache.range(b + 1..).next().map(|(_, s)| s);
        if below.is_some_and(|s| !s.is_subset(&set)) || above.is_some_and(|s| !set.is_subset(s)) {
            return Err(GameError::OracleViolation(format!(
                "threshold winning sets are not monotone at b = {b}"
            )));
        }
        cache.insert(b, set.clone());
        Ok(set)
    };
    let top = win(cap)?;
    let mut out = Vec::with_capacity(product.num_vertices());
    for v in product.arena().vertices() {
        if !top.contains(v) {
            out.push(ExtWeight::INFINITY);
            continue;
        }
        let (mut lo, mut hi) = (0u64, cap);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if win(mid)?.contains(v) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        out.push(ExtWeight::from(lo));
    }
    Ok(out)
}

/// Limit values of all base vertices from their initial product vertex.
pub fn oracle_limit_values(
    product: &ProductArena,
    memory: &MemoryStructure,
) -> Result<Vec<ExtWeight>, GameError> {
    let all = oracle_limit_values_product(product, product.goal())?;
    Ok(product
        .base()
        .vertices()
        .map(|v| all[product.initial_vertex(memory, v).index()])
        .collect())
}

/// The limit value of `v` in the game of `arena` and `dfa`.
pub fn oracle_limit_value(arena: &Arena, dfa: &Dfa, v: VertexId) -> Result<ExtWeight, GameError> {
    let (product, memory) = ProductArena::from_dfa(arena, dfa)?;
    Ok(oracle_limit_values(&product, &memory)?[v.index()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{figure3, figure3_instance};

    #[test]
    fn figure3_thresholds() {
        let p = figure3();
        let v0 = VertexId(0);
        assert!(!threshold_buchi(&p, p.goal(), 3).unwrap().contains(v0));
        assert!(threshold_buchi(&p, p.goal(), 4).unwrap().contains(v0));
        let cap = value_cap(p.arena());
        let qualitative = crate::oracle::buchi_attractor(&p, p.goal());
        assert!(qualitative.is_subset(&threshold_buchi(&p, p.goal(), cap).unwrap()));
    }

    #[test]
    fn figure3_values() {
        let p = figure3();
        let inf = ExtWeight::INFINITY;
        let expected = vec![ExtWeight::from(4), ExtWeight::from(7), inf, inf, inf];
        assert_eq!(oracle_limit_values_product(&p, p.goal()).unwrap(), expected);
        let (arena, dfa) = figure3_instance();
        for v in arena.vertices() {
            assert_eq!(oracle_limit_value(&arena, &dfa, v).unwrap(), expected[v.index()]);
        }
    }

    #[test]
    fn empty_goal_is_infinite() {
        let p = figure3();
        let values = oracle_limit_values_product(&p, &VertexSet::empty(5)).unwrap();
        assert!(values.iter().all(|x| x.is_infinite()));
    }
}
