//! Reachability values by enumerating all pairs of positional strategies.

use crate::arena::{Arena, Player, VertexId};
use crate::error::GameError;
use crate::product::{ProductArena, VertexSet};
use crate::weight::ExtWeight;

/// Upper limit on the number of strategy pairs examined.
pub const PAIR_LIMIT: u128 = 1 << 20;

/// `val^R` of the play from `start` when every vertex `v` moves to
/// `choice[v]`.
fn functional_reach(
    arena: &Arena,
    goal: &VertexSet,
    choice: &[VertexId],
    start: VertexId,
) -> ExtWeight {
    let mut seen = vec![false; choice.len()];
    let mut v = start;
    let mut acc = ExtWeight::ZERO;
    loop {
        if goal.contains(v) {
            return acc;
        }
        if seen[v.index()] {
            return ExtWeight::INFINITY;
        }
        seen[v.index()] = true;
        let t = choice[v.index()];
        acc = match acc.checked_add(arena.weight(v, t).expect("choice is an edge")) {
            Ok(x) => x,
            Err(_) => return ExtWeight::INFINITY,
        };
        v = t;
    }
}

/// Advances a mixed-radix counter over successor positions; false on wrap.
fn advance(pos: &mut [usize], vertices: &[VertexId], arena: &Arena) -> bool {
    for (p, &v) in pos.iter_mut().zip(vertices) {
        *p += 1;
        if *p < arena.successors(v).len() {
            return true;
        }
        *p = 0;
    }
    false
}

/// `min_σ max_τ val^R` over positional strategies, per vertex.
pub fn enumerate_positional_reach(
    product: &ProductArena,
    goal: &VertexSet,
) -> Result<Vec<ExtWeight>, GameError> {
    let arena = product.arena();
    let pairs: u128 = arena
        .vertices()
        .map(|v| arena.successors(v).len() as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d).filter(|&x| x <= PAIR_LIMIT))
        .ok_or(GameError::TooLarge {
            size: u128::MAX,
            limit: PAIR_LIMIT,
        })?;
    debug_assert!(pairs <= PAIR_LIMIT);
    let owned = |p: Player| -> Vec<VertexId> {
        arena.vertices().filter(|&v| arena.owner(v) == p).collect()
    };
    let (v0, v1) = (owned(Player::Zero), owned(Player::One));
    let n = arena.num_vertices();
    let mut best = vec![ExtWeight::INFINITY; n];
    let mut pos0 = vec![0usize; v0.len()];
    let mut choice = vec![VertexId(0); n];
    loop {
        for (&v, &p) in v0.iter().zip(&pos0) {
            choice[v.index()] = arena.successors(v)[p].0;
        }
        let mut worst = vec![ExtWeight::ZERO; n];
        let mut pos1 = vec![0usize; v1.len()];
        loop {
            for (&v, &p) in v1.iter().zip(&pos1) {
                choice[v.index()] = arena.successors(v)[p].0;
            }
            for v in arena.vertices() {
                let x = functional_reach(arena, goal, &choice, v);
                worst[v.index()] = worst[v.index()].max(x);
            }
            if !advance(&mut pos1, &v1, arena) {
                break;
            }
        }
        for i in 0..n {
            best[i] = best[i].min(worst[i]);
        }
        if !advance(&mut pos0, &v0, arena) {
            break;
        }
    }
    Ok(best)
}
