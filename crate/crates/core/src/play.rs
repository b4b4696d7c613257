//! Ultimately periodic plays and their exact values.

use std::collections::HashMap;

use crate::arena::{Arena, VertexId};
use crate::error::GameError;
use crate::memory::{MemState, MemoryStructure};
use crate::product::{ProductArena, VertexSet};
use crate::weight::{ExtWeight, Overflow};

/// The play `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso<T = VertexId> {
    pub stem: Vec<T>,
    pub cycle: Vec<T>,
}

impl<T: Copy> Lasso<T> {
    pub fn new(stem: Vec<T>, cycle: Vec<T>) -> Result<Self, GameError> {
        if cycle.is_empty() {
            return Err(GameError::BadParameter("lasso cycle must be nonempty".into()));
        }
        Ok(Lasso { stem, cycle })
    }

    pub fn first(&self) -> T {
        self.stem.first().copied().unwrap_or(self.cycle[0])
    }

    /// Position `i` of the infinite play.
    pub fn at(&self, i: usize) -> T {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The first `len` positions.
    pub fn prefix(&self, len: usize) -> Vec<T> {
        (0..len).map(|i| self.at(i)).collect()
    }

    pub fn map<U>(&self, mut f: impl FnMut(T) -> U) -> Lasso<U> {
        Lasso {
            stem: self.stem.iter().map(|&x| f(x)).collect(),
            cycle: self.cycle.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl Lasso<VertexId> {
    /// Checks every step, including the wrap-around, is an edge.
    pub fn is_valid_in(&self, arena: &Arena) -> bool {
        let len = self.stem.len() + self.cycle.len();
        arena.is_path(&self.prefix(len + 1))
    }
}

/// `ext(ρ)`: pairs every position with the memory after that prefix.
///
/// The result is normalized: the stem is followed until the memory at the
/// start of a cycle traversal repeats, so the cycle length is a multiple of
/// the input cycle length and at most `|M|` times it.
pub fn extend_play(lasso: &Lasso, memory: &MemoryStructure) -> Lasso<(VertexId, MemState)> {
    let mut stem = Vec::new();
    let mut m: Option<MemState> = None;
    let step = |v: VertexId, m: &mut Option<MemState>| {
        let next = match *m {
            None => memory.init(v),
            Some(prev) => memory.upd(prev, v),
        };
        *m = Some(next);
        (v, next)
    };
    for &v in &lasso.stem {
        stem.push(step(v, &mut m));
    }
    // Memory entering each traversal of the cycle; the state before the
    // first cycle vertex determines the whole traversal.
    let mut entries: HashMap<Option<MemState>, usize> = HashMap::new();
    let mut traversals: Vec<Vec<(VertexId, MemState)>> = Vec::new();
    loop {
        if let Some(&start) = entries.get(&m) {
            let cycle = traversals[start..].concat();
            stem.extend(traversals[..start].concat());
            return Lasso { stem, cycle };
        }
        entries.insert(m, traversals.len());
        let traversal = lasso.cycle.iter().map(|&v| step(v, &mut m)).collect();
        traversals.push(traversal);
    }
}

/// Converts an extended play into product vertex ids.
pub fn product_lasso(product: &ProductArena, lasso: &Lasso<(VertexId, MemState)>) -> Lasso {
    lasso.map(|(v, m)| product.vertex(v, m))
}

fn step_weight(arena: &Arena, from: VertexId, to: VertexId) -> u64 {
    arena
        .weight(from, to)
        .expect("lasso must be a path of the arena")
}

/// `val^R`: the weight of the shortest prefix ending in `goal`,
/// single-vertex prefixes included; ∞ when the play never visits `goal`.
pub fn eval_play_reach(
    arena: &Arena,
    goal: &VertexSet,
    lasso: &Lasso,
) -> Result<ExtWeight, Overflow> {
    let len = lasso.stem.len() + lasso.cycle.len();
    let mut acc = ExtWeight::ZERO;
    for i in 0..len {
        let v = lasso.at(i);
        if goal.contains(v) {
            return Ok(acc);
        }
        acc = acc.checked_add(step_weight(arena, v, lasso.at(i + 1)))?;
    }
    Ok(ExtWeight::INFINITY)
}

/// `val_G`: the supremum over positions of the weight to the next goal
/// position strictly after it; ∞ if the cycle avoids `goal`.
pub fn eval_play_limit(
    arena: &Arena,
    goal: &VertexSet,
    lasso: &Lasso,
) -> Result<ExtWeight, Overflow> {
    if !lasso.cycle.iter().any(|&v| goal.contains(v)) {
        return Ok(ExtWeight::INFINITY);
    }
    let s = lasso.stem.len();
    let l = lasso.cycle.len();
    // Weight from position i to the next goal position after i. Positions
    // s..s+l cover one period; scanning one more period finds a goal.
    let mut worst = ExtWeight::ZERO;
    for i in 0..s + l {
        let mut acc = ExtWeight::ZERO;
        let mut j = i;
        loop {
            acc = acc.checked_add(step_weight(arena, lasso.at(j), lasso.at(j + 1)))?;
            j += 1;
            if goal.contains(lasso.at(j)) {
                break;
            }
        }
        worst = worst.max(acc);
    }
    Ok(worst)
}
