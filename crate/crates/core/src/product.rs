//! Product arenas `A × M` and their goal sets.

use std::collections::VecDeque;

use crate::arena::{Arena, VertexId};
use crate::dfa::Dfa;
use crate::error::GameError;
use crate::memory::{memory_from_dfa, MemState, MemoryStructure};

/// A set of vertices as a membership vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            members: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            members: vec![true; n],
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = VertexSet::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Self {
        VertexSet {
            members: (0..n).map(f).collect(),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members[v.index()]
    }

    pub fn insert(&mut self, v: VertexId) {
        self.members[v.index()] = true;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.members[v.index()] = false;
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| VertexId::from(i))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }
}

/// The expanded arena `A × M` together with a goal set `F`.
///
/// Product vertex `(v, m)` has index `v * |M| + m`, so successor lists of the
/// expanded arena stay sorted by base successor. All `|V| · |M|` pairs are
/// present, reachable or not.
#[derive(Debug, Clone)]
pub struct ProductArena {
    base: Arena,
    arena: Arena,
    base_vertices: usize,
    memory_states: usize,
    goal: VertexSet,
}

impl ProductArena {
    /// Treats `arena` itself as the product with one memory state.
    pub fn with_goal(arena: Arena, goal: VertexSet) -> Result<Self, GameError> {
        if goal.universe() != arena.num_vertices() {
            return Err(GameError::ArenaMismatch(
                "goal set does not match the arena".into(),
            ));
        }
        Ok(ProductArena {
            base_vertices: arena.num_vertices(),
            memory_states: 1,
            base: arena.clone(),
            arena,
            goal,
        })
    }

    /// `A × M_𝔄` with `F = {(v, q) | q accepting}`. Returns the memory too.
    pub fn from_dfa(arena: &Arena, dfa: &Dfa) -> Result<(Self, MemoryStructure), GameError> {
        let memory = memory_from_dfa(dfa, arena)?;
        let accepting: Vec<MemState> = dfa.accepting_states().iter().map(|q| q.0).collect();
        let product = build_product(arena, &memory, &accepting)?;
        Ok((product, memory))
    }

    /// The expanded arena.
    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    /// The arena the product was built from.
    pub fn base(&self) -> &Arena {
        &self.base
    }

    pub fn goal(&self) -> &VertexSet {
        &self.goal
    }

    pub fn num_vertices(&self) -> usize {
        self.arena.num_vertices()
    }

    pub fn base_vertices(&self) -> usize {
        self.base_vertices
    }

    pub fn memory_states(&self) -> usize {
        self.memory_states
    }

    pub fn vertex(&self, v: VertexId, m: MemState) -> VertexId {
        VertexId::from(v.index() * self.memory_states + m as usize)
    }

    pub fn split(&self, p: VertexId) -> (VertexId, MemState) {
        let i = p.index();
        (
            VertexId::from(i / self.memory_states),
            (i % self.memory_states) as MemState,
        )
    }

    /// The vertex `(v, init(v))` a play from base vertex `v` starts in.
    pub fn initial_vertex(&self, memory: &MemoryStructure, v: VertexId) -> VertexId {
        self.vertex(v, memory.init(v))
    }

    /// Vertices reachable from `starts` along product edges.
    pub fn reachable_from(&self, starts: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let mut seen = VertexSet::empty(self.num_vertices());
        let mut queue = VecDeque::new();
        for s in starts {
            if !seen.contains(s) {
                seen.insert(s);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &(w, _) in self.arena.successors(u) {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Builds the full product `A × M` with goal `{(v, m) | m ∈ accepting}`.
pub fn build_product(
    arena: &Arena,
    memory: &MemoryStructure,
    accepting: &[MemState],
) -> Result<ProductArena, GameError> {
    if memory.num_vertices() != arena.num_vertices() {
        return Err(GameError::ArenaMismatch(
            "memory structure is for a different arena".into(),
        ));
    }
    let size = memory.size();
    let n = arena.num_vertices() * size;
    let mut names = Vec::with_capacity(n);
    let mut owners = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    let mut goal = VertexSet::empty(n);
    let mut is_accepting = vec![false; size];
    for &m in accepting {
        *is_accepting
            .get_mut(m as usize)
            .ok_or_else(|| GameError::BadParameter(format!("memory state {m} out of range")))? =
            true;
    }
    for v in arena.vertices() {
        for m in 0..size as MemState {
            let p = VertexId::from(v.index() * size + m as usize);
            names.push(format!("{}@{}", arena.name(v), memory.label(m)));
            owners.push(arena.owner(v));
            colors.push(arena.color(v));
            succ.push(
                arena
                    .successors(v)
                    .iter()
                    .map(|&(t, w)| {
                        let mt = memory.upd(m, t);
                        (VertexId::from(t.index() * size + mt as usize), w)
                    })
                    .collect(),
            );
            if is_accepting[m as usize] {
                goal.insert(p);
            }
        }
    }
    let expanded = Arena::from_parts(arena.alphabet().clone(), names, owners, colors, succ);
    Ok(ProductArena {
        base: arena.clone(),
        arena: expanded,
        base_vertices: arena.num_vertices(),
        memory_states: size,
        goal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{ArenaBuilder, Player};

    fn counter_memory(n: usize) -> MemoryStructure {
        // Counts positions modulo 3.
        let upd = (0..3u32)
            .flat_map(|m| std::iter::repeat((m + 1) % 3).take(n))
            .collect();
        MemoryStructure::new(vec!["0".into(), "1".into(), "2".into()], vec![0; n], upd).unwrap()
    }

    #[test]
    fn product_has_all_pairs() {
        let mut b = ArenaBuilder::new();
        let x = b.vertex("x", Player::Zero, "a");
        let y = b.vertex("y", Player::One, "a");
        b.edge(x, y, 4).edge(y, x, 1).edge(y, y, 2);
        let arena = b.build().unwrap();
        let mem = counter_memory(2);
        let p = build_product(&arena, &mem, &[2]).unwrap();
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.goal().len(), 2);
        for (from, to, w) in p.arena().edges() {
            let (bf, mf) = p.split(from);
            let (bt, mt) = p.split(to);
            assert_eq!(arena.weight(bf, bt), Some(w));
            assert_eq!(mem.upd(mf, bt), mt);
            assert_eq!(p.arena().owner(from), arena.owner(bf));
            assert_eq!(p.arena().color(from), arena.color(bf));
        }
        assert!(p.arena().vertices().all(|u| !p.arena().successors(u).is_empty()));
        assert_eq!(p.split(p.vertex(y, 2)), (y, 2));
    }
}
