//! Memory structures `(M, init, upd)` over an arena.

use crate::arena::{Arena, Color, VertexId};
use crate::dfa::{Dfa, StateId};
use crate::error::GameError;

/// Dense index of a memory state.
pub type MemState = u32;

/// A memory structure for an arena with `num_vertices` vertices.
///
/// `upd` is total over `M × V`; the memory after a prefix `v_0 … v_j` is
/// `upd*(v_0 … v_j)` with `upd*(v) = init(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryStructure {
    labels: Vec<String>,
    num_vertices: usize,
    init: Vec<MemState>,
    upd: Vec<MemState>,
}

impl MemoryStructure {
    /// `upd` is indexed `[m * num_vertices + v]`.
    pub fn new(
        labels: Vec<String>,
        init: Vec<MemState>,
        upd: Vec<MemState>,
    ) -> Result<Self, GameError> {
        let size = labels.len();
        let n = init.len();
        if size == 0 {
            return Err(GameError::BadParameter("memory must have a state".into()));
        }
        if upd.len() != size * n {
            return Err(GameError::BadParameter(format!(
                "update table has {} entries, expected {}",
                upd.len(),
                size * n
            )));
        }
        if init.iter().chain(&upd).any(|&m| m as usize >= size) {
            return Err(GameError::BadParameter("memory state out of range".into()));
        }
        Ok(MemoryStructure {
            labels,
            num_vertices: n,
            init,
            upd,
        })
    }

    /// The one-state memory; strategies using it are positional.
    pub fn trivial(num_vertices: usize) -> Self {
        MemoryStructure {
            labels: vec!["0".into()],
            num_vertices,
            init: vec![0; num_vertices],
            upd: vec![0; num_vertices],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn label(&self, m: MemState) -> &str {
        &self.labels[m as usize]
    }

    pub fn init(&self, v: VertexId) -> MemState {
        self.init[v.index()]
    }

    pub fn upd(&self, m: MemState, v: VertexId) -> MemState {
        self.upd[m as usize * self.num_vertices + v.index()]
    }

    /// `upd*` of a nonempty prefix.
    pub fn upd_star(&self, prefix: &[VertexId]) -> Option<MemState> {
        let (&first, rest) = prefix.split_first()?;
        Some(rest.iter().fold(self.init(first), |m, &v| self.upd(m, v)))
    }

    /// Memory states along a prefix, one per position.
    pub fn trace(&self, prefix: &[VertexId]) -> Vec<MemState> {
        let mut out = Vec::with_capacity(prefix.len());
        let mut m = None;
        for &v in prefix {
            let next = match m {
                None => self.init(v),
                Some(m) => self.upd(m, v),
            };
            out.push(next);
            m = Some(next);
        }
        out
    }
}

/// The memory structure `M_𝔄` tracking the automaton state:
/// `init(v) = δ(q_I, c(v))` and `upd(q, v) = δ(q, c(v))`.
pub fn memory_from_dfa(dfa: &Dfa, arena: &Arena) -> Result<MemoryStructure, GameError> {
    let colors = arena_colors_in_dfa(dfa, arena)?;
    let n = arena.num_vertices();
    let init = colors
        .iter()
        .map(|&c| dfa.delta(dfa.initial(), c).0)
        .collect();
    let mut upd = Vec::with_capacity(dfa.num_states() * n);
    for q in dfa.states() {
        upd.extend(colors.iter().map(|&c| dfa.delta(q, c).0));
    }
    let labels = dfa.states().map(|q| dfa.state_name(q).to_string()).collect();
    MemoryStructure::new(labels, init, upd)
}

/// Per-vertex colors translated into the automaton's alphabet by name.
pub(crate) fn arena_colors_in_dfa(dfa: &Dfa, arena: &Arena) -> Result<Vec<Color>, GameError> {
    arena
        .vertices()
        .map(|v| {
            let name = arena.alphabet().name(arena.color(v));
            dfa.alphabet()
                .get(name)
                .ok_or_else(|| GameError::ColorMismatch(name.to_string()))
        })
        .collect()
}

/// Translates a state id back into a memory state of [`memory_from_dfa`].
pub fn dfa_state(m: MemState) -> StateId {
    StateId(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{Alphabet, ArenaBuilder, Player};
    use crate::dfa::DfaBuilder;
    use proptest::prelude::*;

    fn two_color_arena() -> Arena {
        let mut b = ArenaBuilder::new();
        let x = b.vertex("x", Player::Zero, "a");
        let y = b.vertex("y", Player::One, "b");
        b.edge(x, x, 1).edge(x, y, 2).edge(y, x, 0).edge(y, y, 3);
        b.build().unwrap()
    }

    /// Parity of the number of `b`s read so far.
    fn parity_dfa() -> Dfa {
        let mut b = DfaBuilder::new(Alphabet::from_names(["a", "b"]));
        let even = b.state("even", false);
        let odd = b.state("odd", true);
        b.transition_named(even, "a", even).unwrap();
        b.transition_named(even, "b", odd).unwrap();
        b.transition_named(odd, "a", odd).unwrap();
        b.transition_named(odd, "b", even).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn dfa_memory_has_one_state_per_automaton_state() {
        let arena = two_color_arena();
        let dfa = parity_dfa();
        let mem = memory_from_dfa(&dfa, &arena).unwrap();
        assert_eq!(mem.size(), dfa.num_states());
        assert_eq!(mem.init(VertexId(0)), 0);
        assert_eq!(mem.init(VertexId(1)), 1);
    }

    #[test]
    fn single_rejecting_state_gives_constant_memory() {
        let arena = two_color_arena();
        let mut b = DfaBuilder::new(Alphabet::from_names(["a", "b"]));
        let q = b.state("q", false);
        b.default_sink(q);
        let mem = memory_from_dfa(&b.build().unwrap(), &arena).unwrap();
        assert_eq!(mem.size(), 1);
        assert!(arena.vertices().all(|v| mem.init(v) == 0 && mem.upd(0, v) == 0));
    }

    #[test]
    fn foreign_colors_are_rejected() {
        let arena = two_color_arena();
        let mut b = DfaBuilder::new(Alphabet::from_names(["a"]));
        let q = b.state("q", false);
        b.default_sink(q);
        assert_eq!(
            memory_from_dfa(&b.build().unwrap(), &arena),
            Err(GameError::ColorMismatch("b".into()))
        );
    }

    proptest! {
        #[test]
        fn upd_star_tracks_the_automaton(steps in proptest::collection::vec(0usize..2, 1..40)) {
            let arena = two_color_arena();
            let dfa = parity_dfa();
            let mem = memory_from_dfa(&dfa, &arena).unwrap();
            // Random walk: every vertex has both vertices as successors.
            let walk: Vec<VertexId> = steps.iter().map(|&i| VertexId::from(i)).collect();
            prop_assert!(arena.is_path(&walk));
            let colors: Vec<_> = walk.iter().map(|&v| arena.color(v)).collect();
            let expected = dfa.run(&colors).unwrap();
            prop_assert_eq!(dfa_state(mem.upd_star(&walk).unwrap()), expected);
        }
    }
}
