//! The two worked instances of the literature, as ready-made games.
//!
//! [`figure2`] is a reachability game and [`figure3`] a limit game, both
//! given directly on their product arena (goal set attached, one memory
//! state). The `*_instance` variants encode the same games as an arena plus
//! a two-state automaton that accepts exactly when the current vertex is
//! colored `goal`.

use crate::arena::{Alphabet, Arena, ArenaBuilder, Player};
use crate::dfa::{Dfa, DfaBuilder};
use crate::product::{ProductArena, VertexSet};

const GOAL: &str = "goal";
const OTHER: &str = "other";

fn build(
    owners: &[Player],
    goal: &[usize],
    edges: &[(usize, usize, u64)],
) -> (Arena, VertexSet) {
    let mut b = ArenaBuilder::with_alphabet(Alphabet::from_names([GOAL, OTHER]));
    for (i, &p) in owners.iter().enumerate() {
        let color = if goal.contains(&i) { GOAL } else { OTHER };
        b.vertex(format!("v{i}"), p, color);
    }
    for &(f, t, w) in edges {
        b.raw_edge(f, t, w);
    }
    let arena = b.build().expect("sample arena is valid");
    let n = arena.num_vertices();
    let set = VertexSet::from_fn(n, |i| goal.contains(&i));
    (arena, set)
}

fn figure2_parts() -> (Arena, VertexSet) {
    use Player::{One, Zero};
    build(
        &[Zero, One, Zero, Zero, Zero, One, Zero],
        &[0],
        &[
            (0, 0, 3),
            (1, 0, 1),
            (1, 2, 1),
            (2, 1, 0),
            (2, 0, 4),
            (3, 2, 0),
            (3, 3, 0),
            (3, 5, 5),
            (4, 3, 7),
            (4, 0, 99),
            (5, 6, 2),
            (5, 4, 0),
            (6, 5, 3),
            (6, 6, 0),
        ],
    )
}

fn figure3_parts() -> (Arena, VertexSet) {
    use Player::{One, Zero};
    build(
        &[One, Zero, Zero, One, Zero],
        &[0, 2, 3],
        &[(0, 0, 4), (1, 0, 7), (1, 2, 2), (2, 3, 3), (3, 4, 5), (4, 4, 9)],
    )
}

/// Seven vertices, goal `{v0}`; Player 1 owns `v1` and `v5`.
pub fn figure2() -> ProductArena {
    let (arena, goal) = figure2_parts();
    ProductArena::with_goal(arena, goal).expect("goal matches arena")
}

/// Five vertices, goal `{v0, v2, v3}`; Player 1 owns `v0` and `v3`.
pub fn figure3() -> ProductArena {
    let (arena, goal) = figure3_parts();
    ProductArena::with_goal(arena, goal).expect("goal matches arena")
}

/// Accepts a nonempty word iff its last letter is `goal`.
pub fn last_letter_goal_dfa() -> Dfa {
    let mut b = DfaBuilder::new(Alphabet::from_names([GOAL, OTHER]));
    let rej = b.state("rej", false);
    let acc = b.state("acc", true);
    b.initial(rej);
    for q in [rej, acc] {
        b.transition_named(q, GOAL, acc).expect("color exists");
        b.transition_named(q, OTHER, rej).expect("color exists");
    }
    b.build().expect("sample automaton is valid")
}

pub fn figure2_instance() -> (Arena, Dfa) {
    (figure2_parts().0, last_letter_goal_dfa())
}

pub fn figure3_instance() -> (Arena, Dfa) {
    (figure3_parts().0, last_letter_goal_dfa())
}
