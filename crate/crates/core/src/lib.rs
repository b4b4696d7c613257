//! Solver for weighted limit games on finite arenas.
//!
//! A game is an arena whose vertices carry colors, together with a DFA over
//! those colors. Player 0 wants the automaton to accept infinitely often and,
//! among such plays, to keep the heaviest stretch between two acceptances as
//! light as possible. [`limit::solve_limit`] computes the optimal value of
//! every vertex; [`limit::extract_strategy_limit_p0`] and
//! [`limit::extract_strategy_limit_p1`] build optimal finite-state
//! strategies for both players. [`reach`] solves the one-shot reachability
//! variant, and [`oracle`] holds independent brute-force checks.

pub mod arena;
pub mod dfa;
pub mod error;
pub mod io;
pub mod limit;
pub mod memory;
pub mod oracle;
pub mod play;
pub mod product;
pub mod ranking;
pub mod reach;
pub mod samples;
pub mod strategy;
pub mod weight;

pub use arena::{Alphabet, Arena, ArenaBuilder, Color, Player, VertexId};
pub use dfa::{Dfa, DfaBuilder, StateId};
pub use error::GameError;
pub use memory::{memory_from_dfa, MemState, MemoryStructure};
pub use product::{build_product, ProductArena, VertexSet};
pub use ranking::Ranking;
pub use strategy::FiniteStateStrategy;
pub use weight::ExtWeight;
