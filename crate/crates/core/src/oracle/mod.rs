//! Independent checks for the solvers: brute force, qualitative Büchi
//! solving, exact strategy evaluation and instance generators.

mod buchi;
mod enumerate;
mod evaluate;
mod generate;
mod threshold;

pub use buchi::buchi_attractor;
pub use enumerate::{enumerate_positional_reach, PAIR_LIMIT};
pub use evaluate::{
    evaluate_base_strategy, evaluate_on_product, evaluate_strategy_value_p0,
    evaluate_strategy_value_p1, Objective,
};
pub use generate::{generate_family_15_1, generate_family_15_2, random_instance, RandomParams};
pub use threshold::{
    oracle_limit_value, oracle_limit_values, oracle_limit_values_product, threshold_buchi,
    value_cap, CounterProduct,
};
