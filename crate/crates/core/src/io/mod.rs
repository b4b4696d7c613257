//! Instance files, strategy files, solve reports and DOT export.

mod dot;
mod instance;
mod report;
mod strategy;

pub use dot::{to_dot, DotOptions};
pub use instance::{parse_instance, parse_instance_str, write_instance, Location, ParseError};
pub use report::{solve_report, Mode, SolveReport, Strategies};
pub use strategy::{read_strategy, write_strategy, StrategyFile, NO_MOVE};
