//! Solve reports: values, optional iteration traces and both strategies.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::strategy::StrategyFile;
use crate::arena::Arena;
use crate::dfa::Dfa;
use crate::error::GameError;
use crate::limit::{extract_strategy_limit_p0, extract_strategy_limit_p1, solve_limit};
use crate::memory::MemoryStructure;
use crate::product::ProductArena;
use crate::ranking::Ranking;
use crate::reach::{extract_strategy_reach_p0, extract_strategy_reach_p1, solve_reach};
use crate::weight::ExtWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Reach,
    Limit,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reach" => Ok(Mode::Reach),
            "limit" => Ok(Mode::Limit),
            _ => Err(format!("unknown mode {s:?}, expected reach or limit")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Strategies {
    pub player0: StrategyFile,
    pub player1: StrategyFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReport {
    pub mode: Mode,
    pub vertices: Vec<String>,
    /// Value of each base vertex, read at `(v, init(v))`.
    pub values: Vec<ExtWeight>,
    pub product_vertices: Vec<String>,
    pub fixpoint: Vec<ExtWeight>,
    /// Rankings `r_0, r_1, ...` over product vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Vec<ExtWeight>>>,
    /// The same rankings read at `(v, init(v))` for each base vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_trace: Option<Vec<Vec<ExtWeight>>>,
    pub strategies: Strategies,
}

fn at_initial(r: &Ranking, product: &ProductArena, memory: &MemoryStructure) -> Vec<ExtWeight> {
    product
        .base()
        .vertices()
        .map(|v| r[product.initial_vertex(memory, v)])
        .collect()
}

pub fn solve_report(
    arena: &Arena,
    dfa: &Dfa,
    mode: Mode,
    with_trace: bool,
) -> Result<SolveReport, GameError> {
    let (product, memory) = ProductArena::from_dfa(arena, dfa)?;
    let (fixpoint, trace, sigma, tau) = match mode {
        Mode::Reach => {
            let sol = solve_reach(&product, product.goal())?;
            let sigma = extract_strategy_reach_p0(&product, &sol, &memory)?;
            let tau = extract_strategy_reach_p1(&product, &sol, &memory)?;
            (sol.fixpoint, sol.trace, sigma, tau)
        }
        Mode::Limit => {
            let sol = solve_limit(&product, product.goal())?;
            let sigma = extract_strategy_limit_p0(&product, &sol, &memory)?;
            let tau = extract_strategy_limit_p1(&product, &sol, &memory)?;
            (sol.fixpoint, sol.trace, sigma, tau)
        }
    };
    let pa = product.arena();
    Ok(SolveReport {
        mode,
        vertices: arena.vertices().map(|v| arena.name(v).to_string()).collect(),
        values: at_initial(&fixpoint, &product, &memory),
        product_vertices: pa.vertices().map(|v| pa.name(v).to_string()).collect(),
        fixpoint: fixpoint.values().to_vec(),
        base_trace: with_trace.then(|| {
            trace.iter().map(|r| at_initial(r, &product, &memory)).collect()
        }),
        trace: with_trace.then(|| trace.iter().map(|r| r.values().to_vec()).collect()),
        strategies: Strategies {
            player0: StrategyFile::from_strategy(arena, &sigma),
            player1: StrategyFile::from_strategy(arena, &tau),
        },
    })
}

impl SolveReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// A plain table of base values, followed by the base trace if present.
    pub fn to_text(&self) -> String {
        let width = self.vertices.iter().map(String::len).max().unwrap_or(0).max(6);
        let mut out = String::new();
        writeln!(out, "{:width$}  value", "vertex").unwrap();
        for (name, value) in self.vertices.iter().zip(&self.values) {
            writeln!(out, "{name:width$}  {value}").unwrap();
        }
        if let Some(rows) = &self.base_trace {
            out.push('\n');
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(ExtWeight::to_string).collect();
                writeln!(out, "r{i}: {}", cells.join(" ")).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{figure2_instance, figure3_instance};

    fn w(values: &[u64]) -> Vec<ExtWeight> {
        values
            .iter()
            .map(|&x| if x == u64::MAX { ExtWeight::INFINITY } else { ExtWeight::from(x) })
            .collect()
    }

    const INF: u64 = u64::MAX;

    #[test]
    fn figure2_reach_values() {
        let (arena, dfa) = figure2_instance();
        let report = solve_report(&arena, &dfa, Mode::Reach, false).unwrap();
        assert_eq!(report.values, w(&[0, 5, 4, 4, 11, INF, INF]));
        assert!(report.trace.is_none());
    }

    #[test]
    fn figure3_trace_survives_serialization() {
        let (arena, dfa) = figure3_instance();
        let report = solve_report(&arena, &dfa, Mode::Limit, true).unwrap();
        let text = report.to_toml();
        assert!(text.contains("inf"));
        let back = SolveReport::from_toml(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.values, w(&[4, 7, INF, INF, INF]));
    }
}
