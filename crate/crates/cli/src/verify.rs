//! Cross-checks of one instance against the independent oracles.

use std::fmt;

use limitgame::arena::VertexId;
use limitgame::limit::{extract_strategy_limit_p0, extract_strategy_limit_p1, solve_limit, value_map};
use limitgame::oracle::{
    buchi_attractor, enumerate_positional_reach, evaluate_strategy_value_p0,
    evaluate_strategy_value_p1, oracle_limit_values,
};
use limitgame::reach::solve_reach;
use limitgame::strategy::strategy_size;
use limitgame::{Arena, Dfa, ExtWeight, FiniteStateStrategy, GameError, Player, ProductArena, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        };
        write!(f, "{tag} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        detail: if ok { String::new() } else { detail.into() },
    }
}

pub struct Request<'a> {
    pub arena: &'a Arena,
    pub dfa: &'a Dfa,
    pub strategy: Option<&'a FiniteStateStrategy>,
    pub expect: &'a [(String, ExtWeight)],
}

/// First vertex where two value vectors differ.
fn mismatch(arena: &Arena, got: &[ExtWeight], want: &[ExtWeight]) -> Option<String> {
    got.iter()
        .zip(want)
        .position(|(a, b)| a != b)
        .map(|i| format!("at {}: {} vs {}", arena.name(VertexId::from(i)), got[i], want[i]))
}

fn product_mismatch(product: &ProductArena, got: &[ExtWeight], want: &[ExtWeight]) -> Option<String> {
    mismatch(product.arena(), got, want)
}

pub fn verify(req: &Request) -> Result<Vec<Check>, GameError> {
    let (arena, dfa) = (req.arena, req.dfa);
    let (product, memory) = ProductArena::from_dfa(arena, dfa)?;
    let goal = product.goal();
    let sol = solve_limit(&product, goal)?;
    let values = value_map(&sol, &product, &memory);
    let mut out = Vec::new();

    let oracle = oracle_limit_values(&product, &memory)?;
    let m = mismatch(arena, &values, &oracle);
    out.push(check("limit values = threshold oracle", m.is_none(), m.unwrap_or_default()));

    let reach = solve_reach(&product, goal)?;
    match enumerate_positional_reach(&product, goal) {
        Ok(brute) => {
            let m = product_mismatch(&product, reach.fixpoint.values(), &brute);
            out.push(check("reach values = positional enumeration", m.is_none(), m.unwrap_or_default()));
        }
        Err(GameError::TooLarge { .. }) => out.push(Check {
            name: "reach values = positional enumeration",
            outcome: Outcome::Skip,
            detail: "too many strategy pairs".into(),
        }),
        Err(e) => return Err(e),
    }

    let sigma = extract_strategy_limit_p0(&product, &sol, &memory)?;
    let tau = extract_strategy_limit_p1(&product, &sol, &memory)?;
    let eval = |s: &FiniteStateStrategy| -> Result<Vec<ExtWeight>, GameError> {
        arena
            .vertices()
            .map(|v| match s.player() {
                Player::Zero => evaluate_strategy_value_p0(arena, dfa, s, v),
                Player::One => evaluate_strategy_value_p1(arena, dfa, s, v),
            })
            .collect()
    };
    let m = mismatch(arena, &eval(&sigma)?, &values);
    out.push(check("player 0 strategy attains the values", m.is_none(), m.unwrap_or_default()));
    let m = mismatch(arena, &eval(&tau)?, &values);
    out.push(check("player 1 strategy attains the values", m.is_none(), m.unwrap_or_default()));

    let finite = VertexSet::from_fn(product.num_vertices(), |i| sol.fixpoint.values()[i].is_finite());
    let win = buchi_attractor(&product, goal);
    out.push(check(
        "finite values = Büchi winning region",
        finite == win,
        format!("{} finite vs {} winning", finite.len(), win.len()),
    ));

    let (n, s) = (arena.num_vertices() as u64, dfa.num_states() as u64);
    let f = dfa.accepting_states().len() as u64;
    let cap = (n * s + 1).saturating_mul(arena.max_weight());
    let worst = sol.fixpoint.values().iter().filter(|x| x.is_finite()).max().copied();
    out.push(check(
        "finite values within (n·s + 1)·W",
        worst.is_none_or(|x| x <= ExtWeight::from(cap)),
        format!("{} exceeds {cap}", worst.unwrap_or(ExtWeight::ZERO)),
    ));
    let size = strategy_size(&sigma) as u64;
    out.push(check(
        "player 0 strategy size within n·s·f",
        size <= n * s * f,
        format!("{size} states, bound {}", n * s * f),
    ));

    let stable = sol.trace.iter().position(|r| *r == sol.fixpoint).unwrap_or(usize::MAX);
    out.push(check(
        "limit iteration stable by r_{|F|+1}",
        stable <= goal.len() + 1,
        format!("stable at r_{stable}"),
    ));
    let stable = reach.trace.iter().position(|r| *r == reach.fixpoint).unwrap_or(usize::MAX);
    out.push(check(
        "reach iteration stable by r_{|V|+1}",
        stable <= product.num_vertices() + 1,
        format!("stable at r_{stable}"),
    ));

    if let Some(given) = req.strategy {
        let m = mismatch(arena, &eval(given)?, &values);
        out.push(check("given strategy attains the values", m.is_none(), m.unwrap_or_default()));
    }
    for (name, want) in req.expect {
        let v = arena
            .vertex_by_name(name)
            .ok_or_else(|| GameError::BadParameter(format!("unknown vertex {name:?}")))?;
        let got = values[v.index()];
        out.push(check("expected value", got == *want, format!("{name}: got {got}, expected {want}")));
    }
    Ok(out)
}
