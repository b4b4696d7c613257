use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use limitgame::io::{
    parse_instance, read_strategy, solve_report, to_dot, write_instance, DotOptions, Mode,
    ParseError,
};
use limitgame::oracle::{generate_family_15_1, generate_family_15_2, random_instance, RandomParams};
use limitgame::{ExtWeight, GameError, ProductArena, VertexSet};

mod verify;

use verify::{Outcome, Request};

#[derive(Parser)]
#[command(name = "limitgame", version, about = "Solve weighted limit and reachability games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute values, iteration traces and optimal strategies.
    Solve(SolveArgs),
    /// Compare the solver against brute-force and qualitative oracles.
    Verify(VerifyArgs),
    /// Print the arena in Graphviz DOT syntax.
    ExportDot(DotArgs),
    /// Write a generated instance file.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Reach,
    Limit,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Reach => Mode::Reach,
            ModeArg::Limit => Mode::Limit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Toml,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "limit")]
    mode: ModeArg,
    /// Include every ranking of the iteration.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write `player0.toml` and `player1.toml` strategy files here.
    #[arg(long)]
    strategies: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// A strategy file whose value should equal the game value everywhere.
    #[arg(long)]
    strategy: Option<PathBuf>,
    /// VERTEX=VALUE pairs the limit values must match.
    #[arg(long = "expect", value_parser = parse_expectation)]
    expect: Vec<(String, ExtWeight)>,
    /// Largest product arena the oracles are run on.
    #[arg(long, default_value_t = 512)]
    max_product: usize,
    /// Run the oracles regardless of size.
    #[arg(long)]
    force: bool,
    /// Instances checked in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct DotArgs {
    instance: PathBuf,
    /// Draw the product arena instead of the base arena.
    #[arg(long)]
    product: bool,
    /// Annotate values and Player 0's moves from a solve in this mode.
    #[arg(long, value_enum)]
    solve: Option<ModeArg>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    family: Family,
    /// Output file; standard output if absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Memory lower-bound family with n sources and an a-loop of length s.
    #[command(name = "15.1")]
    Memory {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Value lower-bound family with m blocks, automaton length n, weight w.
    #[command(name = "15.2")]
    Value {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: u64,
    },
    /// A seeded random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_out_degree: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, default_value_t = 1)]
        accepting: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: u64,
    },
}

fn parse_expectation(s: &str) -> Result<(String, ExtWeight), String> {
    let (v, x) = s.split_once('=').ok_or("expected VERTEX=VALUE")?;
    Ok((v.to_string(), x.parse().map_err(|e| format!("{e}"))?))
}

/// An error with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

const INVALID: u8 = 2;
const INTERNAL: u8 = 3;

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let code = match e {
            GameError::IterationBound { .. }
            | GameError::OracleViolation(_)
            | GameError::NoOptimalSuccessor(_)
            | GameError::Overflow(_) => INTERNAL,
            _ => INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Validation(g) => g.into(),
            other => Failure {
                code: INVALID,
                message: other.to_string(),
            },
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: INVALID,
        message: format!("{}: {e}", path.display()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn solve(args: &SolveArgs) -> Result<u8, Failure> {
    let (arena, dfa) = parse_instance(&args.instance)?;
    let report = solve_report(&arena, &dfa, args.mode.into(), args.trace)?;
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Toml => print!("{}", report.to_toml()),
    }
    if let Some(dir) = &args.strategies {
        std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        let s = &report.strategies;
        for (name, file) in [("player0.toml", &s.player0), ("player1.toml", &s.player1)] {
            write_file(&dir.join(name), &file.to_toml())?;
        }
    }
    Ok(0)
}

fn verify_one(path: &Path, args: &VerifyArgs) -> Result<(String, bool), Failure> {
    let (arena, dfa) = parse_instance(path)?;
    let size = arena.num_vertices() * dfa.num_states();
    if size > args.max_product && !args.force {
        return Err(Failure {
            code: INVALID,
            message: format!(
                "{}: product has {size} vertices, above --max-product {}; pass --force to run anyway",
                path.display(),
                args.max_product
            ),
        });
    }
    let strategy = match &args.strategy {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| io_failure(p, e))?;
            Some(read_strategy(&text, &arena)?)
        }
        None => None,
    };
    let checks = verify::verify(&Request {
        arena: &arena,
        dfa: &dfa,
        strategy: strategy.as_ref(),
        expect: &args.expect,
    })?;
    let mut text = format!("{}\n", path.display());
    for c in &checks {
        text.push_str(&format!("  {c}\n"));
    }
    Ok((text, checks.iter().all(|c| c.outcome != Outcome::Fail)))
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure {
            code: INTERNAL,
            message: e.to_string(),
        })?;
    let results: Vec<_> =
        pool.install(|| args.instances.par_iter().map(|p| verify_one(p, args)).collect());
    let mut all_pass = true;
    for r in results {
        let (text, pass) = r?;
        print!("{text}");
        all_pass &= pass;
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn export_dot(args: &DotArgs) -> Result<u8, Failure> {
    let (arena, dfa) = parse_instance(&args.instance)?;
    let (product, memory) = ProductArena::from_dfa(&arena, &dfa)?;
    let report = args
        .solve
        .map(|m| solve_report(&arena, &dfa, m.into(), false))
        .transpose()?;
    let dot = if args.product {
        // Strategies live on the base arena, so the product view shows ranks only.
        let options = DotOptions {
            accepting: Some(product.goal().clone()),
            ranks: report.as_ref().map(|r| r.fixpoint.clone()),
            ..DotOptions::default()
        };
        to_dot(product.arena(), &options)
    } else {
        let accepting = VertexSet::from_fn(arena.num_vertices(), |i| {
            product.goal().contains(product.initial_vertex(&memory, i.into()))
        });
        let mut options = DotOptions {
            accepting: Some(accepting),
            ranks: report.as_ref().map(|r| r.values.clone()),
            ..DotOptions::default()
        };
        if let Some(r) = &report {
            let sigma = r.strategies.player0.to_strategy(&arena)?;
            let used = limitgame::strategy::reachable_memory_states(
                &arena,
                &sigma,
                &arena.vertices().collect::<Vec<_>>(),
            )?;
            for v in arena.vertices() {
                for &m in &used {
                    if let Ok(t) = sigma.next_move(v, m) {
                        options.highlight.insert((v, t));
                    }
                }
            }
        }
        to_dot(&arena, &options)
    };
    print!("{dot}");
    Ok(0)
}

fn generate(args: &GenerateArgs) -> Result<u8, Failure> {
    let (arena, dfa) = match args.family {
        Family::Memory { n, s } => generate_family_15_1(n, s)?,
        Family::Value { m, n, w } => generate_family_15_2(m, n, w)?,
        Family::Random {
            seed,
            min_vertices,
            max_vertices,
            max_out_degree,
            colors,
            states,
            accepting,
            max_weight,
        } => random_instance(
            &RandomParams {
                min_vertices,
                max_vertices,
                max_out_degree,
                colors,
                states,
                accepting,
                max_weight,
            },
            seed,
        )?,
    };
    let text = write_instance(&arena, &dfa);
    match &args.output {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::ExportDot(a) => export_dot(a),
        Command::Generate(a) => generate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
