//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use limitgame::limit::{
    extract_strategy_limit_p0, extract_strategy_limit_p1, solve_limit, value_map, LimitSolution,
};
use limitgame::memory::MemoryStructure;
use limitgame::oracle::{
    buchi_attractor, enumerate_positional_reach, evaluate_strategy_value_p0,
    evaluate_strategy_value_p1, generate_family_15_1, generate_family_15_2, oracle_limit_values,
    random_instance, RandomParams,
};
use limitgame::ranking::Ranking;
use limitgame::reach::solve_reach;
use limitgame::samples::{figure2_instance, figure3_instance};
use limitgame::strategy::{reachable_memory_states, strategy_size};
use limitgame::{Arena, Dfa, ExtWeight, GameError, ProductArena, VertexId, VertexSet};

type Outcome = Result<String, String>;

const INF: Option<u64> = None;

fn row(xs: &[Option<u64>]) -> Vec<ExtWeight> {
    xs.iter().map(|x| x.map_or(ExtWeight::INFINITY, ExtWeight::from)).collect()
}

fn at_initial(r: &Ranking, product: &ProductArena, memory: &MemoryStructure) -> Vec<ExtWeight> {
    product
        .base()
        .vertices()
        .map(|v| r[product.initial_vertex(memory, v)])
        .collect()
}

fn show(xs: &[ExtWeight]) -> String {
    let cells: Vec<String> = xs.iter().map(ExtWeight::to_string).collect();
    format!("({})", cells.join(","))
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn err(e: GameError) -> String {
    e.to_string()
}

struct Instance {
    name: String,
    arena: Arena,
    dfa: Dfa,
}

impl Instance {
    fn new(name: impl Into<String>, (arena, dfa): (Arena, Dfa)) -> Self {
        Instance {
            name: name.into(),
            arena,
            dfa,
        }
    }
}

fn random_set() -> Vec<Instance> {
    let mut set = vec![
        Instance::new("figure2", figure2_instance()),
        Instance::new("figure3", figure3_instance()),
    ];
    let params = RandomParams {
        max_vertices: 4,
        states: 2,
        accepting: 1,
        max_weight: 3,
        ..RandomParams::default()
    };
    for seed in 0..200 {
        set.push(Instance::new(format!("random seed {seed}"), random_instance(&params, seed).unwrap()));
    }
    set
}

fn family_15_1_set() -> Vec<(usize, usize, Instance)> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for s in [2, 3] {
            let inst = Instance::new(format!("15.1 n={n} s={s}"), generate_family_15_1(n, s).unwrap());
            out.push((n, s, inst));
        }
    }
    out
}

fn family_15_2_set() -> Vec<(usize, usize, u64, Instance)> {
    let mut out = Vec::new();
    for m in [2, 3] {
        for n in [2, 3] {
            for w in [1, 5, 10] {
                let inst =
                    Instance::new(format!("15.2 m={m} n={n} W={w}"), generate_family_15_2(m, n, w).unwrap());
                out.push((m, n, w, inst));
            }
        }
    }
    out
}

fn scaling_set() -> Vec<Instance> {
    [(125, 1), (250, 2), (500, 3)]
        .into_iter()
        .map(|(n, seed)| {
            let params = RandomParams {
                min_vertices: n,
                max_vertices: n,
                max_out_degree: 4,
                colors: 3,
                states: 4,
                accepting: 2,
                max_weight: 10,
            };
            Instance::new(format!("scaling {}x4", n), random_instance(&params, seed).unwrap())
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let (arena, dfa) = figure2_instance();
    let (product, memory) = ProductArena::from_dfa(&arena, &dfa).map_err(err)?;
    let start = Instant::now();
    let sol = solve_reach(&product, product.goal()).map_err(err)?;
    let elapsed = start.elapsed();
    let expected = [
        row(&[INF, INF, INF, INF, INF, INF, INF]),
        row(&[Some(0), INF, INF, INF, INF, INF, INF]),
        row(&[Some(0), INF, Some(4), INF, Some(99), INF, INF]),
        row(&[Some(0), Some(5), Some(4), Some(4), Some(99), INF, INF]),
        row(&[Some(0), Some(5), Some(4), Some(4), Some(11), INF, INF]),
        row(&[Some(0), Some(5), Some(4), Some(4), Some(11), INF, INF]),
    ];
    let got: Vec<_> = sol.trace.iter().map(|r| at_initial(r, &product, &memory)).collect();
    if got != expected {
        let rows: Vec<String> = got.iter().map(|r| show(r)).collect();
        return Err(format!("trace {}", rows.join(" ")));
    }
    if elapsed >= Duration::from_millis(10) {
        return Err(format!("took {}", ms(elapsed)));
    }
    Ok(format!("r0..r5 exact, r4 = r5 = {}, {}", show(&got[4]), ms(elapsed)))
}

fn criterion_2() -> Outcome {
    let (arena, dfa) = figure3_instance();
    let (product, memory) = ProductArena::from_dfa(&arena, &dfa).map_err(err)?;
    let start = Instant::now();
    let sol = solve_limit(&product, product.goal()).map_err(err)?;
    let elapsed = start.elapsed();
    let expected = [
        row(&[Some(0), Some(0), Some(0), Some(0), Some(0)]),
        row(&[Some(4), Some(2), Some(3), INF, INF]),
        row(&[Some(4), Some(3), INF, INF, INF]),
        row(&[Some(4), Some(7), INF, INF, INF]),
        row(&[Some(4), Some(7), INF, INF, INF]),
    ];
    let got: Vec<_> = sol.trace.iter().map(|r| at_initial(r, &product, &memory)).collect();
    if got != expected {
        let rows: Vec<String> = got.iter().map(|r| show(r)).collect();
        return Err(format!("trace {}", rows.join(" ")));
    }
    let stable = got.iter().position(|r| *r == expected[4]).expect("present");
    let f = product.goal().len();
    if stable > f + 1 {
        return Err(format!("stable at r_{stable}, bound {}", f + 1));
    }
    if elapsed >= Duration::from_millis(10) {
        return Err(format!("took {}", ms(elapsed)));
    }
    Ok(format!(
        "r0..r4 exact, r* = {}, stable at r_{stable} <= {}, {}",
        show(&got[4]),
        f + 1,
        ms(elapsed)
    ))
}

fn solve_values(inst: &Instance) -> Result<(ProductArena, MemoryStructure, LimitSolution, Vec<ExtWeight>), String> {
    let (product, memory) = ProductArena::from_dfa(&inst.arena, &inst.dfa).map_err(err)?;
    let sol = solve_limit(&product, product.goal()).map_err(err)?;
    let values = value_map(&sol, &product, &memory);
    Ok((product, memory, sol, values))
}

fn criterion_3(set: &[Instance]) -> Outcome {
    let mut checked = 0;
    for inst in set {
        let (product, memory, sol, values) = solve_values(inst)?;
        let sigma = extract_strategy_limit_p0(&product, &sol, &memory).map_err(err)?;
        let tau = extract_strategy_limit_p1(&product, &sol, &memory).map_err(err)?;
        for v in inst.arena.vertices() {
            let p0 = evaluate_strategy_value_p0(&inst.arena, &inst.dfa, &sigma, v).map_err(err)?;
            let p1 = evaluate_strategy_value_p1(&inst.arena, &inst.dfa, &tau, v).map_err(err)?;
            let want = values[v.index()];
            if p0 != want || p1 != want {
                return Err(format!(
                    "{} at {}: sigma {p0}, tau {p1}, value {want}",
                    inst.name,
                    inst.arena.name(v)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{} instances, {checked} vertices", set.len()))
}

fn criterion_4(set: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut enumerated = 0;
    for inst in set {
        let (product, memory, _, values) = solve_values(inst)?;
        let oracle = oracle_limit_values(&product, &memory).map_err(err)?;
        if oracle != values {
            return Err(format!("{}: value_map {} vs oracle {}", inst.name, show(&values), show(&oracle)));
        }
        if product.num_vertices() <= 8 {
            let reach = solve_reach(&product, product.goal()).map_err(err)?;
            let brute = enumerate_positional_reach(&product, product.goal()).map_err(err)?;
            if reach.fixpoint.values() != &brute[..] {
                return Err(format!(
                    "{}: solve_reach {} vs enumeration {}",
                    inst.name,
                    show(reach.fixpoint.values()),
                    show(&brute)
                ));
            }
            enumerated += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "{} limit comparisons, {enumerated} reach enumerations, {:.2} s",
        set.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_5(all: &[&Instance]) -> Outcome {
    for inst in all {
        let (product, memory, sol, _) = solve_values(inst)?;
        let (n, s) = (inst.arena.num_vertices() as u64, inst.dfa.num_states() as u64);
        let f = inst.dfa.accepting_states().len() as u64;
        let cap = ExtWeight::from((n * s + 1) * inst.arena.max_weight());
        if let Some(x) = sol.fixpoint.values().iter().find(|x| x.is_finite() && **x > cap) {
            return Err(format!("{}: value {x} above {cap}", inst.name));
        }
        let sigma = extract_strategy_limit_p0(&product, &sol, &memory).map_err(err)?;
        let size = strategy_size(&sigma) as u64;
        if size > n * s * f {
            return Err(format!("{}: strategy size {size} above n*s*f = {}", inst.name, n * s * f));
        }
    }
    Ok(format!("{} instances", all.len()))
}

fn criterion_6(set: &[(usize, usize, u64, Instance)]) -> Outcome {
    let mut wrong = Vec::new();
    for (m, n, w, inst) in set {
        let (_, _, _, values) = solve_values(inst)?;
        let want = ExtWeight::from((m * n) as u64 * w);
        if values[0] != want {
            wrong.push(format!("(m={m},n={n},W={w}): {} != {want}", values[0]));
        }
    }
    if wrong.is_empty() {
        Ok(format!("{} parameter triples", set.len()))
    } else {
        Err(format!("{} of {} differ, {}", wrong.len(), set.len(), wrong.join("; ")))
    }
}

fn criterion_7(set: &[(usize, usize, Instance)]) -> Outcome {
    let mut sizes = Vec::new();
    for (n, s, inst) in set {
        let (product, memory, sol, values) = solve_values(inst)?;
        for j in 1..=*n {
            let want = ExtWeight::from((n + 1 + j) as u64);
            if values[j - 1] != want {
                return Err(format!("{}: v{j} has {} != {want}", inst.name, values[j - 1]));
            }
        }
        let sigma = extract_strategy_limit_p0(&product, &sol, &memory).map_err(err)?;
        let starts: Vec<VertexId> = (0..*n).map(|j| VertexId(j as u32)).collect();
        let used = reachable_memory_states(&inst.arena, &sigma, &starts).map_err(err)?.len();
        if used < n * (s - 1) {
            return Err(format!("{}: {used} reachable memory states < {}", inst.name, n * (s - 1)));
        }
        sizes.push(format!("{used}>={}", n * (s - 1)));
    }
    Ok(format!("values n+1+j exact, reachable memory {}", sizes.join(" ")))
}

fn criterion_8(all: &[&Instance]) -> Outcome {
    for inst in all {
        let (product, _, sol, _) = solve_values(inst)?;
        let finite = VertexSet::from_fn(product.num_vertices(), |i| sol.fixpoint.values()[i].is_finite());
        let win = buchi_attractor(&product, product.goal());
        if finite != win {
            return Err(format!("{}: {} finite vs {} winning", inst.name, finite.len(), win.len()));
        }
    }
    Ok(format!("{} instances", all.len()))
}

fn criterion_9(all: &[&Instance]) -> Outcome {
    let (mut worst_reach, mut worst_limit) = (0usize, 0usize);
    for inst in all {
        let (product, _, sol, _) = solve_values(inst)?;
        let stable = sol.trace.iter().position(|r| *r == sol.fixpoint).expect("present");
        if stable > product.goal().len() + 1 {
            return Err(format!("{}: limit stable at r_{stable}", inst.name));
        }
        worst_limit = worst_limit.max(stable);
        let reach = solve_reach(&product, product.goal()).map_err(err)?;
        let stable = reach.trace.iter().position(|r| *r == reach.fixpoint).expect("present");
        if stable > product.num_vertices() + 1 {
            return Err(format!("{}: reach stable at r_{stable}", inst.name));
        }
        worst_reach = worst_reach.max(stable);
    }
    Ok(format!(
        "{} instances, longest reach {worst_reach} steps, longest limit {worst_limit} steps",
        all.len()
    ))
}

fn criterion_10(set: &[Instance]) -> Outcome {
    let mut times = Vec::new();
    for inst in set {
        let (product, _) = ProductArena::from_dfa(&inst.arena, &inst.dfa).map_err(err)?;
        let start = Instant::now();
        solve_limit(&product, product.goal()).map_err(err)?;
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(30) {
            return Err(format!("{}: {:.1} s", inst.name, elapsed.as_secs_f64()));
        }
        times.push(format!("{} vertices {:.2} s", product.num_vertices(), elapsed.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn main() -> ExitCode {
    let random = random_set();
    let fam1 = family_15_1_set();
    let fam2 = family_15_2_set();
    let scaling = scaling_set();
    let all: Vec<&Instance> = random
        .iter()
        .chain(fam1.iter().map(|t| &t.2))
        .chain(fam2.iter().map(|t| &t.3))
        .chain(&scaling)
        .collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("figure 2 golden trace", Box::new(criterion_1)),
        ("figure 3 golden trace", Box::new(criterion_2)),
        ("strategy optimality sandwich", Box::new(|| criterion_3(&random))),
        ("oracle equivalence", Box::new(|| criterion_4(&random))),
        ("value and memory bounds", Box::new(|| criterion_5(&all))),
        ("family 15.2 value law m*n*W", Box::new(|| criterion_6(&fam2))),
        ("family 15.1 value and memory laws", Box::new(|| criterion_7(&fam1))),
        ("finite values equal the Büchi region", Box::new(|| criterion_8(&all))),
        ("iteration bounds", Box::new(|| criterion_9(&all))),
        ("scaling to 2000 product vertices", Box::new(|| criterion_10(&scaling))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
