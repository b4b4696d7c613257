//! Weighted limit games: the greatest fixed point of `ℓ_L`.
//!
//! Level indices `h` are 1-based throughout, so a hierarchy with `k` levels
//! has levels `1..=k` and the Player 0 strategy memory is `{1, …, k}`.

use crate::arena::{Arena, Player, VertexId};
use crate::error::GameError;
use crate::memory::{MemState, MemoryStructure};
use crate::product::{ProductArena, VertexSet};
use crate::ranking::{first_stable_index, Ranking};
use crate::reach::{completion, reach_fixpoint_dijkstra, solve_reach, LevelSolution};
use crate::strategy::{compose_memory, FiniteStateStrategy};
use crate::weight::ExtWeight;

/// How the per-level least fixed points are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerSolver {
    #[default]
    Dijkstra,
    /// Plain iteration of `ℓ_{F_h}`, recording the full trace.
    Iteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HierarchyOptions {
    /// Whether an ∞ rank on the goal forms a level of its own.
    pub include_infinite: bool,
    pub inner: InnerSolver,
}

impl Default for HierarchyOptions {
    fn default() -> Self {
        HierarchyOptions {
            include_infinite: true,
            inner: InnerSolver::Dijkstra,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    /// `𝔯_h`.
    pub rank: ExtWeight,
    /// `F_h = {v ∈ F | r(v) ≤ 𝔯_h}`.
    pub members: VertexSet,
    /// `r'_h`, the least fixed point of `ℓ_{F_h}`.
    pub inner: LevelSolution,
    /// `r''_h = cmplt_{F_h}(r'_h)`.
    pub completed: Ranking,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hierarchy {
    levels: Vec<Level>,
}

impl Hierarchy {
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// Level `h`, 1-based.
    pub fn level(&self, h: usize) -> &Level {
        &self.levels[h - 1]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn ranks(&self) -> Vec<ExtWeight> {
        self.levels.iter().map(|l| l.rank).collect()
    }

    /// `max{r(v), r''_h(v), 𝔯_h}`.
    fn candidate(&self, r: &Ranking, v: VertexId, h: usize) -> ExtWeight {
        let l = self.level(h);
        r[v].max(l.completed[v]).max(l.rank)
    }

    /// `ℓ_L(r)(v)`; ∞ when there are no levels.
    pub fn apply(&self, r: &Ranking, v: VertexId) -> ExtWeight {
        (1..=self.k())
            .map(|h| self.candidate(r, v, h))
            .min()
            .unwrap_or(ExtWeight::INFINITY)
    }
}

/// Orders the goal vertices by their current rank into nested levels.
pub fn build_hierarchy(
    r: &Ranking,
    product: &ProductArena,
    goal: &VertexSet,
    options: HierarchyOptions,
) -> Result<Hierarchy, GameError> {
    if goal.is_empty() {
        return Err(GameError::EmptyGoal);
    }
    let mut ranks: Vec<ExtWeight> = goal.iter().map(|v| r[v]).collect();
    ranks.sort_unstable();
    ranks.dedup();
    if !options.include_infinite {
        ranks.retain(|x| x.is_finite());
    }
    let levels = ranks
        .into_iter()
        .map(|rank| {
            let members = VertexSet::from_fn(goal.universe(), |i| {
                let v = VertexId::from(i);
                goal.contains(v) && r[v] <= rank
            });
            let inner = match options.inner {
                InnerSolver::Dijkstra => reach_fixpoint_dijkstra(product, &members)?,
                InnerSolver::Iteration => LevelSolution::from(&solve_reach(product, &members)?),
            };
            let completed = completion(&inner.values, &members, product)?;
            Ok(Level {
                rank,
                members,
                inner,
                completed,
            })
        })
        .collect::<Result<_, GameError>>()?;
    Ok(Hierarchy { levels })
}

/// `ℓ_L(r)` together with the hierarchy of `r` it was computed from.
pub fn lift_limit_with(
    r: &Ranking,
    product: &ProductArena,
    goal: &VertexSet,
    options: HierarchyOptions,
) -> Result<(Ranking, Hierarchy), GameError> {
    let hierarchy = build_hierarchy(r, product, goal, options)?;
    let next = Ranking::from_values(
        product
            .arena()
            .vertices()
            .map(|v| hierarchy.apply(r, v))
            .collect(),
    );
    Ok((next, hierarchy))
}

pub fn lift_limit(
    r: &Ranking,
    product: &ProductArena,
    goal: &VertexSet,
) -> Result<Ranking, GameError> {
    Ok(lift_limit_with(r, product, goal, HierarchyOptions::default())?.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSolution {
    pub fixpoint: Ranking,
    /// `trace[0]` is all-zero and the last two entries are equal.
    pub trace: Vec<Ranking>,
    /// `hierarchies[j]` is the hierarchy of `trace[j]`; the last one belongs
    /// to the fixed point.
    pub hierarchies: Vec<Hierarchy>,
    pub settling: Vec<usize>,
    pub goal: VertexSet,
}

impl LimitSolution {
    /// The hierarchy of `r*`.
    pub fn final_hierarchy(&self) -> &Hierarchy {
        self.hierarchies.last().expect("trace is nonempty")
    }
}

pub fn solve_limit(product: &ProductArena, goal: &VertexSet) -> Result<LimitSolution, GameError> {
    solve_limit_with(product, goal, HierarchyOptions::default())
}

/// Iterates `ℓ_L` from the all-zero ranking until it stabilizes.
pub fn solve_limit_with(
    product: &ProductArena,
    goal: &VertexSet,
    options: HierarchyOptions,
) -> Result<LimitSolution, GameError> {
    let n = product.num_vertices();
    if goal.universe() != n {
        return Err(GameError::ArenaMismatch("goal set does not match the arena".into()));
    }
    let zero = Ranking::constant(n, ExtWeight::ZERO);
    if goal.is_empty() {
        let inf = Ranking::constant(n, ExtWeight::INFINITY);
        let trace = vec![zero, inf.clone(), inf.clone()];
        let settling = first_stable_index(&trace, &inf);
        return Ok(LimitSolution {
            fixpoint: inf,
            trace,
            hierarchies: vec![Hierarchy::default(); 3],
            settling,
            goal: goal.clone(),
        });
    }
    let bound = goal.len() + 1;
    let mut trace = vec![zero];
    let mut hierarchies = Vec::new();
    loop {
        let current = trace.last().expect("nonempty");
        let (next, hierarchy) = lift_limit_with(current, product, goal, options)?;
        let done = &next == current;
        hierarchies.push(hierarchy);
        trace.push(next);
        if done {
            break;
        }
        // A still-changing ranking may not lie beyond index `bound`.
        if trace.len() - 1 > bound {
            return Err(GameError::IterationBound {
                solver: "limit iteration",
                bound,
            });
        }
    }
    // The fixed point's hierarchy equals that of the previous (identical)
    // ranking.
    hierarchies.push(hierarchies.last().expect("nonempty").clone());
    let fixpoint = trace.last().expect("nonempty").clone();
    let settling = first_stable_index(&trace, &fixpoint);
    Ok(LimitSolution {
        fixpoint,
        trace,
        hierarchies,
        settling,
        goal: goal.clone(),
    })
}

/// Smallest `h` with `r*(v) = max{r*(v), r''_h(v), 𝔯_h}` in the fixed
/// point's hierarchy; `None` for an empty goal.
pub fn choose_h(solution: &LimitSolution, v: VertexId) -> Option<usize> {
    let hier = solution.final_hierarchy();
    let r = &solution.fixpoint;
    (1..=hier.k()).find(|&h| hier.candidate(r, v, h) == r[v])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Zero,
    /// Maximal `h` with `r*(v) = r''_h(v)`.
    One(usize),
    /// The `h` with `r*(v) = 𝔯_h`.
    Two(usize),
}

/// Classifies `v` against the hierarchy of `r_{t_s(v)-1}`.
pub fn classify_vertex(solution: &LimitSolution, v: VertexId) -> Result<VertexClass, GameError> {
    let value = solution.fixpoint[v];
    if value == ExtWeight::ZERO {
        return Ok(VertexClass::Zero);
    }
    let t = solution.settling[v.index()];
    let broken = || GameError::NoOptimalSuccessor(format!("classification of vertex {v}"));
    if t == 0 {
        return Err(broken());
    }
    let hier = &solution.hierarchies[t - 1];
    if let Some(h) = (1..=hier.k())
        .rev()
        .find(|&h| hier.level(h).completed[v] == value)
    {
        return Ok(VertexClass::One(h));
    }
    (1..=hier.k())
        .find(|&h| hier.level(h).rank == value)
        .map(VertexClass::Two)
        .ok_or_else(broken)
}

fn step_values<'a>(
    arena: &'a Arena,
    r: &'a Ranking,
    v: VertexId,
) -> impl Iterator<Item = (VertexId, ExtWeight)> + 'a {
    arena
        .successors(v)
        .iter()
        .map(move |&(s, w)| (s, r[s].checked_add(w).unwrap_or(ExtWeight::INFINITY)))
}

/// First successor minimizing `w + r(s)`.
fn argmin_step(arena: &Arena, r: &Ranking, v: VertexId) -> VertexId {
    let mut best: Option<(VertexId, ExtWeight)> = None;
    for (s, x) in step_values(arena, r, v) {
        if best.map_or(true, |(_, b)| x < b) {
            best = Some((s, x));
        }
    }
    best.expect("every vertex has a successor").0
}

/// First successor maximizing `w + r(s)`.
fn argmax_step(arena: &Arena, r: &Ranking, v: VertexId) -> VertexId {
    let mut best: Option<(VertexId, ExtWeight)> = None;
    for (s, x) in step_values(arena, r, v) {
        if best.map_or(true, |(_, b)| x > b) {
            best = Some((s, x));
        }
    }
    best.expect("every vertex has a successor").0
}

/// Player 0's move at `v` while aiming for level `h`: toward `F_h` along
/// `r'_h` with strictly decreasing order, or out of `F_h` at cost `r''_h`.
fn level_move(arena: &Arena, level: &Level, v: VertexId) -> Result<VertexId, GameError> {
    let inner = &level.inner;
    let r = &inner.values;
    if level.members.contains(v) {
        return Ok(argmin_step(arena, r, v));
    }
    if r[v].is_infinite() {
        return Ok(arena.successors(v)[0].0);
    }
    step_values(arena, r, v)
        .find(|&(s, x)| x == r[v] && inner.order[s.index()] < inner.order[v.index()])
        .map(|(s, _)| s)
        .ok_or_else(|| GameError::NoOptimalSuccessor(arena.name(v).to_string()))
}

/// `σ'` on the product with memory `{1, …, k}` (state `h - 1` is level `h`).
pub fn strategy_limit_p0_product(
    product: &ProductArena,
    solution: &LimitSolution,
) -> Result<FiniteStateStrategy, GameError> {
    let arena = product.arena();
    let n = arena.num_vertices();
    let hier = solution.final_hierarchy();
    if hier.k() == 0 {
        let choice = arena
            .vertices()
            .map(|v| (arena.owner(v) == Player::Zero).then(|| arena.successors(v)[0].0))
            .collect();
        return FiniteStateStrategy::positional(arena, Player::Zero, choice);
    }
    let k = hier.k();
    let h_of: Vec<MemState> = arena
        .vertices()
        .map(|v| choose_h(solution, v).map(|h| (h - 1) as MemState))
        .collect::<Option<_>>()
        .ok_or(GameError::NoOptimalSuccessor("choice of level".into()))?;
    let mut upd = Vec::with_capacity(k * n);
    let mut nxt = Vec::with_capacity(k * n);
    for h in 1..=k {
        let level = hier.level(h);
        for v in arena.vertices() {
            upd.push(if level.members.contains(v) {
                h_of[v.index()]
            } else {
                (h - 1) as MemState
            });
            nxt.push(if arena.owner(v) == Player::Zero {
                Some(level_move(arena, level, v)?)
            } else {
                None
            });
        }
    }
    let labels = (1..=k).map(|h| h.to_string()).collect();
    let memory = MemoryStructure::new(labels, h_of, upd)?;
    FiniteStateStrategy::new(arena, Player::Zero, memory, nxt)
}

/// `τ'` on the product with memory `V` (state `i` is product vertex `i`,
/// the last goal vertex seen or the start).
pub fn strategy_limit_p1_product(
    product: &ProductArena,
    solution: &LimitSolution,
) -> Result<FiniteStateStrategy, GameError> {
    let arena = product.arena();
    let n = arena.num_vertices();
    let goal = &solution.goal;
    // Ranking whose argmax gives the move while the memory is `m`.
    let targets: Vec<Option<&Ranking>> = arena
        .vertices()
        .map(|m| {
            if goal.is_empty() {
                return Ok(None);
            }
            let pick = |h: usize| {
                let t = solution.settling[m.index()];
                &solution.hierarchies[t - 1].level(h).inner.values
            };
            Ok(match classify_vertex(solution, m)? {
                VertexClass::Zero | VertexClass::Two(1) => None,
                VertexClass::One(h) => Some(pick(h)),
                VertexClass::Two(h) => Some(pick(h - 1)),
            })
        })
        .collect::<Result<_, GameError>>()?;
    let init = (0..n as MemState).collect();
    let mut upd = Vec::with_capacity(n * n);
    let mut nxt = Vec::with_capacity(n * n);
    for m in arena.vertices() {
        for v in arena.vertices() {
            upd.push(if goal.contains(v) { v.0 } else { m.0 });
            nxt.push((arena.owner(v) == Player::One).then(|| match targets[m.index()] {
                None => arena.successors(v)[0].0,
                Some(r) => argmax_step(arena, r, v),
            }));
        }
    }
    let labels = arena.vertices().map(|v| arena.name(v).to_string()).collect();
    let memory = MemoryStructure::new(labels, init, upd)?;
    FiniteStateStrategy::new(arena, Player::One, memory, nxt)
}

/// `σ`: the level strategy composed through `memory` onto the base arena.
pub fn extract_strategy_limit_p0(
    product: &ProductArena,
    solution: &LimitSolution,
    memory: &MemoryStructure,
) -> Result<FiniteStateStrategy, GameError> {
    compose_memory(memory, product, &strategy_limit_p0_product(product, solution)?)
}

/// `τ`: the last-goal-vertex strategy composed onto the base arena.
pub fn extract_strategy_limit_p1(
    product: &ProductArena,
    solution: &LimitSolution,
    memory: &MemoryStructure,
) -> Result<FiniteStateStrategy, GameError> {
    compose_memory(memory, product, &strategy_limit_p1_product(product, solution)?)
}

/// `v ↦ r*(v, init(v))` on the base arena.
pub fn value_map(
    solution: &LimitSolution,
    product: &ProductArena,
    memory: &MemoryStructure,
) -> Vec<ExtWeight> {
    product
        .base()
        .vertices()
        .map(|v| solution.fixpoint[product.initial_vertex(memory, v)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::ArenaBuilder;
    use crate::samples::figure3;

    fn ranks(values: &[Option<u64>]) -> Ranking {
        Ranking::from_values(
            values
                .iter()
                .map(|v| v.map_or(ExtWeight::INFINITY, ExtWeight::from))
                .collect(),
        )
    }

    const I: Option<u64> = None;

    fn figure3_rows() -> Vec<Ranking> {
        vec![
            ranks(&[Some(0); 5]),
            ranks(&[Some(4), Some(2), Some(3), I, I]),
            ranks(&[Some(4), Some(3), I, I, I]),
            ranks(&[Some(4), Some(7), I, I, I]),
            ranks(&[Some(4), Some(7), I, I, I]),
        ]
    }

    #[test]
    fn figure3_hierarchy_from_zero() {
        let p = figure3();
        let h = build_hierarchy(&figure3_rows()[0], &p, p.goal(), HierarchyOptions::default())
            .unwrap();
        assert_eq!(h.k(), 1);
        assert_eq!(h.level(1).members, *p.goal());
        assert_eq!(h.level(1).inner.values[VertexId(1)], ExtWeight::from(2));
        assert_eq!(h.level(1).completed[VertexId(0)], ExtWeight::from(4));
    }

    #[test]
    fn figure3_hierarchy_from_first_row() {
        let p = figure3();
        let h = build_hierarchy(&figure3_rows()[1], &p, p.goal(), HierarchyOptions::default())
            .unwrap();
        assert_eq!(
            h.ranks(),
            vec![ExtWeight::from(3), ExtWeight::from(4), ExtWeight::INFINITY]
        );
        let members: Vec<Vec<VertexId>> =
            h.levels().iter().map(|l| l.members.iter().collect()).collect();
        assert_eq!(
            members,
            vec![
                vec![VertexId(2)],
                vec![VertexId(0), VertexId(2)],
                vec![VertexId(0), VertexId(2), VertexId(3)]
            ]
        );
    }

    #[test]
    fn figure3_lifts() {
        let p = figure3();
        let rows = figure3_rows();
        for j in 0..3 {
            assert_eq!(lift_limit(&rows[j], &p, p.goal()).unwrap(), rows[j + 1]);
        }
    }

    #[test]
    fn figure3_trace_and_classes() {
        let p = figure3();
        let sol = solve_limit(&p, p.goal()).unwrap();
        assert_eq!(sol.trace, figure3_rows());
        assert_eq!(sol.settling, vec![1, 3, 2, 1, 1]);
        assert_eq!(choose_h(&sol, VertexId(1)), Some(1));
        assert_eq!(choose_h(&sol, VertexId(0)), Some(1));
        assert_eq!(classify_vertex(&sol, VertexId(0)).unwrap(), VertexClass::One(1));
        assert_eq!(classify_vertex(&sol, VertexId(1)).unwrap(), VertexClass::One(1));
        let sigma = strategy_limit_p0_product(&p, &sol).unwrap();
        assert_eq!(sigma.next_move(VertexId(1), 0).unwrap(), VertexId(0));
    }

    #[test]
    fn hierarchy_during_iteration_picks_second_level_for_v0() {
        let p = figure3();
        let h = build_hierarchy(&figure3_rows()[1], &p, p.goal(), HierarchyOptions::default())
            .unwrap();
        let r = &figure3_rows()[1];
        let v0 = VertexId(0);
        let first = (1..=h.k()).find(|&l| h.candidate(r, v0, l) == h.apply(r, v0));
        assert_eq!(first, Some(2));
    }

    #[test]
    fn single_goal_self_loop() {
        let mut b = ArenaBuilder::new();
        let x = b.vertex("x", Player::Zero, "a");
        b.edge(x, x, 5);
        let p = ProductArena::with_goal(b.build().unwrap(), VertexSet::full(1)).unwrap();
        let sol = solve_limit(&p, p.goal()).unwrap();
        assert_eq!(sol.fixpoint[x], ExtWeight::from(5));
        let sigma = strategy_limit_p0_product(&p, &sol).unwrap();
        assert_eq!(sigma.next_move(x, 0).unwrap(), x);
    }

    #[test]
    fn empty_goal_is_all_infinite() {
        let p = figure3();
        let empty = VertexSet::empty(5);
        let sol = solve_limit(&p, &empty).unwrap();
        assert!(sol.fixpoint.values().iter().all(|x| x.is_infinite()));
        assert_eq!(choose_h(&sol, VertexId(0)), None);
        assert!(matches!(
            build_hierarchy(&sol.fixpoint, &p, &empty, HierarchyOptions::default()),
            Err(GameError::EmptyGoal)
        ));
        strategy_limit_p0_product(&p, &sol).unwrap();
        strategy_limit_p1_product(&p, &sol).unwrap();
    }

    #[test]
    fn infinite_level_is_harmless() {
        let p = figure3();
        let without = HierarchyOptions {
            include_infinite: false,
            ..Default::default()
        };
        for r in figure3_rows() {
            let a = lift_limit(&r, &p, p.goal()).unwrap();
            let b = lift_limit_with(&r, &p, p.goal(), without).unwrap().0;
            assert_eq!(a, b);
        }
    }
}
