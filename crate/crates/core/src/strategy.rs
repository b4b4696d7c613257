//! Finite-state strategies: memory structure plus next-move table.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::arena::{Arena, Player, VertexId};
use crate::error::GameError;
use crate::memory::{MemState, MemoryStructure};
use crate::product::ProductArena;

/// A strategy for `player` implemented by `memory`.
///
/// `nxt[m * |V| + v]` is set exactly for the vertices `v` owned by `player`,
/// for every memory state `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStateStrategy {
    player: Player,
    memory: MemoryStructure,
    nxt: Vec<Option<VertexId>>,
}

impl FiniteStateStrategy {
    pub fn new(
        arena: &Arena,
        player: Player,
        memory: MemoryStructure,
        nxt: Vec<Option<VertexId>>,
    ) -> Result<Self, GameError> {
        let n = arena.num_vertices();
        if memory.num_vertices() != n || nxt.len() != n * memory.size() {
            return Err(GameError::ArenaMismatch(
                "strategy tables do not match the arena".into(),
            ));
        }
        for (i, choice) in nxt.iter().enumerate() {
            let v = VertexId::from(i % n);
            match (arena.owner(v) == player, choice) {
                (true, Some(t)) if arena.has_edge(v, *t) => {}
                (true, Some(t)) => {
                    return Err(GameError::BadParameter(format!(
                        "move {} -> {} is not an edge",
                        arena.name(v),
                        t.index()
                    )))
                }
                (true, None) => {
                    return Err(GameError::BadParameter(format!(
                        "no move at {} in memory state {}",
                        arena.name(v),
                        i / n
                    )))
                }
                (false, Some(_)) => return Err(GameError::NotOwned(arena.name(v).to_string())),
                (false, None) => {}
            }
        }
        Ok(FiniteStateStrategy {
            player,
            memory,
            nxt,
        })
    }

    /// A memoryless strategy; `choice[v]` is set for owned vertices.
    pub fn positional(
        arena: &Arena,
        player: Player,
        choice: Vec<Option<VertexId>>,
    ) -> Result<Self, GameError> {
        let memory = MemoryStructure::trivial(arena.num_vertices());
        Self::new(arena, player, memory, choice)
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn memory(&self) -> &MemoryStructure {
        &self.memory
    }

    pub fn num_vertices(&self) -> usize {
        self.memory.num_vertices()
    }

    /// `Nxt(v, m)`.
    pub fn next_move(&self, v: VertexId, m: MemState) -> Result<VertexId, GameError> {
        self.nxt[m as usize * self.num_vertices() + v.index()]
            .ok_or_else(|| GameError::NotOwned(v.to_string()))
    }

    pub(crate) fn choice(&self, v: VertexId, m: MemState) -> Option<VertexId> {
        self.nxt[m as usize * self.num_vertices() + v.index()]
    }
}

/// The size of the implementing memory structure, without minimization.
pub fn strategy_size(strategy: &FiniteStateStrategy) -> usize {
    strategy.memory.size()
}

pub fn next_move(
    strategy: &FiniteStateStrategy,
    v: VertexId,
    m: MemState,
) -> Result<VertexId, GameError> {
    strategy.next_move(v, m)
}

/// Turns a strategy on `A × M` with memory `M'` into one on `A` with memory
/// `M × M'`. State `(m, m')` has index `m * |M'| + m'`.
pub fn compose_memory(
    outer: &MemoryStructure,
    product: &ProductArena,
    inner: &FiniteStateStrategy,
) -> Result<FiniteStateStrategy, GameError> {
    if outer.size() != product.memory_states()
        || outer.num_vertices() != product.base_vertices()
        || inner.num_vertices() != product.num_vertices()
    {
        return Err(GameError::ArenaMismatch(
            "inner strategy is not over the product of this memory".into(),
        ));
    }
    let n = product.base_vertices();
    let mi = inner.memory.size();
    let size = outer.size() * mi;
    let pair = |m: MemState, mp: MemState| m * mi as MemState + mp;
    let labels = (0..outer.size() as MemState)
        .flat_map(|m| {
            (0..mi as MemState)
                .map(move |mp| (m, mp))
        })
        .map(|(m, mp)| {
            if mi == 1 {
                outer.label(m).to_string()
            } else if outer.size() == 1 {
                inner.memory.label(mp).to_string()
            } else {
                format!("{}|{}", outer.label(m), inner.memory.label(mp))
            }
        })
        .collect();
    let vertices = (0..n).map(VertexId::from);
    let init = vertices
        .clone()
        .map(|v| {
            let m = outer.init(v);
            pair(m, inner.memory.init(product.vertex(v, m)))
        })
        .collect();
    let mut upd = Vec::with_capacity(size * n);
    let mut nxt = Vec::with_capacity(size * n);
    for m in 0..outer.size() as MemState {
        for mp in 0..mi as MemState {
            for v in vertices.clone() {
                let m2 = outer.upd(m, v);
                upd.push(pair(m2, inner.memory.upd(mp, product.vertex(v, m2))));
                nxt.push(
                    inner
                        .choice(product.vertex(v, m), mp)
                        .map(|t| product.split(t).0),
                );
            }
        }
    }
    let memory = MemoryStructure::new(labels, init, upd)?;
    FiniteStateStrategy::new(product.base(), inner.player, memory, nxt)
}

/// Views a base-arena strategy as a strategy on `A × M` with the same memory.
pub fn lift_to_product(
    product: &ProductArena,
    strategy: &FiniteStateStrategy,
) -> Result<FiniteStateStrategy, GameError> {
    if strategy.num_vertices() != product.base_vertices() {
        return Err(GameError::ArenaMismatch(
            "strategy is not over the product's base arena".into(),
        ));
    }
    let pa = product.arena();
    let np = pa.num_vertices();
    let mem = &strategy.memory;
    let base = |p: VertexId| product.split(p).0;
    let init = pa.vertices().map(|p| mem.init(base(p))).collect();
    let mut upd = Vec::with_capacity(mem.size() * np);
    let mut nxt = Vec::with_capacity(mem.size() * np);
    for m in 0..mem.size() as MemState {
        for p in pa.vertices() {
            upd.push(mem.upd(m, base(p)));
            nxt.push(strategy.choice(base(p), m).map(|t| {
                pa.successors(p)
                    .iter()
                    .map(|&(s, _)| s)
                    .find(|&s| base(s) == t)
                    .expect("product successors cover base successors")
            }));
        }
    }
    let labels = (0..mem.size() as MemState)
        .map(|m| mem.label(m).to_string())
        .collect();
    let memory = MemoryStructure::new(labels, init, upd)?;
    FiniteStateStrategy::new(pa, strategy.player, memory, nxt)
}

/// Whether every decision of the strategy's player along `prefix` follows it.
pub fn consistent(
    arena: &Arena,
    prefix: &[VertexId],
    strategy: &FiniteStateStrategy,
) -> Result<bool, GameError> {
    if strategy.num_vertices() != arena.num_vertices() {
        return Err(GameError::ArenaMismatch("strategy is for another arena".into()));
    }
    if !prefix.is_empty() && !arena.is_path(prefix) {
        return Err(GameError::NotAPath);
    }
    let trace = strategy.memory.trace(prefix);
    Ok(prefix.windows(2).zip(&trace).all(|(step, &m)| {
        arena.owner(step[0]) != strategy.player
            || strategy.choice(step[0], m) == Some(step[1])
    }))
}

/// The one-player graph left after fixing a strategy.
///
/// Nodes are the configurations `(vertex, memory)` reachable from the given
/// start vertices, each entered with `init`. Node 0.. are numbered in
/// breadth-first order; `starts[i]` is the node of the i-th start vertex.
#[derive(Debug, Clone)]
pub struct RestrictedGraph {
    pub configs: Vec<(VertexId, MemState)>,
    pub succ: Vec<Vec<(usize, u64)>>,
    pub owner: Vec<Player>,
    pub starts: Vec<usize>,
}

impl RestrictedGraph {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn node_of(&self, config: (VertexId, MemState)) -> Option<usize> {
        self.configs.iter().position(|&c| c == config)
    }
}

/// Keeps only the strategy's choice at its player's vertices.
pub fn restrict(
    arena: &Arena,
    strategy: &FiniteStateStrategy,
    starts: &[VertexId],
) -> Result<RestrictedGraph, GameError> {
    if strategy.num_vertices() != arena.num_vertices() {
        return Err(GameError::ArenaMismatch("strategy is for another arena".into()));
    }
    let mem = &strategy.memory;
    let mut index: HashMap<(VertexId, MemState), usize> = HashMap::new();
    let mut configs = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |c: (VertexId, MemState),
                      configs: &mut Vec<(VertexId, MemState)>,
                      queue: &mut VecDeque<usize>| {
        *index.entry(c).or_insert_with(|| {
            configs.push(c);
            queue.push_back(configs.len() - 1);
            configs.len() - 1
        })
    };
    let start_nodes = starts
        .iter()
        .map(|&v| intern((v, mem.init(v)), &mut configs, &mut queue))
        .collect();
    let mut succ: Vec<Vec<(usize, u64)>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (v, m) = configs[i];
        let edges: Vec<(VertexId, u64)> = if arena.owner(v) == strategy.player {
            let t = strategy.choice(v, m).expect("validated strategy");
            vec![(t, arena.weight(v, t).expect("validated strategy"))]
        } else {
            arena.successors(v).to_vec()
        };
        let out = edges
            .into_iter()
            .map(|(t, w)| (intern((t, mem.upd(m, t)), &mut configs, &mut queue), w))
            .collect();
        if succ.len() <= i {
            succ.resize(i + 1, Vec::new());
        }
        succ[i] = out;
    }
    let owner = configs.iter().map(|&(v, _)| arena.owner(v)).collect();
    succ.resize(configs.len(), Vec::new());
    Ok(RestrictedGraph {
        configs,
        succ,
        owner,
        starts: start_nodes,
    })
}

/// Memory states occurring along plays consistent with the strategy from
/// `starts`.
pub fn reachable_memory_states(
    arena: &Arena,
    strategy: &FiniteStateStrategy,
    starts: &[VertexId],
) -> Result<HashSet<MemState>, GameError> {
    let g = restrict(arena, strategy, starts)?;
    Ok(g.configs.iter().map(|&(_, m)| m).collect())
}
