//! Weighted, colored two-player arenas.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::GameError;

/// The two players. Player 0 minimizes, Player 1 maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Player {}", self.index())
    }
}

/// Dense vertex index, `0 <= index < |V|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex index exceeds u32"))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A color, i.e. a letter of the alphabet the winning condition reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u32);

impl Color {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned color names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Color>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::new();
        for name in names {
            alphabet.intern(name);
        }
        alphabet
    }

    /// Returns the color for `name`, adding it when new.
    pub fn intern(&mut self, name: impl Into<String>) -> Color {
        let name = name.into();
        if let Some(&c) = self.lookup.get(&name) {
            return c;
        }
        let c = Color(self.names.len() as u32);
        self.lookup.insert(name.clone(), c);
        self.names.push(name);
        c
    }

    pub fn get(&self, name: &str) -> Option<Color> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, c: Color) -> &str {
        &self.names[c.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.names.len() as u32).map(Color)
    }
}

/// One failed well-formedness rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyVertexSet,
    SinkVertex(String),
    DanglingEdge { from: usize, to: usize },
    DuplicateEdge { from: String, to: String },
    UnknownColor { vertex: String },
    EmptyAlphabet,
    EmptyWordAccepted,
    PartialTransition { state: String, color: String },
    UnknownState(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyVertexSet => f.write_str("empty vertex set"),
            Violation::SinkVertex(v) => write!(f, "sink vertex {v}"),
            Violation::DanglingEdge { from, to } => {
                write!(f, "dangling edge endpoint in edge #{from} -> #{to}")
            }
            Violation::DuplicateEdge { from, to } => write!(f, "duplicate edge {from} -> {to}"),
            Violation::UnknownColor { vertex } => write!(f, "unknown color at vertex {vertex}"),
            Violation::EmptyAlphabet => f.write_str("empty alphabet"),
            Violation::EmptyWordAccepted => {
                f.write_str("empty word accepted: the initial state is accepting")
            }
            Violation::PartialTransition { state, color } => {
                write!(f, "partial transition function: missing transition ({state}, {color})")
            }
            Violation::UnknownState(q) => write!(f, "unknown state #{q}"),
        }
    }
}

/// Outcome of a validation pass; valid iff no violations were found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Unvalidated arena description.
#[derive(Debug, Clone, Default)]
pub struct ArenaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    owners: Vec<Player>,
    colors: Vec<Color>,
    edges: Vec<(usize, usize, u64)>,
}

impl ArenaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_alphabet(alphabet: Alphabet) -> Self {
        ArenaBuilder {
            alphabet,
            ..Self::default()
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Adds a vertex; the color name is interned.
    pub fn vertex(&mut self, name: impl Into<String>, owner: Player, color: &str) -> VertexId {
        let c = self.alphabet.intern(color);
        self.vertex_with_color(name, owner, c)
    }

    pub fn vertex_with_color(
        &mut self,
        name: impl Into<String>,
        owner: Player,
        color: Color,
    ) -> VertexId {
        let id = VertexId::from(self.names.len());
        self.names.push(name.into());
        self.owners.push(owner);
        self.colors.push(color);
        id
    }

    pub fn edge(&mut self, from: VertexId, to: VertexId, weight: u64) -> &mut Self {
        self.edges.push((from.index(), to.index(), weight));
        self
    }

    /// Adds an edge by raw indices, which may be out of range.
    pub fn raw_edge(&mut self, from: usize, to: usize, weight: u64) -> &mut Self {
        self.edges.push((from, to, weight));
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.names.len();
        if n == 0 {
            report.push(Violation::EmptyVertexSet);
        }
        for (i, c) in self.colors.iter().enumerate() {
            if c.index() >= self.alphabet.len() {
                report.push(Violation::UnknownColor {
                    vertex: self.names[i].clone(),
                });
            }
        }
        let mut out_degree = vec![0usize; n];
        let mut seen = HashSet::new();
        for &(from, to, _) in &self.edges {
            if from >= n || to >= n {
                report.push(Violation::DanglingEdge { from, to });
                continue;
            }
            if !seen.insert((from, to)) {
                report.push(Violation::DuplicateEdge {
                    from: self.names[from].clone(),
                    to: self.names[to].clone(),
                });
            }
            out_degree[from] += 1;
        }
        for (v, d) in out_degree.iter().enumerate() {
            if *d == 0 {
                report.push(Violation::SinkVertex(self.names[v].clone()));
            }
        }
        report
    }

    pub fn build(self) -> Result<Arena, GameError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(GameError::InvalidArena(report));
        }
        let n = self.names.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(from, to, w) in &self.edges {
            succ[from].push((VertexId::from(to), w));
            pred[to].push((VertexId::from(from), w));
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Ok(Arena {
            alphabet: self.alphabet,
            names: self.names,
            owners: self.owners,
            colors: self.colors,
            succ,
            pred,
        })
    }
}

/// See [`ArenaBuilder::validate`].
pub fn validate_arena(arena: &ArenaBuilder) -> ValidationReport {
    arena.validate()
}

/// A validated arena: every vertex has a successor, weights are nonnegative,
/// edges form a relation. Successor lists are sorted by target index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    alphabet: Alphabet,
    names: Vec<String>,
    owners: Vec<Player>,
    colors: Vec<Color>,
    succ: Vec<Vec<(VertexId, u64)>>,
    pred: Vec<Vec<(VertexId, u64)>>,
}

impl Arena {
    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + ExactSizeIterator {
        (0..self.names.len()).map(VertexId::from)
    }

    pub fn owner(&self, v: VertexId) -> Player {
        self.owners[v.index()]
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v.index()]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId::from)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Successors with edge weights, sorted by successor index.
    pub fn successors(&self, v: VertexId) -> &[(VertexId, u64)] {
        &self.succ[v.index()]
    }

    pub fn predecessors(&self, v: VertexId) -> &[(VertexId, u64)] {
        &self.pred[v.index()]
    }

    pub fn weight(&self, from: VertexId, to: VertexId) -> Option<u64> {
        let list = &self.succ[from.index()];
        list.binary_search_by_key(&to, |&(v, _)| v)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.weight(from, to).is_some()
    }

    /// All edges as `(from, to, weight)`, ordered by source then target.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u64)> + '_ {
        self.succ.iter().enumerate().flat_map(|(from, list)| {
            list.iter()
                .map(move |&(to, w)| (VertexId::from(from), to, w))
        })
    }

    /// Largest edge weight, `W`.
    pub fn max_weight(&self) -> u64 {
        self.edges().map(|(_, _, w)| w).max().unwrap_or(0)
    }

    /// Checks that the sequence is a path (consecutive vertices adjacent).
    pub fn is_path(&self, path: &[VertexId]) -> bool {
        path.iter().all(|v| v.index() < self.num_vertices())
            && path.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    /// Rebuilds a builder holding the same vertices and edges.
    pub fn to_builder(&self) -> ArenaBuilder {
        let mut b = ArenaBuilder::with_alphabet(self.alphabet.clone());
        for v in self.vertices() {
            b.vertex_with_color(self.name(v), self.owner(v), self.color(v));
        }
        for (from, to, w) in self.edges() {
            b.edge(from, to, w);
        }
        b
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        owners: Vec<Player>,
        colors: Vec<Color>,
        succ: Vec<Vec<(VertexId, u64)>>,
    ) -> Arena {
        let mut pred = vec![Vec::new(); names.len()];
        for (from, list) in succ.iter().enumerate() {
            for &(to, w) in list {
                pred[to.index()].push((VertexId::from(from), w));
            }
        }
        for list in &mut pred {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Arena {
            alphabet,
            names,
            owners,
            colors,
            succ,
            pred,
        }
    }
}
