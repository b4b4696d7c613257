//! The TOML instance format: one file holding an arena and an automaton.

use std::collections::HashMap;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::arena::{Alphabet, Arena, ArenaBuilder, Player, VertexId};
use crate::dfa::{Dfa, DfaBuilder, StateId};
use crate::error::GameError;

/// 1-based position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn from_offset(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Location { line, column }
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{}syntax error: {message}", at(.location))]
    Syntax {
        location: Option<Location>,
        message: String,
    },
    #[error("{}{message}", at(.location))]
    Invalid {
        location: Option<Location>,
        message: String,
    },
    #[error(transparent)]
    Validation(#[from] GameError),
}

fn at(location: &Option<Location>) -> String {
    location.map_or_else(String::new, |l| format!("{l}: "))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    arena: RawArena,
    dfa: RawDfa,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArena {
    #[serde(default)]
    colors: Vec<Spanned<String>>,
    vertices: Vec<Spanned<RawVertex>>,
    #[serde(default)]
    edges: Vec<Spanned<RawEdge>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: Spanned<String>,
    owner: Spanned<i64>,
    color: Spanned<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: Spanned<String>,
    to: Spanned<String>,
    weight: Spanned<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDfa {
    states: Vec<Spanned<String>>,
    initial: Spanned<String>,
    #[serde(default)]
    accepting: Vec<Spanned<String>>,
    #[serde(default)]
    transitions: Vec<Spanned<RawTransition>>,
    default_sink: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    from: Spanned<String>,
    color: Spanned<String>,
    to: Spanned<String>,
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn invalid(&self, span: Range<usize>, message: impl Into<String>) -> ParseError {
        ParseError::Invalid {
            location: Some(Location::from_offset(self.text, span.start)),
            message: message.into(),
        }
    }

    fn lookup<T: Copy>(
        &self,
        table: &HashMap<String, T>,
        key: &Spanned<String>,
        what: &str,
    ) -> Result<T, ParseError> {
        table
            .get(key.get_ref())
            .copied()
            .ok_or_else(|| self.invalid(key.span(), format!("unknown {what} {:?}", key.get_ref())))
    }
}

/// Parses and validates an instance.
pub fn parse_instance_str(text: &str) -> Result<(Arena, Dfa), ParseError> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| ParseError::Syntax {
        location: e.span().map(|s| Location::from_offset(text, s.start)),
        message: e.message().to_string(),
    })?;
    let cx = Ctx { text };

    let mut alphabet = Alphabet::new();
    for c in &raw.arena.colors {
        if alphabet.get(c.get_ref()).is_some() {
            return Err(cx.invalid(c.span(), format!("duplicate color {:?}", c.get_ref())));
        }
        alphabet.intern(c.get_ref().clone());
    }
    let declared = !raw.arena.colors.is_empty();
    let colors_used = raw
        .arena
        .vertices
        .iter()
        .map(|v| &v.get_ref().color)
        .chain(raw.dfa.transitions.iter().map(|t| &t.get_ref().color));
    for c in colors_used {
        if alphabet.get(c.get_ref()).is_none() {
            if declared {
                return Err(cx.invalid(c.span(), format!("undeclared color {:?}", c.get_ref())));
            }
            alphabet.intern(c.get_ref().clone());
        }
    }

    let mut builder = ArenaBuilder::with_alphabet(alphabet.clone());
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    for v in &raw.arena.vertices {
        let v = v.get_ref();
        let owner = match *v.owner.get_ref() {
            0 => Player::Zero,
            1 => Player::One,
            _ => return Err(cx.invalid(v.owner.span(), "owner must be 0 or 1")),
        };
        if ids.contains_key(v.id.get_ref()) {
            return Err(cx.invalid(v.id.span(), format!("duplicate vertex id {:?}", v.id.get_ref())));
        }
        let id = builder.vertex(v.id.get_ref().clone(), owner, v.color.get_ref());
        ids.insert(v.id.get_ref().clone(), id);
    }
    let mut seen = HashMap::new();
    for e in &raw.arena.edges {
        let e = e.get_ref();
        let from = cx.lookup(&ids, &e.from, "vertex")?;
        let to = cx.lookup(&ids, &e.to, "vertex")?;
        let w = *e.weight.get_ref();
        if w < 0 {
            return Err(cx.invalid(e.weight.span(), format!("negative weight {w}")));
        }
        if seen.insert((from, to), ()).is_some() {
            return Err(cx.invalid(
                e.from.span(),
                format!("duplicate edge {} -> {}", e.from.get_ref(), e.to.get_ref()),
            ));
        }
        builder.edge(from, to, w as u64);
    }
    let arena = builder.build()?;

    let mut dfa = DfaBuilder::new(alphabet.clone());
    let mut states: HashMap<String, StateId> = HashMap::new();
    let accepting: Vec<&str> = raw.dfa.accepting.iter().map(|s| s.get_ref().as_str()).collect();
    for s in &raw.dfa.states {
        if states.contains_key(s.get_ref()) {
            return Err(cx.invalid(s.span(), format!("duplicate state {:?}", s.get_ref())));
        }
        let q = dfa.state(s.get_ref().clone(), accepting.contains(&s.get_ref().as_str()));
        states.insert(s.get_ref().clone(), q);
    }
    for s in &raw.dfa.accepting {
        cx.lookup(&states, s, "state")?;
    }
    let initial = cx.lookup(&states, &raw.dfa.initial, "state")?;
    if accepting.contains(&raw.dfa.initial.get_ref().as_str()) {
        return Err(cx.invalid(
            raw.dfa.initial.span(),
            "empty word accepted: the initial state is accepting",
        ));
    }
    dfa.initial(initial);
    if let Some(sink) = &raw.dfa.default_sink {
        dfa.default_sink(cx.lookup(&states, sink, "state")?);
    }
    let mut defined = HashMap::new();
    for t in &raw.dfa.transitions {
        let t = t.get_ref();
        let from = cx.lookup(&states, &t.from, "state")?;
        let to = cx.lookup(&states, &t.to, "state")?;
        let c = alphabet.get(t.color.get_ref()).expect("interned above");
        if defined.insert((from, c), ()).is_some() {
            return Err(cx.invalid(
                t.from.span(),
                format!("duplicate transition ({}, {})", t.from.get_ref(), t.color.get_ref()),
            ));
        }
        dfa.transition(from, c, to);
    }
    Ok((arena, dfa.build()?))
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<(Arena, Dfa), ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance_str(&text)
}

#[derive(Serialize)]
struct OutInstance<'a> {
    arena: OutArena<'a>,
    dfa: OutDfa<'a>,
}

#[derive(Serialize)]
struct OutArena<'a> {
    colors: Vec<&'a str>,
    vertices: Vec<OutVertex<'a>>,
    edges: Vec<OutEdge<'a>>,
}

#[derive(Serialize)]
struct OutVertex<'a> {
    id: &'a str,
    owner: u8,
    color: &'a str,
}

#[derive(Serialize)]
struct OutEdge<'a> {
    from: &'a str,
    to: &'a str,
    weight: u64,
}

#[derive(Serialize)]
struct OutDfa<'a> {
    states: Vec<&'a str>,
    initial: &'a str,
    accepting: Vec<&'a str>,
    transitions: Vec<OutTransition<'a>>,
}

#[derive(Serialize)]
struct OutTransition<'a> {
    from: &'a str,
    color: &'a str,
    to: &'a str,
}

/// The canonical text of an instance: colors declared, every transition
/// explicit, no default sink.
pub fn write_instance(arena: &Arena, dfa: &Dfa) -> String {
    let alphabet = dfa.alphabet();
    let out = OutInstance {
        arena: OutArena {
            colors: alphabet.colors().map(|c| alphabet.name(c)).collect(),
            vertices: arena
                .vertices()
                .map(|v| OutVertex {
                    id: arena.name(v),
                    owner: arena.owner(v).index(),
                    color: arena.alphabet().name(arena.color(v)),
                })
                .collect(),
            edges: arena
                .edges()
                .map(|(a, b, w)| OutEdge {
                    from: arena.name(a),
                    to: arena.name(b),
                    weight: w,
                })
                .collect(),
        },
        dfa: OutDfa {
            states: dfa.states().map(|q| dfa.state_name(q)).collect(),
            initial: dfa.state_name(dfa.initial()),
            accepting: dfa.accepting_states().into_iter().map(|q| dfa.state_name(q)).collect(),
            transitions: dfa
                .states()
                .flat_map(|q| {
                    alphabet.colors().map(move |c| OutTransition {
                        from: dfa.state_name(q),
                        color: alphabet.name(c),
                        to: dfa.state_name(dfa.delta(q, c)),
                    })
                })
                .collect(),
        },
    };
    toml::to_string(&out).expect("instance serializes")
}
