//! Graphviz export. Player 0 vertices are circles, Player 1 vertices boxes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::arena::{Arena, Player, VertexId};
use crate::product::VertexSet;
use crate::weight::ExtWeight;

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Vertices drawn doubly circled (or with a double border).
    pub accepting: Option<VertexSet>,
    /// A rank shown under each vertex name.
    pub ranks: Option<Vec<ExtWeight>>,
    /// Edges drawn bold, for instance the moves of a strategy.
    pub highlight: BTreeSet<(VertexId, VertexId)>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(arena: &Arena, options: &DotOptions) -> String {
    let mut out = String::from("digraph arena {\n");
    for v in arena.vertices() {
        let accepting = options.accepting.as_ref().is_some_and(|f| f.contains(v));
        let shape = match (arena.owner(v), accepting) {
            (Player::Zero, false) => "circle",
            (Player::Zero, true) => "doublecircle",
            (Player::One, _) => "box",
        };
        let mut lines = vec![
            escape(arena.name(v)),
            escape(arena.alphabet().name(arena.color(v))),
        ];
        if let Some(r) = &options.ranks {
            lines.push(format!("r={}", r[v.index()]));
        }
        let label = lines.join("\\n");
        write!(out, "  n{} [label=\"{label}\", shape={shape}", v.index()).unwrap();
        if accepting && arena.owner(v) == Player::One {
            out.push_str(", peripheries=2");
        }
        out.push_str("];\n");
    }
    for (a, b, w) in arena.edges() {
        write!(out, "  n{} -> n{} [label=\"{w}\"", a.index(), b.index()).unwrap();
        if options.highlight.contains(&(a, b)) {
            out.push_str(", style=bold, color=blue");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}
