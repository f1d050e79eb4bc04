//! Small output helpers.

use std::fmt::Write;

use clap::ValueEnum;
use lci_core::{DistributiveLattice, GroundSet, IndexSet, Poset, Tdag};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "text",
        }
    }
}

pub fn unsupported(format: Format, cmd: &str) -> CliError {
    CliError::usage(format!("{} output is not available for {cmd}", format.name()))
}

pub fn labels(g: &GroundSet, s: &IndexSet) -> Value {
    json!(g.labels_of(s))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parse JSON produced by the core serializers so it can be extended.
pub fn value_of(text: &str) -> Value {
    serde_json::from_str(text).expect("core serializers emit valid JSON")
}

pub fn lattice_text(l: &DistributiveLattice) -> String {
    let g = l.ground();
    let mut out = String::new();
    writeln!(out, "ground: {}", g.labels().join(" ")).unwrap();
    writeln!(out, "elements ({}):", l.len()).unwrap();
    for e in l.elements() {
        writeln!(out, "  {}", g.render(e)).unwrap();
    }
    let ji = l.join_irreducible_positions();
    writeln!(out, "join-irreducibles ({}):", ji.len()).unwrap();
    for k in ji {
        writeln!(out, "  {}", g.render(l.element(k))).unwrap();
    }
    writeln!(out, "covers ({}):", l.covers().len()).unwrap();
    for &(a, b) in l.covers() {
        writeln!(out, "  {} < {}", g.render(l.element(a)), g.render(l.element(b))).unwrap();
    }
    out
}

pub fn tdag_text(g: &Tdag, reduced: bool) -> String {
    let edges: Vec<(usize, usize)> = if reduced { g.reduction() } else { g.edges().iter().copied().collect() };
    let v = g.vertices();
    let mut out = String::new();
    writeln!(out, "vertices: {}", v.join(" ")).unwrap();
    writeln!(out, "edges ({}):", edges.len()).unwrap();
    for (a, b) in edges {
        writeln!(out, "  {} -> {}", v[a], v[b]).unwrap();
    }
    out
}

/// Hasse diagram of a poset of sets, drawn as a digraph from smaller to
/// larger.
pub fn set_poset_dot(name: &str, g: &GroundSet, q: &Poset<IndexSet>) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for (k, s) in q.elements().iter().enumerate() {
        writeln!(out, "  p{k} [label=\"{}\"];", g.render(s)).unwrap();
    }
    for &(a, b) in q.covers() {
        writeln!(out, "  p{a} -> p{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn require_format(format: Format, allowed: &[Format], cmd: &str) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(unsupported(format, cmd))
    }
}
