//! Graphviz DOT output for Hasse diagrams and TDAGs, and a small DOT reader
//! for directed graphs.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{LciError, Result};
use crate::info::{EdgeIncrement, Valuation};
use crate::lattice::DistributiveLattice;
use crate::scalar::Scalar;
use crate::tdag::Tdag;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Undirected Hasse diagram drawn bottom to top, one rank per cardinality.
pub fn hasse_dot(l: &DistributiveLattice) -> String {
    let g = l.ground();
    let mut out = String::from("graph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for (k, e) in l.elements().iter().enumerate() {
        writeln!(out, "  n{k} [label={}];", quote(&g.render(e))).unwrap();
    }
    write_ranks(&mut out, l);
    for &(a, b) in l.covers() {
        writeln!(out, "  n{a} -- n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn write_ranks(out: &mut String, l: &DistributiveLattice) {
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, e) in l.elements().iter().enumerate() {
        ranks.entry(e.len()).or_default().push(k);
    }
    for nodes in ranks.values() {
        let names: Vec<String> = nodes.iter().map(|k| format!("n{k}")).collect();
        writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
    }
}

/// Directed graph of a TDAG; `reduced` keeps only the covering edges.
pub fn tdag_dot(g: &Tdag, reduced: bool) -> String {
    let mut out = String::from("digraph tdag {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    let edges: Vec<(usize, usize)> = if reduced { g.reduction() } else { g.edges().iter().copied().collect() };
    let v = g.vertices();
    for (a, b) in edges {
        writeln!(out, "  {} -> {};", quote(&v[a]), quote(&v[b])).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram with each cover annotated by its increment and each node by
/// its value.
pub fn information_dot<T: Scalar>(l: &DistributiveLattice, v: &Valuation<T>, increments: &[EdgeIncrement<T>]) -> Result<String> {
    let g = l.ground();
    let mut out = String::from("graph information {\n  rankdir=BT;\n  node [shape=box];\n");
    for (k, e) in l.elements().iter().enumerate() {
        let val = v.get(e)?.to_f64().unwrap_or(f64::NAN);
        writeln!(out, "  n{k} [label=\"{}\\nH={val:.6}\"];", escape(&g.render(e))).unwrap();
    }
    write_ranks(&mut out, l);
    for inc in increments {
        let (Some(a), Some(b)) = (l.position(&inc.lower), l.position(&inc.upper)) else {
            return Err(LciError::Domain("increment between sets outside the lattice".into()));
        };
        let val = inc.value.to_f64().unwrap_or(f64::NAN);
        let added = g.render(&inc.upper.difference(&inc.lower));
        writeln!(out, "  n{a} -- n{b} [label={}];", quote(&format!("+{added}: {val:.6}"))).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// Read a `digraph` with node statements and `a -> b [-> c ...]` edge
/// chains. Attribute lists and comments are ignored. The result is the
/// transitive closure; vertices keep the order of first appearance.
pub fn parse_tdag_dot(text: &str) -> Result<Tdag> {
    let fmt = |m: &str| LciError::Format(format!("DOT: {m}"));
    let body = strip_comments(text);
    let open = body.find('{').ok_or_else(|| fmt("missing '{'"))?;
    let close = body.rfind('}').ok_or_else(|| fmt("missing '}'"))?;
    let head = body[..open].trim();
    if !head.starts_with("digraph") && !head.starts_with("strict digraph") {
        return Err(fmt("expected a digraph"));
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut id = |name: String, vertices: &mut Vec<String>| -> usize {
        *index.entry(name.clone()).or_insert_with(|| {
            vertices.push(name);
            vertices.len() - 1
        })
    };
    for stmt in split_statements(&body[open + 1..close]) {
        let stmt = match stmt.find('[') {
            Some(p) => stmt[..p].trim().to_string(),
            None => stmt.trim().to_string(),
        };
        if stmt.is_empty() {
            continue;
        }
        let lower = stmt.to_ascii_lowercase();
        if ["graph", "node", "edge"].contains(&lower.as_str()) || (stmt.contains('=') && !stmt.contains("->")) {
            continue;
        }
        if stmt.contains("--") {
            return Err(fmt("undirected edge in a digraph"));
        }
        let names: Vec<String> = stmt.split("->").map(|s| unquote(s.trim())).collect::<Result<_>>()?;
        let ids: Vec<usize> = names.into_iter().map(|n| id(n, &mut vertices)).collect();
        for w in ids.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    Tdag::closure(vertices, edges).map_err(|e| match e {
        LciError::Domain(m) => LciError::Format(format!("DOT: {m}")),
        other => other,
    })
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find("//") {
            Some(p) if !l[..p].contains('"') => &l[..p],
            _ => l,
        })
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

// split on ';' and newlines outside quotes and brackets
fn split_statements(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let (mut quoted, mut depth) = (false, 0usize);
    let mut prev = '\0';
    for c in body.chars() {
        match c {
            '"' if prev != '\\' => quoted = !quoted,
            '[' if !quoted => depth += 1,
            ']' if !quoted => depth = depth.saturating_sub(1),
            ';' | '\n' if !quoted && depth == 0 => {
                out.push(std::mem::take(&mut cur));
                prev = c;
                continue;
            }
            '{' | '}' if !quoted => {
                // subgraph braces are flattened
                out.push(std::mem::take(&mut cur));
                prev = c;
                continue;
            }
            _ => {}
        }
        cur.push(c);
        prev = c;
    }
    out.push(cur);
    out.into_iter()
        .map(|s| {
            let t = s.trim();
            t.strip_prefix("subgraph").map_or(t, |r| r.trim_start_matches(|c: char| c.is_alphanumeric() || c == '_' || c == ' ')).to_string()
        })
        .collect()
}

fn unquote(s: &str) -> Result<String> {
    if let Some(inner) = s.strip_prefix('"') {
        let inner = inner
            .strip_suffix('"')
            .ok_or_else(|| LciError::Format(format!("DOT: unterminated string {s}")))?;
        return Ok(inner.replace("\\\"", "\"").replace("\\\\", "\\"));
    }
    if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.') {
        return Err(LciError::Format(format!("DOT: bad node id '{s}'")));
    }
    Ok(s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_from_generators;
    use crate::set::{GroundSet, IndexSet};
    use crate::tdag::tdag_of_lattice;

    fn fig1() -> DistributiveLattice {
        let g = GroundSet::numbered(5);
        let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
        lattice_from_generators(&g, &gens).unwrap()
    }

    #[test]
    fn hasse_shape() {
        let d = hasse_dot(&fig1());
        assert!(d.starts_with("graph hasse {"));
        assert_eq!(d.matches(" -- ").count(), 13);
        assert!(d.contains("n0 [label=\"{}\"]"));
        assert!(d.contains("rank=same; n1;"));
    }

    #[test]
    fn tdag_round_trip() {
        let t = tdag_of_lattice(&fig1());
        for reduced in [false, true] {
            let text = tdag_dot(&t, reduced);
            assert_eq!(parse_tdag_dot(&text).unwrap(), t);
        }
        assert_eq!(tdag_dot(&t, false).matches(" -> ").count(), 6);
        assert_eq!(tdag_dot(&t, true).matches(" -> ").count(), 4);
    }

    #[test]
    fn reader_handles_chains_and_attributes() {
        let text = "digraph g {\n  node [shape=circle];\n  // comment\n  a -> b -> c [color=red];\n  \"d x\";\n}\n";
        let t = parse_tdag_dot(text).unwrap();
        assert_eq!(t.vertices(), &["a", "b", "c", "d x"]);
        assert_eq!(t.edges().len(), 3);
    }

    #[test]
    fn reader_rejects_bad_input() {
        assert!(parse_tdag_dot("graph g { a -- b }").is_err());
        assert!(parse_tdag_dot("digraph g { a -> b; b -> a; }").is_err());
        assert!(parse_tdag_dot("digraph g { a -> a; }").is_err());
        assert!(parse_tdag_dot("digraph g  a -> b").is_err());
    }
}
