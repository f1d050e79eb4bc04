use crate::error::{domain, LciError, Result};
use crate::hibi::hibi_generators;
use crate::lattice::DistributiveLattice;
use crate::set::{GroundSet, IndexSet};

/// `X_a ⊥⊥ X_b | X_c` with `a`, `b`, `c` pairwise disjoint and `a`, `b`
/// nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiStatement {
    pub a: IndexSet,
    pub b: IndexSet,
    pub c: IndexSet,
}

impl CiStatement {
    /// Validate and canonicalize (`a` before `b` in element order).
    pub fn new(a: IndexSet, b: IndexSet, c: IndexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(domain("independence statement needs nonempty sides"));
        }
        if !a.is_disjoint(&b) || !a.is_disjoint(&c) || !b.is_disjoint(&c) {
            return Err(domain("independence statement sets must be pairwise disjoint"));
        }
        let (a, b) = if b < a { (b, a) } else { (a, b) };
        Ok(CiStatement { a, b, c })
    }

    /// Statement `I∖J ⊥⊥ J∖I | I∩J` of an incomparable pair.
    pub fn from_pair(i: &IndexSet, j: &IndexSet) -> Result<Self> {
        Self::new(i.difference(j), j.difference(i), i.intersection(j))
    }

    /// `12 _||_ 45 | 3`
    pub fn render(&self, ground: &GroundSet) -> String {
        format!(
            "{} _||_ {} | {}",
            ground.render(&self.a),
            ground.render(&self.b),
            ground.render(&self.c)
        )
        .trim_end()
        .to_string()
    }

    /// Parse `a _||_ b | c`; the conditioning part may be omitted.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let (a, rest) = text
            .split_once("_||_")
            .ok_or_else(|| LciError::Format(format!("missing _||_ in '{text}'")))?;
        let (b, c) = rest.split_once('|').unwrap_or((rest, ""));
        Self::new(ground.parse_set(a)?, ground.parse_set(b)?, ground.parse_set(c)?)
    }
}

/// One statement per Hibi binomial, deduplicated, in order of first
/// appearance.
pub fn ci_statements(l: &DistributiveLattice) -> Vec<CiStatement> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for b in hibi_generators(l) {
        let s = CiStatement::from_pair(&b.i, &b.j).expect("incomparable pair gives a valid statement");
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_from_generators;

    fn fig1() -> DistributiveLattice {
        let g = GroundSet::numbered(5);
        let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
        lattice_from_generators(&g, &gens).unwrap()
    }

    #[test]
    fn statements_of_running_example() {
        let l = fig1();
        let g = l.ground();
        let rendered: Vec<String> = ci_statements(&l).iter().map(|s| s.render(g)).collect();
        assert!(rendered.contains(&"2 _||_ 4 | 3".to_string()));
        assert!(rendered.contains(&"12 _||_ 45 | 3".to_string()));
        let mut dedup = rendered.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), rendered.len());
    }

    #[test]
    fn chain_has_no_statements() {
        let g = GroundSet::numbered(2);
        let l = lattice_from_generators(&g, &[g.parse_set("1").unwrap(), g.parse_set("12").unwrap()]).unwrap();
        assert!(ci_statements(&l).is_empty());
    }

    #[test]
    fn parse_and_canonical_order() {
        let g = GroundSet::numbered(5);
        let s = CiStatement::parse(&g, "45 _||_ 12 | 3").unwrap();
        assert_eq!(s.render(&g), "12 _||_ 45 | 3");
        let t = CiStatement::parse(&g, "1 _||_ 2 | {}").unwrap();
        assert!(t.c.is_empty());
        assert_eq!(CiStatement::parse(&g, "1 _||_ 2").unwrap(), t);
        assert!(CiStatement::parse(&g, "1 _||_ 1 | 3").is_err());
        assert!(CiStatement::parse(&g, "12 | 3").is_err());
    }
}
