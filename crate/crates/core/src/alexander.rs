//! Squarefree monomial ideals, Alexander duality and edge ideals.
//!
//! The dual is computed two independent ways: as an intersection of the
//! variable primes of the generators (`lcm` of generator pairs, then
//! minimization), and as the minimal transversals of the hypergraph of
//! generator supports found by a branching search. For ideals coming from a
//! poset, the dual is the edge ideal of the poset's transitive DAG plus the
//! loop monomials `z_i y_i`.

use std::collections::BTreeSet;

use crate::error::{domain, LciError, Result};
use crate::poset::{order_ideals, Poset};
use crate::set::{GroundSet, IndexSet};
use crate::tdag::Tdag;

/// Default limit on the number of generators an ideal computation may hold.
pub const DEFAULT_GENERATOR_CAP: usize = 100_000;

/// Squarefree monomial ideal with minimal generators in canonical order.
///
/// Generators are supports over `variables`. An empty generator list is the
/// zero ideal; a single empty support is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<IndexSet>,
}

fn minimize(mut gens: Vec<IndexSet>) -> Vec<IndexSet> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<IndexSet> = Vec::with_capacity(gens.len());
    // sorted by cardinality, so only earlier supports can divide later ones
    for g in gens {
        if !out.iter().any(|h| h.is_subset(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new(variables: Vec<String>, generators: Vec<IndexSet>) -> Result<Self> {
        for g in &generators {
            if let Some(m) = g.max_index() {
                if m >= variables.len() {
                    return Err(domain(format!("generator uses variable {m} of {}", variables.len())));
                }
            }
        }
        Ok(MonomialIdeal { variables, generators: minimize(generators) })
    }

    /// Build from exponent vectors; any exponent above one is rejected.
    pub fn from_exponents(variables: Vec<String>, exps: &[Vec<u32>]) -> Result<Self> {
        let mut gens = Vec::with_capacity(exps.len());
        for e in exps {
            if e.len() != variables.len() {
                return Err(LciError::Format(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    variables.len()
                )));
            }
            if let Some(k) = e.iter().position(|&x| x > 1) {
                return Err(domain(format!(
                    "monomial is not squarefree (exponent {} on {})",
                    e[k], variables[k]
                )));
            }
            gens.push(e.iter().enumerate().filter(|(_, &x)| x == 1).map(|(k, _)| k).collect());
        }
        Self::new(variables, gens)
    }

    /// Parse one generator per line, e.g. `z_3*y_2`; blank lines and `#`
    /// comments are skipped. `vars` fixes the variable order.
    pub fn parse_text(variables: Vec<String>, text: &str) -> Result<Self> {
        let index = |name: &str| {
            variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| LciError::Format(format!("unknown variable '{name}'")))
        };
        let mut exps = Vec::new();
        for line in text.lines() {
            let line = line.trim().trim_end_matches(',');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut e = vec![0u32; variables.len()];
            if line != "1" {
                for factor in line.split('*') {
                    let factor = factor.trim();
                    let (name, pow) = match factor.split_once('^') {
                        Some((n, p)) => (
                            n,
                            p.parse::<u32>()
                                .map_err(|_| LciError::Format(format!("bad exponent in '{factor}'")))?,
                        ),
                        None => (factor, 1),
                    };
                    e[index(name)?] += pow;
                }
            }
            exps.push(e);
        }
        Self::from_exponents(variables, &exps)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[IndexSet] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_empty()
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.generators
            .iter()
            .map(|g| (0..self.variables.len()).map(|k| g.contains(k) as u32).collect())
            .collect()
    }

    pub fn render_monomial(&self, g: &IndexSet) -> String {
        if g.is_empty() {
            return "1".to_string();
        }
        g.iter().map(|k| self.variables[k].as_str()).collect::<Vec<_>>().join("*")
    }

    /// One generator per line.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&self.render_monomial(g));
            s.push('\n');
        }
        s
    }

    /// Whether `other` has the same variables and generators as sets of
    /// rendered monomials.
    pub fn same_ideal(&self, other: &Self) -> bool {
        let a: BTreeSet<String> = self.generators.iter().map(|g| self.render_monomial(g)).collect();
        let b: BTreeSet<String> = other.generators.iter().map(|g| other.render_monomial(g)).collect();
        a == b
    }
}

/// Variables `z_l` for every label followed by `y_l` for every label.
pub fn paired_variables(ground: &GroundSet) -> Vec<String> {
    let z = ground.labels().iter().map(|l| format!("z_{l}"));
    let y = ground.labels().iter().map(|l| format!("y_{l}"));
    z.chain(y).collect()
}

/// `M_Q = <u_I : I an order ideal of Q>` over `z_1..z_n, y_1..y_n`.
pub fn ideal_m_q(q: &Poset<String>) -> MonomialIdeal {
    let n = q.len();
    let ground = GroundSet::new(q.elements().iter().cloned()).expect("poset labels are distinct");
    let gens = order_ideals(q)
        .into_iter()
        .map(|ideal| {
            let mut g = ideal.clone();
            for i in (0..n).filter(|&i| !ideal.contains(i)) {
                g.insert(n + i);
            }
            g
        })
        .collect();
    MonomialIdeal::new(paired_variables(&ground), gens).expect("variables in range")
}

/// Alexander dual as `m^{a_1} ∩ ... ∩ m^{a_r}`.
pub fn alexander_dual_intersect(m: &MonomialIdeal) -> Result<MonomialIdeal> {
    alexander_dual_intersect_capped(m, DEFAULT_GENERATOR_CAP)
}

pub fn alexander_dual_intersect_capped(m: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
    // the empty intersection is the whole ring
    let mut acc: Vec<IndexSet> = vec![IndexSet::new()];
    for a in m.generators() {
        let prime: Vec<IndexSet> = a.iter().map(IndexSet::singleton).collect();
        acc = intersect_ideals(&acc, &prime, cap)?;
        if acc.is_empty() {
            break;
        }
    }
    MonomialIdeal::new(m.variables().to_vec(), acc)
}

/// Intersection of two monomial ideals: minimal lcms of generator pairs.
fn intersect_ideals(a: &[IndexSet], b: &[IndexSet], cap: usize) -> Result<Vec<IndexSet>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for f in a {
        for g in b {
            out.push(f.union(g));
        }
        if out.len() > cap.saturating_mul(8) {
            out = minimize(out);
        }
    }
    let out = minimize(out);
    if out.len() > cap {
        return Err(LciError::Resource { what: "dual generators".into(), limit: cap });
    }
    Ok(out)
}

/// Alexander dual as the minimal hitting sets of the generator supports.
pub fn alexander_dual_hitting(m: &MonomialIdeal) -> Result<MonomialIdeal> {
    alexander_dual_hitting_capped(m, DEFAULT_GENERATOR_CAP)
}

pub fn alexander_dual_hitting_capped(m: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
    let found = minimal_transversals(m.generators(), cap)?;
    MonomialIdeal::new(m.variables().to_vec(), found)
}

/// Minimal transversals of a hypergraph.
///
/// Branch on the first edge not yet hit: try each of its vertices in turn,
/// forbidding the vertices tried before it. A partial set is abandoned as
/// soon as one of its vertices has no private edge, since adding vertices
/// can never restore one.
pub fn minimal_transversals(edges: &[IndexSet], cap: usize) -> Result<Vec<IndexSet>> {
    let mut out = BTreeSet::new();
    let mut current = IndexSet::new();
    let forbidden = IndexSet::new();
    transversal_search(edges, &mut current, &forbidden, &mut out, cap)?;
    Ok(out.into_iter().collect())
}

fn has_private_edges(edges: &[IndexSet], set: &IndexSet) -> bool {
    set.iter().all(|v| {
        edges.iter().any(|e| {
            let hit = e.intersection(set);
            hit.len() == 1 && hit.contains(v)
        })
    })
}

fn transversal_search(
    edges: &[IndexSet],
    current: &mut IndexSet,
    forbidden: &IndexSet,
    out: &mut BTreeSet<IndexSet>,
    cap: usize,
) -> Result<()> {
    let Some(unhit) = edges.iter().find(|e| e.is_disjoint(current)) else {
        if has_private_edges(edges, current) {
            if out.len() >= cap {
                return Err(LciError::Resource { what: "minimal transversals".into(), limit: cap });
            }
            out.insert(current.clone());
        }
        return Ok(());
    };
    let mut forbid = forbidden.clone();
    for v in unhit.iter() {
        if forbid.contains(v) {
            continue;
        }
        current.insert(v);
        if has_private_edges(edges, current) {
            transversal_search(edges, current, &forbid, out, cap)?;
        }
        current.remove(v);
        forbid.insert(v);
    }
    Ok(())
}

/// Plain directed graph over labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Tdag> for DiGraph {
    fn from(g: &Tdag) -> Self {
        DiGraph { vertices: g.vertices().to_vec(), edges: g.edges().iter().copied().collect() }
    }
}

/// `I(G) = <z_i y_j : i -> j>`.
pub fn edge_ideal(g: &DiGraph) -> Result<MonomialIdeal> {
    let ground = GroundSet::new(g.vertices.iter().cloned())?;
    let n = ground.len();
    let mut gens = Vec::with_capacity(g.edges.len());
    for &(i, j) in &g.edges {
        if i >= n || j >= n {
            return Err(domain(format!("edge ({i}, {j}) out of range")));
        }
        if i == j {
            return Err(domain(format!("self-loop on vertex {}", g.vertices[i])));
        }
        gens.push([i, n + j].into_iter().collect());
    }
    MonomialIdeal::new(paired_variables(&ground), gens)
}

/// Edges `z_i y_j` (`i != j`) and loops `z_i y_i` of a degree-two ideal in
/// paired variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteEdgeSet {
    pub edges: Vec<(String, String)>,
    pub loops: Vec<String>,
}

/// Split the variables of a paired ideal into its vertex labels, checking
/// that the z- and y-blocks name the same labels.
/// Per variable: whether it is a z-variable, and the position of its label.
type Roles = Vec<Option<(bool, usize)>>;

fn paired_labels(vars: &[String]) -> Result<(Vec<String>, Roles)> {
    let mut z_labels = Vec::new();
    let mut y_labels = Vec::new();
    for v in vars {
        if let Some(l) = v.strip_prefix("z_") {
            z_labels.push(l.to_string());
        } else if let Some(l) = v.strip_prefix("y_") {
            y_labels.push(l.to_string());
        } else {
            return Err(LciError::Format(format!("variable '{v}' is neither z_ nor y_")));
        }
    }
    let zs: BTreeSet<&String> = z_labels.iter().collect();
    let ys: BTreeSet<&String> = y_labels.iter().collect();
    if zs != ys || zs.len() != z_labels.len() {
        return Err(LciError::Format("z- and y-variables are not paired".into()));
    }
    let roles = vars
        .iter()
        .map(|v| {
            let (is_z, l) = match v.strip_prefix("z_") {
                Some(l) => (true, l),
                None => (false, &v[2..]),
            };
            Some((is_z, z_labels.iter().position(|x| x == l).expect("paired label")))
        })
        .collect();
    Ok((z_labels, roles))
}

pub fn bipartite_edges(dual: &MonomialIdeal) -> Result<BipartiteEdgeSet> {
    let (labels, roles) = paired_labels(dual.variables())?;
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for g in dual.generators() {
        let parts: Vec<(bool, usize)> = g.iter().map(|k| roles[k].expect("role")).collect();
        let (i, j) = match parts.as_slice() {
            [(true, i), (false, j)] | [(false, j), (true, i)] => (*i, *j),
            _ => {
                return Err(LciError::Format(format!(
                    "generator {} is not of the form z_i*y_j",
                    dual.render_monomial(g)
                )))
            }
        };
        if i == j {
            loops.push(labels[i].clone());
        } else {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    Ok(BipartiteEdgeSet { edges, loops })
}

/// Read the transitive DAG off a dual `<z_i y_j : i <= j>`, dropping loops.
pub fn tdag_from_dual(dual: &MonomialIdeal) -> Result<Tdag> {
    let (labels, _) = paired_labels(dual.variables())?;
    let bip = bipartite_edges(dual)?;
    let pos = |l: &String| labels.iter().position(|x| x == l).expect("known label");
    let edges: Vec<(usize, usize)> = bip.edges.iter().map(|(a, b)| (pos(a), pos(b))).collect();
    Tdag::new(labels, edges).map_err(|e| match e {
        LciError::Domain(msg) => LciError::ContractViolation(format!("recovered graph: {msg}")),
        other => other,
    })
}
