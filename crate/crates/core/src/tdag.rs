//! Transitive DAGs and their correspondence with distributive lattices.

use std::collections::BTreeSet;

use crate::error::{domain, Result};
use crate::lattice::{DistributiveLattice, DEFAULT_ELEMENT_CAP};
use crate::poset::{order_ideals_capped, Poset};
use crate::set::{GroundSet, IndexSet};

/// Transitively closed DAG over labeled vertices. Validated on construction.
#[derive(Clone, Debug)]
pub struct Tdag {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

/// Graphs compare by vertex labels and labeled edges, not by vertex order.
impl PartialEq for Tdag {
    fn eq(&self, other: &Self) -> bool {
        let va: BTreeSet<&String> = self.vertices.iter().collect();
        let vb: BTreeSet<&String> = other.vertices.iter().collect();
        va == vb && self.labeled_edges() == other.labeled_edges()
    }
}

impl Eq for Tdag {}

impl Tdag {
    /// Validate labels, self-loops, acyclicity and transitivity.
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Self::unchecked(vertices, edges)?;
        g.check_acyclic()?;
        for &(i, j) in &g.edges {
            for &(_, k) in g.edges.range((j, 0)..(j + 1, 0)) {
                if !g.edges.contains(&(i, k)) {
                    return Err(domain(format!(
                        "not transitive: {} -> {} -> {} without {} -> {}",
                        g.vertices[i], g.vertices[j], g.vertices[k], g.vertices[i], g.vertices[k]
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Take the transitive closure of an acyclic edge list.
    pub fn closure(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Self::unchecked(vertices, edges)?;
        g.check_acyclic()?;
        let n = g.vertices.len();
        let pairs: Vec<(usize, usize)> = g.edges.iter().copied().collect();
        let q = Poset::from_pairs((0..n).collect::<Vec<_>>(), &pairs)?;
        Ok(Tdag { vertices: g.vertices, edges: q.strict_pairs().into_iter().collect() })
    }

    fn unchecked(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        GroundSet::new(vertices.iter().cloned())?;
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(domain(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if i == j {
                return Err(domain(format!("self-loop on vertex {}", vertices[i])));
            }
            set.insert((i, j));
        }
        Ok(Tdag { vertices, edges: set })
    }

    fn check_acyclic(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, j) in &self.edges {
            indeg[j] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(_, j) in self.edges.range((v, 0)..(v + 1, 0)) {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        if seen != n {
            return Err(domain("graph has a directed cycle"));
        }
        Ok(())
    }

    /// Build from labeled edges; unknown labels are an error.
    pub fn from_labeled(vertices: Vec<String>, edges: &[(String, String)], close: bool) -> Result<Self> {
        let pos = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| domain(format!("edge endpoint '{l}' is not a vertex")))
        };
        let idx: Vec<(usize, usize)> =
            edges.iter().map(|(a, b)| Ok((pos(a)?, pos(b)?))).collect::<Result<_>>()?;
        if close {
            Self::closure(vertices, idx)
        } else {
            Self::new(vertices, idx)
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.vertices.iter().cloned()).expect("validated labels")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// The vertex order `i <= j` iff `i == j` or `i -> j`.
    pub fn as_poset(&self) -> Poset<String> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        Poset::from_pairs(self.vertices.clone(), &pairs).expect("validated DAG")
    }

    /// Transitive reduction (the edges drawn in a Hasse-style picture).
    pub fn reduction(&self) -> Vec<(usize, usize)> {
        self.as_poset().covers().to_vec()
    }

    /// Vertices in a topological order (ancestors first).
    pub fn topological_order(&self) -> Vec<usize> {
        self.as_poset().linear_extension()
    }
}

/// Label of a join-irreducible's increment: the bare label when a single
/// label is introduced, `{a,b}` otherwise.
pub fn increment_label(ground: &GroundSet, increment: &IndexSet) -> String {
    if increment.len() == 1 {
        ground.render(increment)
    } else {
        format!("{{{}}}", ground.labels_of(increment).join(","))
    }
}

/// Join-irreducibles of `l` with the labels they introduce:
/// `(join-irreducible, increment, vertex label)`, ordered by the ground
/// position of the increments.
pub fn join_irreducible_increments(l: &DistributiveLattice) -> Vec<(IndexSet, IndexSet, String)> {
    let mut out: Vec<_> = l
        .join_irreducible_positions()
        .into_iter()
        .map(|k| {
            let ji = l.element(k).clone();
            let inc = ji.difference(l.element(l.lower_covers(k)[0]));
            let label = increment_label(l.ground(), &inc);
            (ji, inc, label)
        })
        .collect();
    out.sort_by(|a, b| a.1.iter().cmp(b.1.iter()));
    out
}

/// The join-irreducible poset with each element named by its increment.
pub fn label_poset(l: &DistributiveLattice) -> Poset<String> {
    let ji = join_irreducible_increments(l);
    let sets: Vec<IndexSet> = ji.iter().map(|(s, _, _)| s.clone()).collect();
    let labels: Vec<String> = ji.into_iter().map(|(_, _, lab)| lab).collect();
    Poset::from_relation(labels, |i, j| sets[i].is_subset(&sets[j])).expect("containment order")
}

/// One vertex per join-irreducible, edge `i -> j` when `I(i) ⊊ I(j)`.
pub fn tdag_of_lattice(l: &DistributiveLattice) -> Tdag {
    let ji = join_irreducible_increments(l);
    let mut edges = Vec::new();
    for (a, (sa, _, _)) in ji.iter().enumerate() {
        for (b, (sb, _, _)) in ji.iter().enumerate() {
            if sa.is_proper_subset(sb) {
                edges.push((a, b));
            }
        }
    }
    let labels = ji.into_iter().map(|(_, _, lab)| lab).collect();
    Tdag::new(labels, edges).expect("containment among join-irreducibles is transitive")
}

/// Lattice of ancestral (down-closed) vertex sets.
pub fn lattice_of_tdag(g: &Tdag) -> Result<DistributiveLattice> {
    lattice_of_tdag_capped(g, DEFAULT_ELEMENT_CAP)
}

pub fn lattice_of_tdag_capped(g: &Tdag, cap: usize) -> Result<DistributiveLattice> {
    let ideals = order_ideals_capped(&g.as_poset(), cap)?;
    Ok(DistributiveLattice::from_closed_family(g.ground(), ideals))
}

/// `{ j : j -> i } ∪ { i }` over the vertex ground set.
pub fn ancestors(g: &Tdag, label: &str) -> Result<IndexSet> {
    let i = g
        .index_of(label)
        .ok_or_else(|| domain(format!("'{label}' is not a vertex")))?;
    let mut s: IndexSet = g.edges.iter().filter(|&&(_, j)| j == i).map(|&(a, _)| a).collect();
    s.insert(i);
    Ok(s)
}

pub fn reverse_tdag(g: &Tdag) -> Tdag {
    Tdag { vertices: g.vertices.clone(), edges: g.edges.iter().map(|&(i, j)| (j, i)).collect() }
}

/// Complements of the elements relative to the top element, reversely
/// ordered.
pub fn complementary_lattice(l: &DistributiveLattice) -> DistributiveLattice {
    let top = l.top().clone();
    let sets = l.elements().iter().map(|s| top.difference(s)).collect();
    DistributiveLattice::from_closed_family(l.ground().clone(), sets)
}

pub fn is_transitive_dag(vertices: &[String], edges: &[(usize, usize)]) -> bool {
    Tdag::new(vertices.to_vec(), edges.iter().copied()).is_ok()
}
