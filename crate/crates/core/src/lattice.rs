//! Distributive lattices of index sets.
//!
//! A lattice is stored as its element family in canonical order (cardinality,
//! then lexicographic), together with the Hasse diagram. Meet and join are set
//! intersection and union; the family is closed under both and always
//! contains the empty set.

use std::collections::HashMap;

use crate::error::{domain, LciError, Result};
use crate::poset::{order_ideals, Poset};
use crate::set::{GroundSet, IndexSet};

/// Default limit on the number of lattice elements produced by a closure.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct DistributiveLattice {
    ground: GroundSet,
    elements: Vec<IndexSet>,
    position: HashMap<IndexSet, usize>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl PartialEq for DistributiveLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.elements == other.elements
    }
}

impl Eq for DistributiveLattice {}

impl DistributiveLattice {
    /// Wrap a family that is already known to contain the empty set and be
    /// closed under union and intersection.
    pub(crate) fn from_closed_family(ground: GroundSet, mut elements: Vec<IndexSet>) -> Self {
        elements.sort();
        elements.dedup();
        let position: HashMap<IndexSet, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let n = elements.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut covers = Vec::new();
        for i in 0..n {
            // Candidates come in increasing cardinality, so any element
            // strictly between i and a candidate is seen first.
            let mut found: Vec<usize> = Vec::new();
            for j in (i + 1)..n {
                if !elements[i].is_proper_subset(&elements[j]) {
                    continue;
                }
                if found.iter().any(|&c| elements[c].is_subset(&elements[j])) {
                    continue;
                }
                found.push(j);
            }
            for &j in &found {
                covers.push((i, j));
                lower[j].push(i);
            }
            upper[i] = found;
        }
        DistributiveLattice { ground, elements, position, covers, lower, upper }
    }

    /// Build from an explicit family, checking it contains the empty set and
    /// is closed under union and intersection.
    pub fn from_sets(ground: GroundSet, sets: Vec<IndexSet>) -> Result<Self> {
        for s in &sets {
            ground.check_subset(s)?;
        }
        let l = Self::from_closed_family(ground, sets);
        if l.elements.first().is_none_or(|b| !b.is_empty()) {
            return Err(domain("family does not contain the empty set"));
        }
        for a in &l.elements {
            for b in &l.elements {
                if !l.contains(&a.union(b)) || !l.contains(&a.intersection(b)) {
                    return Err(domain(format!(
                        "family is not closed under union and intersection ({} and {})",
                        l.ground.render(a),
                        l.ground.render(b)
                    )));
                }
            }
        }
        Ok(l)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[IndexSet] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &IndexSet {
        &self.elements[k]
    }

    pub fn position(&self, set: &IndexSet) -> Option<usize> {
        self.position.get(set).copied()
    }

    pub fn contains(&self, set: &IndexSet) -> bool {
        self.position.contains_key(set)
    }

    pub(crate) fn require(&self, set: &IndexSet) -> Result<usize> {
        self.position(set).ok_or_else(|| {
            domain(format!("{} is not a lattice element", self.ground.render(set)))
        })
    }

    pub fn bottom(&self) -> &IndexSet {
        &self.elements[0]
    }

    pub fn top(&self) -> &IndexSet {
        self.elements.last().expect("lattice is never empty")
    }

    /// Hasse diagram as `(lower, upper)` element positions.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, k: usize) -> &[usize] {
        &self.lower[k]
    }

    pub fn upper_covers(&self, k: usize) -> &[usize] {
        &self.upper[k]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.position[&self.elements[a].intersection(&self.elements[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.position[&self.elements[a].union(&self.elements[b])]
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.meet(a, b)).collect()).collect()
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.join(a, b)).collect()).collect()
    }

    /// Incomparable pairs `(a, b)` with `a < b` in element order.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                let (x, y) = (&self.elements[a], &self.elements[b]);
                if !x.is_subset(y) && !y.is_subset(x) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Positions of the join-irreducible elements (exactly one lower cover).
    pub fn join_irreducible_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.lower[k].len() == 1).collect()
    }

    /// The element order as a poset over the lattice's sets.
    pub fn as_poset(&self) -> Poset<IndexSet> {
        let els = self.elements.clone();
        Poset::from_relation(els, |i, j| self.elements[i].is_subset(&self.elements[j]))
            .expect("containment is a partial order")
    }
}

/// Smallest family containing `gens` and the empty set that is closed under
/// union and intersection.
pub fn lattice_from_generators(ground: &GroundSet, gens: &[IndexSet]) -> Result<DistributiveLattice> {
    lattice_from_generators_capped(ground, gens, DEFAULT_ELEMENT_CAP)
}

pub fn lattice_from_generators_capped(
    ground: &GroundSet,
    gens: &[IndexSet],
    cap: usize,
) -> Result<DistributiveLattice> {
    for g in gens {
        ground.check_subset(g)?;
    }
    let mut family: Vec<IndexSet> = Vec::new();
    let mut seen: HashMap<IndexSet, ()> = HashMap::new();
    let mut push = |s: IndexSet, family: &mut Vec<IndexSet>| -> Result<bool> {
        if seen.contains_key(&s) {
            return Ok(false);
        }
        if family.len() >= cap {
            return Err(LciError::Resource { what: "lattice elements".into(), limit: cap });
        }
        seen.insert(s.clone(), ());
        family.push(s);
        Ok(true)
    };
    push(IndexSet::new(), &mut family)?;
    for g in gens {
        push(g.clone(), &mut family)?;
    }
    // Worklist: combine each new element with every element before it.
    let mut next = 0;
    while next < family.len() {
        let x = family[next].clone();
        let mut k = 0;
        while k < next {
            let y = family[k].clone();
            push(x.union(&y), &mut family)?;
            push(x.intersection(&y), &mut family)?;
            k += 1;
        }
        next += 1;
    }
    Ok(DistributiveLattice::from_closed_family(ground.clone(), family))
}

/// Join-irreducible elements with the containment order. The empty set is
/// excluded.
pub fn join_irreducibles(l: &DistributiveLattice) -> Poset<IndexSet> {
    let ji: Vec<IndexSet> = l
        .join_irreducible_positions()
        .into_iter()
        .map(|k| l.element(k).clone())
        .collect();
    let rel = ji.clone();
    Poset::from_relation(ji, |i, j| rel[i].is_subset(&rel[j])).expect("containment is a partial order")
}

/// Checks that `I -> { join-irreducibles contained in I }` is an order
/// isomorphism from `l` onto the order ideals of its join-irreducible poset.
pub fn birkhoff_check(l: &DistributiveLattice) -> bool {
    let q = join_irreducibles(l);
    let ji = q.elements();
    let ideals = order_ideals(&q);
    if ideals.len() != l.len() {
        return false;
    }
    let image: Vec<IndexSet> = l
        .elements()
        .iter()
        .map(|s| (0..ji.len()).filter(|&k| ji[k].is_subset(s)).collect())
        .collect();
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let mut ideals_sorted = ideals.clone();
    ideals_sorted.sort();
    if sorted != ideals_sorted {
        return false;
    }
    for a in 0..l.len() {
        // every element is the join of the join-irreducibles below it
        let joined = image[a]
            .iter()
            .fold(IndexSet::new(), |acc, k| acc.union(&ji[k]));
        if &joined != l.element(a) {
            return false;
        }
        for b in 0..l.len() {
            let forward = l.element(a).is_subset(l.element(b));
            let back = image[a].is_subset(&image[b]);
            if forward != back {
                return false;
            }
        }
    }
    true
}

/// All saturated chains from `from` to `to`; each step is a Hasse cover.
pub fn saturated_chains(
    l: &DistributiveLattice,
    from: &IndexSet,
    to: &IndexSet,
) -> Result<Vec<Vec<IndexSet>>> {
    let start = l.require(from)?;
    let end = l.require(to)?;
    if !from.is_subset(to) {
        return Err(domain(format!(
            "{} is not contained in {}",
            l.ground().render(from),
            l.ground().render(to)
        )));
    }
    let mut out = Vec::new();
    let mut path = vec![start];
    chains_dfs(l, end, &mut path, &mut out);
    Ok(out
        .into_iter()
        .map(|p| p.into_iter().map(|k| l.element(k).clone()).collect())
        .collect())
}

fn chains_dfs(l: &DistributiveLattice, end: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let cur = *path.last().expect("non-empty path");
    if cur == end {
        out.push(path.clone());
        return;
    }
    let target = l.element(end);
    for &next in l.upper_covers(cur) {
        if l.element(next).is_subset(target) {
            path.push(next);
            chains_dfs(l, end, path, out);
            path.pop();
        }
    }
}

/// The canonical saturated chain from the bottom to `to`: at each step take
/// the least upper cover (in element order) still contained in `to`.
pub fn canonical_chain(l: &DistributiveLattice, to: &IndexSet) -> Result<Vec<IndexSet>> {
    let end = l.require(to)?;
    let mut cur = 0;
    let mut chain = vec![l.element(0).clone()];
    while cur != end {
        cur = *l
            .upper_covers(cur)
            .iter()
            .filter(|&&k| l.element(k).is_subset(to))
            .min()
            .expect("a cover towards the target exists");
        chain.push(l.element(cur).clone());
    }
    Ok(chain)
}
