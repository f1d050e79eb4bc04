//! Finite posets with their Hasse diagrams, and order-ideal enumeration.

use crate::error::{domain, LciError, Result};
use crate::set::IndexSet;

/// Finite partial order over `elements`.
///
/// `below[j]` holds every `i` with `i <= j` (reflexive). `covers` is the
/// transitive reduction as `(lower, upper)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset<T> {
    elements: Vec<T>,
    below: Vec<IndexSet>,
    covers: Vec<(usize, usize)>,
}

impl<T> Poset<T> {
    /// Build from an explicit `leq(i, j)` predicate, validating that it is a
    /// partial order.
    pub fn from_relation(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let below: Vec<IndexSet> = (0..n)
            .map(|j| (0..n).filter(|&i| leq(i, j)).collect())
            .collect();
        for j in 0..n {
            if !below[j].contains(j) {
                return Err(domain(format!("relation is not reflexive at element {j}")));
            }
            for i in below[j].iter() {
                if i != j && below[i].contains(j) {
                    return Err(domain(format!("relation is not antisymmetric on {i}, {j}")));
                }
                if !below[i].is_subset(&below[j]) {
                    return Err(domain(format!("relation is not transitive through {i} <= {j}")));
                }
            }
        }
        Ok(Self::from_below(elements, below))
    }

    /// Build from strict relation pairs `(i, j)` meaning `i < j`, taking the
    /// reflexive-transitive closure. Fails on cycles.
    pub fn from_pairs(elements: Vec<T>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut below: Vec<IndexSet> = (0..n).map(IndexSet::singleton).collect();
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(domain(format!("pair ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(domain(format!("self-relation on element {i}")));
            }
            below[j].insert(i);
        }
        // Warshall-style closure over bit rows.
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&row_k);
                }
            }
        }
        for j in 0..n {
            for i in below[j].iter() {
                if i != j && below[i].contains(j) {
                    return Err(LciError::Domain(format!(
                        "relation has a cycle through elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(Self::from_below(elements, below))
    }

    fn from_below(elements: Vec<T>, below: Vec<IndexSet>) -> Self {
        let n = elements.len();
        let mut covers = Vec::new();
        for j in 0..n {
            let strict = {
                let mut s = below[j].clone();
                s.remove(j);
                s
            };
            for i in strict.iter() {
                // i is covered by j unless some k strictly between them exists
                let between = strict.iter().any(|k| k != i && below[k].contains(i));
                if !between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        Poset { elements, below, covers }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `{ i : i <= j }`.
    pub fn down_set(&self, j: usize) -> &IndexSet {
        &self.below[j]
    }

    /// `{ k : k >= j }`.
    pub fn up_set(&self, j: usize) -> IndexSet {
        (0..self.len()).filter(|&k| self.leq(j, k)).collect()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order pairs `(i, j)` with `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in self.below[j].iter() {
                if i != j {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.lt(i, j)))
            .collect()
    }

    /// A linear extension: elements sorted by the size of their down-set,
    /// ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].len(), i));
        order
    }

    pub fn is_down_closed(&self, set: &IndexSet) -> bool {
        set.iter().all(|i| self.below[i].is_subset(set))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Poset<U> {
        Poset {
            elements: self.elements.iter().map(f).collect(),
            below: self.below.clone(),
            covers: self.covers.clone(),
        }
    }
}

/// All order ideals (down-closed subsets) of `q`, including the empty set
/// and the full set, over element indices of `q`, in canonical order.
pub fn order_ideals<T>(q: &Poset<T>) -> Vec<IndexSet> {
    order_ideals_capped(q, usize::MAX).expect("uncapped enumeration")
}

/// [`order_ideals`] with a limit on the number of ideals produced.
pub fn order_ideals_capped<T>(q: &Poset<T>, cap: usize) -> Result<Vec<IndexSet>> {
    let ext = q.linear_extension();
    let strict: Vec<IndexSet> = (0..q.len())
        .map(|i| {
            let mut s = q.down_set(i).clone();
            s.remove(i);
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut current = IndexSet::new();
    extend_ideals(&ext, &strict, 0, &mut current, &mut out, cap)?;
    out.sort();
    Ok(out)
}

// Walk a linear extension; an element may be added only when everything
// strictly below it is already present, so each leaf is a distinct ideal.
fn extend_ideals(
    ext: &[usize],
    strict: &[IndexSet],
    pos: usize,
    current: &mut IndexSet,
    out: &mut Vec<IndexSet>,
    cap: usize,
) -> Result<()> {
    if pos == ext.len() {
        if out.len() >= cap {
            return Err(LciError::Resource { what: "order ideals".into(), limit: cap });
        }
        out.push(current.clone());
        return Ok(());
    }
    let e = ext[pos];
    extend_ideals(ext, strict, pos + 1, current, out, cap)?;
    if strict[e].is_subset(current) {
        current.insert(e);
        extend_ideals(ext, strict, pos + 1, current, out, cap)?;
        current.remove(e);
    }
    Ok(())
}
