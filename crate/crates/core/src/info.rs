//! Shannon information as a valuation on a distributive lattice.
//!
//! `H(I) = Σ_x p(x) ln p_I(x_I)`, the expected log-margin. This is the
//! negative of entropy, so values are `<= 0`.

use std::collections::BTreeMap;

use num_traits::Float;

use crate::ci::{margin, DiscreteJoint};
use crate::error::{domain, LciError, Result};
use crate::lattice::{canonical_chain, DistributiveLattice};
use crate::scalar::Scalar;
use crate::set::{GroundSet, IndexSet};
use crate::tdag::join_irreducible_increments;

/// Explicit table of values on sets of a ground set.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation<T> {
    ground: GroundSet,
    values: BTreeMap<IndexSet, T>,
}

impl<T: Scalar> Valuation<T> {
    pub fn new(ground: GroundSet, values: BTreeMap<IndexSet, T>) -> Result<Self> {
        for s in values.keys() {
            ground.check_subset(s)?;
        }
        Ok(Valuation { ground, values })
    }

    /// `H` on every element of `l`.
    pub fn from_joint(d: &DiscreteJoint<T>, l: &DistributiveLattice) -> Result<Self>
    where
        T: Float,
    {
        if d.ground() != l.ground() {
            return Err(domain("joint and lattice have different ground sets"));
        }
        let values = l
            .elements()
            .iter()
            .map(|e| Ok((e.clone(), shannon_h(d, e)?)))
            .collect::<Result<_>>()?;
        Ok(Valuation { ground: l.ground().clone(), values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &BTreeMap<IndexSet, T> {
        &self.values
    }

    pub fn get(&self, s: &IndexSet) -> Result<T> {
        self.values
            .get(s)
            .cloned()
            .ok_or_else(|| domain(format!("no value for {}", self.ground.render(s))))
    }

    pub fn set(&mut self, s: IndexSet, value: T) -> Result<()> {
        self.ground.check_subset(&s)?;
        self.values.insert(s, value);
        Ok(())
    }

    pub fn is_total_on(&self, l: &DistributiveLattice) -> bool {
        l.elements().iter().all(|e| self.values.contains_key(e))
    }
}

/// `Σ_x p(x) ln p_I(x_I)`; cells with `p(x) = 0` contribute nothing. The
/// empty margin is exactly 1, so `H(∅) = 0` without rounding.
pub fn shannon_h<T: Scalar + Float>(d: &DiscreteJoint<T>, i: &IndexSet) -> Result<T> {
    if i.is_empty() {
        return Ok(T::zero());
    }
    let m = margin(d, i)?;
    let mut h = T::zero();
    for (k, p) in d.table().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let q = *m.at_full(k);
        if q.is_zero() {
            return Err(LciError::Positivity(format!(
                "margin on {} vanishes on the support",
                d.ground().render(i)
            )));
        }
        h = h + *p * q.ln();
    }
    Ok(h)
}

/// The same quantity summed over the margin itself, `Σ p_I ln p_I`.
pub fn shannon_h_marginal<T: Scalar + Float>(d: &DiscreteJoint<T>, i: &IndexSet) -> Result<T> {
    let m = margin(d, i)?;
    Ok(m.table()
        .iter()
        .filter(|q| !q.is_zero())
        .fold(T::zero(), |acc, &q| acc + q * q.ln()))
}

/// Largest `|v(I∧J) + v(I∨J) - v(I) - v(J)|` over all pairs of `l`.
pub fn valuation_deviation<T: Scalar>(v: &Valuation<T>, l: &DistributiveLattice) -> Result<T> {
    let vals: Vec<T> = l.elements().iter().map(|e| v.get(e)).collect::<Result<_>>()?;
    let mut worst = T::zero();
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            let dev = vals[m].clone() + vals[j].clone() - vals[a].clone() - vals[b].clone();
            worst = T::max_of(worst, dev.abs());
        }
    }
    Ok(worst)
}

pub fn valuation_check<T: Scalar>(v: &Valuation<T>, l: &DistributiveLattice, tol: T) -> Result<bool> {
    Ok(valuation_deviation(v, l)? <= tol)
}

/// `I_i ∩ I_k ⊆ I_j` for every `i < j < k`.
pub fn running_intersection_check(sets: &[IndexSet]) -> bool {
    let n = sets.len();
    for i in 0..n {
        for k in (i + 2)..n {
            let cap = sets[i].intersection(&sets[k]);
            if !(i + 1..k).all(|j| cap.is_subset(&sets[j])) {
                return false;
            }
        }
    }
    true
}

/// Terms of the inclusion-exclusion sum for a family with the running
/// intersection property: the sets themselves, and the intersections of
/// consecutive sets. Under the property `I_k ∩ (I_1 ∪ … ∪ I_{k-1})` is
/// `I_k ∩ I_{k-1}`, so these are the only corrections.
pub fn rota_terms(sets: &[IndexSet]) -> Result<(Vec<IndexSet>, Vec<IndexSet>)> {
    if !running_intersection_check(sets) {
        return Err(LciError::Precondition(
            "family lacks the running intersection property".into(),
        ));
    }
    let minus = sets.windows(2).map(|w| w[0].intersection(&w[1])).collect();
    Ok((sets.to_vec(), minus))
}

pub fn rota_inclusion_exclusion<T: Scalar>(v: &Valuation<T>, sets: &[IndexSet]) -> Result<T> {
    let (plus, minus) = rota_terms(sets)?;
    let mut total = T::zero();
    for s in &plus {
        total = total + v.get(s)?;
    }
    for s in &minus {
        total = total - v.get(s)?;
    }
    Ok(total)
}

/// Increment across one Hasse cover.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeIncrement<T> {
    pub lower: IndexSet,
    pub upper: IndexSet,
    pub value: T,
}

/// `v(upper) - v(lower)` for every cover of `l`.
pub fn edge_increments<T: Scalar>(v: &Valuation<T>, l: &DistributiveLattice) -> Result<Vec<EdgeIncrement<T>>> {
    l.covers()
        .iter()
        .map(|&(a, b)| {
            let (lower, upper) = (l.element(a).clone(), l.element(b).clone());
            let value = v.get(&upper)? - v.get(&lower)?;
            Ok(EdgeIncrement { lower, upper, value })
        })
        .collect()
}

/// Successive differences along a chain starting at `∅`.
pub fn chain_increments<T: Scalar>(v: &Valuation<T>, chain: &[IndexSet]) -> Result<Vec<T>> {
    if chain.first().is_some_and(|s| !s.is_empty()) {
        return Err(domain("chain must start at the empty set"));
    }
    chain
        .windows(2)
        .map(|w| Ok(v.get(&w[1])? - v.get(&w[0])?))
        .collect()
}

/// Increments along the canonical chain from `∅` to `target`.
pub fn canonical_chain_increments<T: Scalar>(
    v: &Valuation<T>,
    l: &DistributiveLattice,
    target: &IndexSet,
) -> Result<Vec<(IndexSet, T)>> {
    let chain = canonical_chain(l, target)?;
    let inc = chain_increments(v, &chain)?;
    Ok(chain.into_iter().skip(1).zip(inc).collect())
}

/// Per TDAG vertex: `v(J) - v(J ∖ increment)` for its join-irreducible `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexIncrement<T> {
    pub label: String,
    pub join_irreducible: IndexSet,
    pub increment: IndexSet,
    pub value: T,
}

pub fn vertex_increments<T: Scalar>(v: &Valuation<T>, l: &DistributiveLattice) -> Result<Vec<VertexIncrement<T>>> {
    join_irreducible_increments(l)
        .into_iter()
        .map(|(ji, inc, label)| {
            let value = v.get(&ji)? - v.get(&ji.difference(&inc))?;
            Ok(VertexIncrement { label, join_irreducible: ji, increment: inc, value })
        })
        .collect()
}
