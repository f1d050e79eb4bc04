//! Hub-structured multivariate time series: one hub series whose past
//! drives every other series, each series depending on its own past.

use crate::ci::CiStatement;
use crate::error::{domain, Result};
use crate::lattice::{DistributiveLattice, DEFAULT_ELEMENT_CAP};
use crate::set::{GroundSet, IndexSet};
use crate::tdag::{lattice_of_tdag_capped, Tdag};

/// `series` series observed at times `1..=horizon`; `hub` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub series: usize,
    pub horizon: usize,
    pub hub: usize,
}

impl SeriesSpec {
    pub fn new(series: usize, horizon: usize, hub: usize) -> Result<Self> {
        let s = SeriesSpec { series, horizon, hub };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.series == 0 || self.horizon == 0 {
            return Err(domain("need at least one series and one time point"));
        }
        if self.hub == 0 || self.hub > self.series {
            return Err(domain(format!("hub {} outside 1..={}", self.hub, self.series)));
        }
        Ok(())
    }

    /// Same model one step further.
    pub fn advanced(&self) -> Self {
        SeriesSpec { horizon: self.horizon + 1, ..*self }
    }

    /// `is` for small indices, `i_s` otherwise.
    pub fn label(&self, i: usize, s: usize) -> String {
        if self.series < 10 && self.horizon < 10 {
            format!("{i}{s}")
        } else {
            format!("{i}_{s}")
        }
    }

    /// Vertex index of `(i, s)`; vertices are ordered by time, then series.
    pub fn vertex(&self, i: usize, s: usize) -> usize {
        (s - 1) * self.series + (i - 1)
    }

    pub fn ground(&self) -> GroundSet {
        let labels = (1..=self.horizon)
            .flat_map(|s| (1..=self.series).map(move |i| (i, s)))
            .map(|(i, s)| self.label(i, s));
        GroundSet::new(labels).expect("distinct labels")
    }

    /// Ancestral set of `(i, s)`, including the vertex itself; empty for
    /// `s = 0`.
    pub fn ancestral_set(&self, i: usize, s: usize) -> IndexSet {
        let mut out: IndexSet = (1..=s).map(|u| self.vertex(i, u)).collect();
        if i != self.hub {
            out = out.union(&(1..s).map(|u| self.vertex(self.hub, u)).collect());
        }
        out
    }

    /// Top join-irreducible of every series at the horizon.
    pub fn top_generators(&self) -> Vec<IndexSet> {
        (1..=self.series).map(|i| self.ancestral_set(i, self.horizon)).collect()
    }

    /// Ancestral sets of every vertex, time by time. Their closure is the
    /// model lattice; the top generators alone do not reach the earlier
    /// time points.
    pub fn generators(&self) -> Vec<IndexSet> {
        (1..=self.horizon)
            .flat_map(|s| (1..=self.series).map(move |i| (i, s)))
            .map(|(i, s)| self.ancestral_set(i, s))
            .collect()
    }

    /// Series `i` up to the horizon independent of series `j` up to the
    /// horizon given the hub up to one step earlier.
    pub fn cross_statement(&self, i: usize, j: usize) -> Result<CiStatement> {
        if i == self.hub || j == self.hub || i == j || i > self.series || j > self.series || i == 0 || j == 0 {
            return Err(domain("need two distinct non-hub series"));
        }
        let a = self.ancestral_set(i, self.horizon);
        let b = self.ancestral_set(j, self.horizon);
        CiStatement::from_pair(&a, &b)
    }
}

pub fn timeseries_tdag(spec: &SeriesSpec) -> Result<Tdag> {
    spec.validate()?;
    let g = spec.ground();
    let mut edges = Vec::new();
    for s in 1..=spec.horizon {
        for u in (s + 1)..=spec.horizon {
            for i in 1..=spec.series {
                edges.push((spec.vertex(i, s), spec.vertex(i, u)));
                if i != spec.hub {
                    edges.push((spec.vertex(spec.hub, s), spec.vertex(i, u)));
                }
            }
        }
    }
    Tdag::new(g.labels().to_vec(), edges)
}

pub fn timeseries_lattice(spec: &SeriesSpec) -> Result<DistributiveLattice> {
    timeseries_lattice_capped(spec, DEFAULT_ELEMENT_CAP)
}

pub fn timeseries_lattice_capped(spec: &SeriesSpec, cap: usize) -> Result<DistributiveLattice> {
    lattice_of_tdag_capped(&timeseries_tdag(spec)?, cap)
}

/// One series' top generator before and after a time step, over the ground
/// set of the advanced model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateStep {
    pub series: usize,
    pub old_top: IndexSet,
    pub new_top: IndexSet,
    pub innovation: IndexSet,
}

/// Steps from horizon `t` to `t + 1`, one per series.
pub fn advance_time(spec: &SeriesSpec) -> Result<Vec<UpdateStep>> {
    spec.validate()?;
    let next = spec.advanced();
    Ok((1..=spec.series)
        .map(|i| {
            let old_top = next.ancestral_set(i, spec.horizon);
            let new_top = next.ancestral_set(i, next.horizon);
            let innovation = new_top.difference(&old_top);
            UpdateStep { series: i, old_top, new_top, innovation }
        })
        .collect())
}

/// `history[i-1][s-1]` is the innovation of series `i` at time `s`; the
/// top generator at the horizon is the union of its row.
pub fn innovation_history(spec: &SeriesSpec) -> Result<Vec<Vec<IndexSet>>> {
    spec.validate()?;
    Ok((1..=spec.series)
        .map(|i| {
            (1..=spec.horizon)
                .map(|s| spec.ancestral_set(i, s).difference(&spec.ancestral_set(i, s - 1)))
                .collect()
        })
        .collect())
}
