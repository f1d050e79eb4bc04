//! JSON forms of the main objects.
//!
//! Sets are written as arrays of labels. TDAG edges may be given as index
//! pairs or label pairs. Joint probabilities given as strings (`"3/8"`) are
//! read exactly.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alexander::MonomialIdeal;
use crate::ci::{DiscreteJoint, GaussianModel};
use crate::error::{LciError, Result};
use crate::info::Valuation;
use crate::lattice::DistributiveLattice;
use crate::poset::Poset;
use crate::scalar::{parse_rational, Scalar};
use crate::set::{GroundSet, IndexSet};
use crate::tdag::Tdag;
use crate::Exact;

fn format_err(e: serde_json::Error) -> LciError {
    LciError::Format(format!("JSON: {e}"))
}

fn to_string<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data serializes")
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    ground: Vec<String>,
    elements: Vec<Vec<String>>,
    #[serde(default)]
    covers: Option<Vec<[usize; 2]>>,
}

pub fn lattice_to_json(l: &DistributiveLattice) -> String {
    let g = l.ground();
    to_string(&LatticeJson {
        ground: g.labels().to_vec(),
        elements: l
            .elements()
            .iter()
            .map(|e| g.labels_of(e).into_iter().map(String::from).collect())
            .collect(),
        covers: Some(l.covers().iter().map(|&(a, b)| [a, b]).collect()),
    })
}

/// Covers are optional on input; when present they must match the order of
/// the listed elements.
pub fn lattice_from_json(text: &str) -> Result<DistributiveLattice> {
    let j: LatticeJson = serde_json::from_str(text).map_err(format_err)?;
    let g = GroundSet::new(j.ground)?;
    let sets: Vec<IndexSet> = j.elements.iter().map(|e| g.set(e)).collect::<Result<_>>()?;
    let l = DistributiveLattice::from_sets(g, sets.clone())?;
    if let Some(covers) = j.covers {
        let mut given: Vec<(IndexSet, IndexSet)> = Vec::new();
        for [a, b] in covers {
            let (Some(x), Some(y)) = (sets.get(a), sets.get(b)) else {
                return Err(LciError::Format(format!("cover [{a}, {b}] out of range")));
            };
            given.push((x.clone(), y.clone()));
        }
        let mut actual: Vec<(IndexSet, IndexSet)> = l
            .covers()
            .iter()
            .map(|&(a, b)| (l.element(a).clone(), l.element(b).clone()))
            .collect();
        given.sort();
        actual.sort();
        if given != actual {
            return Err(LciError::Format("covers do not match the elements".into()));
        }
    }
    Ok(l)
}

pub fn ground_to_json(g: &GroundSet) -> String {
    to_string(&g.labels())
}

pub fn ground_from_json(text: &str) -> Result<GroundSet> {
    let labels: Vec<String> = serde_json::from_str(text).map_err(format_err)?;
    GroundSet::new(labels)
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    covers: Vec<[usize; 2]>,
}

pub fn poset_to_json(q: &Poset<String>) -> String {
    to_string(&PosetJson {
        elements: q.elements().to_vec(),
        covers: q.covers().iter().map(|&(a, b)| [a, b]).collect(),
    })
}

/// `covers` may be any generating set of strict relations.
pub fn poset_from_json(text: &str) -> Result<Poset<String>> {
    let j: PosetJson = serde_json::from_str(text).map_err(format_err)?;
    let pairs: Vec<(usize, usize)> = j.covers.iter().map(|&[a, b]| (a, b)).collect();
    Poset::from_pairs(j.elements, &pairs)
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    vars: Vec<String>,
    gens: Vec<Vec<u32>>,
}

pub fn ideal_to_json(m: &MonomialIdeal) -> String {
    to_string(&IdealJson { vars: m.variables().to_vec(), gens: m.exponents() })
}

pub fn ideal_from_json(text: &str) -> Result<MonomialIdeal> {
    let j: IdealJson = serde_json::from_str(text).map_err(format_err)?;
    MonomialIdeal::from_exponents(j.vars, &j.gens)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Index(usize),
    Label(String),
}

#[derive(Serialize, Deserialize)]
struct TdagJson {
    vertices: Vec<String>,
    edges: Vec<[Endpoint; 2]>,
}

pub fn tdag_to_json(g: &Tdag) -> String {
    to_string(&TdagJson {
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|&(a, b)| [Endpoint::Index(a), Endpoint::Index(b)]).collect(),
    })
}

/// With `close` the edge list is transitively closed; otherwise it must
/// already be closed.
pub fn tdag_from_json(text: &str, close: bool) -> Result<Tdag> {
    let j: TdagJson = serde_json::from_str(text).map_err(format_err)?;
    let resolve = |e: &Endpoint| match e {
        Endpoint::Index(i) => Ok(*i),
        Endpoint::Label(s) => j
            .vertices
            .iter()
            .position(|v| v == s)
            .ok_or_else(|| LciError::Format(format!("unknown vertex '{s}'"))),
    };
    let edges: Vec<(usize, usize)> = j
        .edges
        .iter()
        .map(|[a, b]| Ok((resolve(a)?, resolve(b)?)))
        .collect::<Result<_>>()?;
    if close {
        Tdag::closure(j.vertices, edges)
    } else {
        Tdag::new(j.vertices, edges)
    }
}

#[derive(Serialize, Deserialize)]
struct JointJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground: Option<Vec<String>>,
    cards: Vec<usize>,
    probs: Vec<Value>,
}

/// A joint read from JSON, exact when any probability was a string.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedJoint {
    Float(DiscreteJoint<f64>),
    Exact(DiscreteJoint<Exact>),
}

impl LoadedJoint {
    pub fn ground(&self) -> &GroundSet {
        match self {
            LoadedJoint::Float(d) => d.ground(),
            LoadedJoint::Exact(d) => d.ground(),
        }
    }

    pub fn to_float(&self) -> DiscreteJoint<f64> {
        match self {
            LoadedJoint::Float(d) => d.clone(),
            LoadedJoint::Exact(d) => d.map(|x| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)),
        }
    }
}

/// Missing `ground` defaults to `1..n`.
pub fn joint_from_json(text: &str) -> Result<LoadedJoint> {
    let j: JointJson = serde_json::from_str(text).map_err(format_err)?;
    let ground = match j.ground {
        Some(labels) => GroundSet::new(labels)?,
        None => GroundSet::numbered(j.cards.len()),
    };
    if j.probs.iter().any(Value::is_string) {
        let probs = j
            .probs
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => None,
            }
            .ok_or_else(|| LciError::Format(format!("bad probability {v}"))))
            .collect::<Result<Vec<_>>>()?;
        return Ok(LoadedJoint::Exact(DiscreteJoint::new(ground, j.cards, probs)?));
    }
    let probs = j
        .probs
        .iter()
        .map(|v| v.as_f64().ok_or_else(|| LciError::Format(format!("bad probability {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LoadedJoint::Float(DiscreteJoint::new(ground, j.cards, probs)?))
}

/// Floating tables are written as numbers, others as strings.
pub fn joint_to_json<T: Scalar + Serialize>(d: &DiscreteJoint<T>) -> String {
    let probs = d
        .table()
        .iter()
        .map(|p| serde_json::to_value(p).expect("scalar serializes"))
        .collect();
    to_string(&JointJson { ground: Some(d.ground().labels().to_vec()), cards: d.cards().to_vec(), probs })
}

pub fn exact_joint_to_json(d: &DiscreteJoint<Exact>) -> String {
    let probs = d.table().iter().map(|p| Value::String(p.to_string())).collect();
    to_string(&JointJson { ground: Some(d.ground().labels().to_vec()), cards: d.cards().to_vec(), probs })
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GaussianJson {
    Rows(Vec<Vec<f64>>),
    Labeled { ground: Vec<String>, factor: Vec<Vec<f64>> },
}

pub fn gaussian_to_json(m: &GaussianModel<f64>) -> String {
    let a = m.factor();
    let rows = (0..a.nrows()).map(|r| a.row(r).iter().copied().collect()).collect();
    to_string(&GaussianJson::Labeled { ground: m.ground().labels().to_vec(), factor: rows })
}

/// Either a bare array of rows or `{"ground": [...], "factor": [[...]]}`.
pub fn gaussian_from_json(text: &str) -> Result<GaussianModel<f64>> {
    let (ground, rows) = match serde_json::from_str(text).map_err(format_err)? {
        GaussianJson::Rows(rows) => (GroundSet::numbered(rows.len()), rows),
        GaussianJson::Labeled { ground, factor } => (GroundSet::new(ground)?, factor),
    };
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(LciError::Format("factor rows must form a square matrix".into()));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    GaussianModel::new(ground, DMatrix::from_row_slice(n, n, &flat))
}

/// Keys are rendered sets (`{}` for the empty set).
pub fn valuation_to_json(v: &Valuation<f64>) -> String {
    let map: BTreeMap<String, f64> = v
        .values()
        .iter()
        .map(|(s, x)| (v.ground().render(s), *x))
        .collect();
    to_string(&map)
}

pub fn valuation_from_json(ground: &GroundSet, text: &str) -> Result<Valuation<f64>> {
    let map: BTreeMap<String, f64> = serde_json::from_str(text).map_err(format_err)?;
    let values = map
        .into_iter()
        .map(|(k, x)| Ok((ground.parse_set(&k)?, x)))
        .collect::<Result<_>>()?;
    Valuation::new(ground.clone(), values)
}
