use nalgebra::{DMatrix, RealField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, LciError, Result};
use crate::set::{GroundSet, IndexSet};
use crate::tdag::Tdag;

use super::CiStatement;

/// Relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// `X = A Z` with `Z` standard normal; covariance `A Aᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianModel<T: RealField + Copy> {
    ground: GroundSet,
    factor: DMatrix<T>,
}

impl<T: RealField + Copy> GaussianModel<T> {
    pub fn new(ground: GroundSet, factor: DMatrix<T>) -> Result<Self> {
        let n = ground.len();
        if factor.nrows() != n || factor.ncols() != n {
            return Err(domain(format!(
                "factor is {}x{}, expected {n}x{n}",
                factor.nrows(),
                factor.ncols()
            )));
        }
        if n > 0 {
            let scale = factor.amax();
            if scale == T::zero() {
                return Err(LciError::Numerical("factor is singular".into()));
            }
            let det = (factor.clone() / scale).determinant();
            if det.abs() <= nalgebra::convert(1e-10) {
                return Err(LciError::Numerical("factor is singular".into()));
            }
        }
        Ok(GaussianModel { ground, factor })
    }

    /// Seeded dense model with entries uniform in `[-1, 1]`.
    pub fn random_dense(ground: GroundSet, seed: u64) -> Result<Self> {
        let n = ground.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(n, n, |_, _| nalgebra::convert(rng.gen_range(-1.0..=1.0)));
        Self::new(ground, a)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn factor(&self) -> &DMatrix<T> {
        &self.factor
    }

    pub fn covariance(&self) -> DMatrix<T> {
        &self.factor * self.factor.transpose()
    }

    /// Rows of `A` indexed by `i`.
    pub fn rows(&self, i: &IndexSet) -> DMatrix<T> {
        let idx: Vec<usize> = i.iter().collect();
        self.factor.select_rows(idx.iter())
    }
}

/// Model whose row `i` is supported on the ancestors of `i`, with off-diagonal
/// entries uniform in `[-1, 1]` and `0.5 <= |a_ii| <= 1`.
pub fn gaussian_from_tdag<T: RealField + Copy>(g: &Tdag, seed: u64) -> Result<GaussianModel<T>> {
    let n = g.vertices().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x: f64 = if i == j {
                let m = rng.gen_range(0.5..=1.0);
                if rng.gen_bool(0.5) {
                    m
                } else {
                    -m
                }
            } else if g.edges().contains(&(j, i)) {
                rng.gen_range(-1.0..=1.0)
            } else {
                continue;
            };
            a[(i, j)] = nalgebra::convert(x);
        }
    }
    GaussianModel::new(g.ground(), a)
}

fn rank_check<T: RealField + Copy>(m: &DMatrix<T>, what: &str) -> Result<()> {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().fold(T::zero(), |acc, &s| acc.max(s));
    let min = sv.iter().fold(max, |acc, &s| acc.min(s));
    if sv.len() < m.nrows() || max == T::zero() || min <= max * nalgebra::convert(DEFAULT_RANK_TOL) {
        return Err(LciError::Numerical(format!("{what} is rank deficient")));
    }
    Ok(())
}

/// `A_Iᵀ (A_I A_Iᵀ)⁻¹ A_I`, the orthogonal projector onto the row space of
/// `A_I`.
pub fn projector<T: RealField + Copy>(m: &GaussianModel<T>, i: &IndexSet) -> Result<DMatrix<T>> {
    m.ground.check_subset(i)?;
    let n = m.ground.len();
    if i.is_empty() {
        return Ok(DMatrix::zeros(n, n));
    }
    let ai = m.rows(i);
    rank_check(&ai, &format!("A_{}", m.ground.render(i)))?;
    let gram = &ai * ai.transpose();
    let solved = gram
        .lu()
        .solve(&ai)
        .ok_or_else(|| LciError::Numerical("singular Gram block".into()))?;
    Ok(ai.transpose() * solved)
}

/// `Q_J = I - P_{[n]∖J}`.
pub fn complement_projector<T: RealField + Copy>(m: &GaussianModel<T>, j: &IndexSet) -> Result<DMatrix<T>> {
    m.ground.check_subset(j)?;
    let n = m.ground.len();
    let p = projector(m, &m.ground.full().difference(j))?;
    Ok(DMatrix::identity(n, n) - p)
}

/// `Γ_IJ - Γ_IK Γ_KK⁻¹ Γ_KJ` for `Γ = A Aᵀ`.
pub fn schur_complement<T: RealField + Copy>(
    m: &GaussianModel<T>,
    i: &IndexSet,
    j: &IndexSet,
    k: &IndexSet,
) -> Result<DMatrix<T>> {
    for s in [i, j, k] {
        m.ground.check_subset(s)?;
    }
    let (ai, aj) = (m.rows(i), m.rows(j));
    let gij = &ai * aj.transpose();
    if k.is_empty() {
        return Ok(gij);
    }
    let ak = m.rows(k);
    rank_check(&ak, &format!("A_{}", m.ground.render(k)))?;
    let gkk = &ak * ak.transpose();
    let gkj = &ak * aj.transpose();
    let solved = gkk
        .lu()
        .solve(&gkj)
        .ok_or_else(|| LciError::Numerical("singular conditioning block".into()))?;
    Ok(gij - (&ai * ak.transpose()) * solved)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn spectrum<T: RealField + Copy>(m: &DMatrix<T>) -> Vec<T> {
    let mut ev: Vec<T> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}

pub fn max_abs<T: RealField + Copy>(m: &DMatrix<T>) -> T {
    if m.is_empty() {
        T::zero()
    } else {
        m.amax()
    }
}

/// The three deviations evaluated for a statement `a ⊥⊥ b | c`, with
/// `I = a∪c`, `J = b∪c`, `K = c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianCiReport<T> {
    /// Max-abs of the Schur complement.
    pub schur: T,
    /// Max-abs of `P_I P_J - P_J P_I`.
    pub commutator: T,
    /// Max-abs of `P_I (I - P_K) P_J`.
    pub residual: T,
}

impl<T: RealField + Copy> GaussianCiReport<T> {
    pub fn max(&self) -> T {
        self.schur.max(self.commutator).max(self.residual)
    }

    /// Verdicts of the three checks at `tol`.
    pub fn verdicts(&self, tol: T) -> [bool; 3] {
        [self.schur < tol, self.commutator < tol, self.residual < tol]
    }
}

pub fn gaussian_ci_report<T: RealField + Copy>(m: &GaussianModel<T>, s: &CiStatement) -> Result<GaussianCiReport<T>> {
    let i = s.a.union(&s.c);
    let j = s.b.union(&s.c);
    let schur = max_abs(&schur_complement(m, &i, &j, &s.c)?);
    let pi = projector(m, &i)?;
    let pj = projector(m, &j)?;
    let pk = projector(m, &s.c)?;
    let n = m.ground.len();
    let commutator = max_abs(&(&pi * &pj - &pj * &pi));
    let residual = max_abs(&(&pi * (DMatrix::identity(n, n) - pk) * &pj));
    Ok(GaussianCiReport { schur, commutator, residual })
}

/// All three checks must agree; disagreement is a contract violation.
pub fn check_gaussian_ci<T: RealField + Copy>(m: &GaussianModel<T>, s: &CiStatement, tol: T) -> Result<bool> {
    let r = gaussian_ci_report(m, s)?;
    match r.verdicts(tol) {
        [true, true, true] => Ok(true),
        [false, false, false] => Ok(false),
        v => Err(LciError::ContractViolation(format!(
            "Gaussian checks disagree on {}: schur {} ({}), commutator {} ({}), residual {} ({})",
            s.render(&m.ground),
            r.schur,
            v[0],
            r.commutator,
            v[1],
            r.residual,
            v[2]
        ))),
    }
}
