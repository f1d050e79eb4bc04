//! Conditional independence statements of a lattice and the numerical
//! oracles that check them: discrete joint tables and Gaussian
//! moving-average models.

mod discrete;
mod gaussian;
mod statements;

pub use discrete::{
    check_ci, check_hibi_relation, ci_deviation, hibi_relation_deviation, joint_from_tdag, margin,
    q_margin, ConditionalSource, DiscreteJoint, MarginTable,
};
pub use gaussian::{
    check_gaussian_ci, complement_projector, gaussian_ci_report, gaussian_from_tdag, max_abs,
    projector, schur_complement, spectrum, GaussianCiReport, GaussianModel, DEFAULT_RANK_TOL,
};
pub use statements::{ci_statements, CiStatement};
