//! Lattice conditional independence models as executable algebra.
//!
//! The crate builds distributive lattices of index sets, their Hibi binomials
//! and monomial parametrizations, Alexander duals of the associated squarefree
//! ideals, and the transitive DAG that encodes ancestral conditioning. Discrete
//! and Gaussian oracles check the resulting conditional independence
//! statements numerically, and Shannon information is treated as a lattice
//! valuation.
//!
//! Probability tables and valuations are generic over [`Scalar`]; the type
//! aliases below fix the common choices.

pub mod alexander;
pub mod ci;
pub mod error;
pub mod export;
pub mod hibi;
pub mod info;
pub mod json;
pub mod lattice;
pub mod poset;
pub mod scalar;
pub mod set;
pub mod tdag;
pub mod timeseries;

pub use alexander::{
    alexander_dual_hitting, alexander_dual_intersect, bipartite_edges, edge_ideal, ideal_m_q,
    tdag_from_dual, BipartiteEdgeSet, DiGraph, MonomialIdeal,
};
pub use ci::{
    check_ci, check_gaussian_ci, check_hibi_relation, ci_statements, gaussian_from_tdag,
    joint_from_tdag, margin, projector, q_margin, CiStatement, ConditionalSource, DiscreteJoint,
    GaussianModel,
};
pub use error::{LciError, Result};
pub use hibi::{
    generator_g, hibi_generators, kernel_membership, monomial_u, monomial_u_prime,
    z_factorization, HibiBinomial, SquarefreeMonomial, ZFactorization,
};
pub use info::{
    edge_increments, rota_inclusion_exclusion, running_intersection_check, shannon_h,
    valuation_check, Valuation,
};
pub use lattice::{
    birkhoff_check, join_irreducibles, lattice_from_generators, saturated_chains,
    DistributiveLattice,
};
pub use poset::{order_ideals, Poset};
pub use scalar::Scalar;
pub use set::{GroundSet, IndexSet};
pub use tdag::{
    ancestors, complementary_lattice, lattice_of_tdag, reverse_tdag, tdag_of_lattice, Tdag,
};
pub use timeseries::{advance_time, timeseries_lattice, timeseries_tdag, SeriesSpec, UpdateStep};

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;
/// Discrete joint distribution in double precision.
pub type Joint = DiscreteJoint<f64>;
/// Discrete joint distribution with exact rational entries.
pub type ExactJoint = DiscreteJoint<Exact>;
/// Gaussian moving-average model in double precision.
pub type Gaussian = GaussianModel<f64>;
/// Information valuation in nats.
pub type Information = Valuation<f64>;
