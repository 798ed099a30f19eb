//! The hyperbolic lattice `U + N`: Weyl vector, section vectors, the
//! orthogonal-complement oracle and deep-hole checks.

pub mod deep_hole;
pub mod ln;

pub use deep_hole::{deep_hole_checks, DeepHoleFile, DeepHoleInput, DeepHoleReport, XiComponent};
pub use ln::{
    build_ln, compare_with_construction, enumerate_section_classes, f_n, hyperbolic_gram, orthocomplement,
    section_vector, theta_n, weyl_vector_ln, weyl_vector_ln_checks, z_n, HypVector, OracleAgreement, Orthocomplement,
    WallChecks,
};
