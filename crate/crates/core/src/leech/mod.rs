//! The Leech lattice from a codeword of a Niemeier glue code, and its certification.

pub mod certify;
pub mod construct;

pub use certify::{certify_leech, Certificate, LEECH_KISSING_NUMBER};
pub use construct::{
    compare_corollary, construct_leech, corollary_zero, ConstructedLattice, CorollaryLattice, LinearForms,
};
