//! Exact lattice toolkit: Niemeier lattices with roots, and the Leech lattice
//! built from any codeword of a Niemeier glue code.

pub mod cli;
pub mod encoding;
pub mod enumerate;
pub mod error;
pub mod hyperbolic;
pub mod lattice;
pub mod lattice_file;
pub mod leech;
pub mod lll;
pub mod matrix;
pub mod niemeier;
pub mod normal_form;
pub mod report;
pub mod roots;

pub use error::{LatticeError, Result};
