//! Niemeier lattices with roots: glue data, assembly, glue code and Weyl data.

pub mod assemble;
pub mod glue;

pub use assemble::{assemble_niemeier, niemeier, niemeier_cached, sample_codewords, CodeElement, Codeword, NiemeierLattice};
pub use glue::{bundled, bundled_labels, glue_data, parse_glue_data, GlueData};
