//! ADE root systems: types, simple systems and per-component data.

pub mod ade;
pub mod component;
pub mod simple;

pub use ade::{
    ade_types, cartan_gram, extended_gram, format_label, identify_ade_decomposition, parse_label, AdeType, Family,
    IdentifiedComponent,
};
pub use component::{component, coxeter_number, CoxeterMode, RootComponent};
pub use simple::{extract_simple_system, is_positive, SimpleSystem};
