//! Generators for the standard test families: Grassmannians in their
//! Plücker parameterization, coupled resonators, random slices and a few
//! small hand-written families.

mod examples;
mod grassmannian;
mod resonator;
mod slice;

pub use examples::{base_locus_family, octic_family, semimixed_family};
pub use grassmannian::{
    column_subsets, grassmannian_degree, grassmannian_family, grassmannian_family_capped, grassmannian_variable,
    DEFAULT_MINOR_CAP,
};
pub use resonator::{random_resonator, resonator_family, ResonatorSpec};
pub use slice::{random_slice, special_gr36_slice, CoefficientKind, INT_RANGE};
