//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms, lattice indices, rational elimination and an exact simplex.

mod matrix;
mod normal_form;
pub mod rational;
mod simplex;

pub use matrix::{gcd_all, IntMatrix};
pub use normal_form::{
    hermite_normal_form, integer_kernel, lattice_index, smith_normal_form, HermiteForm,
    LatticeIndex, SmithForm,
};
pub use simplex::{
    maximize, primitive_integer_vector, strict_lp_feasible, Constraint, LpOutcome, Relation,
};
