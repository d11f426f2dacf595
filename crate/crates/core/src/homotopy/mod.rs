//! Parameterized systems, the SAGBI homotopy and its orchestration: weight
//! choice, degree checks, base-locus recovery and coefficient continuation.

mod base_locus;
mod build;
mod degree;
mod solve;
mod system;

pub use base_locus::{compute_base_locus, BaseLocus};
pub use build::{
    build_one_step_homotopies, build_sagbi_homotopy, leader_system, t_context, Provenance, SagbiHomotopySystem,
};
pub use degree::{compute_degree_map, compute_degree_monomial_map, DegreeReport, DEGREE_TRIALS};
pub use solve::{choose_weight, solve, target_residual, Method, SolveOptions, SolveReport, Timing};
pub use system::{AnySystem, ParameterizedSystem};
