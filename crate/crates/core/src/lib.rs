//! SAGBI homotopy continuation for horizontally parameterized polynomial
//! systems.
//!
//! The pipeline: pick a weight under which the block generators form a SAGBI
//! basis ([`sagbi`]), degenerate the system to a sparse one along that weight
//! ([`homotopy`]), solve the sparse system by polyhedral homotopy
//! ([`polyhedral`]) and track its solutions back ([`tracker`]).
//!
//! ```
//! use sagbi_core::homotopy::SolveOptions;
//! use sagbi_core::models::{grassmannian_family, random_slice, CoefficientKind};
//!
//! let (family, _) = grassmannian_family(2, 4)?;
//! let system = random_slice(&family, &[4], CoefficientKind::ComplexGaussian, 1)?;
//! let report = system.solve(&SolveOptions::default())?;
//! assert_eq!(report.solutions.solutions.len(), 2);
//! # Ok::<(), sagbi_core::Error>(())
//! ```

pub mod error;
pub mod homotopy;
pub mod intlin;
pub mod io;
pub mod models;
pub mod poly;
pub mod polyhedral;
pub mod rng;
pub mod sagbi;
pub mod scalar;
pub mod tracker;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use scalar::Scalar;

pub type Rational = BigRational;
pub type QPoly = poly::Polynomial<Rational>;
pub type CPoly = poly::Polynomial<Complex64>;


pub type RationalSystem = homotopy::ParameterizedSystem<Rational>;
pub type ComplexSystem = homotopy::ParameterizedSystem<Complex64>;
