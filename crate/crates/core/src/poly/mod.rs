//! Sparse multivariate polynomials over exact or floating coefficients.

mod context;
mod display;
mod monomial;
mod parse;
mod polynomial;

pub use context::{Ctx, VariableContext};
pub use monomial::Monomial;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use polynomial::{jacobian, Polynomial};
