use crate::error::Result;
use crate::poly::VariableContext;
use crate::sagbi::SagbiFamily;

/// `x^2+1, y^2+1, xy+z^2, 1`: a degree 8 map to projective 3-space whose
/// leading terms under `(2,2,3)` give the same degree, so a slice by three
/// generic hyperplanes has 8 solutions.
pub fn octic_family() -> Result<SagbiFamily> {
    let ctx = VariableContext::new(&["x", "y", "z"])?;
    SagbiFamily::parse(&ctx, &[vec!["x^2+1", "y^2+1", "x*y+z^2", "1"]])
}

/// Two blocks over `x, y, z`, sliced semimixed with two equations on the
/// first block and one on the second; 6 solutions.
pub fn semimixed_family() -> Result<SagbiFamily> {
    let ctx = VariableContext::new(&["x", "y", "z"])?;
    SagbiFamily::parse(&ctx, &[vec!["x", "y", "x^2+y^2", "1"], vec!["y", "z", "x^2+y^2", "x^3+z^3"]])
}

/// A degree 2 map with a base locus in the torus whose monomial
/// degeneration has degree 1. Two generic equations have 4 solutions in
/// the torus: 2 reached by the SAGBI homotopy and 2 in the base locus.
pub fn base_locus_family() -> Result<SagbiFamily> {
    let ctx = VariableContext::new(&["x", "y"])?;
    SagbiFamily::parse(&ctx, &[vec!["x*(x^2+y^2-2*x)", "x*(5-4*y)", "y*(x^2+y^2-2*x)", "y*(5-4*y)"]])
}
