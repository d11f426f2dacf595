use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::system::{CompiledSystem, ONE};
use super::Homotopy;

/// `h(s) = gamma s / (gamma s + 1 - s)` and its derivative. Runs from 0 to 1
/// and avoids the real segment for non-real `gamma`.
pub fn gamma_path(s: f64, gamma: Complex64) -> (Complex64, Complex64) {
    let den = gamma * s + (1.0 - s);
    (gamma * s / den, gamma / (den * den))
}

/// How the homotopy parameter `tau` depends on the tracking time `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathShape {
    /// `tau = s`.
    Linear,
    /// `tau = gamma_path(s, gamma)`.
    Gamma(Complex64),
    /// `log tau = -lambda (1 - s)` with `Re lambda > 0`, so `|tau| <= 1`.
    /// Suits systems whose `tau` exponents span orders of magnitude; the
    /// start sits at `tau = exp(-lambda)` rather than 0, and a non-real
    /// `lambda` keeps real systems off real singularities.
    Log(Complex64),
}

impl PathShape {
    fn at(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            PathShape::Linear => (Complex64::new(s, 0.0), ONE),
            PathShape::Gamma(g) => gamma_path(s, g),
            PathShape::Log(lambda) => {
                let tau = (-lambda * (1.0 - s)).exp();
                (tau, lambda * tau)
            }
        }
    }
}

/// `H(x, s) = F(x, tau(s))` for a system whose coefficients depend on `tau`.
#[derive(Debug, Clone)]
pub struct ParameterHomotopy {
    pub system: CompiledSystem,
    pub path: PathShape,
}

impl ParameterHomotopy {
    pub fn new(system: CompiledSystem, path: PathShape) -> Self {
        ParameterHomotopy { system, path }
    }
}

impl Homotopy for ParameterHomotopy {
    fn nvars(&self) -> usize {
        self.system.nvars()
    }

    fn evaluate(
        &self,
        x: &[Complex64],
        s: f64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        ds: &mut DVector<Complex64>,
    ) {
        if let PathShape::Log(lambda) = self.path {
            self.system.evaluate_log(x, -lambda * (1.0 - s), values, jac, ds);
            *ds *= lambda;
            return;
        }
        let (tau, dtau) = self.path.at(s);
        self.system.evaluate(x, tau, values, jac, ds);
        *ds *= dtau;
    }

    fn target_scale(&self, x: &[Complex64]) -> Vec<f64> {
        self.system.magnitudes(x, ONE)
    }
}

/// `H(x, s) = gamma (1 - s) G(x) + s F(x)`, both systems taken at `tau = 1`.
#[derive(Debug, Clone)]
pub struct StraightLineHomotopy {
    pub start: CompiledSystem,
    pub target: CompiledSystem,
    pub gamma: Complex64,
}

impl StraightLineHomotopy {
    pub fn new(start: CompiledSystem, target: CompiledSystem, gamma: Complex64) -> Self {
        assert_eq!(start.nvars(), target.nvars());
        StraightLineHomotopy { start, target, gamma }
    }
}

impl Homotopy for StraightLineHomotopy {
    fn nvars(&self) -> usize {
        self.target.nvars()
    }

    fn evaluate(
        &self,
        x: &[Complex64],
        s: f64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        ds: &mut DVector<Complex64>,
    ) {
        let n = self.nvars();
        let mut gv = DVector::zeros(n);
        let mut gj = DMatrix::zeros(n, n);
        let mut gt = DVector::zeros(n);
        self.start.evaluate(x, ONE, &mut gv, &mut gj, &mut gt);
        self.target.evaluate(x, ONE, values, jac, ds);
        let a = self.gamma * (1.0 - s);
        *ds = &*values - &gv * self.gamma;
        *values = &*values * Complex64::new(s, 0.0) + gv * a;
        *jac = &*jac * Complex64::new(s, 0.0) + gj * a;
    }

    fn target_scale(&self, x: &[Complex64]) -> Vec<f64> {
        self.target.magnitudes(x, ONE)
    }
}
