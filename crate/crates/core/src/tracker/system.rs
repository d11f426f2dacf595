use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::CPoly;

/// One term `coef * tau^tpow * prod x_v^e` of a compiled equation.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledTerm {
    pub coef: Complex64,
    pub tpow: f64,
    pub vars: Vec<(usize, u32)>,
}

/// A square polynomial system in unknowns `x` with coefficients that may
/// carry real powers of one parameter `tau`, compiled for fast evaluation of
/// values, Jacobian and `tau`-derivative.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    nvars: usize,
    equations: Vec<Vec<CompiledTerm>>,
    max_degree: Vec<u32>,
}

pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `tau^e` and `d tau^e / d tau` on the principal branch, with `0^e = 0`
/// for `e > 0`.
fn tau_power(tau: Complex64, e: f64) -> (Complex64, Complex64) {
    if e == 0.0 {
        return (ONE, ZERO);
    }
    if tau == ZERO {
        return (ZERO, if e == 1.0 { ONE } else { ZERO });
    }
    if e.fract() == 0.0 && e.abs() < 64.0 {
        let k = e as i32;
        let p = tau.powi(k - 1);
        return (p * tau, p * e);
    }
    let p = (tau.ln() * e).exp();
    (p, p * e / tau)
}

impl CompiledSystem {
    pub fn new(nvars: usize, equations: Vec<Vec<CompiledTerm>>) -> Self {
        let mut max_degree = vec![0u32; nvars];
        for t in equations.iter().flatten() {
            for &(v, e) in &t.vars {
                max_degree[v] = max_degree[v].max(e);
            }
        }
        CompiledSystem { nvars, equations, max_degree }
    }

    /// Compiles polynomials over their unknowns. If `tau` is given, that
    /// variable's exponent becomes the `tau` power of each term.
    pub fn from_polys(polys: &[CPoly], tau: Option<usize>) -> Self {
        let ctx = polys[0].ctx();
        let unknowns: Vec<usize> = (0..ctx.len()).filter(|&v| Some(v) != tau).collect();
        let equations = polys
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .map(|(m, c)| CompiledTerm {
                        coef: *c,
                        tpow: tau.map_or(0.0, |t| m.0[t] as f64),
                        vars: unknowns
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| m.0[v] > 0)
                            .map(|(i, &v)| (i, m.0[v]))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        Self::new(unknowns.len(), equations)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[Vec<CompiledTerm>] {
        &self.equations
    }

    /// The smallest positive `tau` exponent.
    pub fn min_positive_tau_power(&self) -> Option<f64> {
        self.equations.iter().flatten().map(|t| t.tpow).filter(|&e| e > 0.0).reduce(f64::min)
    }

    /// Divides every `tau` exponent by `divisor`, a reparameterization
    /// `tau -> tau^(1/divisor)`.
    pub fn scale_tau_powers(mut self, divisor: f64) -> Self {
        for t in self.equations.iter_mut().flatten() {
            t.tpow /= divisor;
        }
        self
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        x.iter()
            .zip(&self.max_degree)
            .map(|(&xi, &d)| {
                let mut p = Vec::with_capacity(d as usize + 1);
                p.push(ONE);
                for k in 1..=d as usize {
                    p.push(p[k - 1] * xi);
                }
                p
            })
            .collect()
    }

    /// Values, Jacobian in `x` and derivative in `tau`.
    pub fn evaluate(
        &self,
        x: &[Complex64],
        tau: Complex64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        dtau: &mut DVector<Complex64>,
    ) {
        self.evaluate_with(x, |e| tau_power(tau, e), values, jac, dtau)
    }

    /// As [`evaluate`](Self::evaluate) at `tau = exp(ell)`, with `tau^e`
    /// read as `exp(e ell)` and the derivative taken in `ell`. Following
    /// `ell` continuously stays on one branch of fractional powers.
    pub fn evaluate_log(
        &self,
        x: &[Complex64],
        ell: Complex64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        dell: &mut DVector<Complex64>,
    ) {
        self.evaluate_with(
            x,
            |e| {
                if e == 0.0 {
                    (ONE, ZERO)
                } else {
                    let p = (ell * e).exp();
                    (p, p * e)
                }
            },
            values,
            jac,
            dell,
        )
    }

    fn evaluate_with(
        &self,
        x: &[Complex64],
        power: impl Fn(f64) -> (Complex64, Complex64),
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        dtau: &mut DVector<Complex64>,
    ) {
        let pw = self.powers(x);
        values.fill(ZERO);
        jac.fill(ZERO);
        dtau.fill(ZERO);
        for (i, eq) in self.equations.iter().enumerate() {
            for t in eq {
                let (tp, dtp) = power(t.tpow);
                let mono = t.vars.iter().fold(ONE, |acc, &(v, e)| acc * pw[v][e as usize]);
                values[i] += t.coef * tp * mono;
                dtau[i] += t.coef * dtp * mono;
                let ct = t.coef * tp;
                if ct == ZERO {
                    continue;
                }
                for (k, &(v, e)) in t.vars.iter().enumerate() {
                    let mut d = ct * pw[v][e as usize - 1] * e as f64;
                    for (l, &(w, f)) in t.vars.iter().enumerate() {
                        if l != k {
                            d *= pw[w][f as usize];
                        }
                    }
                    jac[(i, v)] += d;
                }
            }
        }
    }

    /// Values only.
    pub fn values(&self, x: &[Complex64], tau: Complex64) -> Vec<Complex64> {
        let pw = self.powers(x);
        self.equations
            .iter()
            .map(|eq| {
                eq.iter().fold(ZERO, |acc, t| {
                    let mono = t.vars.iter().fold(ONE, |m, &(v, e)| m * pw[v][e as usize]);
                    acc + t.coef * tau_power(tau, t.tpow).0 * mono
                })
            })
            .collect()
    }

    /// Per-equation sum of term magnitudes, the scale for backward errors.
    pub fn magnitudes(&self, x: &[Complex64], tau: Complex64) -> Vec<f64> {
        let pw = self.powers(x);
        self.equations
            .iter()
            .map(|eq| {
                eq.iter().fold(0.0, |acc, t| {
                    let mono = t.vars.iter().fold(ONE, |m, &(v, e)| m * pw[v][e as usize]);
                    acc + (t.coef * tau_power(tau, t.tpow).0 * mono).norm()
                })
            })
            .collect()
    }
}
