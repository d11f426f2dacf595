//! Predictor-corrector path tracking of square homotopies from `s = 0` to
//! `s = 1`, endpoint polishing, classification and deduplication.

mod homotopies;
mod system;

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use homotopies::{gamma_path, ParameterHomotopy, PathShape, StraightLineHomotopy};
pub use system::{CompiledSystem, CompiledTerm};

/// Step control and classification parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrackerConfig {
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub step_expand: f64,
    pub step_shrink: f64,
    pub divergence_norm: f64,
    pub dedup_tol: f64,
    /// Relative Newton update size accepted during tracking.
    pub corrector_tol: f64,
    pub max_steps: usize,
    /// Tracking stops and polishing takes over beyond this `s`.
    pub endgame_start: f64,
    pub singular_condition: f64,
    pub real_tol: f64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            newton_tol: 1e-12,
            max_newton_iters: 5,
            initial_step: 1e-2,
            min_step: 1e-14,
            max_step: 0.1,
            step_expand: 2.0,
            step_shrink: 0.5,
            divergence_norm: 1e10,
            dedup_tol: 1e-8,
            corrector_tol: 1e-10,
            max_steps: 20_000,
            endgame_start: 1.0 - 1e-8,
            singular_condition: 1e12,
            real_tol: 1e-8,
        }
    }
}

/// `H(x, s)` with its Jacobian in `x` and derivative in `s`.
pub trait Homotopy: Sync {
    fn nvars(&self) -> usize;

    fn evaluate(
        &self,
        x: &[Complex64],
        s: f64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        ds: &mut DVector<Complex64>,
    );

    /// Per-equation magnitude scale of the target system at `x`, used for
    /// backward errors. Defaults to ones.
    fn target_scale(&self, _x: &[Complex64]) -> Vec<f64> {
        vec![1.0; self.nvars()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathStatus {
    Success,
    Diverged,
    SingularEndpoint,
    StepFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub status: PathStatus,
    pub endpoint: Vec<Complex64>,
    /// `max |H_i(x, 1)|`.
    pub residual: f64,
    /// Residual relative to the term magnitudes of each equation.
    pub backward_error: f64,
    pub steps_taken: usize,
    pub condition_estimate: f64,
}

pub fn norm_inf(x: &[Complex64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.norm()))
}

/// Lexicographic order on complex vectors by real, then imaginary parts.
pub fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Infinity-norm distance.
pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

struct Workspace {
    values: DVector<Complex64>,
    jac: DMatrix<Complex64>,
    ds: DVector<Complex64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace { values: DVector::zeros(n), jac: DMatrix::zeros(n, n), ds: DVector::zeros(n) }
    }
}

/// `dx/ds = -J^{-1} H_s`.
fn tangent<H: Homotopy + ?Sized>(h: &H, x: &[Complex64], s: f64, ws: &mut Workspace) -> Option<Vec<Complex64>> {
    h.evaluate(x, s, &mut ws.values, &mut ws.jac, &mut ws.ds);
    let dx = ws.jac.clone().lu().solve(&ws.ds)?;
    let v: Vec<Complex64> = dx.iter().map(|d| -d).collect();
    v.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(v)
}

fn axpy(x: &[Complex64], a: f64, d: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(d).map(|(xi, di)| xi + di * a).collect()
}

fn rk4<H: Homotopy + ?Sized>(h: &H, x: &[Complex64], s: f64, ds: f64, ws: &mut Workspace) -> Option<Vec<Complex64>> {
    let k1 = tangent(h, x, s, ws)?;
    let k2 = tangent(h, &axpy(x, ds / 2.0, &k1), s + ds / 2.0, ws)?;
    let k3 = tangent(h, &axpy(x, ds / 2.0, &k2), s + ds / 2.0, ws)?;
    let k4 = tangent(h, &axpy(x, ds, &k3), s + ds, ws)?;
    Some(
        (0..x.len())
            .map(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (ds / 6.0))
            .collect(),
    )
}

enum Correction {
    Converged,
    Stalled,
    Failed,
}

/// Relative update size below which a non-converging Newton run counts as
/// stalled at the floating-point floor rather than failed.
const STALL_SIZE: f64 = 1e-6;

/// Newton at fixed `s`. Converges when the relative update drops below
/// `tol`; reports `Stalled` when updates stop contracting at a tiny size,
/// which happens at the floating-point floor of ill-conditioned points.
fn newton<H: Homotopy + ?Sized>(
    h: &H,
    x: &mut [Complex64],
    s: f64,
    tol: f64,
    max_iters: usize,
    first_bound: f64,
    contraction: f64,
    ws: &mut Workspace,
) -> Correction {
    let mut prev = f64::INFINITY;
    for k in 0..max_iters {
        h.evaluate(x, s, &mut ws.values, &mut ws.jac, &mut ws.ds);
        let Some(dx) = ws.jac.clone().lu().solve(&ws.values) else { return Correction::Failed };
        let size = dx.iter().fold(0.0, |m: f64, v| m.max(v.norm()));
        if !size.is_finite() {
            return Correction::Failed;
        }
        let scale = 1.0 + norm_inf(x);
        if k == 0 && size > first_bound * scale {
            return Correction::Failed;
        }
        for (xi, di) in x.iter_mut().zip(dx.iter()) {
            *xi -= di;
        }
        if size <= tol * scale {
            return Correction::Converged;
        }
        if size > contraction * prev || k + 1 == max_iters {
            return if size <= STALL_SIZE * scale { Correction::Stalled } else { Correction::Failed };
        }
        prev = size;
    }
    Correction::Failed
}

/// Polishes `x` with Newton on `H(., 1)`, returning whether it converged.
pub fn newton_polish<H: Homotopy + ?Sized>(h: &H, x: &mut [Complex64], tol: f64, max_iters: usize) -> bool {
    let mut ws = Workspace::new(x.len());
    matches!(newton(h, x, 1.0, tol, max_iters, f64::INFINITY, 0.5, &mut ws), Correction::Converged)
}

/// Ratio of the largest to the smallest singular value.
pub fn condition_number(jac: &DMatrix<Complex64>) -> f64 {
    // nalgebra's SVD does not terminate on non-finite input.
    if jac.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return f64::INFINITY;
    }
    let sv = jac.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Corrector limits while tracking. A step is rejected unless Newton starts
/// close to the predicted point and contracts quickly, which keeps the
/// corrector from converging onto a neighbouring path.
const CORRECTOR_ITERS: usize = 3;
const CORRECTOR_FIRST: f64 = 0.01;
const CORRECTOR_CONTRACTION: f64 = 0.25;

/// Tracks one path from `start` at `s = 0` to `s = 1`.
pub fn track<H: Homotopy + ?Sized>(h: &H, start: &[Complex64], cfg: &TrackerConfig) -> PathResult {
    let n = h.nvars();
    let mut ws = Workspace::new(n);
    let mut x = start.to_vec();
    let mut s = 0.0f64;
    let mut step = cfg.initial_step;
    let mut steps = 0usize;
    let mut status = None;
    while s < 1.0 {
        if steps >= cfg.max_steps {
            status = Some(PathStatus::StepFailure);
            break;
        }
        if norm_inf(&x) > cfg.divergence_norm {
            status = Some(PathStatus::Diverged);
            break;
        }
        let ds = step.min(1.0 - s);
        let predicted = rk4(h, &x, s, ds, &mut ws);
        let accepted = predicted.and_then(|mut y| {
            let target = if ds == 1.0 - s { 1.0 } else { s + ds };
            match newton(h, &mut y, target, cfg.corrector_tol, CORRECTOR_ITERS, CORRECTOR_FIRST, CORRECTOR_CONTRACTION, &mut ws) {
                Correction::Failed => None,
                _ => Some((y, target)),
            }
        });
        steps += 1;
        match accepted {
            Some((y, target)) => {
                x = y;
                s = target;
                step = (step * cfg.step_expand).min(cfg.max_step);
            }
            None => {
                step *= cfg.step_shrink;
                if step < cfg.min_step {
                    if s < cfg.endgame_start {
                        status = Some(PathStatus::StepFailure);
                    }
                    break;
                }
            }
        }
    }
    if status.is_none() && norm_inf(&x) > cfg.divergence_norm {
        status = Some(PathStatus::Diverged);
    }
    finish(h, x, steps, status, cfg, &mut ws)
}

fn finish<H: Homotopy + ?Sized>(
    h: &H,
    mut x: Vec<Complex64>,
    steps: usize,
    status: Option<PathStatus>,
    cfg: &TrackerConfig,
    ws: &mut Workspace,
) -> PathResult {
    let polished = match status {
        None => newton(h, &mut x, 1.0, cfg.newton_tol, cfg.max_newton_iters, f64::INFINITY, 0.5, ws),
        Some(_) => Correction::Failed,
    };
    h.evaluate(&x, 1.0, &mut ws.values, &mut ws.jac, &mut ws.ds);
    let residual = ws.values.iter().fold(0.0, |m: f64, v| m.max(v.norm()));
    let scale = h.target_scale(&x);
    let backward_error =
        ws.values.iter().zip(&scale).fold(0.0, |m: f64, (v, s)| m.max(v.norm() / s.max(f64::MIN_POSITIVE)));
    let condition_estimate = condition_number(&ws.jac);
    let finite = x.iter().all(|c| c.re.is_finite() && c.im.is_finite());
    let status = match status {
        Some(st) => st,
        None if !finite => PathStatus::StepFailure,
        None if norm_inf(&x) > cfg.divergence_norm => PathStatus::Diverged,
        None => {
            let small = backward_error <= 100.0 * cfg.newton_tol || residual <= 100.0 * cfg.newton_tol;
            match polished {
                Correction::Converged if condition_estimate <= cfg.singular_condition && small => PathStatus::Success,
                _ if backward_error <= 1e-6 => PathStatus::SingularEndpoint,
                _ => PathStatus::StepFailure,
            }
        }
    };
    PathResult { status, endpoint: x, residual, backward_error, steps_taken: steps, condition_estimate }
}

/// Per-status path tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStats {
    pub tracked: usize,
    pub success: usize,
    pub singular: usize,
    pub diverged: usize,
    pub failed: usize,
    pub duplicates: usize,
}

impl PathStats {
    pub fn from_results(results: &[PathResult]) -> Self {
        let mut st = PathStats { tracked: results.len(), ..Default::default() };
        for r in results {
            match r.status {
                PathStatus::Success => st.success += 1,
                PathStatus::SingularEndpoint => st.singular += 1,
                PathStatus::Diverged => st.diverged += 1,
                PathStatus::StepFailure => st.failed += 1,
            }
        }
        st
    }

    pub fn merge(&mut self, other: &PathStats) {
        self.tracked += other.tracked;
        self.success += other.success;
        self.singular += other.singular;
        self.diverged += other.diverged;
        self.failed += other.failed;
        self.duplicates += other.duplicates;
    }
}

/// A classified endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub point: Vec<Complex64>,
    pub residual: f64,
    pub condition: f64,
    pub real: bool,
}

/// Distinct non-singular solutions and singular endpoints, both sorted
/// lexicographically.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub singular: Vec<Solution>,
    pub stats: PathStats,
}

impl SolutionSet {
    pub fn real_count(&self) -> usize {
        self.solutions.iter().filter(|s| s.real).count()
    }

    pub fn points(&self) -> Vec<Vec<Complex64>> {
        self.solutions.iter().map(|s| s.point.clone()).collect()
    }

    /// Builds the set from path results: successes become solutions,
    /// singular endpoints are kept apart, both deduplicated.
    pub fn from_results(results: &[PathResult], cfg: &TrackerConfig) -> Self {
        let mut stats = PathStats::from_results(results);
        let classify = |r: &PathResult| Solution {
            point: r.endpoint.clone(),
            residual: r.residual,
            condition: r.condition_estimate,
            real: r.endpoint.iter().all(|c| c.im.abs() < cfg.real_tol),
        };
        let pick = |st: PathStatus| results.iter().filter(|r| r.status == st).map(classify).collect::<Vec<_>>();
        let (solutions, d1) = dedup(pick(PathStatus::Success), cfg.dedup_tol);
        let (singular, d2) = dedup(pick(PathStatus::SingularEndpoint), cfg.dedup_tol);
        stats.duplicates = d1 + d2;
        SolutionSet { solutions, singular, stats }
    }
}

/// Removes points within `tol` of a better one (lower residual wins, ties
/// broken lexicographically); returns survivors in lexicographic order and
/// the number removed.
pub fn dedup(mut sols: Vec<Solution>, tol: f64) -> (Vec<Solution>, usize) {
    sols.sort_by(|a, b| a.residual.total_cmp(&b.residual).then_with(|| lex_cmp(&a.point, &b.point)));
    let mut kept: Vec<Solution> = Vec::with_capacity(sols.len());
    let total = sols.len();
    for s in sols {
        if !kept.iter().any(|k| distance(&k.point, &s.point) <= tol) {
            kept.push(s);
        }
    }
    let removed = total - kept.len();
    kept.sort_by(|a, b| lex_cmp(&a.point, &b.point));
    (kept, removed)
}

/// Tracks all starts in parallel; results are in start order.
pub fn track_paths<H: Homotopy + ?Sized>(h: &H, starts: &[Vec<Complex64>], cfg: &TrackerConfig) -> Vec<PathResult> {
    starts.par_iter().map(|x| track(h, x, cfg)).collect()
}

/// Tracks, polishes, classifies and deduplicates.
pub fn track_all<H: Homotopy + ?Sized>(h: &H, starts: &[Vec<Complex64>], cfg: &TrackerConfig) -> SolutionSet {
    SolutionSet::from_results(&track_paths(h, starts, cfg), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `x^2 - (1 + s)` or any one-variable closure-defined homotopy.
    struct OneVar<F: Fn(Complex64, f64) -> (Complex64, Complex64, Complex64) + Sync>(F);

    impl<F: Fn(Complex64, f64) -> (Complex64, Complex64, Complex64) + Sync> Homotopy for OneVar<F> {
        fn nvars(&self) -> usize {
            1
        }
        fn evaluate(
            &self,
            x: &[Complex64],
            s: f64,
            values: &mut DVector<Complex64>,
            jac: &mut DMatrix<Complex64>,
            ds: &mut DVector<Complex64>,
        ) {
            let (h, hx, hs) = (self.0)(x[0], s);
            values[0] = h;
            jac[(0, 0)] = hx;
            ds[0] = hs;
        }
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn linear_homotopy() {
        let h = OneVar(|x, s| ((1.0 - s) * (x - 1.0) + s * (x - 2.0), c(1.0), c(-1.0)));
        let r = track(&h, &[c(1.0)], &TrackerConfig::default());
        assert_eq!(r.status, PathStatus::Success);
        assert!((r.endpoint[0] - 2.0).norm() < 1e-12);
        assert!(r.residual <= 1e-12);
    }

    #[test]
    fn square_root_path() {
        let h = OneVar(|x, s| (x * x - (1.0 + s), x * 2.0, c(-1.0)));
        let r = track(&h, &[c(1.0)], &TrackerConfig::default());
        assert_eq!(r.status, PathStatus::Success);
        assert!((r.endpoint[0] - 2f64.sqrt()).norm() < 1e-12);
    }

    #[test]
    fn newton_converges_quadratically() {
        let h = OneVar(|x, _| (x * x - 4.0, x * 2.0, c(0.0)));
        for x0 in [1.5, 2.1, 3.0] {
            let mut x = vec![c(x0)];
            let mut errs = vec![(x[0] - 2.0).norm()];
            for _ in 0..6 {
                newton_polish(&h, &mut x, 0.0, 1);
                errs.push((x[0] - 2.0).norm());
            }
            for w in errs.windows(2) {
                if w[0] > 1e-7 {
                    assert!(w[1] / (w[0] * w[0]) < 1.0);
                }
            }
            assert!(errs[6] < 1e-14);
        }
        let mut x = vec![c(2.0)];
        assert!(newton_polish(&h, &mut x, 1e-12, 5));
        assert_eq!(x[0], c(2.0));
    }

    #[test]
    fn divergent_path() {
        // x (1 - s) - 1 = 0 escapes to infinity as s -> 1.
        let h = OneVar(|x, s| (x * (1.0 - s) - 1.0, c(1.0 - s), -x));
        let r = track(&h, &[c(1.0)], &TrackerConfig::default());
        assert_ne!(r.status, PathStatus::Success);
    }

    #[test]
    fn duplicate_starts_collapse() {
        let h = OneVar(|x, s| (x * x - (1.0 + s), x * 2.0, c(-1.0)));
        let set = track_all(&h, &[vec![c(1.0)], vec![c(1.0)], vec![c(-1.0)]], &TrackerConfig::default());
        assert_eq!(set.solutions.len(), 2);
        assert_eq!(set.stats.duplicates, 1);
        assert_eq!(set.real_count(), 2);
        assert!(set.solutions[0].point[0].re < 0.0);
    }

    #[test]
    fn double_root_is_singular() {
        let h = OneVar(|x, s| (x * x - (1.0 - s), x * 2.0, c(1.0)));
        let r = track(&h, &[c(1.0)], &TrackerConfig::default());
        assert_ne!(r.status, PathStatus::Success);
    }
}
