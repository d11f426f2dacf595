use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::base_locus::{compute_base_locus, BaseLocus};
use super::build::{build_one_step_homotopies, build_sagbi_homotopy, leader_system};
use super::degree::{compute_degree_map, compute_degree_monomial_map, DegreeReport};
use super::system::ParameterizedSystem;
use crate::error::{Error, Result};
use crate::polyhedral::{
    group_supports, mixed_cells_random, polyhedral_solve, start_solutions, supports_of,
};
use crate::rng::{child_seed, complex_gaussian, seeded_rng, unit_complex, SeededRng};
use crate::sagbi::{detect_weight, sagbi_check, SagbiCertificate, Weight, DEFAULT_BUDGET};
use crate::scalar::Scalar;
use crate::tracker::{
    distance, lex_cmp, track, track_paths, CompiledSystem, ParameterHomotopy, PathResult, PathShape, PathStatus,
    Solution, SolutionSet, StraightLineHomotopy, TrackerConfig,
};

/// Which algorithm produced the solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TwoStep,
    OneStep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub weight: Option<Weight>,
    pub degree_check: bool,
    pub get_base_locus: bool,
    pub vary_linear_part: bool,
    pub one_step: bool,
    /// Proceed with a weight that fails the SAGBI check.
    pub force: bool,
    pub seed: u64,
    pub detect_budget: u64,
    pub tracker: TrackerConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            weight: None,
            degree_check: true,
            get_base_locus: false,
            vary_linear_part: false,
            one_step: false,
            force: false,
            seed: 0,
            detect_budget: DEFAULT_BUDGET,
            tracker: TrackerConfig::default(),
        }
    }
}

/// Wall-clock seconds per phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub weight: f64,
    pub degree: f64,
    pub start: f64,
    pub tracking: f64,
    pub base_locus: f64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub certificate: SagbiCertificate,
    pub degree: Option<DegreeReport>,
    /// Solutions of the target, base-locus points included when requested.
    pub solutions: SolutionSet,
    pub base_locus: Vec<Vec<Complex64>>,
    /// Paths tracked to the target, reruns included.
    pub paths_tracked: usize,
    /// Solutions of the start system, the number of paths in one run.
    pub start_count: usize,
    pub method: Method,
    pub warnings: Vec<String>,
    pub timing: Timing,
}

impl SolveReport {
    pub fn weight(&self) -> &[i64] {
        &self.certificate.weight
    }

    pub fn degree_drops(&self) -> bool {
        self.degree.as_ref().is_some_and(|d| d.degree_drops())
    }
}

fn seconds(since: Instant) -> f64 {
    since.elapsed().as_secs_f64()
}

/// The verified weight for `sys`, or the certificate of a forced one.
pub fn choose_weight<C: Scalar>(sys: &ParameterizedSystem<C>, opts: &SolveOptions) -> Result<(SagbiCertificate, Option<String>)> {
    match &opts.weight {
        Some(w) => {
            let cert = sagbi_check(sys.family(), w)?;
            if cert.verified {
                Ok((cert, None))
            } else if opts.force {
                Ok((cert, Some(format!("weight {w:?} fails the SAGBI check; solution counts are not guaranteed"))))
            } else {
                Err(Error::UnverifiedWeight(format!("{w:?}")))
            }
        }
        None => Ok((detect_weight(sys.family(), opts.detect_budget)?, None)),
    }
}

fn leader_compiled(sys: &ParameterizedSystem<Complex64>, w: &[i64]) -> Result<CompiledSystem> {
    Ok(CompiledSystem::from_polys(&leader_system(sys, w)?, None))
}

/// Extra runs of the two-step paths when some end in a step failure.
const RETRIES: usize = 2;

/// Two-step: solve the leading-term system, then follow the SAGBI homotopy
/// along a gamma path.
fn two_step(
    sys: &ParameterizedSystem<Complex64>,
    w: &[i64],
    rng: &mut SeededRng,
    cfg: &TrackerConfig,
    timing: &mut Timing,
) -> Result<(Vec<PathResult>, usize)> {
    let clock = Instant::now();
    let (start, _) = polyhedral_solve(&leader_compiled(sys, w)?, rng, cfg)?;
    timing.start += seconds(clock);
    let clock = Instant::now();
    let compiled = build_sagbi_homotopy(sys, w, true)?.compile();
    let starts = start.points();
    let track = |rng: &mut SeededRng| {
        track_paths(&ParameterHomotopy::new(compiled.clone(), PathShape::Gamma(unit_complex(rng))), &starts, cfg)
    };
    let mut results = track(rng);
    // The start-to-end pairing depends on gamma, so a failed path cannot be
    // retried alone: all paths are rerun along a new gamma path and the
    // endpoints merged.
    for _ in 0..RETRIES {
        if !results.iter().any(|r| r.status == PathStatus::StepFailure) {
            break;
        }
        let set = SolutionSet::from_results(&results, cfg);
        if set.solutions.len() + set.singular.len() >= starts.len() {
            break;
        }
        results.extend(track(rng));
    }
    timing.tracking += seconds(clock);
    Ok((results, starts.len()))
}

/// Start of the one-step paths at `|t| = exp(-30)`, well below the corrector
/// tolerance for every term that vanishes at `t = 0`.
const LOG_PATH_LENGTH: f64 = 30.0;
/// Bound on the imaginary part of `log t` at the start.
const LOG_PATH_TWIST: f64 = 3.0;

/// One-step: one homotopy per mixed cell of the leading-term system,
/// starting from the cell's binomial solutions.
fn one_step(
    sys: &ParameterizedSystem<Complex64>,
    w: &[i64],
    rng: &mut SeededRng,
    cfg: &TrackerConfig,
    timing: &mut Timing,
) -> Result<(Vec<PathResult>, usize)> {
    let clock = Instant::now();
    let leader = leader_compiled(sys, w)?;
    let grouped = group_supports(&supports_of(&leader))?;
    let mut coefficients: Vec<Vec<Vec<Complex64>>> =
        grouped.supports.iter().map(|s| vec![vec![Complex64::new(0.0, 0.0); s.points.len()]; s.multiplicity]).collect();
    for (eq, terms) in leader.equations().iter().enumerate() {
        let (g, row) = grouped.equation_group[eq];
        for t in terms {
            let mut e = vec![0i64; leader.nvars()];
            for &(v, k) in &t.vars {
                e[v] = k as i64;
            }
            if let Some(j) = grouped.supports[g].points.iter().position(|p| *p == e) {
                coefficients[g][row][j] += t.coef;
            }
        }
    }
    let (lifting, cells) = mixed_cells_random(&grouped.supports, rng)?;
    let starts = start_solutions(&grouped.supports, &coefficients, &cells)?;
    let path = PathShape::Log(Complex64::new(LOG_PATH_LENGTH, rng.random_range(-LOG_PATH_TWIST..LOG_PATH_TWIST)));
    let cells: Vec<_> = starts.iter().map(|(cell, _)| cell.clone()).collect();
    let compiled: Vec<CompiledSystem> =
        build_one_step_homotopies(sys, w, &grouped, &lifting, &cells)?.iter().map(|h| h.compile()).collect();
    // One reparameterization for all cells keeps them on a common t-route.
    let divisor = compiled.iter().filter_map(|c| c.min_positive_tau_power()).reduce(f64::min).unwrap_or(1.0);
    let homotopies: Vec<ParameterHomotopy> =
        compiled.into_iter().map(|c| ParameterHomotopy::new(c.scale_tau_powers(divisor), path)).collect();
    timing.start += seconds(clock);
    let clock = Instant::now();
    let jobs: Vec<(usize, &Vec<Complex64>)> =
        starts.iter().enumerate().flat_map(|(i, (_, sols))| sols.iter().map(move |x| (i, x))).collect();
    let results: Vec<PathResult> = jobs.par_iter().map(|&(i, x)| track(&homotopies[i], x, cfg)).collect();
    timing.tracking += seconds(clock);
    Ok((results, jobs.len()))
}

fn random_coefficients<C: Scalar>(sys: &ParameterizedSystem<C>, rng: &mut SeededRng) -> Result<ParameterizedSystem<Complex64>> {
    let coefficients = sys
        .coefficients()
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|_| complex_gaussian(rng)).collect()).collect())
        .collect();
    sys.with_coefficients(coefficients)
}

/// Absolute and relative residual of `x` against `target`; the relative one
/// divides each equation by its term magnitudes (at least 1).
pub fn target_residual(target: &CompiledSystem, x: &[Complex64]) -> (f64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let values = target.values(x, one);
    let scale = target.magnitudes(x, one);
    let abs = values.iter().fold(0.0, |m: f64, v| m.max(v.norm()));
    let rel = values.iter().zip(&scale).fold(0.0, |m: f64, (v, s)| m.max(v.norm() / s.max(1.0)));
    (abs, rel)
}

/// Solves a horizontally parameterized system with the SAGBI homotopy.
pub fn solve<C: Scalar>(sys: &ParameterizedSystem<C>, opts: &SolveOptions) -> Result<SolveReport> {
    let mut rng = seeded_rng(opts.seed);
    let mut timing = Timing::default();
    let mut warnings = Vec::new();
    let cfg = &opts.tracker;

    let clock = Instant::now();
    let (certificate, weight_warning) = choose_weight(sys, opts)?;
    warnings.extend(weight_warning);
    let w = certificate.weight.clone();
    timing.weight = seconds(clock);

    let target = sys.to_complex();
    let target_compiled = CompiledSystem::from_polys(&target.equations(), None);

    let mut degree_rng = seeded_rng(child_seed(&mut rng));
    let mut solve_rng = seeded_rng(child_seed(&mut rng));
    let mut locus_rng = seeded_rng(child_seed(&mut rng));

    let method = if opts.one_step { Method::OneStep } else { Method::TwoStep };
    let run = |s: &ParameterizedSystem<Complex64>, rng: &mut SeededRng, timing: &mut Timing| match method {
        Method::TwoStep => two_step(s, &w, rng, cfg, timing),
        Method::OneStep => one_step(s, &w, rng, cfg, timing),
    };

    let (results, start_count) = if opts.vary_linear_part {
        let generic = random_coefficients(sys, &mut solve_rng)?;
        let (generic_results, starts) = run(&generic, &mut solve_rng, &mut timing)?;
        let generic_set = SolutionSet::from_results(&generic_results, cfg);
        let clock = Instant::now();
        let h = StraightLineHomotopy::new(
            CompiledSystem::from_polys(&generic.equations(), None),
            target_compiled.clone(),
            unit_complex(&mut solve_rng),
        );
        let results = track_paths(&h, &generic_set.points(), cfg);
        timing.tracking += seconds(clock);
        (results, starts)
    } else {
        run(&target, &mut solve_rng, &mut timing)?
    };
    let paths_tracked = results.len();
    if paths_tracked > 0 && !opts.get_base_locus && results.iter().all(|r| r.status != PathStatus::Success) {
        return Err(Error::AllPathsFailed);
    }
    let mut solutions = SolutionSet::from_results(&results, cfg);

    let degree = if opts.degree_check {
        let clock = Instant::now();
        let deg_phi0 = compute_degree_monomial_map(sys.family(), &w)?;
        let deg_phi = compute_degree_map(sys.family(), &mut degree_rng, cfg)?;
        timing.degree = seconds(clock);
        let report = DegreeReport::new(deg_phi, deg_phi0, Some(start_count as u64));
        warnings.extend(report.warning.clone());
        Some(report)
    } else {
        None
    };

    let mut base_locus = Vec::new();
    if opts.get_base_locus {
        let clock = Instant::now();
        let BaseLocus { points, warnings: locus_warnings } = compute_base_locus(sys.family(), &mut locus_rng, cfg)?;
        warnings.extend(locus_warnings);
        for p in points {
            let (abs, rel) = target_residual(&target_compiled, &p);
            if rel > 1e-6 {
                continue;
            }
            if !solutions.solutions.iter().any(|s| distance(&s.point, &p) <= cfg.dedup_tol.max(1e-6)) {
                solutions.solutions.push(Solution {
                    real: p.iter().all(|c| c.im.abs() < cfg.real_tol),
                    point: p.clone(),
                    residual: abs,
                    condition: f64::NAN,
                });
            }
            base_locus.push(p);
        }
        solutions.solutions.sort_by(|a, b| lex_cmp(&a.point, &b.point));
        timing.base_locus = seconds(clock);
    }

    Ok(SolveReport {
        certificate,
        degree,
        solutions,
        base_locus,
        paths_tracked,
        start_count,
        method,
        warnings,
        timing,
    })
}
