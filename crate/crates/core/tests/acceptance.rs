//! End-to-end acceptance checks, one PASS/FAIL line each.

mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use sagbi_core::homotopy::{build_sagbi_homotopy, t_context, target_residual, AnySystem, SolveOptions, SolveReport};
use sagbi_core::intlin::{smith_normal_form, IntMatrix};
use sagbi_core::models::{
    base_locus_family, grassmannian_family, octic_family, random_resonator, random_slice, semimixed_family,
    special_gr36_slice, CoefficientKind,
};
use sagbi_core::poly::{parse, Monomial};
use sagbi_core::polyhedral::{mixed_volume, polyhedral_solve, solve_binomial, SupportSet};
use sagbi_core::rng::{seeded_rng, unit_complex};
use sagbi_core::sagbi::{detect_weight, homogenize, initial_form, SagbiFamily, DEFAULT_BUDGET};
use sagbi_core::scalar::rational;
use sagbi_core::tracker::{distance, CompiledSystem, TrackerConfig};
use sagbi_core::{CPoly, QPoly, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solve(sys: &AnySystem, opts: &SolveOptions) -> Result<SolveReport, String> {
    sys.solve(opts).map_err(|e| e.to_string())
}

fn max_residual(sys: &AnySystem, report: &SolveReport) -> (f64, f64) {
    let target = CompiledSystem::from_polys(&sys.to_complex().equations(), None);
    report.solutions.solutions.iter().fold((0.0, 0.0), |(a, r), s| {
        let (abs, rel) = target_residual(&target, &s.point);
        (f64::max(a, abs), f64::max(r, rel))
    })
}

fn degrees(report: &SolveReport) -> Option<(u64, Option<u64>)> {
    report.degree.as_ref().map(|d| (d.deg_phi, d.deg_phi0))
}

fn octic_counts() -> Outcome {
    let family = octic_family().map_err(|e| e.to_string())?;
    let mut worst = (0.0f64, 0.0f64);
    for seed in 0..5 {
        let clock = Instant::now();
        let sys = random_slice(&family, &[3], CoefficientKind::IntRange, seed).map_err(|e| e.to_string())?;
        let report = solve(&sys, &SolveOptions { seed, ..Default::default() })?;
        let seconds = clock.elapsed().as_secs_f64();
        let found = report.solutions.solutions.len();
        ensure(found == 8 && report.paths_tracked == 8, || {
            format!("seed {seed}: {found} solutions from {} paths", report.paths_tracked)
        })?;
        ensure(degrees(&report) == Some((8, Some(8))), || format!("seed {seed}: degrees {:?}", degrees(&report)))?;
        let (abs, _) = max_residual(&sys, &report);
        ensure(abs <= 1e-8, || format!("seed {seed}: residual {abs:e}"))?;
        ensure(seconds < 10.0, || format!("seed {seed}: {seconds:.1} s"))?;
        worst = (worst.0.max(abs), worst.1.max(seconds));
    }
    Ok(format!("8 solutions on 5 seeds, degrees (8, 8), max residual {:.1e}, slowest {:.2} s", worst.0, worst.1))
}

fn semimixed_counts() -> Outcome {
    let family = semimixed_family().map_err(|e| e.to_string())?;
    // Homogenizations along (-1,-2,-3), compared coefficient by coefficient.
    let ctx = family.ctx().clone();
    let t_ctx = t_context(&ctx).map_err(|e| e.to_string())?;
    let w = [-1, -2, -3];
    for (g, expected) in [("x^2+y^2", "x^2+t^2*y^2"), ("x^3+z^3", "x^3+t^6*z^3")] {
        let g: QPoly = parse(g, &ctx).map_err(|e| e.to_string())?;
        let got = homogenize(&g, &w, &t_ctx).map_err(|e| e.to_string())?;
        let want: QPoly = parse(expected, &t_ctx).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("homogenization {got} != {want}"))?;
    }
    let detected = detect_weight(&family, DEFAULT_BUDGET).map_err(|e| e.to_string())?.weight;
    for seed in 0..5 {
        let sys = random_slice(&family, &[2, 1], CoefficientKind::IntRange, seed).map_err(|e| e.to_string())?;
        let report = solve(&sys, &SolveOptions { seed, ..Default::default() })?;
        let found = report.solutions.solutions.len();
        ensure(found == 6, || format!("seed {seed}: {found} solutions"))?;
        ensure(degrees(&report) == Some((1, Some(1))), || format!("seed {seed}: degrees {:?}", degrees(&report)))?;
    }
    Ok(format!("x^2+t^2y^2, x^3+t^6z^3 along (-1,-2,-3); 6 solutions on 5 seeds with weight {detected:?}"))
}

fn base_locus_counts() -> Outcome {
    let family = base_locus_family().map_err(|e| e.to_string())?;
    let expected = [Complex64::new(1.0, -0.75), Complex64::new(1.0, 0.75)];
    for seed in 0..3 {
        let sys =
            random_slice(&family, &[2], CoefficientKind::ComplexGaussian, seed).map_err(|e| e.to_string())?;
        let plain = solve(&sys, &SolveOptions { seed, ..Default::default() })?;
        ensure(degrees(&plain) == Some((2, Some(1))), || format!("seed {seed}: degrees {:?}", degrees(&plain)))?;
        ensure(plain.warnings.iter().any(|w| w.contains("will not find all the solutions")), || {
            format!("seed {seed}: no degree-drop warning in {:?}", plain.warnings)
        })?;
        ensure(plain.solutions.solutions.len() == 2, || {
            format!("seed {seed}: {} solutions without base locus", plain.solutions.solutions.len())
        })?;
        let full = solve(&sys, &SolveOptions { seed, get_base_locus: true, ..Default::default() })?;
        ensure(full.solutions.solutions.len() == 4, || {
            format!("seed {seed}: {} solutions with base locus", full.solutions.solutions.len())
        })?;
        ensure(full.base_locus.len() == 2, || format!("seed {seed}: base locus {:?}", full.base_locus))?;
        for x in &expected {
            let target = vec![*x, Complex64::new(1.25, 0.0)];
            ensure(full.base_locus.iter().any(|p| distance(p, &target) <= 1e-6), || {
                format!("seed {seed}: base point {target:?} missing from {:?}", full.base_locus)
            })?;
        }
        let origin = vec![Complex64::zero(); 2];
        ensure(full.solutions.solutions.iter().all(|s| distance(&s.point, &origin) > 1e-6), || {
            format!("seed {seed}: origin among solutions")
        })?;
    }
    Ok("degrees (2, 1) with warning; 2 solutions, 4 with base points (1 -+ 3i/4, 5/4), origin absent".into())
}

fn grassmannian_counts() -> Outcome {
    let clock = Instant::now();
    let mut summary = Vec::new();
    for ((k, m), degree) in [((2, 4), 2), ((2, 5), 5), ((2, 6), 14), ((3, 6), 42)] {
        let (family, w) = grassmannian_family(k, m).map_err(|e| e.to_string())?;
        for seed in 0..3 {
            let sys = random_slice(&family, &[family.nvars()], CoefficientKind::ComplexGaussian, seed)
                .map_err(|e| e.to_string())?;
            let report = solve(&sys, &SolveOptions { seed, weight: Some(w.clone()), ..Default::default() })?;
            let found = report.solutions.solutions.len();
            ensure(found == degree && report.paths_tracked == degree, || {
                format!("Gr({k},{m}) seed {seed}: {found} solutions from {} paths", report.paths_tracked)
            })?;
        }
        summary.push(format!("Gr({k},{m})={degree}"));
    }
    let seconds = clock.elapsed().as_secs_f64();
    ensure(seconds < 300.0, || format!("took {seconds:.0} s"))?;
    Ok(format!("{} on 3 seeds each, paths = solutions, {seconds:.1} s total", summary.join(" ")))
}

fn special_slice() -> Outcome {
    let sys: AnySystem = special_gr36_slice().map_err(|e| e.to_string())?.into();
    let (_, w) = grassmannian_family(3, 6).map_err(|e| e.to_string())?;
    let opts = SolveOptions { weight: Some(w), vary_linear_part: true, degree_check: false, ..Default::default() };
    let report = solve(&sys, &opts)?;
    let found = report.solutions.solutions.len();
    ensure(found == 12 && report.paths_tracked == 42, || {
        format!("{found} non-singular solutions from {} paths", report.paths_tracked)
    })?;
    Ok(format!("12 non-singular solutions from 42 paths ({} singular endpoints)", report.solutions.singular.len()))
}

fn resonator_counts() -> Outcome {
    let clock = Instant::now();
    for (count, expected) in [(1, 5), (2, 25)] {
        for seed in 0..5 {
            let sys: AnySystem =
                random_resonator(count, 2, seed).map_err(|e| e.to_string())?.to_complex().into();
            let report = solve(&sys, &SolveOptions { seed, ..Default::default() })?;
            let found = report.solutions.solutions.len();
            ensure(found == expected, || format!("N={count} seed {seed}: {found} solutions"))?;
        }
    }
    let seconds = clock.elapsed().as_secs_f64();
    ensure(seconds < 60.0, || format!("took {seconds:.1} s"))?;
    Ok(format!("N=1: 5, N=2: 25 on 5 draws each, {seconds:.1} s"))
}

fn random_rational_poly<R: Rng>(ctx: &sagbi_core::poly::Ctx, rng: &mut R) -> QPoly {
    let terms = (0..rng.random_range(1..6)).map(|_| {
        let e: Vec<u32> = (0..ctx.len()).map(|_| rng.random_range(0..4)).collect();
        (Monomial(e), rational(rng.random_range(-20..=20), rng.random_range(1..=7)))
    });
    QPoly::from_terms(ctx, terms)
}

fn shipped_families() -> sagbi_core::Result<Vec<(String, SagbiFamily, Vec<i64>)>> {
    let mut out = Vec::new();
    for (name, family) in [("octic", octic_family()?), ("semimixed", semimixed_family()?), ("base-locus", base_locus_family()?)] {
        let w = detect_weight(&family, DEFAULT_BUDGET)?.weight;
        out.push((name.to_string(), family, w));
    }
    for (k, m) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let (family, w) = grassmannian_family(k, m)?;
        out.push((format!("Gr({k},{m})"), family, w));
    }
    for count in [1, 2] {
        let family = random_resonator(count, 2, 0)?.family().clone();
        let w = detect_weight(&family, DEFAULT_BUDGET)?.weight;
        out.push((format!("resonator-{count}"), family, w));
    }
    Ok(out)
}

fn homogenization_algebra() -> Outcome {
    let mut rng = seeded_rng(2024);
    let ctx = sagbi_core::poly::VariableContext::new(&["x", "y", "z"]).map_err(|e| e.to_string())?;
    let t_ctx = t_context(&ctx).map_err(|e| e.to_string())?;
    let mut checked = 0;
    while checked < 100 {
        let w: Vec<i64> = (0..3).map(|_| rng.random_range(-40..=40)).collect();
        let (p, h) = (random_rational_poly(&ctx, &mut rng), random_rational_poly(&ctx, &mut rng));
        let (Ok(pt), Ok(ht)) = (homogenize(&p, &w, &t_ctx), homogenize(&h, &w, &t_ctx)) else { continue };
        let joint = homogenize(&(&p * &h), &w, &t_ctx).map_err(|e| e.to_string())?;
        ensure(joint == &pt * &ht, || format!("(p h)_t differs for p = {p}, h = {h}, w = {w:?}"))?;
        checked += 1;
    }
    let families = shipped_families().map_err(|e| e.to_string())?;
    let mut generators = 0;
    for (name, family, w) in &families {
        let t_ctx = t_context(family.ctx()).map_err(|e| e.to_string())?;
        let t = family.nvars();
        for g in family.blocks().iter().flatten() {
            let gt = homogenize(g, w, &t_ctx).map_err(|e| e.to_string())?;
            ensure(gt.eliminate(t, &Rational::one()).map_err(|e| e.to_string())? == *g, || {
                format!("{name}: t = 1 does not recover {g}")
            })?;
            let at_zero = gt.eliminate(t, &Rational::zero()).map_err(|e| e.to_string())?;
            ensure(at_zero == initial_form(g, w).map_err(|e| e.to_string())?, || {
                format!("{name}: t = 0 of {g} is not its initial form")
            })?;
            generators += 1;
        }
    }
    Ok(format!(
        "100 random pairs multiplicative; t = 1 and t = 0 identities on {generators} generators of {} families",
        families.len()
    ))
}

fn torus_count(polys: &[CPoly], seed: u64) -> Result<usize, String> {
    let target = CompiledSystem::from_polys(polys, None);
    let (set, _) = polyhedral_solve(&target, &mut seeded_rng(seed), &TrackerConfig::default()).map_err(|e| e.to_string())?;
    Ok(set.solutions.iter().filter(|s| s.point.iter().all(|c| c.norm() > 1e-8)).count())
}

fn flat_counts() -> Outcome {
    let mut lines = Vec::new();
    for (name, family, rows, expected) in [
        ("octic", octic_family().map_err(|e| e.to_string())?, vec![3], 8),
        ("semimixed", semimixed_family().map_err(|e| e.to_string())?, vec![2, 1], 6),
    ] {
        let w = detect_weight(&family, DEFAULT_BUDGET).map_err(|e| e.to_string())?.weight;
        let sys = random_slice(&family, &rows, CoefficientKind::IntRange, 1).map_err(|e| e.to_string())?;
        let h = build_sagbi_homotopy(&sys.to_complex(), &w, false).map_err(|e| e.to_string())?;
        let mut rng = seeded_rng(77);
        let mut counts = Vec::new();
        for i in 0..5 {
            let t_star = unit_complex(&mut rng) * rng.random_range(0.2..1.5);
            let polys = h.at(&t_star).map_err(|e| e.to_string())?;
            counts.push(torus_count(&polys, 100 + i)?);
        }
        ensure(counts.iter().all(|&c| c == expected), || format!("{name}: counts {counts:?}, expected {expected}"))?;
        lines.push(format!("{name} {counts:?}"));
    }
    Ok(format!("torus counts across 5 random t*: {}", lines.join(", ")))
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-range..=range)).collect()).collect()
}

fn random_points<R: Rng>(rng: &mut R, dim: usize) -> Vec<Vec<i64>> {
    (0..rng.random_range(dim + 1..dim + 6)).map(|_| (0..dim).map(|_| rng.random_range(0..=3)).collect()).collect()
}

fn normal_forms_and_volumes() -> Outcome {
    let mut rng = seeded_rng(9);
    for _ in 0..200 {
        let (m, n) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let a = IntMatrix::from_rows(&random_matrix(&mut rng, m, n, 25));
        let snf = smith_normal_form(&a);
        ensure(snf.u.mul(&a).mul(&snf.v) == snf.d, || format!("U A V != D for {a:?}"))?;
    }
    let mut volumes = 0;
    while volumes < 60 {
        let dim = rng.random_range(1..=3);
        let points = random_points(&mut rng, dim);
        let expected = oracles::normalized_volume(&points);
        if expected == 0 {
            continue;
        }
        let mv = mixed_volume(&[SupportSet::new(points.clone(), dim)], rng.random()).map_err(|e| e.to_string())?;
        ensure(mv as i128 == expected, || format!("MV {mv} != n! vol {expected} for {points:?}"))?;
        volumes += 1;
    }
    let mut binomials = 0;
    while binomials < 100 {
        let n = rng.random_range(1..=3);
        let a = random_matrix(&mut rng, n, n, 4);
        let det = oracles::det(&a);
        if det == 0 {
            continue;
        }
        let c: Vec<Complex64> = (0..n).map(|_| unit_complex(&mut rng) * rng.random_range(0.5..2.0)).collect();
        let sols = solve_binomial(&a, &c).map_err(|e| e.to_string())?;
        ensure(sols.len() as i128 == det.abs(), || format!("{} binomial solutions, |det| = {}", sols.len(), det.abs()))?;
        binomials += 1;
    }
    for _ in 0..5 {
        let dim = rng.random_range(2..=3);
        let supports: Vec<SupportSet> = (0..dim).map(|_| SupportSet::new(random_points(&mut rng, dim), 1)).collect();
        let first = mixed_volume(&supports, 0).map_err(|e| e.to_string())?;
        for seed in 1..20 {
            let mv = mixed_volume(&supports, seed).map_err(|e| e.to_string())?;
            ensure(mv == first, || format!("lifting seed {seed}: {mv} != {first}"))?;
        }
    }
    Ok("SNF on 200 matrices, MV = n! vol on 60 polytopes, 100 binomial counts, 5 supports x 20 liftings".into())
}

fn same_points(a: &[Vec<Complex64>], b: &[Vec<Complex64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| distance(p, q) <= tol))
        && b.iter().all(|q| a.iter().any(|p| distance(p, q) <= tol))
}

fn method_cross_check() -> Outcome {
    let (gr, gr_w) = grassmannian_family(2, 4).map_err(|e| e.to_string())?;
    let cases: Vec<(&str, AnySystem, Option<Vec<i64>>)> = vec![
        (
            "octic",
            random_slice(&octic_family().map_err(|e| e.to_string())?, &[3], CoefficientKind::IntRange, 0)
                .map_err(|e| e.to_string())?,
            None,
        ),
        (
            "semimixed",
            random_slice(&semimixed_family().map_err(|e| e.to_string())?, &[2, 1], CoefficientKind::IntRange, 0)
                .map_err(|e| e.to_string())?,
            None,
        ),
        (
            "Gr(2,4)",
            random_slice(&gr, &[4], CoefficientKind::ComplexGaussian, 0).map_err(|e| e.to_string())?,
            Some(gr_w),
        ),
    ];
    let mut lines = Vec::new();
    for (name, sys, weight) in cases {
        let base = SolveOptions { weight, degree_check: false, ..Default::default() };
        let two = solve(&sys, &base)?.solutions.points();
        let one = solve(&sys, &SolveOptions { one_step: true, ..base })?.solutions.points();
        ensure(same_points(&two, &one, 1e-6), || {
            format!("{name}: two-step {} vs one-step {} endpoints differ", two.len(), one.len())
        })?;
        lines.push(format!("{name} ({})", two.len()));
    }
    Ok(format!("one-step and two-step endpoints agree within 1e-6: {}", lines.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("octic family counts", octic_counts),
        ("semimixed family counts", semimixed_counts),
        ("base locus recovery", base_locus_counts),
        ("Grassmannian counts", grassmannian_counts),
        ("special Gr(3,6) slice", special_slice),
        ("resonator counts", resonator_counts),
        ("homogenization algebra", homogenization_algebra),
        ("flat counts", flat_counts),
        ("normal forms and volumes", normal_forms_and_volumes),
        ("method cross-check", method_cross_check),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let seconds = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{seconds:.1} s]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} [{seconds:.1} s]: {detail}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
