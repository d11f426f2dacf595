use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::json;

use sagbi_core::homotopy::{compute_degree_map, compute_degree_monomial_map, leader_system, AnySystem};
use sagbi_core::io::{ResultFile, SystemFile};
use sagbi_core::models::{grassmannian_family, random_resonator, random_slice, CoefficientKind};
use sagbi_core::polyhedral::{self, group_supports, supports_of};
use sagbi_core::rng::seeded_rng;
use sagbi_core::sagbi::{detect_weight, initial_form, SagbiFamily, DEFAULT_BUDGET};
use sagbi_core::tracker::{CompiledSystem, TrackerConfig};

use crate::{Format, OutputArgs, Status, WeightArgs};

fn load(path: &Path) -> Result<(SystemFile, AnySystem)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = SystemFile::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    let sys = file.system().with_context(|| format!("in {}", path.display()))?;
    Ok((file, sys))
}

/// The weight from the flags, else from the file.
fn chosen_weight(args: &WeightArgs, file: &SystemFile) -> Option<Vec<i64>> {
    let file_negates = file.options.as_ref().and_then(|o| o.negate_weight).unwrap_or(false);
    let (w, negate) = match &args.weight {
        Some(w) => (w.clone(), args.negate_weight),
        None => (file.weight.clone()?, args.negate_weight || file_negates),
    };
    Some(if negate { w.iter().map(|v| -v).collect() } else { w })
}

fn check_length(w: &[i64], family: &SagbiFamily) -> Result<()> {
    if w.len() != family.nvars() {
        bail!("weight has {} entries for {} variables", w.len(), family.nvars());
    }
    Ok(())
}

fn weight_or_detect(args: &WeightArgs, file: &SystemFile, family: &SagbiFamily) -> Result<Vec<i64>> {
    match chosen_weight(args, file) {
        Some(w) => {
            check_length(&w, family)?;
            Ok(w)
        }
        None => Ok(detect_weight(family, DEFAULT_BUDGET)?.weight),
    }
}

fn write_output(path: &Path, json: &str) -> Result<()> {
    fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))
}

/// Prints `text` or `json` per the format and writes the JSON to the output
/// file when one is given.
fn emit(out: &OutputArgs, text: &str, json: &str) -> Result<()> {
    match out.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{json}"),
    }
    if let Some(path) = &out.output {
        write_output(path, json)?;
    }
    Ok(())
}

pub struct SolveFlags {
    pub no_degree_check: bool,
    pub base_locus: bool,
    pub vary_linear_part: bool,
    pub one_step: bool,
    pub force: bool,
    pub seed: Option<u64>,
    pub solutions: bool,
}

fn complex_text(re: f64, im: f64) -> String {
    if im < 0.0 {
        format!("{re:.10} - {:.10}im", -im)
    } else {
        format!("{re:.10} + {im:.10}im")
    }
}

pub fn solve(path: &Path, weight: &WeightArgs, flags: SolveFlags, out: &OutputArgs) -> Result<Status> {
    let (file, sys) = load(path)?;
    let mut opts = file.solve_options();
    opts.weight = chosen_weight(weight, &file);
    if let Some(w) = &opts.weight {
        check_length(w, sys.family())?;
    }
    opts.degree_check &= !flags.no_degree_check;
    opts.get_base_locus |= flags.base_locus;
    opts.vary_linear_part |= flags.vary_linear_part;
    opts.one_step |= flags.one_step;
    opts.force |= flags.force;
    if let Some(seed) = flags.seed {
        opts.seed = seed;
    }

    let report = sys.solve(&opts)?;
    let result = ResultFile::new(&report, &opts);
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }

    let s = &result.summary;
    let mut text = String::new();
    let verified = if result.certificate.verified { "verified" } else { "NOT verified" };
    writeln!(text, "weight: {:?} ({verified})", result.weight)?;
    if let Some(d) = &result.degree {
        let d0 = d.deg_phi0.map_or("none".to_string(), |v| v.to_string());
        writeln!(text, "deg_phi={} deg_phi0={d0}", d.deg_phi)?;
    }
    writeln!(text, "Result with {} solutions", s.total)?;
    writeln!(text, "• {} paths tracked", s.paths_tracked)?;
    writeln!(text, "• {} non-singular solutions ({} real)", s.nonsingular, s.real)?;
    writeln!(text, "• {} singular solutions ({} real)", s.singular, s.singular_real)?;
    if opts.get_base_locus {
        writeln!(text, "• {} points in the base locus", s.base_locus)?;
    }
    writeln!(text, "• random seed: {}", result.seed)?;
    if flags.solutions {
        for (i, sol) in result.solutions.iter().enumerate() {
            let coords: Vec<String> = sol.point.iter().map(|&[re, im]| complex_text(re, im)).collect();
            writeln!(text, "  [{}] {}", i + 1, coords.join(", "))?;
        }
    }
    writeln!(text, "SAGBI homotopy successfully completed with {} solutions.", s.nonsingular)?;
    emit(out, &text, &result.to_json())?;

    Ok(if result.warnings.is_empty() { Status::Ok } else { Status::Warnings })
}

pub fn detect(path: &Path, budget: Option<u64>, out: &OutputArgs) -> Result<Status> {
    let (file, _) = load(path)?;
    let family = file.family()?;
    let cert = detect_weight(&family, budget.unwrap_or(DEFAULT_BUDGET))?;
    let mut text = format!("weight: {:?}\n", cert.weight);
    let mut leaders = Vec::new();
    for (r, block) in family.blocks().iter().enumerate() {
        let forms: Vec<String> =
            block.iter().map(|g| initial_form(g, &cert.weight).map(|f| f.to_string())).collect::<Result<_, _>>()?;
        writeln!(text, "block {} leading terms: {}", r + 1, forms.join(", "))?;
        leaders.push(forms);
    }
    writeln!(text, "relations checked: {}", cert.relations.len())?;
    let json = json!({
        "weight": cert.weight,
        "verified": cert.verified,
        "leading_terms": leaders,
        "relations_checked": cert.relations.len(),
    });
    emit(out, &text, &serde_json::to_string_pretty(&json)?)?;
    Ok(Status::Ok)
}

pub fn degree(path: &Path, weight: &WeightArgs, seed: u64, out: &OutputArgs) -> Result<Status> {
    let (file, _) = load(path)?;
    let family = file.family()?;
    let w = weight_or_detect(weight, &file, &family)?;
    let deg_phi0 = compute_degree_monomial_map(&family, &w)?;
    let deg_phi = compute_degree_map(&family, &mut seeded_rng(seed), &TrackerConfig::default())?;
    let d0 = deg_phi0.map_or("none".to_string(), |v| v.to_string());
    let text = format!("weight: {w:?}\ndeg_phi={deg_phi} deg_phi0={d0}\n");
    let json = json!({ "weight": w, "deg_phi": deg_phi, "deg_phi0": deg_phi0 });
    emit(out, &text, &serde_json::to_string_pretty(&json)?)?;
    if deg_phi0 != Some(deg_phi) {
        eprintln!("warning: degree of monomial parameterisation drops from {deg_phi} to {d0}");
        return Ok(Status::Warnings);
    }
    Ok(Status::Ok)
}

pub fn mixed_volume(path: &Path, leaders: bool, weight: &WeightArgs, seed: u64, out: &OutputArgs) -> Result<Status> {
    let (file, sys) = load(path)?;
    let target = sys.to_complex();
    let (polys, w) = if leaders {
        let w = weight_or_detect(weight, &file, sys.family())?;
        (leader_system(&target, &w)?, Some(w))
    } else {
        (target.equations(), None)
    };
    let grouped = group_supports(&supports_of(&CompiledSystem::from_polys(&polys, None)))?;
    let mv = polyhedral::mixed_volume(&grouped.supports, seed)?;
    let text = format!("mixed_volume={mv}\n");
    let json = json!({ "mixed_volume": mv, "leaders": leaders, "weight": w });
    emit(out, &text, &serde_json::to_string_pretty(&json)?)?;
    Ok(Status::Ok)
}

fn write_system(file: &SystemFile, output: Option<PathBuf>) -> Result<Status> {
    let json = file.to_json();
    match output {
        Some(path) => write_output(&path, &json)?,
        None => println!("{json}"),
    }
    Ok(Status::Ok)
}

pub fn gen_grassmannian(k: usize, m: usize, integer: bool, seed: u64, output: Option<PathBuf>) -> Result<Status> {
    let (family, w) = grassmannian_family(k, m)?;
    let kind = if integer { CoefficientKind::IntRange } else { CoefficientKind::ComplexGaussian };
    let sys = random_slice(&family, &[family.nvars()], kind, seed)?;
    write_system(&SystemFile::from_system(&sys, Some(w)), output)
}

pub fn gen_resonator(count: usize, n: usize, seed: u64, output: Option<PathBuf>) -> Result<Status> {
    let sys = random_resonator(count, n, seed)?;
    write_system(&SystemFile::from_system(&sys.to_complex().into(), None), output)
}

pub fn verify(system: &Path, result: &Path, tol: f64) -> Result<Status> {
    let (_, sys) = load(system)?;
    let text = fs::read_to_string(result).with_context(|| format!("reading {}", result.display()))?;
    let result = ResultFile::from_json(&text).with_context(|| format!("in {}", result.display()))?;
    let residuals = result.residuals(&sys)?;
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    let bad = residuals.iter().filter(|&&r| !(r <= tol)).count();
    println!("{} solutions, max relative residual {worst:.3e}", residuals.len());
    if bad > 0 {
        eprintln!("error: {bad} solutions exceed the tolerance {tol:e}");
        return Ok(Status::Failed);
    }
    println!("all residuals within {tol:e}");
    Ok(Status::Ok)
}
