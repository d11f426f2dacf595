use std::time::Instant;

use anyhow::Result;
use serde_json::json;

use sagbi_core::homotopy::{AnySystem, SolveOptions};
use sagbi_core::models::{
    base_locus_family, grassmannian_family, octic_family, random_resonator, random_slice, semimixed_family,
    special_gr36_slice, CoefficientKind,
};

use crate::{Format, OutputArgs, Status};

type Builder = fn(u64) -> sagbi_core::Result<(AnySystem, SolveOptions)>;

struct Row {
    name: &'static str,
    expected: usize,
    build: Builder,
}

fn slice(
    family: sagbi_core::Result<sagbi_core::sagbi::SagbiFamily>,
    rows: &[usize],
    kind: CoefficientKind,
    seed: u64,
    opts: SolveOptions,
) -> sagbi_core::Result<(AnySystem, SolveOptions)> {
    Ok((random_slice(&family?, rows, kind, seed)?, SolveOptions { seed, ..opts }))
}

fn grassmannian(k: usize, m: usize, seed: u64) -> sagbi_core::Result<(AnySystem, SolveOptions)> {
    let (family, w) = grassmannian_family(k, m)?;
    let sys = random_slice(&family, &[family.nvars()], CoefficientKind::ComplexGaussian, seed)?;
    Ok((sys, SolveOptions { seed, weight: Some(w), ..Default::default() }))
}

fn resonator(count: usize, seed: u64) -> sagbi_core::Result<(AnySystem, SolveOptions)> {
    let sys = random_resonator(count, 2, seed)?.to_complex();
    Ok((sys.into(), SolveOptions { seed, ..Default::default() }))
}

const ROWS: &[Row] = &[
    Row {
        name: "octic",
        expected: 8,
        build: |s| slice(octic_family(), &[3], CoefficientKind::IntRange, s, SolveOptions::default()),
    },
    Row {
        name: "octic-one-step",
        expected: 8,
        build: |s| {
            let opts = SolveOptions { one_step: true, degree_check: false, ..Default::default() };
            slice(octic_family(), &[3], CoefficientKind::IntRange, s, opts)
        },
    },
    Row {
        name: "semimixed",
        expected: 6,
        build: |s| slice(semimixed_family(), &[2, 1], CoefficientKind::IntRange, s, SolveOptions::default()),
    },
    Row {
        name: "base-locus",
        expected: 2,
        build: |s| slice(base_locus_family(), &[2], CoefficientKind::ComplexGaussian, s, SolveOptions::default()),
    },
    Row {
        name: "base-locus-recovered",
        expected: 4,
        build: |s| {
            let opts = SolveOptions { get_base_locus: true, ..Default::default() };
            slice(base_locus_family(), &[2], CoefficientKind::ComplexGaussian, s, opts)
        },
    },
    Row { name: "gr(2,4)", expected: 2, build: |s| grassmannian(2, 4, s) },
    Row { name: "gr(2,5)", expected: 5, build: |s| grassmannian(2, 5, s) },
    Row { name: "gr(2,6)", expected: 14, build: |s| grassmannian(2, 6, s) },
    Row { name: "gr(3,6)", expected: 42, build: |s| grassmannian(3, 6, s) },
    Row {
        name: "gr(3,6)-special",
        expected: 12,
        build: |s| {
            let (_, w) = grassmannian_family(3, 6)?;
            let opts =
                SolveOptions { seed: s, weight: Some(w), vary_linear_part: true, degree_check: false, ..Default::default() };
            Ok((special_gr36_slice()?.into(), opts))
        },
    },
    Row { name: "resonator-1", expected: 5, build: |s| resonator(1, s) },
    Row { name: "resonator-2", expected: 25, build: |s| resonator(2, s) },
];

pub fn run(seeds: u64, only: &[String], out: &OutputArgs) -> Result<Status> {
    let rows: Vec<&Row> =
        ROWS.iter().filter(|r| only.is_empty() || only.iter().any(|o| r.name.contains(o.as_str()))).collect();
    let text = out.format == Format::Text;
    if text {
        println!("{:<22} {:>5} {:>8} {:>6} {:>9}  status", "system", "seed", "expected", "found", "seconds");
    }
    let mut records = Vec::new();
    let mut all_pass = true;
    for row in rows {
        for seed in 0..seeds {
            let clock = Instant::now();
            let found = (row.build)(seed).and_then(|(sys, opts)| sys.solve(&opts)).map(|r| r.solutions.solutions.len());
            let seconds = clock.elapsed().as_secs_f64();
            let pass = matches!(found, Ok(n) if n == row.expected);
            all_pass &= pass;
            let shown = match &found {
                Ok(n) => n.to_string(),
                Err(_) => "error".to_string(),
            };
            let line = format!(
                "{:<22} {:>5} {:>8} {:>6} {:>9.2}  {}",
                row.name,
                seed,
                row.expected,
                shown,
                seconds,
                if pass { "PASS" } else { "FAIL" }
            );
            if text {
                println!("{line}");
            }
            if let Err(e) = &found {
                eprintln!("  {e}");
            }
            records.push(json!({
                "system": row.name,
                "seed": seed,
                "expected": row.expected,
                "found": found.as_ref().ok(),
                "seconds": seconds,
                "pass": pass,
            }));
        }
    }
    let json = serde_json::to_string_pretty(&json!({ "rows": records, "pass": all_pass }))?;
    if !text {
        println!("{json}");
    }
    if let Some(path) = &out.output {
        std::fs::write(path, format!("{json}\n"))?;
    }
    Ok(if all_pass { Status::Ok } else { Status::Failed })
}
