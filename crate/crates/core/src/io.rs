//! System and result file formats.
//!
//! Both are JSON. Polynomials are stored as infix strings over the declared
//! variables, complex numbers as `[re, im]` pairs.

use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{target_residual, AnySystem, DegreeReport, Method, ParameterizedSystem, SolveOptions, SolveReport, Timing};
use crate::poly::{parse, VariableContext};
use crate::sagbi::SagbiFamily;
use crate::tracker::{CompiledSystem, PathStats, Solution, TrackerConfig};
use crate::{QPoly, Rational};

/// One coefficient of a system file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Integer(i64),
    /// An exact rational such as `"-3/4"`.
    Text(String),
    Real(f64),
    Complex([f64; 2]),
}

impl Coefficient {
    fn exact(&self) -> Option<Result<Rational>> {
        match self {
            Coefficient::Integer(v) => Some(Ok(crate::scalar::int(*v))),
            Coefficient::Text(s) => Some(
                Rational::from_str(s.trim()).map_err(|_| Error::Invalid(format!("bad rational coefficient {s:?}"))),
            ),
            _ => None,
        }
    }

    fn complex(&self) -> Result<Complex64> {
        match self {
            Coefficient::Real(v) => Ok(Complex64::new(*v, 0.0)),
            Coefficient::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
            exact => exact.exact().expect("exact coefficient").map(|q| crate::Scalar::to_complex(&q)),
        }
    }

    fn from_rational(q: &Rational) -> Self {
        match (q.is_integer(), q.numer().to_i64()) {
            (true, Some(v)) => Coefficient::Integer(v),
            _ => Coefficient::Text(q.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub generators: Vec<String>,
}

/// Solver settings a system file may carry. Command-line flags override them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_locus: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vary_linear_part: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_step: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// The weight is given in the min convention and gets negated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negate_weight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tracker: Option<TrackerConfig>,
}

/// A horizontally parameterized system: one coefficient matrix per block,
/// one row per equation and one column per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub blocks: Vec<Block>,
    pub coefficients: Vec<Vec<Vec<Coefficient>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<FileOptions>,
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("system file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system files serialize")
    }

    pub fn family(&self) -> Result<SagbiFamily> {
        let ctx = VariableContext::new(&self.variables)?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(r, b)| {
                b.generators
                    .iter()
                    .enumerate()
                    .map(|(j, g)| {
                        parse::<Rational>(g, &ctx).map_err(|e| {
                            Error::Invalid(format!("block {} generator {} {g:?}: {e}", r + 1, j + 1))
                        })
                    })
                    .collect::<Result<Vec<QPoly>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SagbiFamily::new(&ctx, blocks)
    }

    /// The system, exact when every coefficient is an integer or rational.
    pub fn system(&self) -> Result<AnySystem> {
        let family = self.family()?;
        let all = || self.coefficients.iter().flatten().flatten();
        if all().all(|c| c.exact().is_some()) {
            let coefficients = self
                .coefficients
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|c| c.exact().unwrap()).collect()).collect())
                .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
            Ok(ParameterizedSystem::new(family, coefficients)?.into())
        } else {
            let coefficients = self
                .coefficients
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(Coefficient::complex).collect()).collect())
                .collect::<Result<Vec<Vec<Vec<Complex64>>>>>()?;
            Ok(ParameterizedSystem::new(family, coefficients)?.into())
        }
    }

    pub fn from_system(sys: &AnySystem, weight: Option<Vec<i64>>) -> Self {
        let family = sys.family();
        let coefficients = match sys {
            AnySystem::Rational(s) => s
                .coefficients()
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(Coefficient::from_rational).collect()).collect())
                .collect(),
            AnySystem::Complex(s) => s
                .coefficients()
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|c| Coefficient::Complex([c.re, c.im])).collect()).collect())
                .collect(),
        };
        SystemFile {
            variables: family.ctx().names().to_vec(),
            blocks: family
                .blocks()
                .iter()
                .map(|b| Block { generators: b.iter().map(|g| g.to_string()).collect() })
                .collect(),
            coefficients,
            weight,
            options: None,
        }
    }

    /// Solver options from the file, over the defaults.
    pub fn solve_options(&self) -> SolveOptions {
        let mut opts = SolveOptions::default();
        let file = self.options.clone().unwrap_or_default();
        opts.weight = self.weight.clone().map(|w| {
            if file.negate_weight == Some(true) {
                w.iter().map(|v| -v).collect()
            } else {
                w
            }
        });
        opts.degree_check = file.degree_check.unwrap_or(opts.degree_check);
        opts.get_base_locus = file.base_locus.unwrap_or(opts.get_base_locus);
        opts.vary_linear_part = file.vary_linear_part.unwrap_or(opts.vary_linear_part);
        opts.one_step = file.one_step.unwrap_or(opts.one_step);
        opts.force = file.force.unwrap_or(opts.force);
        opts.seed = file.seed.unwrap_or(opts.seed);
        if let Some(t) = file.tracker {
            opts.tracker = t;
        }
        opts
    }
}

/// A solution as stored in a result file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub point: Vec<[f64; 2]>,
    pub residual: f64,
    /// Jacobian condition number; absent for base-locus points.
    pub condition: Option<f64>,
    pub real: bool,
}

impl From<&Solution> for SolutionRecord {
    fn from(s: &Solution) -> Self {
        SolutionRecord {
            point: s.point.iter().map(|c| [c.re, c.im]).collect(),
            residual: s.residual,
            condition: s.condition.is_finite().then_some(s.condition),
            real: s.real,
        }
    }
}

impl SolutionRecord {
    pub fn point(&self) -> Vec<Complex64> {
        self.point.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub verified: bool,
    /// Leading monomials of the generators, block by block.
    pub leaders: Vec<Vec<Vec<u32>>>,
    pub relations_checked: usize,
}

/// Counts printed by the solve summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub paths_tracked: usize,
    pub start_solutions: usize,
    pub nonsingular: usize,
    pub real: usize,
    pub singular: usize,
    pub singular_real: usize,
    pub base_locus: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: String,
    pub seed: u64,
    pub method: Method,
    pub weight: Vec<i64>,
    pub certificate: CertificateSummary,
    pub degree: Option<DegreeReport>,
    pub summary: Summary,
    pub path_stats: PathStats,
    pub solutions: Vec<SolutionRecord>,
    pub singular: Vec<SolutionRecord>,
    pub base_locus: Vec<Vec<[f64; 2]>>,
    pub warnings: Vec<String>,
    pub options: SolveOptions,
    /// Wall-clock seconds; the only part that differs between runs with the
    /// same seed.
    pub timing: Timing,
}

impl ResultFile {
    pub fn new(report: &SolveReport, opts: &SolveOptions) -> Self {
        let sols = &report.solutions;
        let summary = Summary {
            paths_tracked: report.paths_tracked,
            start_solutions: report.start_count,
            nonsingular: sols.solutions.len(),
            real: sols.real_count(),
            singular: sols.singular.len(),
            singular_real: sols.singular.iter().filter(|s| s.real).count(),
            base_locus: report.base_locus.len(),
            total: sols.solutions.len() + sols.singular.len(),
        };
        ResultFile {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: opts.seed,
            method: report.method,
            weight: report.weight().to_vec(),
            certificate: CertificateSummary {
                verified: report.certificate.verified,
                leaders: report.certificate.leaders.iter().map(|b| b.iter().map(|(m, _)| m.0.clone()).collect()).collect(),
                relations_checked: report.certificate.relations.len(),
            },
            degree: report.degree.clone(),
            summary,
            path_stats: sols.stats.clone(),
            solutions: sols.solutions.iter().map(SolutionRecord::from).collect(),
            singular: sols.singular.iter().map(SolutionRecord::from).collect(),
            base_locus: report.base_locus.iter().map(|p| p.iter().map(|c| [c.re, c.im]).collect()).collect(),
            warnings: report.warnings.clone(),
            options: opts.clone(),
            timing: report.timing.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("result file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result files serialize")
    }

    /// Relative residual of every non-singular solution against `sys`.
    pub fn residuals(&self, sys: &AnySystem) -> Result<Vec<f64>> {
        let target = sys.to_complex();
        let compiled = CompiledSystem::from_polys(&target.equations(), None);
        self.solutions
            .iter()
            .map(|s| {
                if s.point.len() != target.nvars() {
                    return Err(Error::DimensionMismatch { expected: target.nvars(), found: s.point.len() });
                }
                Ok(target_residual(&compiled, &s.point()).1)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = r#"{
        "variables": ["x", "y"],
        "blocks": [{"generators": ["x", "y", "1"]}],
        "coefficients": [[[1, 2, "-3/2"], [0, 1, 1]]],
        "weight": [1, 2],
        "options": {"negate_weight": true, "seed": 4}
    }"#;

    #[test]
    fn exact_system_round_trips() {
        let file = SystemFile::from_json(EX).unwrap();
        let sys = file.system().unwrap();
        assert!(matches!(sys, AnySystem::Rational(_)));
        let opts = file.solve_options();
        assert_eq!(opts.weight, Some(vec![-1, -2]));
        assert_eq!(opts.seed, 4);
        let again = SystemFile::from_system(&sys, file.weight.clone());
        assert_eq!(again.coefficients, file.coefficients);
        assert_eq!(again.system().unwrap(), sys);
    }

    #[test]
    fn complex_entries_give_complex_system() {
        let text = EX.replace("\"-3/2\"", "[0.5, -1.0]");
        let sys = SystemFile::from_json(&text).unwrap().system().unwrap();
        let AnySystem::Complex(s) = sys else { panic!("expected complex system") };
        assert_eq!(s.row(0, 0)[2], Complex64::new(0.5, -1.0));
        assert_eq!(s.row(0, 1)[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let text = EX.replace("\"x\", \"y\", \"1\"", "\"x\", \"y+*2\", \"1\"");
        let err = SystemFile::from_json(&text).unwrap().system().unwrap_err();
        assert!(err.to_string().contains("generator 2 \"y+*2\": parse error at byte 2"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = EX.replace("\"weight\"", "\"wieght\"");
        assert!(SystemFile::from_json(&text).is_err());
    }
}
