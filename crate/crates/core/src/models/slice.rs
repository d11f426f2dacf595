use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::grassmannian::grassmannian_family;
use crate::error::{Error, Result};
use crate::homotopy::{AnySystem, ParameterizedSystem};
use crate::rng::{complex_gaussian, seeded_rng};
use crate::sagbi::SagbiFamily;
use crate::scalar::int;
use crate::Rational;

/// How random slice coefficients are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientKind {
    /// Uniform integers in `[-100, 100]`.
    IntRange,
    /// Independent standard complex Gaussians.
    ComplexGaussian,
}

/// Bound of the integer coefficient range.
pub const INT_RANGE: i64 = 100;

/// A random system with `rows_per_block[r]` equations on block `r`.
pub fn random_slice(
    family: &SagbiFamily,
    rows_per_block: &[usize],
    kind: CoefficientKind,
    seed: u64,
) -> Result<AnySystem> {
    if rows_per_block.len() != family.num_blocks() {
        return Err(Error::DimensionMismatch { expected: family.num_blocks(), found: rows_per_block.len() });
    }
    let total: usize = rows_per_block.iter().sum();
    if total != family.nvars() {
        return Err(Error::NotSquare { equations: total, variables: family.nvars() });
    }
    let mut rng = seeded_rng(seed);
    let shape = |r: usize| (rows_per_block[r], family.block(r).len());
    Ok(match kind {
        CoefficientKind::IntRange => {
            let coefficients: Vec<Vec<Vec<Rational>>> = (0..family.num_blocks())
                .map(|r| {
                    let (rows, cols) = shape(r);
                    (0..rows)
                        .map(|_| (0..cols).map(|_| int(rng.random_range(-INT_RANGE..=INT_RANGE))).collect())
                        .collect()
                })
                .collect();
            ParameterizedSystem::new(family.clone(), coefficients)?.into()
        }
        CoefficientKind::ComplexGaussian => {
            let coefficients: Vec<Vec<Vec<Complex64>>> = (0..family.num_blocks())
                .map(|r| {
                    let (rows, cols) = shape(r);
                    (0..rows).map(|_| (0..cols).map(|_| complex_gaussian(&mut rng)).collect()).collect()
                })
                .collect();
            ParameterizedSystem::new(family.clone(), coefficients)?.into()
        }
    })
}

/// A sparse integer slice of `Gr(3,6)` with far fewer than 42 solutions.
///
/// Its nine rows form three groups of three, each supported on a disjoint
/// run of Plücker coordinates (lexicographic column order): rows 1-3 on
/// coordinates 1-7, rows 4-6 on 8-13 and rows 7-9 on 14-20.
pub fn special_gr36_slice() -> Result<ParameterizedSystem<Rational>> {
    const GROUPS: [(usize, [&[i64]; 3]); 3] = [
        (0, [&[4, 1, 3, 0, 8, -5, 4], &[-3, 5, 5, 0, -8, 9, -2], &[8, 6, -8, -10, -4, 10, 9]]),
        (7, [&[0, -10, -2, 4, 7, 7], &[8, -7, 6, 10, 2, 10], &[-1, 3, -9, 8, 2, 2]]),
        (13, [&[5, 8, 5, -9, -10, 8, 6], &[-7, 5, 0, 4, 9, -2, -4], &[4, -2, -2, 1, -2, -9, 1]]),
    ];
    let (family, _) = grassmannian_family(3, 6)?;
    let mut rows = Vec::with_capacity(9);
    for (offset, group) in GROUPS {
        for entries in group {
            let mut row = vec![int(0); 20];
            for (j, &v) in entries.iter().enumerate() {
                row[offset + j] = int(v);
            }
            rows.push(row);
        }
    }
    ParameterizedSystem::new(family, vec![rows])
}
