use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::polyhedral::polyhedral_solve;
use crate::rng::complex_gaussian;
use crate::sagbi::SagbiFamily;
use crate::tracker::{distance, lex_cmp, CompiledSystem, TrackerConfig};
use crate::CPoly;

/// Isolated torus points of the base locus, with warnings about blocks
/// whose vanishing set looks positive-dimensional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BaseLocus {
    pub points: Vec<Vec<Complex64>>,
    pub warnings: Vec<String>,
}

/// Relative tolerance for a generator to count as vanishing.
const VANISH_TOL: f64 = 1e-6;
/// Coordinates smaller than this are off the torus.
const TORUS_TOL: f64 = 1e-6;

fn vanishes(gens: &[CPoly], x: &[Complex64]) -> bool {
    gens.iter().all(|g| {
        let scale: f64 = g
            .terms()
            .iter()
            .map(|(m, c)| c.norm() * m.0.iter().zip(x).map(|(&e, xi)| xi.norm().powi(e as i32)).product::<f64>())
            .sum();
        g.eval_complex(x).map_or(false, |v| v.norm() <= VANISH_TOL * scale.max(1.0))
    })
}

fn square_and_solve<R: Rng>(gens: &[CPoly], n: usize, rng: &mut R, cfg: &TrackerConfig) -> Result<Vec<Vec<Complex64>>> {
    let polys: Vec<CPoly> = (0..n)
        .map(|_| {
            gens.iter().fold(CPoly::zero(gens[0].ctx()), |acc, g| &acc + &g.scale(&complex_gaussian(rng)))
        })
        .collect();
    let (set, _) = polyhedral_solve(&CompiledSystem::from_polys(&polys, None), rng, cfg)?;
    Ok(set
        .solutions
        .into_iter()
        .chain(set.singular)
        .map(|s| s.point)
        .filter(|x| x.iter().all(|c| c.norm() > TORUS_TOL) && vanishes(gens, x))
        .collect())
}

/// Torus points where every generator of some block vanishes.
///
/// Each block is squared by random combinations of its generators and
/// solved twice; a point is kept only if both squarings find it, and a
/// count mismatch is reported as a warning.
pub fn compute_base_locus<R: Rng>(family: &SagbiFamily, rng: &mut R, cfg: &TrackerConfig) -> Result<BaseLocus> {
    let n = family.nvars();
    let mut out = BaseLocus::default();
    for (r, block) in family.blocks().iter().enumerate() {
        let gens: Vec<CPoly> = block.iter().map(|g| g.to_complex()).collect();
        if gens.iter().any(|g| g.is_constant()) {
            continue;
        }
        let first = square_and_solve(&gens, n, rng, cfg)?;
        let second = square_and_solve(&gens, n, rng, cfg)?;
        if first.len() != second.len() {
            out.warnings.push(format!(
                "block {} base locus counts differ between squarings ({} vs {}); it may be positive-dimensional",
                r + 1,
                first.len(),
                second.len()
            ));
        }
        for x in first {
            let stable = second.iter().any(|y| distance(&x, y) <= VANISH_TOL);
            let seen = out.points.iter().any(|y| distance(&x, y) <= VANISH_TOL);
            if stable && !seen {
                out.points.push(x);
            }
        }
    }
    out.points.sort_by(|a, b| lex_cmp(a, b));
    Ok(out)
}
