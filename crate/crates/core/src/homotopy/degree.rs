use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::{lattice_index, IntMatrix, LatticeIndex};
use crate::rng::complex_gaussian;
use crate::sagbi::{leading_terms, SagbiFamily};
use crate::tracker::{distance, norm_inf, track_paths, CompiledSystem, Homotopy, PathStatus, TrackerConfig};
use crate::CPoly;

/// Degrees of the parameterization and of its monomial degeneration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub deg_phi: u64,
    /// `None` when the leading exponents do not span a full-rank lattice.
    pub deg_phi0: Option<u64>,
    /// Number of solutions of a generic system, `deg_phi * paths / deg_phi0`.
    pub expected_count: Option<u64>,
    pub warning: Option<String>,
}

impl DegreeReport {
    pub fn new(deg_phi: u64, deg_phi0: Option<u64>, paths: Option<u64>) -> Self {
        let warning = match deg_phi0 {
            Some(d0) if d0 < deg_phi => Some(format!(
                "degree of monomial parameterisation drops from {deg_phi} to {d0}; \
                 SAGBI homotopy will not find all the solutions"
            )),
            None => Some("monomial parameterisation is not generically finite".to_string()),
            _ => None,
        };
        let expected_count = match (deg_phi0, paths) {
            (Some(d0), Some(p)) if d0 > 0 => Some(deg_phi * p / d0),
            _ => None,
        };
        DegreeReport { deg_phi, deg_phi0, expected_count, warning }
    }

    pub fn degree_drops(&self) -> bool {
        self.warning.is_some()
    }
}

/// Degree of the monomial map given by the leading terms under `w`: the
/// index of the lattice spanned by the differences `a_{r,j} - a_{r,0}`.
pub fn compute_degree_monomial_map(family: &SagbiFamily, w: &[i64]) -> Result<Option<u64>> {
    let leaders = leading_terms(family, w)?;
    let n = family.nvars();
    let columns: Vec<Vec<i64>> = leaders
        .iter()
        .flat_map(|block| {
            let base: Vec<i64> = block[0].0 .0.iter().map(|&e| e as i64).collect();
            block[1..]
                .iter()
                .map(move |(m, _)| m.0.iter().zip(&base).map(|(&a, b)| a as i64 - b).collect())
                .collect::<Vec<_>>()
        })
        .collect();
    if columns.is_empty() {
        return Ok(if n == 0 { Some(1) } else { None });
    }
    Ok(match lattice_index(&IntMatrix::from_columns(&columns, n)) {
        LatticeIndex::Finite(d) => d.to_u64(),
        LatticeIndex::Infinite => None,
    })
}

fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative tolerance for fiber membership.
const FIBER_TOL: f64 = 1e-6;

/// Whether `x` maps to the same point as `x_star` in every block: the block
/// vectors are nonzero and proportional.
fn on_fiber(at_x: &[Vec<Complex64>], at_star: &[Vec<Complex64>]) -> bool {
    at_x.iter().zip(at_star).all(|(u, v)| {
        let (nu, nv) = (vector_norm(u), vector_norm(v));
        if !(nu > FIBER_TOL * (1.0 + nv) && nu.is_finite()) {
            return false;
        }
        (0..u.len()).all(|j| (j + 1..u.len()).all(|l| (u[j] * v[l] - u[l] * v[j]).norm() <= FIBER_TOL * nu * nv))
    })
}

/// All generators compiled together, with the index of each block's first.
struct Generators {
    system: CompiledSystem,
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    nvars: usize,
}

impl Generators {
    fn new(family: &SagbiFamily) -> Self {
        let polys: Vec<CPoly> = family.blocks().iter().flatten().map(|g| g.to_complex()).collect();
        let sizes: Vec<usize> = family.blocks().iter().map(|b| b.len()).collect();
        let offsets = sizes.iter().scan(0, |acc, &k| Some(std::mem::replace(acc, *acc + k))).collect();
        Generators { system: CompiledSystem::from_polys(&polys, None), offsets, sizes, nvars: family.nvars() }
    }

    fn len(&self) -> usize {
        self.system.num_equations()
    }

    /// Values and Jacobian of every generator at `x`.
    fn eval(&self, x: &[Complex64]) -> (DVector<Complex64>, DMatrix<Complex64>) {
        let m = self.len();
        let mut v = DVector::zeros(m);
        let mut j = DMatrix::zeros(m, self.nvars);
        let mut unused = DVector::zeros(m);
        self.system.evaluate(x, Complex64::new(1.0, 0.0), &mut v, &mut j, &mut unused);
        (v, j)
    }

    fn blocks(&self, v: &DVector<Complex64>) -> Vec<Vec<Complex64>> {
        self.offsets.iter().zip(&self.sizes).map(|(&o, &k)| v.as_slice()[o..o + k].to_vec()).collect()
    }
}

/// `sum_g c_{ig}(s) b_g(x)` with the coefficient matrix moving on a segment
/// `c(s) = (1 - s) from + s to`.
struct SliceSegment<'a> {
    gens: &'a Generators,
    from: &'a DMatrix<Complex64>,
    to: &'a DMatrix<Complex64>,
}

impl Homotopy for SliceSegment<'_> {
    fn nvars(&self) -> usize {
        self.gens.nvars
    }

    fn evaluate(
        &self,
        x: &[Complex64],
        s: f64,
        values: &mut DVector<Complex64>,
        jac: &mut DMatrix<Complex64>,
        ds: &mut DVector<Complex64>,
    ) {
        let (g, j) = self.gens.eval(x);
        let c = self.from * Complex64::new(1.0 - s, 0.0) + self.to * Complex64::new(s, 0.0);
        *values = &c * &g;
        *jac = &c * &j;
        *ds = (self.to - self.from) * &g;
    }

    fn target_scale(&self, x: &[Complex64]) -> Vec<f64> {
        let (g, _) = self.gens.eval(x);
        self.to.row_iter().map(|row| row.iter().zip(g.iter()).map(|(c, v)| (c * v).norm()).sum()).collect()
    }
}

/// Loops without a new solution before the search stops.
const STALE_LOOPS: usize = 5;
/// Hard cap on monodromy loops per base point.
const MAX_LOOPS: usize = 200;

/// Number of points in the fiber of `phi` over `phi(x*)` for a random `x*`.
///
/// The fiber solves the squared fiber system `sum_j lambda_{ij} (b_{r,j}(x)
/// b_{r,0}(x*) - b_{r,0}(x) b_{r,j}(x*))`, which is itself a slice
/// `sum_g c_{ig} b_g(x)` of the generators with `x*` as a known solution.
/// Monodromy loops through random slices collect its remaining solutions
/// (slices and their solutions form an irreducible family, so the loops
/// act transitively) until several loops in a row add nothing; the count
/// is of those lying on the fiber.
fn fiber_count<R: Rng>(gens: &Generators, rng: &mut R, cfg: &TrackerConfig) -> usize {
    let n = gens.nvars;
    let m = gens.len();
    let star: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let g_star = gens.eval(&star).0;
    let at_star = gens.blocks(&g_star);
    let mut base = DMatrix::zeros(n, m);
    for i in 0..n {
        for (&o, &k) in gens.offsets.iter().zip(&gens.sizes) {
            for j in 1..k {
                let l = complex_gaussian(rng);
                base[(i, o + j)] += l * g_star[o];
                base[(i, o)] -= l * g_star[o + j];
            }
        }
    }
    let random_slice = |rng: &mut R| DMatrix::from_fn(n, m, |_, _| complex_gaussian(rng));
    let same = |a: &[Complex64], b: &[Complex64]| distance(a, b) <= FIBER_TOL * (1.0 + norm_inf(a));
    let mut known = vec![star];
    let mut stale = 0;
    for _ in 0..MAX_LOOPS {
        if stale >= STALE_LOOPS {
            break;
        }
        let c1 = random_slice(rng);
        let c2 = random_slice(rng);
        let mut points = known.clone();
        for (from, to) in [(&base, &c1), (&c1, &c2), (&c2, &base)] {
            let segment = SliceSegment { gens, from, to };
            points = track_paths(&segment, &points, cfg)
                .into_iter()
                .filter(|r| r.status == PathStatus::Success)
                .map(|r| r.endpoint)
                .collect();
        }
        let before = known.len();
        for p in points {
            if !known.iter().any(|k| same(k, &p)) {
                known.push(p);
            }
        }
        stale = if known.len() > before { 0 } else { stale + 1 };
    }
    known.iter().filter(|x| on_fiber(&gens.blocks(&gens.eval(x).0), &at_star)).count()
}

/// Number of trials in the degree vote.
pub const DEGREE_TRIALS: usize = 3;

/// Generic fiber cardinality of the map `x -> ([B_1(x)], ..., [B_m(x)])`,
/// by majority vote over random fibers.
pub fn compute_degree_map<R: Rng>(family: &SagbiFamily, rng: &mut R, cfg: &TrackerConfig) -> Result<u64> {
    let n = family.nvars();
    let relations: usize = family.blocks().iter().map(|b| b.len() - 1).sum();
    if relations < n {
        return Err(Error::DegreeUndetermined(format!(
            "{relations} fiber equations for {n} unknowns: the parameterization has positive-dimensional fibers"
        )));
    }
    let gens = Generators::new(family);
    let mut counts = Vec::with_capacity(DEGREE_TRIALS);
    for _ in 0..DEGREE_TRIALS {
        counts.push(fiber_count(&gens, rng, cfg));
        // Stop once a majority is settled.
        let top = counts.iter().map(|c| counts.iter().filter(|d| *d == c).count()).max().unwrap_or(0);
        if top * 2 > DEGREE_TRIALS {
            break;
        }
    }
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &counts {
        *tally.entry(c).or_default() += 1;
    }
    match tally.iter().max_by_key(|(_, &v)| v) {
        Some((&count, &votes)) if votes * 2 > DEGREE_TRIALS && count > 0 => Ok(count as u64),
        _ => Err(Error::DegreeUndetermined(format!("fiber counts {counts:?} disagree"))),
    }
}
