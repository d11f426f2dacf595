use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::binomial::solve_binomial;
use super::cells::{mixed_cells_random, Lifting, MixedCell, SupportSet};
use crate::error::{Error, Result};
use crate::intlin::rational::Q;
use crate::rng::{complex_gaussian, unit_complex};
use crate::tracker::{
    track, track_paths, CompiledSystem, CompiledTerm, ParameterHomotopy, PathResult, PathShape, SolutionSet,
    StraightLineHomotopy, TrackerConfig,
};

/// Equation supports with identical point sets merged into one
/// [`SupportSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedSupports {
    pub supports: Vec<SupportSet>,
    /// For each equation, its support index and its row within that support.
    pub equation_group: Vec<(usize, usize)>,
}

pub fn group_supports(eq_supports: &[Vec<Vec<u32>>]) -> Result<GroupedSupports> {
    let mut supports: Vec<SupportSet> = Vec::new();
    let mut equation_group = Vec::with_capacity(eq_supports.len());
    for pts in eq_supports {
        let mut points: Vec<Vec<i64>> = pts.iter().map(|p| p.iter().map(|&e| e as i64).collect()).collect();
        points.sort();
        points.dedup();
        if points.is_empty() {
            return Err(Error::Invalid("equation with empty support".into()));
        }
        match supports.iter().position(|s| s.points == points) {
            Some(r) => {
                equation_group.push((r, supports[r].multiplicity));
                supports[r].multiplicity += 1;
            }
            None => {
                equation_group.push((supports.len(), 0));
                supports.push(SupportSet::new(points, 1));
            }
        }
    }
    Ok(GroupedSupports { supports, equation_group })
}

/// Torus solutions of each cell's binomial start system.
///
/// `coefficients[r][row][j]` is the coefficient of point `j` of support `r`
/// in the `row`-th equation drawing on it. Within each support the cell's
/// `k_r + 1` monomials are linear unknowns of a `k_r x (k_r + 1)` system;
/// dividing by the first reduces it to binomials.
pub fn start_solutions(
    supports: &[SupportSet],
    coefficients: &[Vec<Vec<Complex64>>],
    cells: &[MixedCell],
) -> Result<Vec<(MixedCell, Vec<Vec<Complex64>>)>> {
    cells
        .iter()
        .map(|cell| {
            let mut exps = Vec::new();
            let mut consts = Vec::new();
            for (r, s) in supports.iter().enumerate() {
                let pts = &cell.points[r];
                let k = s.multiplicity;
                let m = DMatrix::from_fn(k, k, |i, j| coefficients[r][i][pts[j + 1]]);
                let rhs = DVector::from_fn(k, |i, _| -coefficients[r][i][pts[0]]);
                let z = m.lu().solve(&rhs).ok_or(Error::SingularExponentMatrix)?;
                let base = &s.points[pts[0]];
                for j in 0..k {
                    exps.push(s.points[pts[j + 1]].iter().zip(base).map(|(a, b)| a - b).collect::<Vec<i64>>());
                    consts.push(z[j]);
                }
            }
            Ok((cell.clone(), solve_binomial(&exps, &consts)?))
        })
        .collect()
}

fn point_term(point: &[i64], coef: Complex64, tpow: f64) -> CompiledTerm {
    CompiledTerm {
        coef,
        tpow,
        vars: point.iter().enumerate().filter(|(_, &e)| e != 0).map(|(v, &e)| (v, e as u32)).collect(),
    }
}

/// The polyhedral homotopy of one cell: every term `c_a y^a` becomes
/// `c_a tau^{h(a)/h_min} y^a` where `h` is the cell height, so `tau = 0`
/// leaves the cell's binomial system and `tau = 1` the full system.
pub fn cell_homotopy(
    grouped: &GroupedSupports,
    coefficients: &[Vec<Vec<Complex64>>],
    lifting: &Lifting,
    cell: &MixedCell,
) -> CompiledSystem {
    let heights: Vec<Vec<Q>> = grouped
        .supports
        .iter()
        .enumerate()
        .map(|(r, s)| s.points.iter().zip(&lifting.values[r]).map(|(p, l)| cell.height(r, p, l)).collect())
        .collect();
    let min_positive = heights.iter().flatten().filter(|h| h.is_positive()).min().cloned().unwrap_or(Q::from_integer(1.into()));
    let n = grouped.equation_group.len();
    let equations = grouped
        .equation_group
        .iter()
        .map(|&(r, row)| {
            grouped.supports[r]
                .points
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    let e = (&heights[r][j] / &min_positive).to_f64().unwrap_or(f64::INFINITY);
                    point_term(p, coefficients[r][row][j], e)
                })
                .collect()
        })
        .collect();
    CompiledSystem::new(n, equations)
}

/// A random system `G` on given supports together with its torus solutions,
/// reusable as the start of straight-line homotopies to any target on the
/// same supports.
#[derive(Debug, Clone)]
pub struct PolyhedralStart {
    pub grouped: GroupedSupports,
    pub coefficients: Vec<Vec<Vec<Complex64>>>,
    pub system: CompiledSystem,
    pub solutions: Vec<Vec<Complex64>>,
    pub mixed_volume: u64,
    /// Paths of the cell homotopies.
    pub cell_paths: SolutionSet,
}

impl PolyhedralStart {
    /// Solves a random complex system with the given per-equation supports.
    pub fn new<R: Rng>(eq_supports: &[Vec<Vec<u32>>], rng: &mut R, cfg: &TrackerConfig) -> Result<Self> {
        let n = eq_supports.len();
        if eq_supports.iter().flatten().any(|p| p.len() != n) {
            return Err(Error::NotSquare { equations: n, variables: eq_supports[0].first().map_or(0, |p| p.len()) });
        }
        let grouped = group_supports(eq_supports)?;
        let coefficients: Vec<Vec<Vec<Complex64>>> = grouped
            .supports
            .iter()
            .map(|s| (0..s.multiplicity).map(|_| s.points.iter().map(|_| complex_gaussian(rng)).collect()).collect())
            .collect();
        let (lifting, cells) = mixed_cells_random(&grouped.supports, rng)?;
        let mixed_volume = cells.iter().map(|c| c.volume).sum();
        let starts = start_solutions(&grouped.supports, &coefficients, &cells)?;
        let jobs: Vec<(usize, &Vec<Complex64>)> =
            starts.iter().enumerate().flat_map(|(i, (_, sols))| sols.iter().map(move |x| (i, x))).collect();
        let homotopies: Vec<ParameterHomotopy> = starts
            .iter()
            .map(|(cell, _)| {
                ParameterHomotopy::new(cell_homotopy(&grouped, &coefficients, &lifting, cell), PathShape::Linear)
            })
            .collect();
        let results: Vec<PathResult> = jobs.par_iter().map(|&(i, x)| track(&homotopies[i], x, cfg)).collect();
        let cell_paths = SolutionSet::from_results(&results, cfg);
        let system = CompiledSystem::new(
            n,
            grouped
                .equation_group
                .iter()
                .map(|&(r, row)| {
                    grouped.supports[r]
                        .points
                        .iter()
                        .zip(&coefficients[r][row])
                        .map(|(p, &c)| point_term(p, c, 0.0))
                        .collect()
                })
                .collect(),
        );
        let solutions = cell_paths.points();
        Ok(PolyhedralStart { grouped, coefficients, system, solutions, mixed_volume, cell_paths })
    }

    /// Tracks the start solutions to `target` along
    /// `gamma (1 - s) G + s F`.
    pub fn track_to(&self, target: &CompiledSystem, gamma: Complex64, cfg: &TrackerConfig) -> Vec<PathResult> {
        let h = StraightLineHomotopy::new(self.system.clone(), target.clone(), gamma);
        track_paths(&h, &self.solutions, cfg)
    }
}

/// Per-equation supports of a compiled system (terms with zero coefficient
/// skipped).
pub fn supports_of(system: &CompiledSystem) -> Vec<Vec<Vec<u32>>> {
    let n = system.nvars();
    system
        .equations()
        .iter()
        .map(|eq| {
            eq.iter()
                .filter(|t| !t.coef.is_zero())
                .map(|t| {
                    let mut e = vec![0u32; n];
                    for &(v, k) in &t.vars {
                        e[v] += k;
                    }
                    e
                })
                .collect()
        })
        .collect()
}

/// All isolated torus solutions of a square system (no `tau` dependence),
/// via a random system on the same supports. Returns the solution set and
/// the number of paths tracked to the target.
pub fn polyhedral_solve<R: Rng>(target: &CompiledSystem, rng: &mut R, cfg: &TrackerConfig) -> Result<(SolutionSet, usize)> {
    let start = PolyhedralStart::new(&supports_of(target), rng, cfg)?;
    let gamma = unit_complex(rng);
    let results = start.track_to(target, gamma, cfg);
    Ok((SolutionSet::from_results(&results, cfg), results.len()))
}
