use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::rational::{dot, inverse, nullspace, rank, Q};
use crate::intlin::IntMatrix;

/// Lattice points of one Newton polytope, shared by `multiplicity`
/// equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub points: Vec<Vec<i64>>,
    pub multiplicity: usize,
}

impl SupportSet {
    pub fn new(points: Vec<Vec<i64>>, multiplicity: usize) -> Self {
        SupportSet { points, multiplicity }
    }
}

/// Height of every support point.
#[derive(Debug, Clone, PartialEq)]
pub struct Lifting {
    pub values: Vec<Vec<Q>>,
}

/// Range of the random integer lifting values.
const LIFT_RANGE: i64 = 1 << 12;

pub fn random_lifting<R: Rng>(supports: &[SupportSet], rng: &mut R) -> Lifting {
    Lifting {
        values: supports
            .iter()
            .map(|s| s.points.iter().map(|_| Q::from_integer(rng.random_range(0..LIFT_RANGE).into())).collect())
            .collect(),
    }
}

/// A fine mixed cell: `k_r + 1` points from support `r`, with inner normal
/// `(gamma, 1)`. The cell points of support `r` minimize
/// `<a, gamma> + lift(a)` over that support, attaining `beta[r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedCell {
    pub points: Vec<Vec<usize>>,
    pub gamma: Vec<Q>,
    pub beta: Vec<Q>,
    pub volume: u64,
}

impl MixedCell {
    /// `<a, gamma> + lift(a) - beta_r >= 0`, zero exactly on the cell.
    pub fn height(&self, r: usize, point: &[i64], lift: &Q) -> Q {
        let g: Q = point.iter().zip(&self.gamma).fold(Q::zero(), |acc, (&a, g)| acc + g * Q::from_integer(a.into()));
        g + lift - &self.beta[r]
    }
}

fn validate(supports: &[SupportSet]) -> Result<usize> {
    let n = supports
        .iter()
        .flat_map(|s| s.points.first())
        .map(|p| p.len())
        .next()
        .ok_or_else(|| Error::Invalid("no support points".into()))?;
    let total: usize = supports.iter().map(|s| s.multiplicity).sum();
    if total != n {
        return Err(Error::Invalid(format!("multiplicities sum to {total}, dimension is {n}")));
    }
    for s in supports {
        if s.points.is_empty() || s.multiplicity == 0 {
            return Err(Error::Invalid("empty support or zero multiplicity".into()));
        }
        if s.points.iter().any(|p| p.len() != n) {
            return Err(Error::Invalid("support points of different dimensions".into()));
        }
    }
    Ok(n)
}

struct Dual {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    owner: Vec<(usize, usize)>,
    dim: usize,
}

impl Dual {
    fn slack(&self, j: usize, z: &[Q]) -> Q {
        dot(&self.rows[j], z) - &self.rhs[j]
    }

    fn tight(&self, z: &[Q]) -> Vec<usize> {
        (0..self.rows.len()).filter(|&j| self.slack(j, z).is_zero()).collect()
    }

    fn submatrix(&self, set: &[usize]) -> Vec<Vec<Q>> {
        set.iter().map(|&j| self.rows[j].clone()).collect()
    }

    /// Walks from a feasible point to a vertex of the dual polyhedron.
    fn crash(&self, mut z: Vec<Q>) -> Result<(Vec<usize>, Vec<Q>)> {
        loop {
            let t = self.tight(&z);
            let sub = self.submatrix(&t);
            if rank(&sub) == self.dim {
                return Ok((t, z));
            }
            let d = nullspace(&sub, self.dim).swap_remove(0);
            let mut moved = false;
            for dir in [d.clone(), d.iter().map(|v| -v.clone()).collect::<Vec<Q>>()] {
                let step = (0..self.rows.len())
                    .filter_map(|j| {
                        let rd = dot(&self.rows[j], &dir);
                        rd.is_negative().then(|| self.slack(j, &z) / -rd)
                    })
                    .min();
                if let Some(step) = step {
                    for (zi, di) in z.iter_mut().zip(&dir) {
                        *zi += &step * di;
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                return Err(Error::Invalid("dual polyhedron has a line".into()));
            }
        }
    }
}

/// Fine mixed cells of the lifted supports.
///
/// Enumerates the vertices of the dual polyhedron
/// `{(gamma, beta) : <a, gamma> + lift(a) >= beta_r for a in S_r}` by
/// breadth-first pivoting; vertices whose tight set has type
/// `(k_1 + 1, ..., k_m + 1)` are the mixed cells. Fails with
/// `DegenerateLifting` if the lifting is not generic.
pub fn mixed_cells(supports: &[SupportSet], lifting: &Lifting) -> Result<Vec<MixedCell>> {
    let n = validate(supports)?;
    let m = supports.len();
    let dim = n + m;
    let mut dual = Dual { rows: Vec::new(), rhs: Vec::new(), owner: Vec::new(), dim };
    for (r, s) in supports.iter().enumerate() {
        for (i, p) in s.points.iter().enumerate() {
            let mut row: Vec<Q> = p.iter().map(|&a| Q::from_integer(a.into())).collect();
            row.extend((0..m).map(|q| if q == r { -Q::from_integer(1.into()) } else { Q::zero() }));
            dual.rows.push(row);
            dual.rhs.push(-lifting.values[r][i].clone());
            dual.owner.push((r, i));
        }
    }
    if rank(&dual.rows) < dim {
        return Ok(Vec::new());
    }
    let mut z0 = vec![Q::zero(); dim];
    for r in 0..m {
        z0[n + r] = lifting.values[r].iter().min().expect("nonempty support").clone();
    }
    let (t0, z0) = dual.crash(z0)?;
    if t0.len() != dim {
        return Err(Error::DegenerateLifting { attempts: 1 });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<(Vec<usize>, Vec<Q>)> = VecDeque::new();
    seen.insert(t0.clone());
    queue.push_back((t0, z0));
    let mut cells = Vec::new();
    while let Some((t, z)) = queue.pop_front() {
        if let Some(cell) = as_mixed_cell(supports, &dual, &t, &z, n)? {
            cells.push(cell);
        }
        let inv = inverse(&dual.submatrix(&t)).ok_or(Error::DegenerateLifting { attempts: 1 })?;
        for p in 0..dim {
            let d: Vec<Q> = inv.iter().map(|row| row[p].clone()).collect();
            let mut best: Option<(Q, usize)> = None;
            let mut tie = false;
            for j in 0..dual.rows.len() {
                if t.contains(&j) {
                    continue;
                }
                let rd = dot(&dual.rows[j], &d);
                if !rd.is_negative() {
                    continue;
                }
                let step = dual.slack(j, &z) / -rd;
                if step.is_zero() {
                    return Err(Error::DegenerateLifting { attempts: 1 });
                }
                match &best {
                    Some((s, _)) if step > *s => {}
                    Some((s, _)) if step == *s => tie = true,
                    _ => {
                        best = Some((step, j));
                        tie = false;
                    }
                }
            }
            let Some((step, j)) = best else { continue };
            if tie {
                return Err(Error::DegenerateLifting { attempts: 1 });
            }
            let mut next: Vec<usize> = t.iter().copied().filter(|&x| x != t[p]).collect();
            next.push(j);
            next.sort_unstable();
            if seen.insert(next.clone()) {
                let nz: Vec<Q> = z.iter().zip(&d).map(|(a, b)| a + &step * b).collect();
                queue.push_back((next, nz));
            }
        }
    }
    cells.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(cells)
}

fn as_mixed_cell(
    supports: &[SupportSet],
    dual: &Dual,
    t: &[usize],
    z: &[Q],
    n: usize,
) -> Result<Option<MixedCell>> {
    let mut points: Vec<Vec<usize>> = vec![Vec::new(); supports.len()];
    for &j in t {
        let (r, i) = dual.owner[j];
        points[r].push(i);
    }
    if points.iter().zip(supports).any(|(p, s)| p.len() != s.multiplicity + 1) {
        return Ok(None);
    }
    let mut edges: Vec<Vec<i64>> = Vec::with_capacity(n);
    for (r, pts) in points.iter_mut().enumerate() {
        pts.sort_unstable();
        let base = &supports[r].points[pts[0]];
        for &i in &pts[1..] {
            edges.push(supports[r].points[i].iter().zip(base).map(|(a, b)| a - b).collect());
        }
    }
    let det: BigInt = IntMatrix::from_rows(&edges).determinant();
    let volume = det.abs().to_u64().ok_or_else(|| Error::Invalid("cell volume overflow".into()))?;
    Ok(Some(MixedCell { points, gamma: z[..n].to_vec(), beta: z[n..].to_vec(), volume }))
}

/// Maximum number of liftings tried before giving up.
pub const MAX_LIFTING_ATTEMPTS: usize = 10;

/// Mixed cells for a random generic lifting, redrawing on degeneracy.
pub fn mixed_cells_random<R: Rng>(supports: &[SupportSet], rng: &mut R) -> Result<(Lifting, Vec<MixedCell>)> {
    for _ in 0..MAX_LIFTING_ATTEMPTS {
        let lifting = random_lifting(supports, rng);
        match mixed_cells(supports, &lifting) {
            Ok(cells) => return Ok((lifting, cells)),
            Err(Error::DegenerateLifting { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateLifting { attempts: MAX_LIFTING_ATTEMPTS })
}

/// Mixed volume `MV(P_1^{k_1}, ..., P_m^{k_m})`, normalized so that it counts
/// torus solutions of a generic system with these supports.
pub fn mixed_volume(supports: &[SupportSet], seed: u64) -> Result<u64> {
    let mut rng = crate::rng::seeded_rng(seed);
    let (_, cells) = mixed_cells_random(supports, &mut rng)?;
    Ok(cells.iter().map(|c| c.volume).sum())
}
