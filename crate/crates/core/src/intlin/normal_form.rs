use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with non-negative entries, each dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d[0][0], d[1][1], ...`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Position of the nonzero entry of smallest absolute value in the trailing
/// block starting at `(t, t)`, ties broken by row-major position.
fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = d.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..m {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                remainder |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                remainder |= !d.get(t, j).is_zero();
            }
            if remainder {
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form `u * a = h` with `u` unimodular. Pivots are
/// positive and entries above each pivot lie in `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h.get(i, j).is_zero())
                .min_by(|&x, &y| h.get(x, j).abs().cmp(&h.get(y, j).abs()).then(x.cmp(&y)));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let pivot = h.get(r, j).clone();
            let mut done = true;
            for i in r + 1..m {
                let q = h.get(i, j) / &pivot;
                if !q.is_zero() {
                    h.add_row_multiple(i, r, &-&q);
                    u.add_row_multiple(i, r, &-&q);
                }
                done &= h.get(i, j).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(r, j).is_zero() {
            continue;
        }
        if h.get(r, j).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h.get(r, j).clone();
        for i in 0..r {
            let q = h.get(i, j).div_floor(&pivot);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
            }
        }
        pivots.push(j);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

/// Basis of the integer kernel `{x in Z^n : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let hf = hermite_normal_form(&a.transpose());
    let rank = hf.pivots.len();
    (rank..a.cols()).map(|i| hf.u.row(i).to_vec()).collect()
}

/// Index of a sublattice of `Z^n` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// Index of the lattice spanned by the columns of `a` (an `n x k` matrix) in
/// `Z^n`.
pub fn lattice_index(a: &IntMatrix) -> LatticeIndex {
    let n = a.rows();
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    if diag.iter().filter(|d| !d.is_zero()).count() < n {
        return LatticeIndex::Infinite;
    }
    LatticeIndex::Finite(diag.iter().fold(BigInt::one(), |acc, d| acc * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_known_matrix() {
        let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn hermite_is_echelon() {
        let a = IntMatrix::from_rows(&[[3, 3, 1, 4], [0, 1, 0, 0], [0, 0, 19, 16], [0, 0, 0, 3]]);
        let hf = hermite_normal_form(&a);
        assert_eq!(hf.u.mul(&a), hf.h);
        assert_eq!(hf.pivots, vec![0, 1, 2, 3]);
        for (r, &p) in hf.pivots.iter().enumerate() {
            for i in 0..r {
                assert!(!hf.h.get(i, p).is_negative() && hf.h.get(i, p) < hf.h.get(r, p));
            }
        }
    }

    #[test]
    fn kernel_of_monomial_matrix() {
        // Columns (1,2,0), (1,1,1), (1,0,2): exponents of x^2, xy, y^2 with a
        // homogenizing row.
        let a = IntMatrix::from_rows(&[[1, 1, 1], [2, 1, 0], [0, 1, 2]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| num_traits::ToPrimitive::to_i64(x).unwrap()).collect();
        assert!(v == vec![1, -2, 1] || v == vec![-1, 2, -1]);
    }

    #[test]
    fn index_of_even_lattice() {
        let a = IntMatrix::from_columns(&[[2, 0], [0, 2], [2, 2]], 2);
        assert_eq!(lattice_index(&a), LatticeIndex::Finite(BigInt::from(4)));
        let b = IntMatrix::from_columns(&[[1, 1], [2, 2]], 2);
        assert_eq!(lattice_index(&b), LatticeIndex::Infinite);
    }
}
