use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlin::{smith_normal_form, IntMatrix};

/// All torus solutions of `x^{A_i} = c_i`, `i = 1..n`, for a nonsingular
/// integer matrix `A` (rows are exponent vectors, entries may be negative).
///
/// With `U A V = D` in Smith form, `log x = V w` where
/// `d_k w_k = (U log c)_k + 2 pi i j_k` for `j_k = 0..d_k-1`, giving
/// `|det A|` solutions. Each is polished by a few Newton steps on
/// `x^{A_i} / c_i - 1` and the list is sorted lexicographically.
pub fn solve_binomial(exponents: &[Vec<i64>], constants: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let n = exponents.len();
    if constants.len() != n || exponents.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: constants.len() });
    }
    if constants.iter().any(|c| c.is_zero()) {
        return Err(Error::ZeroConstant);
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let a = IntMatrix::from_rows(exponents);
    let snf = smith_normal_form(&a);
    let diag: Vec<u64> = snf.diagonal().iter().map(|d| d.to_u64().unwrap_or(0)).collect();
    if diag.iter().any(|&d| d == 0) {
        return Err(Error::SingularExponentMatrix);
    }
    let to_f = |m: &IntMatrix| -> Vec<Vec<f64>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    };
    let u = to_f(&snf.u);
    let v = to_f(&snf.v);
    let logc: Vec<Complex64> = constants.iter().map(|c| c.ln()).collect();
    let ulogc: Vec<Complex64> =
        (0..n).map(|k| (0..n).fold(Complex64::zero(), |acc, i| acc + logc[i] * u[k][i])).collect();

    let total: u64 = diag.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; n];
    for _ in 0..total {
        let w: Vec<Complex64> = (0..n)
            .map(|k| (ulogc[k] + Complex64::new(0.0, TAU * digits[k] as f64)) / diag[k] as f64)
            .collect();
        let x: Vec<Complex64> = (0..n)
            .map(|j| (0..n).fold(Complex64::zero(), |acc, k| acc + w[k] * v[j][k]).exp())
            .collect();
        out.push(polish(exponents, constants, x));
        for k in (0..n).rev() {
            digits[k] += 1;
            if digits[k] < diag[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    out.sort_by(|a, b| crate::tracker::lex_cmp(a, b));
    Ok(out)
}

fn monomial(x: &[Complex64], a: &[i64]) -> Complex64 {
    x.iter().zip(a).fold(Complex64::new(1.0, 0.0), |acc, (xi, &e)| acc * xi.powi(e as i32))
}

fn polish(a: &[Vec<i64>], c: &[Complex64], mut x: Vec<Complex64>) -> Vec<Complex64> {
    let n = x.len();
    for _ in 0..3 {
        let vals: Vec<Complex64> = (0..n).map(|i| monomial(&x, &a[i]) / c[i]).collect();
        let f = DVector::from_iterator(n, vals.iter().map(|v| v - 1.0));
        let j = DMatrix::from_fn(n, n, |i, k| vals[i] * a[i][k] as f64 / x[k]);
        match j.lu().solve(&f) {
            Some(dx) => {
                for k in 0..n {
                    x[k] -= dx[k];
                }
            }
            None => break,
        }
    }
    x
}
