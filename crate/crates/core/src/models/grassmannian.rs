use crate::error::{Error, Result};
use crate::poly::{Ctx, VariableContext};
use crate::sagbi::{sagbi_check, SagbiFamily, Weight};
use crate::{QPoly, Rational};

/// Variable name of entry `(row, col)` of the `k x (m-k)` matrix, 1-indexed.
pub fn grassmannian_variable(row: usize, col: usize) -> String {
    format!("x{}_{}", row + 1, col + 1)
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn column_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn determinant(rows: &[Vec<QPoly>], ctx: &Ctx) -> QPoly {
    let n = rows.len();
    if n == 0 {
        return QPoly::one(ctx);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = QPoly::zero(ctx);
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &rows[0][c] * &determinant(&minor, ctx);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Plücker family of the Grassmannian `Gr(k, m)` in the affine chart
/// `[I_k | X]`.
///
/// The block consists of the maximal minors of `[I_k | X]`, columns taken in
/// lexicographic order, over the `k (m - k)` entries of `X` listed row by
/// row. The returned weight gives row `r` of `X` the weights
/// `r * (m-k, m-k-1, ..., 1)`, negated if necessary so that the minors form
/// a SAGBI basis under the max convention.
pub fn grassmannian_family(k: usize, m: usize) -> Result<(SagbiFamily, Weight)> {
    grassmannian_family_capped(k, m, DEFAULT_MINOR_CAP)
}

/// Largest number of minors [`grassmannian_family`] builds.
pub const DEFAULT_MINOR_CAP: usize = 256;

/// [`grassmannian_family`] refusing more than `cap` minors.
pub fn grassmannian_family_capped(k: usize, m: usize, cap: usize) -> Result<(SagbiFamily, Weight)> {
    if k == 0 || k >= m {
        return Err(Error::Invalid(format!("need 0 < k < m, got k={k}, m={m}")));
    }
    let count = column_subsets(m, k).len();
    if count > cap {
        return Err(Error::Invalid(format!("Gr({k},{m}) has {count} minors, above the cap of {cap}")));
    }
    let d = m - k;
    let names: Vec<String> =
        (0..k).flat_map(|r| (0..d).map(move |c| grassmannian_variable(r, c))).collect();
    let ctx = VariableContext::new(&names)?;
    let entry = |r: usize, c: usize| -> QPoly {
        if c < k {
            if r == c {
                QPoly::one(&ctx)
            } else {
                QPoly::zero(&ctx)
            }
        } else {
            QPoly::variable(&ctx, r * d + (c - k))
        }
    };
    let minors: Vec<QPoly> = column_subsets(m, k)
        .into_iter()
        .map(|cols| {
            let rows: Vec<Vec<QPoly>> =
                (0..k).map(|r| cols.iter().map(|&c| entry(r, c)).collect()).collect();
            determinant(&rows, &ctx)
        })
        .collect();
    let family = SagbiFamily::new(&ctx, vec![minors])?;
    let base: Weight =
        (0..k).flat_map(|r| (0..d).map(move |c| (r * (d - c)) as i64)).collect();
    let negated: Weight = base.iter().map(|w| -w).collect();
    for w in [negated, base] {
        if sagbi_check(&family, &w)?.verified {
            return Ok((family, w));
        }
    }
    Err(Error::UnverifiedWeight("no sign of the diagonal weight verifies".into()))
}

/// Number of solutions of a generic Schubert problem in `Gr(k, m)`: the
/// degree of the Grassmannian, `(k(m-k))! * prod_i i! / (m-k+i)!`.
pub fn grassmannian_degree(k: usize, m: usize) -> u128 {
    let d = m - k;
    let mut num = Rational::from_integer(1.into());
    for i in 1..=(k * d) as i64 {
        num *= Rational::from_integer(i.into());
    }
    for i in 0..k {
        for j in 1..=i as i64 {
            num *= Rational::from_integer(j.into());
        }
        for j in 1..=(d + i) as i64 {
            num /= Rational::from_integer(j.into());
        }
    }
    num.to_integer().try_into().unwrap_or(0)
}
