use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::family::{initial_term, SagbiFamily};
use super::toric::{toric_relations, BinomialRelation};
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::{QPoly, Rational};

/// Outcome of a SAGBI check for one weight.
#[derive(Debug, Clone)]
pub struct SagbiCertificate {
    pub weight: Vec<i64>,
    /// Leading exponent and coefficient of every generator, block by block.
    pub leaders: Vec<Vec<(Monomial, Rational)>>,
    pub relations: Vec<BinomialRelation>,
    pub verified: bool,
    /// First relation whose lift did not subduce to zero, with the remainder.
    pub failure: Option<(BinomialRelation, QPoly)>,
    /// Integer weight certifying the strict leading-term inequalities, when
    /// the weight came out of the LP search.
    pub lp_certificate: Option<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Subduction {
    Zero,
    Remainder(QPoly),
}

/// Term order refining the weight: compare `w . a`, then graded lex.
fn weighted_cmp(a: &Monomial, b: &Monomial, w: &[i64]) -> Ordering {
    a.weight(w).cmp(&b.weight(w)).then_with(|| a.cmp(b))
}

fn leading(p: &QPoly, w: &[i64]) -> Option<(Monomial, Rational)> {
    p.terms()
        .iter()
        .max_by(|x, y| weighted_cmp(&x.0, &y.0, w))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// Finds exponents `u` with `sum_j u[r][j] = degrees[r]` and
/// `sum u[r][j] * leaders[r][j] = target`.
pub fn find_in_monomial_algebra(
    target: &[u32],
    degrees: &[u32],
    leaders: &[Vec<Vec<u32>>],
) -> Option<Vec<Vec<u32>>> {
    let mut choice: Vec<Vec<u32>> = leaders.iter().map(|b| vec![0; b.len()]).collect();
    let mut remaining = target.to_vec();
    if search(0, 0, degrees.first().copied().unwrap_or(0), degrees, leaders, &mut remaining, &mut choice)
    {
        Some(choice)
    } else {
        None
    }
}

fn search(
    r: usize,
    j: usize,
    left: u32,
    degrees: &[u32],
    leaders: &[Vec<Vec<u32>>],
    remaining: &mut Vec<u32>,
    choice: &mut Vec<Vec<u32>>,
) -> bool {
    if r == leaders.len() {
        return remaining.iter().all(|&x| x == 0);
    }
    if j == leaders[r].len() {
        if left != 0 {
            return false;
        }
        let next = degrees.get(r + 1).copied().unwrap_or(0);
        return search(r + 1, 0, next, degrees, leaders, remaining, choice);
    }
    let a = &leaders[r][j];
    let max_fit = a
        .iter()
        .zip(remaining.iter())
        .filter(|(e, _)| **e > 0)
        .map(|(e, rem)| rem / e)
        .min()
        .unwrap_or(u32::MAX)
        .min(left);
    let last = j + 1 == leaders[r].len();
    let lo = if last { left } else { 0 };
    if lo > max_fit {
        return false;
    }
    for k in (lo..=max_fit).rev() {
        for (x, e) in remaining.iter_mut().zip(a) {
            *x -= k * e;
        }
        choice[r][j] = k;
        if search(r, j + 1, left - k, degrees, leaders, remaining, choice) {
            return true;
        }
        for (x, e) in remaining.iter_mut().zip(a) {
            *x += k * e;
        }
        choice[r][j] = 0;
    }
    false
}

/// Product of generator powers `prod_r prod_j b_rj^u[r][j]`.
fn generator_power(family: &SagbiFamily, u: &[Vec<u32>]) -> QPoly {
    let mut acc = QPoly::one(family.ctx());
    for (r, block) in u.iter().enumerate() {
        for (j, &e) in block.iter().enumerate() {
            if e > 0 {
                acc = &acc * &family.generator(r, j).pow(e);
            }
        }
    }
    acc
}

/// Subduction of `p` (of block degree `degrees`) against the generators.
///
/// Repeatedly cancels the leading term, in the order refining `w`, by a
/// product of generators of the same block degree. Stops at zero or at the
/// first leading term outside the monomial algebra of the leaders.
pub fn subduct(
    p: &QPoly,
    degrees: &[u32],
    family: &SagbiFamily,
    leaders: &[Vec<(Monomial, Rational)>],
    w: &[i64],
) -> Subduction {
    let exps: Vec<Vec<Vec<u32>>> =
        leaders.iter().map(|b| b.iter().map(|(m, _)| m.0.clone()).collect()).collect();
    let mut p = p.clone();
    loop {
        let Some((m, c)) = leading(&p, w) else { return Subduction::Zero };
        let Some(u) = find_in_monomial_algebra(&m.0, degrees, &exps) else {
            return Subduction::Remainder(p);
        };
        let mut lc = Rational::one();
        for (r, block) in u.iter().enumerate() {
            for (j, &e) in block.iter().enumerate() {
                for _ in 0..e {
                    lc *= &leaders[r][j].1;
                }
            }
        }
        let q = generator_power(family, &u).scale(&(c / lc));
        p = &p - &q;
    }
}

fn unflatten(v: &[u32], family: &SagbiFamily) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut k = 0;
    for block in family.blocks() {
        out.push(v[k..k + block.len()].to_vec());
        k += block.len();
    }
    out
}

/// Checks whether the generators form a SAGBI basis for the weight `w`.
///
/// Every toric relation among the leading monomials is lifted to the
/// generators and subduced; the basis is verified iff all lifts reduce to
/// zero. Fails with a tie error if some generator has no unique initial term.
pub fn sagbi_check(family: &SagbiFamily, w: &[i64]) -> Result<SagbiCertificate> {
    if w.len() != family.nvars() {
        return Err(Error::DimensionMismatch { expected: family.nvars(), found: w.len() });
    }
    let leaders: Vec<Vec<(Monomial, Rational)>> = family
        .blocks()
        .iter()
        .map(|b| b.iter().map(|g| initial_term(g, w)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let exps: Vec<Vec<Vec<u32>>> =
        leaders.iter().map(|b| b.iter().map(|(m, _)| m.0.clone()).collect()).collect();
    let relations = toric_relations(&exps);
    let mut failure = None;
    for rel in &relations {
        let u = unflatten(&rel.u, family);
        let v = unflatten(&rel.v, family);
        let degrees: Vec<u32> = u.iter().map(|b| b.iter().sum()).collect();
        let coeff = |e: &[Vec<u32>]| {
            let mut c = Rational::one();
            for (r, block) in e.iter().enumerate() {
                for (j, &k) in block.iter().enumerate() {
                    for _ in 0..k {
                        c *= &leaders[r][j].1;
                    }
                }
            }
            c
        };
        let lift = &generator_power(family, &u) - &generator_power(family, &v).scale(&(coeff(&u) / coeff(&v)));
        if let Subduction::Remainder(rem) = subduct(&lift, &degrees, family, &leaders, w) {
            failure = Some((rel.clone(), rem));
            break;
        }
    }
    Ok(SagbiCertificate {
        weight: w.to_vec(),
        leaders,
        relations,
        verified: failure.is_none(),
        failure,
        lp_certificate: None,
    })
}
