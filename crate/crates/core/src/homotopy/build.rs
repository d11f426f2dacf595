use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::system::ParameterizedSystem;
use crate::error::{Error, Result};
use crate::intlin::rational::Q;
use crate::poly::{Ctx, Monomial, Polynomial};
use crate::polyhedral::{GroupedSupports, Lifting, MixedCell};
use crate::sagbi::{homogenize, initial_term, sagbi_check, Weight};
use crate::scalar::Scalar;
use crate::tracker::CompiledSystem;

/// How a homotopy system was built.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    TwoStep,
    /// One-step homotopy for a mixed cell with inner normal `gamma`; `k` is
    /// the factor on the weight exponents and `denominator` the common
    /// denominator cleared from all `t`-exponents.
    OneStep { gamma: Vec<Q>, k: i64, denominator: BigInt },
}

/// Equations in the unknowns and one trailing parameter `t`.
#[derive(Debug, Clone)]
pub struct SagbiHomotopySystem<C> {
    pub equations: Vec<Polynomial<C>>,
    pub weight: Weight,
    pub provenance: Provenance,
}

impl<C: Scalar> SagbiHomotopySystem<C> {
    pub fn t_index(&self) -> usize {
        self.equations[0].nvars() - 1
    }

    /// The system at `t = value`, over the original unknowns.
    pub fn at(&self, value: &C) -> Result<Vec<Polynomial<C>>> {
        let t = self.t_index();
        self.equations.iter().map(|p| p.eliminate(t, value)).collect()
    }

    /// Compiled for tracking with the `t`-exponents as `tau` powers.
    pub fn compile(&self) -> CompiledSystem {
        let eqs: Vec<Polynomial<Complex64>> = self.equations.iter().map(|p| p.to_complex()).collect();
        CompiledSystem::from_polys(&eqs, Some(self.t_index()))
    }
}

/// The variable context extended by a fresh parameter named `t` (or `t_`,
/// `t__`, ... if taken).
pub fn t_context(ctx: &Ctx) -> Result<Ctx> {
    let mut name = String::from("t");
    while ctx.index_of(&name).is_some() {
        name.push('_');
    }
    ctx.with_parameter(&name)
}

/// The SAGBI homotopy `f_{i,t} = sum_j c_ij (b_{r,j})_t` along `w`.
///
/// Unless `waive` is set the weight must pass the SAGBI check.
pub fn build_sagbi_homotopy<C: Scalar>(
    sys: &ParameterizedSystem<C>,
    w: &[i64],
    waive: bool,
) -> Result<SagbiHomotopySystem<C>> {
    let family = sys.family();
    for block in family.blocks() {
        for g in block {
            initial_term(g, w)?;
        }
    }
    if !waive && !sagbi_check(family, w)?.verified {
        return Err(Error::UnverifiedWeight(format!("{w:?} does not give a SAGBI basis")));
    }
    let t_ctx = t_context(family.ctx())?;
    let homogenized: Vec<Vec<Polynomial<C>>> = family
        .blocks()
        .iter()
        .map(|b| b.iter().map(|g| homogenize(&g.map(C::from_rational), w, &t_ctx)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let equations = sys.combine(|r, j| homogenized[r][j].clone());
    Ok(SagbiHomotopySystem { equations, weight: w.to_vec(), provenance: Provenance::TwoStep })
}

/// The leading-term system `sum_j c_ij in_w(b_{r,j})`, the `t = 0` end of
/// the SAGBI homotopy.
pub fn leader_system<C: Scalar>(sys: &ParameterizedSystem<C>, w: &[i64]) -> Result<Vec<Polynomial<C>>> {
    let family = sys.family();
    let ctx = family.ctx();
    let leaders: Vec<Vec<Polynomial<C>>> = family
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|g| {
                    let (m, c) = initial_term(g, w)?;
                    Ok(Polynomial::monomial(ctx, m, C::from_rational(&c)))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    Ok(sys.combine(|r, j| leaders[r][j].clone()))
}

fn to_q(v: i64) -> Q {
    Q::from_integer(v.into())
}

fn dot_q(a: &[i64], g: &[Q]) -> Q {
    a.iter().zip(g).fold(Q::zero(), |acc, (&x, y)| acc + y * to_q(x))
}

type RawTerms<C> = Vec<Vec<(Q, Vec<u32>, C)>>;

/// `t`-exponents of one cell before the `k` shift, with the indices and
/// weight drops of the non-leading terms and the lower bounds they put on `k`.
#[allow(clippy::type_complexity)]
fn cell_terms<C: Scalar>(
    sys: &ParameterizedSystem<C>,
    w: &[i64],
    grouped: &GroupedSupports,
    lifting: &Lifting,
    cell: &MixedCell,
) -> Result<(RawTerms<C>, Vec<(usize, usize, i64)>, Vec<Q>)> {
    let family = sys.family();
    let blocks = sys.equation_blocks();
    if grouped.equation_group.len() != blocks.len() {
        return Err(Error::DimensionMismatch { expected: blocks.len(), found: grouped.equation_group.len() });
    }
    let mut raw = Vec::with_capacity(blocks.len());
    let mut bounds = Vec::new();
    let mut nonleading = Vec::new();
    for (eq, &(r, i)) in blocks.iter().enumerate() {
        let (g, _) = grouped.equation_group[eq];
        let support = &grouped.supports[g];
        let mut terms = Vec::new();
        for (j, c) in sys.row(r, i).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gen = family.generator(r, j);
            let (lead, _) = initial_term(gen, w)?;
            let a: Vec<i64> = lead.0.iter().map(|&e| e as i64).collect();
            let idx = support
                .points
                .iter()
                .position(|p| *p == a)
                .ok_or_else(|| Error::Invalid("leading monomial missing from the leader support".into()))?;
            let e_a = cell.height(g, &a, &lifting.values[g][idx]);
            let ga = dot_q(&a, &cell.gamma);
            let wa = lead.weight(w);
            for (m, coef) in gen.terms() {
                let b: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
                let base = &e_a + dot_q(&b, &cell.gamma) - &ga;
                let wd = wa - m.weight(w);
                if wd != 0 {
                    bounds.push(-&base / to_q(wd));
                    nonleading.push((eq, terms.len(), wd));
                }
                terms.push((base, m.0.clone(), C::from_rational(coef) * c.clone()));
            }
        }
        raw.push(terms);
    }
    Ok((raw, nonleading, bounds))
}

/// The one-step homotopies for the mixed cells of the leader system.
///
/// `grouped` and `lifting` describe the supports of the leader system (one
/// support per equation group). In the coordinates `x = t^gamma y` of a
/// cell, term `x^b` of generator `b_{r,j}` with leading exponent `a` carries
/// the `t`-exponent `e_a + <gamma, b - a> + k w.(a - b)` where `e_a` is the
/// cell height of `a`. One `k`, the smallest positive integer making every
/// non-leading exponent positive in every cell, and one denominator serve
/// all cells, so each system is the same homotopy seen from another cell.
/// At `t = 0` only the cell's binomial system survives, at `t = 1` the
/// target.
pub fn build_one_step_homotopies<C: Scalar>(
    sys: &ParameterizedSystem<C>,
    w: &[i64],
    grouped: &GroupedSupports,
    lifting: &Lifting,
    cells: &[MixedCell],
) -> Result<Vec<SagbiHomotopySystem<C>>> {
    let per_cell = cells
        .iter()
        .map(|cell| cell_terms(sys, w, grouped, lifting, cell))
        .collect::<Result<Vec<_>>>()?;
    let k = per_cell
        .iter()
        .flat_map(|(_, _, bounds)| bounds)
        .map(|b| b.floor().to_integer().to_i64().unwrap_or(i64::MAX - 1) + 1)
        .max()
        .unwrap_or(1)
        .max(1);
    let mut shifted = Vec::with_capacity(per_cell.len());
    for (mut raw, nonleading, _) in per_cell {
        for (eq, idx, wd) in nonleading {
            raw[eq][idx].0 += to_q(k * wd);
        }
        shifted.push(raw);
    }
    let denominator =
        shifted.iter().flatten().flatten().fold(BigInt::one(), |acc, (e, _, _)| acc.lcm(e.denom()));
    let t_ctx = t_context(sys.family().ctx())?;
    let mut out = Vec::with_capacity(cells.len());
    for (raw, cell) in shifted.into_iter().zip(cells) {
        let mut equations = Vec::with_capacity(raw.len());
        for terms in raw {
            let mut poly_terms = Vec::with_capacity(terms.len());
            for (e, mut exps, c) in terms {
                let scaled = (e * Q::from_integer(denominator.clone())).to_integer();
                if scaled.is_negative() {
                    return Err(Error::Invalid("negative t-exponent in one-step homotopy".into()));
                }
                exps.push(scaled.to_u32().ok_or_else(|| Error::Invalid("t-exponent overflow".into()))?);
                poly_terms.push((Monomial(exps), c));
            }
            equations.push(Polynomial::from_terms(&t_ctx, poly_terms));
        }
        out.push(SagbiHomotopySystem {
            equations,
            weight: w.to_vec(),
            provenance: Provenance::OneStep { gamma: cell.gamma.clone(), k, denominator: denominator.clone() },
        });
    }
    Ok(out)
}
