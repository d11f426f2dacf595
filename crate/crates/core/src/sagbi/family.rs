use crate::error::{Error, Result};
use crate::poly::{Ctx, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::{QPoly, Rational};

/// Integer weight on the ambient variables. Initial terms maximize `w . a`.
pub type Weight = Vec<i64>;

/// Blocks of generators `B_1, ..., B_m` of a horizontally parameterized
/// family. Each equation of a system is a linear combination of the
/// generators of one block.
#[derive(Debug, Clone, PartialEq)]
pub struct SagbiFamily {
    ctx: Ctx,
    blocks: Vec<Vec<QPoly>>,
}

impl SagbiFamily {
    pub fn new(ctx: &Ctx, blocks: Vec<Vec<QPoly>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Invalid("family has no blocks".into()));
        }
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for g in block {
                if g.ctx() != ctx {
                    return Err(Error::ContextMismatch);
                }
                if g.is_zero() {
                    return Err(Error::Invalid("zero generator".into()));
                }
            }
        }
        Ok(SagbiFamily { ctx: ctx.clone(), blocks })
    }

    /// Parses generator strings block by block.
    pub fn parse(ctx: &Ctx, blocks: &[Vec<&str>]) -> Result<Self> {
        let parsed = blocks
            .iter()
            .map(|b| b.iter().map(|g| crate::poly::parse(g, ctx).map_err(Error::from)).collect())
            .collect::<Result<Vec<Vec<QPoly>>>>()?;
        Self::new(ctx, parsed)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn blocks(&self) -> &[Vec<QPoly>] {
        &self.blocks
    }

    pub fn block(&self, r: usize) -> &[QPoly] {
        &self.blocks[r]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_generators(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// `(block, generator)` pairs in flattened order.
    pub fn generator_indices(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(r, b)| (0..b.len()).map(move |j| (r, j)))
            .collect()
    }

    pub fn generator(&self, r: usize, j: usize) -> &QPoly {
        &self.blocks[r][j]
    }
}

fn check_weight<C: Scalar>(f: &Polynomial<C>, w: &[i64]) -> Result<()> {
    if w.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), found: w.len() });
    }
    Ok(())
}

/// The unique term maximizing `w . a`, or a tie error.
pub fn initial_term<C: Scalar>(f: &Polynomial<C>, w: &[i64]) -> Result<(Monomial, C)> {
    check_weight(f, w)?;
    let mut best: Option<(i64, &(Monomial, C))> = None;
    let mut tied: Option<&Monomial> = None;
    for term in f.terms() {
        let v = term.0.weight(w);
        match best {
            Some((bv, _)) if v < bv => {}
            Some((bv, _)) if v == bv => tied = Some(&term.0),
            _ => {
                best = Some((v, term));
                tied = None;
            }
        }
    }
    let (_, (m, c)) = best.ok_or_else(|| Error::Invalid("initial term of zero".into()))?;
    if let Some(other) = tied {
        return Err(Error::Tie { first: m.0.clone(), second: other.0.clone() });
    }
    Ok((m.clone(), c.clone()))
}

/// Sum of the terms of maximal weight.
pub fn initial_form<C: Scalar>(f: &Polynomial<C>, w: &[i64]) -> Result<Polynomial<C>> {
    check_weight(f, w)?;
    let top = f.terms().iter().map(|(m, _)| m.weight(w)).max();
    Ok(Polynomial::from_terms(
        f.ctx(),
        f.terms().iter().filter(|(m, _)| Some(m.weight(w)) == top).cloned(),
    ))
}

/// Homogenization along `w`: each term `c x^b` becomes
/// `c t^(w.a - w.b) x^b`, where `a` is the exponent of the initial term.
/// `t_ctx` must extend the context of `f` by one parameter variable.
pub fn homogenize<C: Scalar>(f: &Polynomial<C>, w: &[i64], t_ctx: &Ctx) -> Result<Polynomial<C>> {
    check_weight(f, w)?;
    let n = f.nvars();
    if t_ctx.len() != n + 1 || !t_ctx.is_parameter(n) {
        return Err(Error::InvalidContext("expected one trailing parameter variable".into()));
    }
    let top = f.terms().iter().map(|(m, _)| m.weight(w)).max().unwrap_or(0);
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = m.0.clone();
        e.push((top - m.weight(w)) as u32);
        (Monomial(e), c.clone())
    });
    Ok(Polynomial::from_terms(t_ctx, terms))
}

/// Leading exponents and coefficients of every generator, block by block.
pub fn leading_terms(family: &SagbiFamily, w: &[i64]) -> Result<Vec<Vec<(Monomial, Rational)>>> {
    family
        .blocks()
        .iter()
        .map(|b| b.iter().map(|g| initial_term(g, w)).collect())
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, VariableContext};

    #[test]
    fn initial_terms_and_ties() {
        let ctx = VariableContext::new(&["x", "y"]).unwrap();
        let f: QPoly = parse("x*(x^2 + y^2 - 2*x)", &ctx).unwrap();
        let (m, c) = initial_term(&f, &[-3, -2]).unwrap();
        assert_eq!(m.0, vec![2, 0]);
        assert_eq!(c, crate::scalar::int(-2));
        let g: QPoly = parse("x + y", &ctx).unwrap();
        assert!(matches!(initial_term(&g, &[1, 1]), Err(Error::Tie { .. })));
    }

    #[test]
    fn homogenization_exponents() {
        let ctx = VariableContext::new(&["x", "y", "z"]).unwrap();
        let t = ctx.with_parameter("t").unwrap();
        let f: QPoly = parse("x^2 + y^2", &ctx).unwrap();
        let h = homogenize(&f, &[-1, -2, -3], &t).unwrap();
        assert_eq!(h, parse("x^2 + t^2*y^2", &t).unwrap());
        let g: QPoly = parse("x^3 + z^3", &ctx).unwrap();
        assert_eq!(homogenize(&g, &[-1, -2, -3], &t).unwrap(), parse("x^3 + t^6*z^3", &t).unwrap());
    }
}
