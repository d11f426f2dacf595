use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::context::{same_context, Ctx};
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse multivariate polynomial. Terms are kept in descending graded
/// lexicographic order with no zero coefficients, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone)]
pub struct Polynomial<C> {
    ctx: Ctx,
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn variable(ctx: &Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i, 1), C::one())
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial arity differs from context");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ctx: &Ctx, terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.len(), "monomial arity differs from context");
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_sorted_map(ctx, acc)
    }

    fn from_sorted_map(ctx: &Ctx, acc: BTreeMap<Monomial, C>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Largest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), sign(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.clone() + sign(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ctx: self.ctx.clone(), terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_sorted_map(&self.ctx, acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(a, x)| (a.mul(m), x.clone() * c.clone())).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut sum = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = v * num_traits::pow(x.clone(), e as usize);
                }
            }
            sum = sum + v;
        }
        Ok(sum)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= x.powu(e);
                }
            }
            sum += v;
        }
        Ok(sum)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let e = m.0[var];
            let mut d = m.clone();
            d.0[var] -= 1;
            (d, c.clone() * C::from_i64(e as i64))
        });
        Self::from_terms(&self.ctx, terms)
    }

    /// Substitutes `value` for variable `var`, keeping the context.
    pub fn specialize(&self, var: usize, value: &C) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.0[var];
            let mut r = m.clone();
            r.0[var] = 0;
            (r, c.clone() * num_traits::pow(value.clone(), e as usize))
        });
        Self::from_terms(&self.ctx, terms)
    }

    /// Substitutes `value` for `var` and removes it from the context.
    pub fn eliminate(&self, var: usize, value: &C) -> Result<Self> {
        let ctx = self.ctx.without(var)?;
        let terms = self.specialize(var, value).terms.into_iter().map(|(mut m, c)| {
            m.0.remove(var);
            (m, c)
        });
        Ok(Self::from_terms(&ctx, terms))
    }

    /// Moves the polynomial into a context whose leading variables are the
    /// variables of the current context.
    pub fn embed(&self, ctx: &Ctx) -> Result<Self> {
        let n = self.nvars();
        if ctx.len() < n || ctx.names()[..n] != self.ctx.names()[..] {
            return Err(Error::ContextMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(ctx.len(), 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(Polynomial { ctx: ctx.clone(), terms })
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn to_complex(&self) -> Polynomial<Complex64> {
        self.map(|c| c.to_complex())
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }
}

impl<C: Scalar> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

/// Partial derivatives of each polynomial with respect to the non-parameter
/// variables of its context.
pub fn jacobian<C: Scalar>(system: &[Polynomial<C>]) -> Vec<Vec<Polynomial<C>>> {
    system
        .iter()
        .map(|f| f.ctx().unknowns().into_iter().map(|v| f.derivative(v)).collect())
        .collect()
}
