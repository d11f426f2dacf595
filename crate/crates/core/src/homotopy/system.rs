use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::sagbi::SagbiFamily;
use crate::scalar::Scalar;
use crate::Rational;

use super::solve::{solve, SolveOptions, SolveReport};

/// A square system whose `i`-th equation is a linear combination of the
/// generators of one block: `f_i = sum_j c_ij b_{r,j}`.
///
/// `coefficients[r]` is the matrix of the equations drawing on block `r`
/// (one row per equation, one column per generator). Equations are ordered
/// block by block.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterizedSystem<C> {
    family: SagbiFamily,
    coefficients: Vec<Vec<Vec<C>>>,
}

impl<C: Scalar> ParameterizedSystem<C> {
    pub fn new(family: SagbiFamily, coefficients: Vec<Vec<Vec<C>>>) -> Result<Self> {
        if coefficients.len() != family.num_blocks() {
            return Err(Error::DimensionMismatch { expected: family.num_blocks(), found: coefficients.len() });
        }
        for (r, rows) in coefficients.iter().enumerate() {
            let k = family.block(r).len();
            if let Some(bad) = rows.iter().find(|row| row.len() != k) {
                return Err(Error::DimensionMismatch { expected: k, found: bad.len() });
            }
        }
        let equations: usize = coefficients.iter().map(|m| m.len()).sum();
        if equations != family.nvars() {
            return Err(Error::NotSquare { equations, variables: family.nvars() });
        }
        Ok(ParameterizedSystem { family, coefficients })
    }

    pub fn family(&self) -> &SagbiFamily {
        &self.family
    }

    pub fn coefficients(&self) -> &[Vec<Vec<C>>] {
        &self.coefficients
    }

    pub fn nvars(&self) -> usize {
        self.family.nvars()
    }

    /// `(block, row)` of every equation.
    pub fn equation_blocks(&self) -> Vec<(usize, usize)> {
        self.coefficients
            .iter()
            .enumerate()
            .flat_map(|(r, m)| (0..m.len()).map(move |i| (r, i)))
            .collect()
    }

    /// Equations per block, the semimixed type of the system.
    pub fn rows_per_block(&self) -> Vec<usize> {
        self.coefficients.iter().map(|m| m.len()).collect()
    }

    /// Coefficient row of equation `(r, i)`.
    pub fn row(&self, r: usize, i: usize) -> &[C] {
        &self.coefficients[r][i]
    }

    /// Combines `f(b_{r,j})` with the coefficients, equation by equation.
    pub fn combine(&self, f: impl Fn(usize, usize) -> Polynomial<C>) -> Vec<Polynomial<C>> {
        self.equation_blocks()
            .into_iter()
            .map(|(r, i)| {
                let row = &self.coefficients[r][i];
                let mut acc: Option<Polynomial<C>> = None;
                for (j, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = f(r, j).scale(c);
                    acc = Some(match acc {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
                acc.unwrap_or_else(|| f(r, 0).scale(&C::zero()))
            })
            .collect()
    }

    /// The target equations `f_i`.
    pub fn equations(&self) -> Vec<Polynomial<C>> {
        self.combine(|r, j| self.family.generator(r, j).map(C::from_rational))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> ParameterizedSystem<D> {
        ParameterizedSystem {
            family: self.family.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(&f).collect()).collect())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> ParameterizedSystem<Complex64> {
        self.map(|c| c.to_complex())
    }

    /// Same family with other coefficient matrices.
    pub fn with_coefficients<D: Scalar>(&self, coefficients: Vec<Vec<Vec<D>>>) -> Result<ParameterizedSystem<D>> {
        ParameterizedSystem::new(self.family.clone(), coefficients)
    }
}

/// A system with exact rational or floating complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySystem {
    Rational(ParameterizedSystem<Rational>),
    Complex(ParameterizedSystem<Complex64>),
}

impl AnySystem {
    pub fn family(&self) -> &SagbiFamily {
        match self {
            AnySystem::Rational(s) => s.family(),
            AnySystem::Complex(s) => s.family(),
        }
    }

    pub fn rows_per_block(&self) -> Vec<usize> {
        match self {
            AnySystem::Rational(s) => s.rows_per_block(),
            AnySystem::Complex(s) => s.rows_per_block(),
        }
    }

    pub fn to_complex(&self) -> ParameterizedSystem<Complex64> {
        match self {
            AnySystem::Rational(s) => s.to_complex(),
            AnySystem::Complex(s) => s.clone(),
        }
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<SolveReport> {
        match self {
            AnySystem::Rational(s) => solve(s, opts),
            AnySystem::Complex(s) => solve(s, opts),
        }
    }
}

impl From<ParameterizedSystem<Rational>> for AnySystem {
    fn from(s: ParameterizedSystem<Rational>) -> Self {
        AnySystem::Rational(s)
    }
}

impl From<ParameterizedSystem<Complex64>> for AnySystem {
    fn from(s: ParameterizedSystem<Complex64>) -> Self {
        AnySystem::Complex(s)
    }
}
