use rand::Rng;

use crate::error::{Error, Result};
use crate::homotopy::ParameterizedSystem;
use crate::poly::VariableContext;
use crate::rng::seeded_rng;
use crate::sagbi::SagbiFamily;
use crate::scalar::Scalar;
use crate::QPoly;

/// Coupled resonators in harmonic balance with one leading frequency.
///
/// `a[i]` and `b[i]` hold `a_{0,i}, ..., a_{n+1,i}` and
/// `b_{0,i}, ..., b_{n+1,i}`; `coupling[j][i]` is `J_{j,i}` (the diagonal is
/// ignored).
#[derive(Debug, Clone, PartialEq)]
pub struct ResonatorSpec<C> {
    pub n: usize,
    pub a: Vec<Vec<C>>,
    pub b: Vec<Vec<C>>,
    pub coupling: Vec<Vec<C>>,
}

impl<C: Scalar> ResonatorSpec<C> {
    pub fn resonators(&self) -> usize {
        self.a.len()
    }

    /// Checks `a_{2,i} = -b_{1,i}` and `a_{k,i} = b_{k,i}` for `k >= 3`.
    pub fn validate(&self) -> Result<()> {
        let big_n = self.resonators();
        if self.n < 1 || big_n == 0 {
            return Err(Error::Invalid("need n >= 1 and at least one resonator".into()));
        }
        if self.b.len() != big_n || self.coupling.len() != big_n {
            return Err(Error::DimensionMismatch { expected: big_n, found: self.b.len().min(self.coupling.len()) });
        }
        for i in 0..big_n {
            if self.a[i].len() != self.n + 2 || self.b[i].len() != self.n + 2 || self.coupling[i].len() != big_n {
                return Err(Error::Invalid(format!("resonator {} has coefficient vectors of the wrong length", i + 1)));
            }
            if self.a[i][2] != -self.b[i][1].clone() {
                return Err(Error::Invalid(format!("resonator {}: a_2 must equal -b_1", i + 1)));
            }
            for k in 3..=self.n + 1 {
                if self.a[i][k] != self.b[i][k] {
                    return Err(Error::Invalid(format!("resonator {}: a_{k} must equal b_{k}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// A random spec satisfying the constraints, drawing each free
    /// coefficient with `draw`.
    pub fn random<R: Rng>(big_n: usize, n: usize, rng: &mut R, mut draw: impl FnMut(&mut R) -> C) -> Self {
        let mut a = Vec::with_capacity(big_n);
        let mut b = Vec::with_capacity(big_n);
        for _ in 0..big_n {
            let ai: Vec<C> = (0..n + 2).map(|_| draw(rng)).collect();
            let mut bi: Vec<C> = (0..n + 2).map(|_| draw(rng)).collect();
            for k in 3..=n + 1 {
                bi[k] = ai[k].clone();
            }
            let mut ai = ai;
            ai[2] = -bi[1].clone();
            a.push(ai);
            b.push(bi);
        }
        let coupling =
            (0..big_n).map(|j| (0..big_n).map(|i| if i == j { C::zero() } else { draw(rng) }).collect()).collect();
        ResonatorSpec { n, a, b, coupling }
    }
}

/// The harmonic-balance system `p_i = q_i = 0` over `u_1..u_N, v_1..v_N`.
///
/// Block `i` holds `1, u_i, v_i`, then `u_i r_i^k` and `v_i r_i^k` for
/// `k = 1..n-1` with `r_i = u_i^2 + v_i^2`, then `u_j, v_j` for `j != i`;
/// `p_i` and `q_i` both draw on block `i`.
pub fn resonator_family<C: Scalar>(spec: &ResonatorSpec<C>) -> Result<ParameterizedSystem<C>> {
    spec.validate()?;
    let big_n = spec.resonators();
    let n = spec.n;
    let names: Vec<String> =
        (1..=big_n).map(|i| format!("u{i}")).chain((1..=big_n).map(|i| format!("v{i}"))).collect();
    let ctx = VariableContext::new(&names)?;
    let u = |i: usize| QPoly::variable(&ctx, i);
    let v = |i: usize| QPoly::variable(&ctx, big_n + i);
    let mut blocks = Vec::with_capacity(big_n);
    let mut coefficients = Vec::with_capacity(big_n);
    let half = C::from_rational(&crate::scalar::rational(1, 2));
    for i in 0..big_n {
        let r = &(&u(i) * &u(i)) + &(&v(i) * &v(i));
        let mut block = vec![QPoly::one(&ctx), u(i), v(i)];
        let mut p_row = vec![spec.a[i][0].clone(), spec.a[i][1].clone(), spec.a[i][2].clone()];
        let mut q_row = vec![spec.b[i][0].clone(), spec.b[i][1].clone(), spec.b[i][2].clone()];
        for k in 1..n {
            block.push(&u(i) * &r.pow(k as u32));
            p_row.push(spec.a[i][k + 2].clone());
            q_row.push(C::zero());
        }
        for k in 1..n {
            block.push(&v(i) * &r.pow(k as u32));
            p_row.push(C::zero());
            q_row.push(spec.b[i][k + 2].clone());
        }
        for j in (0..big_n).filter(|&j| j != i) {
            let c = spec.coupling[j][i].clone() * half.clone();
            block.push(u(j));
            p_row.push(c.clone());
            q_row.push(C::zero());
            block.push(v(j));
            p_row.push(C::zero());
            q_row.push(c);
        }
        blocks.push(block);
        coefficients.push(vec![p_row, q_row]);
    }
    ParameterizedSystem::new(SagbiFamily::new(&ctx, blocks)?, coefficients)
}

/// A resonator system with random real coefficients from a seed.
pub fn random_resonator(big_n: usize, n: usize, seed: u64) -> Result<ParameterizedSystem<f64>> {
    let mut rng = seeded_rng(seed);
    let spec = ResonatorSpec::random(big_n, n, &mut rng, |r| r.sample::<f64, _>(rand_distr::StandardNormal));
    resonator_family(&spec)
}
