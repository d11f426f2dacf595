//! Exact two-phase simplex over the rationals with Bland's anti-cycling rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over the columns in `allowed`. Returns `false`
    /// if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let reduced = |j: usize| -> Q {
                let mut z = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        z -= &cost[b] * &row[j];
                    }
                }
                z
            };
            let entering = (0..self.ncols)
                .find(|&j| allowed[j] && !self.basis.contains(&j) && reduced(j).is_positive());
            let Some(c) = entering else { return true };
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((r, _, bvar)) => ratio < *r || (ratio == *r && self.basis[i] < *bvar),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `objective . x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[Q], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    // Column layout: structural, one slack or surplus per inequality, artificials.
    let nslack = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut needs_artificial = Vec::with_capacity(m);
    let mut slack_col = n;
    let mut slack_of_row = vec![None; m];
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
        let mut row = c.coeffs.clone();
        row.resize(n + nslack, Q::zero());
        let mut rhs = c.rhs.clone();
        match c.relation {
            Relation::Le => {
                row[slack_col] = Q::one();
                slack_of_row[i] = Some(slack_col);
                slack_col += 1;
            }
            Relation::Ge => {
                row[slack_col] = -Q::one();
                slack_of_row[i] = Some(slack_col);
                slack_col += 1;
            }
            Relation::Eq => {}
        }
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        // A slack with coefficient +1 can start in the basis.
        let natural = slack_of_row[i].filter(|&s| row[s].is_one());
        needs_artificial.push(natural.is_none());
        row.push(rhs);
        rows.push(row);
    }
    let nart = needs_artificial.iter().filter(|&&a| a).count();
    let ncols = n + nslack + nart;
    let mut basis = Vec::with_capacity(m);
    let mut art = n + nslack;
    for (i, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("row has a right-hand side");
        row.resize(ncols, Q::zero());
        if needs_artificial[i] {
            row[art] = Q::one();
            basis.push(art);
            art += 1;
        } else {
            basis.push(slack_of_row[i].expect("natural slack"));
        }
        row.push(rhs);
    }
    let mut t = Tableau { rows, basis, ncols };

    if nart > 0 {
        let mut cost = vec![Q::zero(); ncols];
        for c in cost.iter_mut().skip(n + nslack) {
            *c = -Q::one();
        }
        t.optimize(&cost, &vec![true; ncols]);
        let infeasibility = t
            .rows
            .iter()
            .zip(&t.basis)
            .filter(|(_, &b)| b >= n + nslack)
            .fold(Q::zero(), |acc, (row, _)| acc + &row[ncols]);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + nslack {
                match (0..n + nslack).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Q::zero(); ncols];
    cost[..n].clone_from_slice(objective);
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n + nslack).collect();
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            x[b] = row[ncols].clone();
        }
    }
    let value = x.iter().zip(objective).fold(Q::zero(), |acc, (a, b)| acc + a * b);
    LpOutcome::Optimal { x, value }
}

/// Looks for `w` with `row . w > 0` for every strict row and `row . w >= 0`
/// for every non-strict row. On success returns a primitive integer vector.
pub fn strict_lp_feasible(strict: &[Vec<Q>], nonstrict: &[Vec<Q>]) -> Option<Vec<BigInt>> {
    let n = strict.first().or(nonstrict.first()).map_or(0, |r| r.len());
    if strict.is_empty() {
        return Some(vec![BigInt::zero(); n]);
    }
    // Variables: w+ (n), w- (n), eps. Maximize eps with eps <= 1.
    let split = |row: &Vec<Q>, eps: bool| -> Vec<Q> {
        let mut c: Vec<Q> = row.clone();
        c.extend(row.iter().map(|v| -v.clone()));
        c.push(if eps { -Q::one() } else { Q::zero() });
        c
    };
    let mut cons: Vec<Constraint> = Vec::new();
    for r in strict {
        cons.push(Constraint { coeffs: split(r, true), relation: Relation::Ge, rhs: Q::zero() });
    }
    for r in nonstrict {
        cons.push(Constraint { coeffs: split(r, false), relation: Relation::Ge, rhs: Q::zero() });
    }
    let mut cap = vec![Q::zero(); 2 * n + 1];
    cap[2 * n] = Q::one();
    cons.push(Constraint { coeffs: cap.clone(), relation: Relation::Le, rhs: Q::one() });
    match maximize(&cap, &cons) {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let w: Vec<Q> = (0..n).map(|i| &x[i] - &x[n + i]).collect();
            Some(primitive_integer_vector(&w))
        }
        _ => None,
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn primitive_integer_vector(w: &[Q]) -> Vec<BigInt> {
    let lcm = w.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = w.iter().map(|v| (v * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::rational::from_i64_rows;
    use crate::scalar::int;

    #[test]
    fn textbook_lp() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
        let cons = vec![
            Constraint { coeffs: vec![int(1), int(0)], relation: Relation::Le, rhs: int(4) },
            Constraint { coeffs: vec![int(0), int(2)], relation: Relation::Le, rhs: int(12) },
            Constraint { coeffs: vec![int(3), int(2)], relation: Relation::Le, rhs: int(18) },
        ];
        match maximize(&[int(3), int(5)], &cons) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(36));
                assert_eq!(x, vec![int(2), int(6)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let infeasible = vec![
            Constraint { coeffs: vec![int(1)], relation: Relation::Ge, rhs: int(2) },
            Constraint { coeffs: vec![int(1)], relation: Relation::Le, rhs: int(1) },
        ];
        assert_eq!(maximize(&[int(1)], &infeasible), LpOutcome::Infeasible);
        let unbounded = vec![Constraint { coeffs: vec![int(1)], relation: Relation::Ge, rhs: int(2) }];
        assert_eq!(maximize(&[int(1)], &unbounded), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        let cons = vec![
            Constraint { coeffs: vec![int(1), int(1)], relation: Relation::Eq, rhs: int(3) },
            Constraint { coeffs: vec![int(1), int(-1)], relation: Relation::Eq, rhs: int(1) },
        ];
        match maximize(&[int(0), int(1)], &cons) {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, vec![int(2), int(1)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn strict_feasibility() {
        // x - y > 0 and y > 0.
        let w = strict_lp_feasible(&from_i64_rows(&[[1, -1], [0, 1]]), &[]).unwrap();
        assert!(w[0] > w[1] && w[1] > BigInt::zero());
        // x > 0 and -x > 0 is infeasible.
        assert!(strict_lp_feasible(&from_i64_rows(&[[1], [-1]]), &[]).is_none());
        // x > 0 with x <= 0 non-strict.
        assert!(strict_lp_feasible(&from_i64_rows(&[[1]]), &from_i64_rows(&[[-1]])).is_none());
    }
}
