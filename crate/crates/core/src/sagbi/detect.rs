use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::family::SagbiFamily;
use super::subduction::{sagbi_check, SagbiCertificate};
use crate::error::{Error, Result};
use crate::intlin::strict_lp_feasible;
use crate::Rational;

pub const DEFAULT_BUDGET: u64 = 100_000;

struct Search<'a> {
    family: &'a SagbiFamily,
    gens: Vec<(usize, usize)>,
    budget: u64,
    spent: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, idx: usize, rows: &mut Vec<Vec<Rational>>) -> Result<Option<SagbiCertificate>> {
        if idx == self.gens.len() {
            let Some(w) = strict_lp_feasible(rows, &[]) else { return Ok(None) };
            let weight = to_i64(&w, self.family.nvars())?;
            let mut cert = sagbi_check(self.family, &weight)?;
            if cert.verified {
                cert.lp_certificate = Some(w);
                return Ok(Some(cert));
            }
            return Ok(None);
        }
        let (r, j) = self.gens[idx];
        let g = self.family.generator(r, j);
        // Terms are stored in descending graded order, so higher total
        // degree candidates come first.
        for (lead, _) in g.terms() {
            if self.spent >= self.budget {
                self.exhausted = true;
                return Ok(None);
            }
            self.spent += 1;
            let added: Vec<Vec<Rational>> = g
                .terms()
                .iter()
                .filter(|(m, _)| m != lead)
                .map(|(m, _)| {
                    lead.0.iter().zip(&m.0).map(|(&a, &b)| Rational::from_integer((a as i64 - b as i64).into())).collect()
                })
                .collect();
            let before = rows.len();
            rows.extend(added);
            let feasible = rows.len() == before || strict_lp_feasible(rows, &[]).is_some();
            if feasible {
                if let Some(cert) = self.dfs(idx + 1, rows)? {
                    return Ok(Some(cert));
                }
            }
            rows.truncate(before);
            if self.exhausted {
                return Ok(None);
            }
        }
        Ok(None)
    }
}

fn to_i64(w: &[BigInt], n: usize) -> Result<Vec<i64>> {
    if w.is_empty() {
        return Ok(vec![0; n]);
    }
    w.iter()
        .map(|v| v.to_i64().ok_or_else(|| Error::Invalid("weight entry overflows i64".into())))
        .collect()
}

/// Searches leading-term selections, pruned by LP feasibility, for a weight
/// under which the family is a SAGBI basis. Returns the first verified one.
///
/// `budget` bounds the number of leading-term candidates examined.
pub fn detect_weight(family: &SagbiFamily, budget: u64) -> Result<SagbiCertificate> {
    let mut search = Search {
        family,
        gens: family.generator_indices(),
        budget,
        spent: 0,
        exhausted: false,
    };
    let mut rows = Vec::new();
    match search.dfs(0, &mut rows)? {
        Some(cert) => Ok(cert),
        None => Err(Error::WeightNotFound { budget_exhausted: search.exhausted }),
    }
}
