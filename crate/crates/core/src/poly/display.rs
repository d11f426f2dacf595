use std::fmt;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::scalar::Scalar;

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (e, name) in m.exponents().iter().zip(names) {
        if *e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in descending graded lexicographic order, unit
/// coefficients omitted. Rational output parses back to the same polynomial.
impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ctx().names();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let (neg, mag) = c.display_parts();
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let unit = if neg { -c.clone() == C::one() } else { c.is_one() };
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, names)?;
            }
        }
        Ok(())
    }
}
