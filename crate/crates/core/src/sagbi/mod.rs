//! Weights, initial terms, homogenization and the SAGBI basis test.

mod detect;
mod family;
mod subduction;
mod toric;

pub use detect::{detect_weight, DEFAULT_BUDGET};
pub use family::{homogenize, initial_form, initial_term, leading_terms, SagbiFamily, Weight};
pub use subduction::{find_in_monomial_algebra, sagbi_check, subduct, SagbiCertificate, Subduction};
pub use toric::{toric_relations, BinomialRelation};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableContext;

    fn family(vars: &[&str], blocks: &[Vec<&str>]) -> SagbiFamily {
        let ctx = VariableContext::new(vars).unwrap();
        SagbiFamily::parse(&ctx, blocks).unwrap()
    }

    #[test]
    fn quadrics_with_constant() {
        let f = family(&["x", "y", "z"], &[vec!["x^2+1", "y^2+1", "x*y+z^2", "1"]]);
        let cert = sagbi_check(&f, &[1, 1, 2]).unwrap();
        assert!(cert.verified);
        assert!(cert.relations.is_empty());
        let bad = sagbi_check(&f, &[1, 1, 0]).unwrap();
        assert!(!bad.verified);
        let found = detect_weight(&f, DEFAULT_BUDGET).unwrap();
        let lead: Vec<Vec<u32>> = found.leaders[0].iter().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(lead, vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![0, 0, 0]]);
    }

    #[test]
    fn planar_family_with_base_points() {
        let f = family(&["x", "y"], &[vec!["x*(x^2+y^2-2*x)", "x*(5-4*y)", "y*(x^2+y^2-2*x)", "y*(5-4*y)"]]);
        let cert = sagbi_check(&f, &[-3, -2]).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.relations.len(), 1);
    }

    #[test]
    fn two_block_family() {
        let f = family(&["x", "y", "z"], &[vec!["x", "y", "x^2+y^2", "1"], vec!["y", "z", "x^2+y^2", "x^3+z^3"]]);
        // Leaders x^2 and x^3 do not give a SAGBI basis.
        assert!(!sagbi_check(&f, &[1, 0, -1]).unwrap().verified);
        let cert = detect_weight(&f, DEFAULT_BUDGET).unwrap();
        assert!(cert.verified);
        let lead: Vec<Vec<u32>> = cert.leaders[1].iter().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(lead[2], vec![2, 0, 0]);
        assert_eq!(lead[3], vec![0, 0, 3]);
    }

    #[test]
    fn ties_are_reported() {
        let f = family(&["x", "y"], &[vec!["x+y", "1"]]);
        assert!(matches!(sagbi_check(&f, &[1, 1]), Err(crate::Error::Tie { .. })));
    }
}
