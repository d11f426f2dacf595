mod oracles;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sagbi_core::intlin::{hermite_normal_form, lattice_index, smith_normal_form, IntMatrix, LatticeIndex};
use sagbi_core::poly::{parse, Monomial, VariableContext};
use sagbi_core::polyhedral::{mixed_cells, mixed_volume, random_lifting, solve_binomial, SupportSet};
use sagbi_core::rng::seeded_rng;
use sagbi_core::sagbi::{homogenize, initial_form};
use sagbi_core::scalar::rational;
use sagbi_core::{QPoly, Rational};

fn matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(m, n)| prop::collection::vec(prop::collection::vec(-range..=range, n), m))
}

fn square(n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, n), n)
}

fn unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_identity(rows in matrix(5, 30)) {
        let a = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(unimodular(&snf.u) && unimodular(&snf.v));
        let diag = snf.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn hermite_form_identity(rows in matrix(4, 20)) {
        let a = IntMatrix::from_rows(&rows);
        let hnf = hermite_normal_form(&a);
        prop_assert_eq!(hnf.u.mul(&a), hnf.h.clone());
        prop_assert!(unimodular(&hnf.u));
        for (r, &p) in hnf.pivots.iter().enumerate() {
            let pivot = hnf.h.get(r, p);
            prop_assert!(pivot.is_positive());
            for above in 0..r {
                let v = hnf.h.get(above, p);
                prop_assert!(!v.is_negative() && v < pivot);
            }
        }
    }

    #[test]
    fn square_determinant_matches_smith_product(rows in (1usize..=4).prop_flat_map(|n| square(n, 9))) {
        let a = IntMatrix::from_rows(&rows);
        let product: BigInt = smith_normal_form(&a).diagonal().iter().product();
        prop_assert_eq!(product, BigInt::from(oracles::det(&rows).abs()));
        let d = oracles::det(&rows);
        let expected = if d == 0 { LatticeIndex::Infinite } else { LatticeIndex::Finite(BigInt::from(d.abs())) };
        prop_assert_eq!(lattice_index(&a), expected);
    }
}

fn polynomial(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, nvars), -9i64..=9, 1i64..=5), 1..6)
}

fn build(ctx: &sagbi_core::poly::Ctx, terms: &[(Vec<u32>, i64, i64)]) -> QPoly {
    QPoly::from_terms(ctx, terms.iter().map(|(e, n, d)| (Monomial(e.clone()), rational(*n, *d))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn homogenization_is_multiplicative(
        p in polynomial(3),
        h in polynomial(3),
        w in prop::collection::vec(-50i64..=50, 3),
    ) {
        let ctx = VariableContext::new(&["x", "y", "z"]).unwrap();
        let t_ctx = ctx.with_parameter("t").unwrap();
        let (p, h) = (build(&ctx, &p), build(&ctx, &h));
        prop_assume!(!p.is_zero() && !h.is_zero());
        // Ties in the initial term make the homogenization undefined.
        let (Ok(pt), Ok(ht)) = (homogenize(&p, &w, &t_ctx), homogenize(&h, &w, &t_ctx)) else {
            return Ok(());
        };
        let product = &p * &h;
        let joint = homogenize(&product, &w, &t_ctx).unwrap();
        prop_assert_eq!(joint, &pt * &ht);
        let t = 3;
        prop_assert_eq!(pt.eliminate(t, &Rational::one()).unwrap(), p.clone());
        let at_zero = pt.eliminate(t, &Rational::zero()).unwrap();
        prop_assert_eq!(at_zero, initial_form(&p, &w).unwrap());
    }

    #[test]
    fn printed_polynomials_parse_back(p in polynomial(3)) {
        let ctx = VariableContext::new(&["x", "y", "z"]).unwrap();
        let p = build(&ctx, &p);
        let text = p.to_string();
        prop_assert_eq!(parse::<Rational>(&text, &ctx).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn binomial_count_is_determinant(
        rows in (1usize..=3).prop_flat_map(|n| square(n, 4)),
        angles in prop::collection::vec(0.0f64..std::f64::consts::TAU, 3),
        radii in prop::collection::vec(0.5f64..2.0, 3),
    ) {
        let det = oracles::det(&rows);
        prop_assume!(det != 0);
        let n = rows.len();
        let constants: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(radii[i], angles[i])).collect();
        let sols = solve_binomial(&rows, &constants).unwrap();
        prop_assert_eq!(sols.len() as i128, det.abs());
        for x in &sols {
            for (a, c) in rows.iter().zip(&constants) {
                let v = x.iter().zip(a).fold(Complex64::one(), |acc, (xi, &e)| acc * xi.powi(e as i32));
                prop_assert!((v - c).norm() <= 1e-8 * c.norm(), "{:?} at {:?}", v, x);
            }
        }
        for i in 0..sols.len() {
            for j in i + 1..sols.len() {
                let d = sols[i].iter().zip(&sols[j]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                prop_assert!(d > 1e-6);
            }
        }
    }
}

fn point_set(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=3, dim), dim + 1..dim + 5)
}

fn full_dimensional(points: &[Vec<i64>]) -> bool {
    oracles::normalized_volume(points) > 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn unmixed_volume_matches_hull(points in (1usize..=3).prop_flat_map(point_set), seed in any::<u64>()) {
        let dim = points[0].len();
        prop_assume!(full_dimensional(&points));
        let mv = mixed_volume(&[SupportSet::new(points.clone(), dim)], seed).unwrap();
        prop_assert_eq!(mv as i128, oracles::normalized_volume(&points));
    }

    #[test]
    fn mixed_volume_matches_inclusion_exclusion(
        polys in (2usize..=3).prop_flat_map(|d| prop::collection::vec(point_set(d), d)),
        seed in any::<u64>(),
    ) {
        let supports: Vec<SupportSet> = polys.iter().map(|p| SupportSet::new(p.clone(), 1)).collect();
        let expected = oracles::mixed_volume_oracle(&polys);
        let mv = mixed_volume(&supports, seed).unwrap();
        prop_assert_eq!(mv as i128, expected);
    }

    #[test]
    fn cells_tile_the_mixed_volume(
        polys in prop::collection::vec(point_set(2), 2),
        seed in any::<u64>(),
    ) {
        let supports: Vec<SupportSet> = polys.iter().map(|p| SupportSet::new(p.clone(), 1)).collect();
        let lifting = random_lifting(&supports, &mut seeded_rng(seed));
        let Ok(cells) = mixed_cells(&supports, &lifting) else { return Ok(()) };
        for cell in &cells {
            // A fine mixed cell's volume is the determinant of its edges.
            let edges: Vec<Vec<i64>> = cell
                .points
                .iter()
                .enumerate()
                .map(|(r, pair)| {
                    let (a, b) = (&supports[r].points[pair[0]], &supports[r].points[pair[1]]);
                    b.iter().zip(a).map(|(x, y)| x - y).collect()
                })
                .collect();
            prop_assert_eq!(cell.volume as i128, oracles::det(&edges).abs());
        }
        let total: u64 = cells.iter().map(|c| c.volume).sum();
        prop_assert_eq!(total as i128, oracles::mixed_volume_oracle(&polys));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn mixed_volume_ignores_the_lifting(polys in (2usize..=3).prop_flat_map(|d| prop::collection::vec(point_set(d), d))) {
        let supports: Vec<SupportSet> = polys.iter().map(|p| SupportSet::new(p.clone(), 1)).collect();
        let first = mixed_volume(&supports, 0).unwrap();
        for seed in 1..20 {
            prop_assert_eq!(mixed_volume(&supports, seed).unwrap(), first);
        }
    }
}

#[test]
fn volume_oracle_on_known_polytopes() {
    let cube: Vec<Vec<i64>> = (0..8).map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]).collect();
    assert_eq!(oracles::normalized_volume(&cube), 6);
    let simplex = vec![vec![0, 0], vec![2, 0], vec![0, 2]];
    assert_eq!(oracles::normalized_volume(&simplex), 4);
    assert_eq!(oracles::mixed_volume_oracle(&[simplex.clone(), simplex]), 4);
    let segment = vec![vec![0, 0], vec![1, 1]];
    assert_eq!(oracles::mixed_volume_oracle(&[segment.clone(), segment]), 0);
}
