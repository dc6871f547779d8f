//! The star product against a brute-force tuple-sum expansion, and the
//! Poisson bracket against its defining sum.

mod common;

use common::*;
use dq_core::matrix::Matrix;
use dq_core::moyal::StarProduct;
use dq_core::poisson::{bracket, PoissonBivector};
use dq_core::{ExactComplex, SparsePoly};
use proptest::prelude::*;

fn antisymmetric(m: usize) -> impl Strategy<Value = Vec<Vec<ExactComplex>>> {
    prop::collection::vec(gaussian(), m * (m - 1) / 2).prop_map(move |upper| {
        let mut rows = vec![vec![ExactComplex::zero(); m]; m];
        let mut it = upper.into_iter();
        for a in 0..m {
            for b in a + 1..m {
                let v = it.next().unwrap();
                rows[b][a] = -&v;
                rows[a][b] = v;
            }
        }
        rows
    })
}

fn bivector(rows: &[Vec<ExactComplex>]) -> PoissonBivector {
    PoissonBivector::from_matrix(Matrix::from_rows(rows.to_vec()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_tuple_sum_in_two_variables(
        f in poly(2, 4, 4),
        g in poly(2, 4, 4),
    ) {
        let pi = omega0_bivector();
        let sp = StarProduct::new(bivector(&pi), 5).unwrap();
        prop_assert_eq!(sp.star(&f, &g).unwrap(), star_by_tuples(&pi, &f, &g, 5));
    }

    #[test]
    fn matches_tuple_sum_for_any_constant_bivector(
        pi in antisymmetric(4),
        f in poly(4, 3, 3),
        g in poly(4, 3, 3),
    ) {
        let sp = StarProduct::new(bivector(&pi), 3).unwrap();
        prop_assert_eq!(sp.star(&f, &g).unwrap(), star_by_tuples(&pi, &f, &g, 3));
    }

    #[test]
    fn bracket_matches_defining_sum(pi in antisymmetric(4), f in poly(4, 4, 4), g in poly(4, 4, 4)) {
        prop_assert_eq!(bracket(&bivector(&pi), &f, &g).unwrap(), bracket_by_sum(&pi, &f, &g));
    }
}

#[test]
fn known_small_products() {
    let pi = omega0_bivector();
    let z1 = SparsePoly::var(2, 0);
    let z2 = SparsePoly::var(2, 1);
    let sq = |p: &SparsePoly| p.pow(2);
    let sp = StarProduct::new(bivector(&pi), 4).unwrap();
    assert_eq!(
        sp.star(&sq(&z1), &sq(&z2)).unwrap(),
        star_by_tuples(&pi, &sq(&z1), &sq(&z2), 4)
    );
    assert_eq!(
        sp.star(&sq(&z1), &sq(&z2)).unwrap().to_string(),
        "z1^2*z2^2 - 2*i*z1*z2*h - 1/2*h^2"
    );
}
