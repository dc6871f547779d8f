//! Ring laws, calculus identities, text round trips and Poisson axioms.

mod common;

use common::*;
use dq_core::corpus;
use dq_core::matrix::Matrix;
use dq_core::poisson::{
    antisymmetry_residual, bivector_from_form, form_from_bivector, jacobi_residual,
    leibniz_residual, SymplecticForm,
};
use dq_core::poly::identity_components;
use dq_core::text::{parse_poly, parse_series};
use dq_core::{ExactComplex, SparsePoly};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in poly(3, 3, 4), g in poly(3, 3, 4), h in poly(3, 3, 4)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &SparsePoly::one(3), f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(f in poly(3, 3, 4), g in poly(3, 3, 4), a in 0usize..3) {
        let lhs = (&f * &g).diff(a).unwrap();
        let rhs = &(&f.diff(a).unwrap() * &g) + &(&f * &g.diff(a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_by_inverse_affine_map(f in poly(2, 4, 4), c in point(2), seed in any::<u64>()) {
        let a = corpus::sl2(&mut corpus::rng(seed));
        let ainv = a.inverse().unwrap();
        // (A x + c) then A⁻¹(y − c)
        let minus: Vec<ExactComplex> = ainv.mul_vec(&c).unwrap().iter().map(|x| -x).collect();
        let there = f.affine_subst(&a, &c).unwrap();
        prop_assert_eq!(there.affine_subst(&ainv, &minus).unwrap(), f.clone());
        prop_assert_eq!(f.subst(&identity_components(2)).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly(2, 3, 4), g in poly(2, 3, 4), x in point(2)) {
        let fg = (&f * &g).eval(&x).unwrap();
        prop_assert_eq!(fg, &f.eval(&x).unwrap() * &g.eval(&x).unwrap());
    }

    #[test]
    fn printed_polynomials_parse_back(f in poly(4, 4, 5)) {
        prop_assert_eq!(parse_poly(&f.to_string(), 4).unwrap(), f);
    }

    #[test]
    fn printed_series_parse_back(s in series(3, 3, 3)) {
        prop_assert_eq!(parse_series(&s.to_string(), 3, 3).unwrap(), s);
    }

    #[test]
    fn printing_is_deterministic(f in poly(3, 3, 5)) {
        let g = parse_poly(&f.to_string(), 3).unwrap();
        prop_assert_eq!(f.to_string(), g.to_string());
    }

    #[test]
    fn poisson_axioms_on_c2(f in poly(2, 4, 3), g in poly(2, 4, 3), h in poly(2, 4, 3)) {
        let pi = bivector_from_form(&SymplecticForm::omega0()).unwrap();
        prop_assert!(antisymmetry_residual(&pi, &f, &g).unwrap().is_zero());
        prop_assert!(leibniz_residual(&pi, &f, &g, &h).unwrap().is_zero());
        prop_assert!(jacobi_residual(&pi, &f, &g, &h).unwrap().is_zero());
    }

    #[test]
    fn poisson_axioms_on_c4(f in poly(4, 3, 3), g in poly(4, 3, 3), h in poly(4, 3, 3)) {
        let pi = bivector_from_form(&SymplecticForm::omega0_product(2)).unwrap();
        prop_assert!(antisymmetry_residual(&pi, &f, &g).unwrap().is_zero());
        prop_assert!(leibniz_residual(&pi, &f, &g, &h).unwrap().is_zero());
        prop_assert!(jacobi_residual(&pi, &f, &g, &h).unwrap().is_zero());
    }

    #[test]
    fn form_and_bivector_are_mutually_inverse(x in nonzero_gaussian(), y in gaussian(), z in gaussian()) {
        // x dz2∧dz1 + y dz3∧dz1 + z dz4∧dz2 + dz4∧dz3 on C^4
        let one = ExactComplex::one();
        let form = SymplecticForm::from_wedges(4, &[(1, 0, x), (2, 0, y), (3, 1, z), (3, 2, one)]);
        prop_assume!(form.is_ok());
        let form = form.unwrap();
        let back = form_from_bivector(&bivector_from_form(&form).unwrap()).unwrap();
        prop_assert_eq!(back, form);
    }

    #[test]
    fn inverse_matrix(seed in any::<u64>()) {
        let a = corpus::sl2(&mut corpus::rng(seed));
        prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), Matrix::identity(2));
        prop_assert!(a.det().unwrap().is_one());
    }
}

#[test]
fn seeded_poisson_triples_meet_the_axioms() {
    for (arity, form) in [
        (2, SymplecticForm::omega0()),
        (4, SymplecticForm::omega0_product(2)),
    ] {
        let pi = bivector_from_form(&form).unwrap();
        for (f, g, h) in corpus::poly_triples(11, arity, 100, 4) {
            assert!(antisymmetry_residual(&pi, &f, &g).unwrap().is_zero());
            assert!(leibniz_residual(&pi, &f, &g, &h).unwrap().is_zero());
            assert!(jacobi_residual(&pi, &f, &g, &h).unwrap().is_zero());
        }
    }
}
