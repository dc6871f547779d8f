//! Properties of the star product, its chart-wise and multi-particle
//! versions, and its transport along symplectomorphisms.

mod common;

use common::*;
use dq_core::atlas::{self, ingest_polygon, PolygonGluing};
use dq_core::corpus;
use dq_core::moyal::{linear_action_check, translate_series, StarProduct};
use dq_core::multi::{self, Permutation, ProductSpace};
use dq_core::poisson::{bracket, SymplecticForm};
use dq_core::transport::{self, SymplectoMap, TransportedStar};
use dq_core::{ExactComplex, HbarSeries, SparsePoly};
use proptest::prelude::*;

fn moyal(order: usize) -> StarProduct {
    StarProduct::from_form(&SymplecticForm::omega0(), order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn associative(f in series(2, 3, 3), g in series(2, 3, 3), h in series(2, 3, 3)) {
        let sp = moyal(3);
        let left = sp.star_series(&sp.star_series(&f, &g).unwrap(), &h).unwrap();
        let right = sp.star_series(&f, &sp.star_series(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_and_leading_term(f in poly(4, 4, 4), g in poly(4, 4, 4)) {
        let sp = StarProduct::from_form(&SymplecticForm::omega0_product(2), 4).unwrap();
        let one = SparsePoly::one(4);
        prop_assert_eq!(sp.star(&one, &f).unwrap(), HbarSeries::from_poly(f.clone(), 4));
        prop_assert_eq!(sp.star(&f, &one).unwrap(), HbarSeries::from_poly(f.clone(), 4));
        prop_assert_eq!(sp.star(&f, &g).unwrap().coeff(0).clone(), &f * &g);
    }

    #[test]
    fn commutator_starts_with_the_bracket(f in poly(2, 4, 4), g in poly(2, 4, 4)) {
        let sp = moyal(4);
        let c = sp.star_commutator(&f, &g).unwrap();
        prop_assert!(c.coeff(0).is_zero());
        prop_assert_eq!(c.coeff(1).clone(), bracket(sp.bivector(), &f, &g).unwrap().scale(&ExactComplex::i()));
        // the product is h ↦ −h symmetric up to swapping factors
        prop_assert!(c.coeff(2).is_zero());
    }

    #[test]
    fn translations_commute_with_the_product(f in poly(2, 4, 4), g in poly(2, 4, 4), v in point(2)) {
        let sp = moyal(6);
        let lhs = translate_series(&sp.star(&f, &g).unwrap(), &v).unwrap();
        let tf = translate_series(&HbarSeries::from_poly(f, 6), &v).unwrap();
        let tg = translate_series(&HbarSeries::from_poly(g, 6), &v).unwrap();
        prop_assert_eq!(lhs, sp.star_series(&tf, &tg).unwrap());
    }

    #[test]
    fn symplectic_matrices_commute_with_the_product(seed in any::<u64>(), f in poly(2, 3, 3), g in poly(2, 3, 3)) {
        let s = corpus::sl2(&mut corpus::rng(seed));
        prop_assert!(linear_action_check(&moyal(4), &s, &[(f, g)]).unwrap().passed());
    }

    #[test]
    fn overlaps_agree_on_the_l_shape(f in poly(2, 3, 3), g in poly(2, 3, 3)) {
        let s = ingest_polygon(&PolygonGluing::l_shape()).unwrap();
        let report = atlas::patch_check(&s, &[(f, g)], 4).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn corrupted_fiber_translation_is_caught(c in nonzero_gaussian(), f in poly(2, 3, 3)) {
        let s = ingest_polygon(&PolygonGluing::square()).unwrap();
        let o = s.overlaps.iter().find(|o| !o.shift.is_zero()).unwrap();
        let corrupt = atlas::AffineMap::new(
            dq_core::matrix::Matrix::identity(2),
            vec![o.shift.clone(), c],
        ).unwrap();
        let lam = SparsePoly::var(2, 1);
        // a function of ζ and λ whose product with λ sees the fiber shift
        let f = &f + &SparsePoly::var(2, 0);
        prop_assume!(f.uses_var(0));
        let r = atlas::overlap_agreement_check_with(&s, o.id, &corrupt, &f, &lam, 4).unwrap();
        prop_assert!(!r.is_zero());
    }

    #[test]
    fn separate_blocks_commute(f in poly(2, 3, 3), g in poly(2, 3, 3), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let ps = ProductSpace::new(3).unwrap();
        let (fi, gj) = (f.embed(6, 2 * i).unwrap(), g.embed(6, 2 * j).unwrap());
        let out = multi::product_star(&ps, &fi, &gj, 4).unwrap();
        prop_assert_eq!(out, HbarSeries::from_poly(&fi * &gj, 4));
    }

    #[test]
    fn permutations_commute_with_the_product(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = corpus::rng(seed);
        let ps = ProductSpace::new(n).unwrap();
        let sigma = Permutation::new(corpus::permutation(&mut rng, n)).unwrap();
        let pairs: Vec<_> = (0..2)
            .map(|_| (corpus::poly(&mut rng, 2 * n, 3, 3), corpus::poly(&mut rng, 2 * n, 3, 3)))
            .collect();
        prop_assert!(multi::equivariance_check(&ps, &sigma, &pairs, 4).unwrap().passed());
    }

    #[test]
    fn invariant_products_stay_invariant(f in poly(4, 3, 3), g in poly(4, 3, 3)) {
        let ps = ProductSpace::new(2).unwrap();
        let (sf, sg) = (multi::symmetrize(&f).unwrap(), multi::symmetrize(&g).unwrap());
        prop_assert_eq!(multi::symmetrize(&sf).unwrap(), sf.clone());
        let prod = multi::product_star(&ps, &sf, &sg, 4).unwrap();
        for c in prod.coeffs() {
            prop_assert!(multi::is_symmetric(c).unwrap());
        }
    }

    #[test]
    fn affine_symplectic_transport_is_trivial(seed in any::<u64>(), f in poly(2, 3, 3), g in poly(2, 3, 3)) {
        let mut rng = corpus::rng(seed);
        let m = SymplectoMap::linear(&corpus::sl2(&mut rng)).unwrap()
            .then(&SymplectoMap::translation(&corpus::vector(&mut rng, 2)).unwrap()).unwrap();
        let sp = moyal(4);
        prop_assert_eq!(transport::transported_star(&m, &sp, &f, &g, 4).unwrap(), sp.star(&f, &g).unwrap());
    }

    #[test]
    fn transported_commutator_is_the_pullback_bracket(seed in any::<u64>(), f in poly(2, 2, 3), g in poly(2, 2, 3)) {
        let m = transport::random_symplecto(&mut corpus::rng(seed), 1, 2).unwrap();
        let tq = TransportedStar::new(m, moyal(2)).unwrap();
        let c = tq.star(&f, &g).unwrap().try_sub(&tq.star(&g, &f).unwrap()).unwrap();
        let pb = tq.pullback_bracket(&f, &g).unwrap();
        prop_assert_eq!(c.coeff(1).clone(), pb.scale(&ExactComplex::i()));
        prop_assert_eq!(pb, bracket(moyal(2).bivector(), &f, &g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transported_product_is_associative(seed in any::<u64>(), f in poly(2, 2, 2), g in poly(2, 2, 2), h in poly(2, 2, 2)) {
        let m = transport::random_symplecto(&mut corpus::rng(seed), 1, 2).unwrap();
        let tq = TransportedStar::new(m, moyal(3)).unwrap();
        use dq_core::moyal::Quantization;
        let lift = |p: &SparsePoly| HbarSeries::from_poly(p.clone(), 3);
        let left = tq.star_series(&tq.star(&f, &g).unwrap(), &lift(&h)).unwrap();
        let right = tq.star_series(&lift(&f), &tq.star(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn all_permutations_of_three_copies() {
    let ps = ProductSpace::new(3).unwrap();
    let pairs = corpus::poly_pairs(5, 6, 4, 3);
    let report = multi::full_equivariance_check(&ps, &pairs, 4).unwrap();
    assert!(report.passed());
    assert_eq!(report.outcomes[0].cases, 6 * pairs.len());
}

#[test]
fn power_sums_star_commute() {
    for n in 1..=4 {
        let ps = ProductSpace::new(n).unwrap();
        for j in 1..=4 {
            for k in j..=4 {
                assert!(multi::power_sum_commutation_check(&ps, j, k, 6)
                    .unwrap()
                    .passed());
            }
        }
    }
}
