//! Seeded random inputs for the property checks.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the caller's seed,
//! so a `(seed, parameters, GENERATOR_VERSION)` triple names one corpus
//! exactly. Bump the version whenever a generator's draw sequence changes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::moyal::AxiomCorpus;
use crate::poly::SparsePoly;
use crate::scalar::ExactComplex;
use crate::series::HbarSeries;

pub const GENERATOR_VERSION: u32 = 1;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational; nonzero when `nonzero` is set.
pub fn scalar<R: Rng>(rng: &mut R, nonzero: bool) -> ExactComplex {
    loop {
        let re = ExactComplex::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let im = if rng.gen_bool(0.35) {
            ExactComplex::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
        } else {
            ExactComplex::zero()
        };
        let z = &re + &(&im * &ExactComplex::i());
        if !nonzero || !z.is_zero() {
            return z;
        }
    }
}

/// Random polynomial with up to `max_terms` terms of total degree at most
/// `max_degree`.
pub fn poly<R: Rng>(rng: &mut R, arity: usize, max_degree: u32, max_terms: usize) -> SparsePoly {
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Vec<u32>, ExactComplex)> = (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; arity];
            for _ in 0..degree {
                e[rng.gen_range(0..arity)] += 1;
            }
            (e, scalar(rng, true))
        })
        .collect();
    SparsePoly::from_terms(arity, terms).expect("exponent vectors have the requested arity")
}

/// `f_0 + h f_1` where `f_1` is present about half the time.
pub fn series<R: Rng>(rng: &mut R, arity: usize, order: usize, max_degree: u32) -> HbarSeries {
    let mut coeffs = vec![SparsePoly::zero(arity); order + 1];
    coeffs[0] = poly(rng, arity, max_degree, 4);
    if order >= 1 && rng.gen_bool(0.5) {
        coeffs[1] = poly(rng, arity, max_degree.saturating_sub(1), 2);
    }
    HbarSeries::new(coeffs).expect("shared arity")
}

pub fn poly_pairs(
    seed: u64,
    arity: usize,
    count: usize,
    max_degree: u32,
) -> Vec<(SparsePoly, SparsePoly)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            (
                poly(&mut r, arity, max_degree, 4),
                poly(&mut r, arity, max_degree, 4),
            )
        })
        .collect()
}

pub fn poly_triples(
    seed: u64,
    arity: usize,
    count: usize,
    max_degree: u32,
) -> Vec<(SparsePoly, SparsePoly, SparsePoly)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            (
                poly(&mut r, arity, max_degree, 4),
                poly(&mut r, arity, max_degree, 4),
                poly(&mut r, arity, max_degree, 4),
            )
        })
        .collect()
}

/// Pairs and triples of short series for the axiom verifier.
pub fn axiom_corpus(
    seed: u64,
    arity: usize,
    order: usize,
    pairs: usize,
    triples: usize,
    max_degree: u32,
) -> AxiomCorpus {
    let mut r = rng(seed);
    let pairs = (0..pairs)
        .map(|_| {
            (
                series(&mut r, arity, order, max_degree),
                series(&mut r, arity, order, max_degree),
            )
        })
        .collect();
    let triples = (0..triples)
        .map(|_| {
            (
                series(&mut r, arity, order, max_degree),
                series(&mut r, arity, order, max_degree),
                series(&mut r, arity, order, max_degree),
            )
        })
        .collect();
    AxiomCorpus { pairs, triples }
}

pub fn vector<R: Rng>(rng: &mut R, len: usize) -> Vec<ExactComplex> {
    (0..len).map(|_| scalar(rng, false)).collect()
}

/// Random element of `SL(2)` over the Gaussian rationals, built from
/// elementary shears and a diagonal scaling. In dimension two these are
/// exactly the matrices preserving any area form.
pub fn sl2<R: Rng>(rng: &mut R) -> Matrix {
    let one = ExactComplex::one;
    let zero = ExactComplex::zero;
    let mut m = Matrix::identity(2);
    for _ in 0..rng.gen_range(1..=3) {
        let t = scalar(rng, true);
        let step = match rng.gen_range(0..3) {
            0 => Matrix::from_rows(vec![vec![one(), t], vec![zero(), one()]]),
            1 => Matrix::from_rows(vec![vec![one(), zero()], vec![t, one()]]),
            _ => {
                let inv = t.inv().expect("nonzero");
                Matrix::from_rows(vec![vec![t, zero()], vec![zero(), inv]])
            }
        }
        .expect("2x2");
        m = m.mul(&step).expect("2x2");
    }
    m
}

/// Uniform random permutation of `0..n` as an image array.
pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_corpus() {
        assert_eq!(poly_pairs(42, 3, 5, 4), poly_pairs(42, 3, 5, 4));
        assert_ne!(poly_pairs(42, 3, 5, 4), poly_pairs(43, 3, 5, 4));
    }

    #[test]
    fn degrees_respect_bound() {
        for (f, g) in poly_pairs(7, 4, 50, 3) {
            assert!(f.degree().unwrap_or(0) <= 3);
            assert!(g.degree().unwrap_or(0) <= 3);
        }
    }

    #[test]
    fn sl2_has_unit_determinant() {
        let mut r = rng(1);
        for _ in 0..20 {
            assert_eq!(sl2(&mut r).det().unwrap(), ExactComplex::one());
        }
    }
}
