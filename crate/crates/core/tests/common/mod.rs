//! Shared strategies and brute-force reference computations.
#![allow(dead_code)]

use dq_core::{ExactComplex, HbarSeries, SparsePoly};
use proptest::prelude::*;

pub fn gaussian() -> impl Strategy<Value = ExactComplex> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 1i64..=2)
        .prop_map(|(a, b, c, d)| ExactComplex::gaussian(a, b, c, d))
}

pub fn nonzero_gaussian() -> impl Strategy<Value = ExactComplex> {
    gaussian().prop_filter("nonzero", |z| !z.is_zero())
}

/// Polynomials of total degree at most `max_degree` with up to `max_terms`
/// terms; over-degree monomials are dropped.
pub fn poly(arity: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, arity), gaussian()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let kept = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree);
        SparsePoly::from_terms(arity, kept).unwrap()
    })
}

pub fn series(arity: usize, order: usize, max_degree: u32) -> impl Strategy<Value = HbarSeries> {
    prop::collection::vec(poly(arity, max_degree, 3), order + 1)
        .prop_map(|cs| HbarSeries::new(cs).unwrap())
}

pub fn point(len: usize) -> impl Strategy<Value = Vec<ExactComplex>> {
    prop::collection::vec(gaussian(), len)
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// `∂_{idx[0]} ∂_{idx[1]} .. f`.
fn diff_all(f: &SparsePoly, idx: &[usize]) -> SparsePoly {
    idx.iter().fold(f.clone(), |acc, &a| acc.diff(a).unwrap())
}

/// All tuples in `0..m` of length `k`.
fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

/// Moyal product as the literal tuple sum
/// `Σ_k (i/2)^k/k! h^k Σ_{a,b} Π π^{a_r b_r} ∂_a f ∂_b g`.
pub fn star_by_tuples(
    pi: &[Vec<ExactComplex>],
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> HbarSeries {
    let m = pi.len();
    let half_i = ExactComplex::gaussian(0, 1, 1, 2);
    let mut coeffs = Vec::new();
    for k in 0..=order {
        let mut ck = SparsePoly::zero(m);
        for a in tuples(m, k) {
            let fa = diff_all(f, &a);
            if fa.is_zero() {
                continue;
            }
            for b in tuples(m, k) {
                let w = a
                    .iter()
                    .zip(&b)
                    .fold(ExactComplex::one(), |acc, (&x, &y)| &acc * &pi[x][y]);
                if w.is_zero() {
                    continue;
                }
                ck = &ck + &(&fa * &diff_all(g, &b)).scale(&w);
            }
        }
        let weight = half_i
            .pow(k as u32)
            .div(&ExactComplex::from_int(factorial(k)))
            .unwrap();
        coeffs.push(ck.scale(&weight));
    }
    HbarSeries::new(coeffs).unwrap()
}

/// `Σ π^{ab} ∂_a f ∂_b g` written out directly.
pub fn bracket_by_sum(pi: &[Vec<ExactComplex>], f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let m = pi.len();
    let mut out = SparsePoly::zero(m);
    for a in 0..m {
        for b in 0..m {
            if !pi[a][b].is_zero() {
                out = &out + &(&f.diff(a).unwrap() * &g.diff(b).unwrap()).scale(&pi[a][b]);
            }
        }
    }
    out
}

/// The bivector of `ω₀ = dz2∧dz1`: `{z1, z2} = −1`.
pub fn omega0_bivector() -> Vec<Vec<ExactComplex>> {
    vec![
        vec![ExactComplex::zero(), ExactComplex::from_int(-1)],
        vec![ExactComplex::from_int(1), ExactComplex::zero()],
    ]
}
