//! Products of `n` copies of `(C^2, ω₀)` with the symmetric-group action.
//!
//! Variables are ordered `(ζ_1, λ_1, ζ_2, λ_2, ..)`, i.e. `z_{2i-1} = ζ_i`
//! and `z_{2i} = λ_i`. Functions on the symmetric product are represented
//! by permutation-invariant polynomials.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{check_arity, Error, Result};
use crate::moyal::StarProduct;
use crate::poisson::{bracket, SymplecticForm};
use crate::poly::SparsePoly;
use crate::report::{CheckReport, Residual};
use crate::scalar::ExactComplex;
use crate::series::HbarSeries;

/// A bijection of `{0, .., n-1}`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation(format!(
                "({a} {b}) out of range for n = {n}"
            )));
        }
        image.swap(a, b);
        Ok(Permutation(image))
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(Permutation)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_arity(self.len(), other.len())?;
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }
}

/// `n` copies of the cotangent plane with the block-diagonal form.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    copies: usize,
    form: SymplecticForm,
}

impl ProductSpace {
    pub fn new(copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::Invalid(
                "product space needs at least one copy".into(),
            ));
        }
        Ok(ProductSpace {
            copies,
            form: SymplecticForm::omega0_product(copies),
        })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn dim(&self) -> usize {
        2 * self.copies
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    /// `ζ_i` for a 0-based copy index.
    pub fn zeta(&self, i: usize) -> SparsePoly {
        SparsePoly::var(self.dim(), 2 * i)
    }

    /// `λ_i` for a 0-based copy index.
    pub fn lambda(&self, i: usize) -> SparsePoly {
        SparsePoly::var(self.dim(), 2 * i + 1)
    }

    pub fn star_product(&self, order: usize) -> Result<StarProduct> {
        StarProduct::from_form(&self.form, order)
    }
}

/// Moyal product for the block-diagonal form.
pub fn product_star(
    ps: &ProductSpace,
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> Result<HbarSeries> {
    check_arity(ps.dim(), f.arity())?;
    check_arity(ps.dim(), g.arity())?;
    ps.star_product(order)?.star(f, g)
}

fn copies_of(arity: usize) -> Result<usize> {
    if arity == 0 || !arity.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "expected an even number of variables (ζ_i, λ_i), got {arity}"
        )));
    }
    Ok(arity / 2)
}

/// Relabel `(ζ_i, λ_i) ↦ (ζ_{σ(i)}, λ_{σ(i)})`.
pub fn permute_poly(sigma: &Permutation, f: &SparsePoly) -> Result<SparsePoly> {
    check_arity(sigma.len(), copies_of(f.arity())?)?;
    let map: Vec<usize> = (0..f.arity())
        .map(|v| 2 * sigma.apply(v / 2) + v % 2)
        .collect();
    f.relabel(&map)
}

/// Relabel only the base variables `ζ_i ↦ ζ_{σ(i)}`, leaving every `λ_i`
/// in place. Not a symplectic action; kept as a negative control.
pub fn permute_base_only(sigma: &Permutation, f: &SparsePoly) -> Result<SparsePoly> {
    check_arity(sigma.len(), copies_of(f.arity())?)?;
    let map: Vec<usize> = (0..f.arity())
        .map(|v| {
            if v % 2 == 0 {
                2 * sigma.apply(v / 2)
            } else {
                v
            }
        })
        .collect();
    f.relabel(&map)
}

/// Check `σf ⋆ σg = σ(f ⋆ g)` for each pair.
pub fn equivariance_check(
    ps: &ProductSpace,
    sigma: &Permutation,
    pairs: &[(SparsePoly, SparsePoly)],
    order: usize,
) -> Result<CheckReport> {
    equivariance_check_with(ps, sigma, &|f| permute_poly(sigma, f), pairs, order)
}

/// As [`equivariance_check`] with an arbitrary action on polynomials.
pub fn equivariance_check_with(
    ps: &ProductSpace,
    sigma: &Permutation,
    action: &dyn Fn(&SparsePoly) -> Result<SparsePoly>,
    pairs: &[(SparsePoly, SparsePoly)],
    order: usize,
) -> Result<CheckReport> {
    let sp = ps.star_product(order)?;
    let mut report = CheckReport::new(format!("permutation {:?}", sigma.image()), Some(order));
    let entry = report.entry("equivariance");
    for (f, g) in pairs {
        let lhs = sp.star(&action(f)?, &action(g)?)?;
        let rhs = sp.star(f, g)?.try_map(action)?;
        entry.record(lhs.try_sub(&rhs)?.into(), || format!("f = {f}, g = {g}"));
    }
    Ok(report)
}

/// Equivariance over every permutation of `S_n`.
pub fn full_equivariance_check(
    ps: &ProductSpace,
    pairs: &[(SparsePoly, SparsePoly)],
    order: usize,
) -> Result<CheckReport> {
    let sp = ps.star_product(order)?;
    let products: Vec<HbarSeries> = pairs
        .iter()
        .map(|(f, g)| sp.star(f, g))
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new(
        format!("all permutations of {} copies", ps.copies()),
        Some(order),
    );
    let entry = report.entry("equivariance");
    for sigma in Permutation::all(ps.copies()) {
        let act = |p: &SparsePoly| permute_poly(&sigma, p);
        for ((f, g), fg) in pairs.iter().zip(&products) {
            let lhs = sp.star(&act(f)?, &act(g)?)?;
            let rhs = fg.try_map(act)?;
            entry.record(lhs.try_sub(&rhs)?.into(), || {
                format!("σ = {:?}, f = {f}, g = {g}", sigma.image())
            });
        }
    }
    Ok(report)
}

/// Orbit average `(1/n!) Σ_σ σf`.
pub fn symmetrize(f: &SparsePoly) -> Result<SparsePoly> {
    let n = copies_of(f.arity())?;
    let mut sum = SparsePoly::zero(f.arity());
    let mut count: i64 = 0;
    for sigma in Permutation::all(n) {
        sum = sum.try_add(&permute_poly(&sigma, f)?)?;
        count += 1;
    }
    Ok(sum.scale(&ExactComplex::ratio(1, count)))
}

pub fn is_symmetric(f: &SparsePoly) -> Result<bool> {
    let n = copies_of(f.arity())?;
    if n == 1 {
        return Ok(true);
    }
    // adjacent transpositions generate S_n
    for a in 0..n - 1 {
        if permute_poly(&Permutation::transposition(n, a, a + 1)?, f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p_k = Σ_i λ_i^k`.
pub fn power_sum(ps: &ProductSpace, k: u32) -> Result<SparsePoly> {
    if k == 0 {
        return Err(Error::Invalid("power sums start at k = 1".into()));
    }
    (0..ps.copies()).try_fold(SparsePoly::zero(ps.dim()), |acc, i| {
        acc.try_add(&ps.lambda(i).pow(k))
    })
}

/// `{p_j, p_k} = 0` and `p_j ⋆ p_k − p_k ⋆ p_j = 0` to order `order`.
pub fn power_sum_commutation_check(
    ps: &ProductSpace,
    j: u32,
    k: u32,
    order: usize,
) -> Result<CheckReport> {
    let (pj, pk) = (power_sum(ps, j)?, power_sum(ps, k)?);
    let sp = ps.star_product(order)?;
    let mut report = CheckReport::new(
        format!("power sums p{j}, p{k} on {} copies", ps.copies()),
        Some(order),
    );
    let inputs = || format!("p{j} = {pj}, p{k} = {pk}");
    report.record("bracket", bracket(sp.bivector(), &pj, &pk)?.into(), inputs);
    report.record(
        "star-commutator",
        sp.star_commutator(&pj, &pk)?.into(),
        inputs,
    );
    Ok(report)
}

/// Points `(ζ_i, λ_i)` of the cotangent plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    pub points: Vec<(ExactComplex, ExactComplex)>,
}

/// Pairwise distinctness; a failing case names the coincident pair.
pub fn configuration_check(c: &Configuration) -> CheckReport {
    let mut report = CheckReport::new(format!("{} points pairwise distinct", c.points.len()), None);
    let entry = report.entry("distinct");
    for (a, b) in (0..c.points.len()).tuple_combinations() {
        if c.points[a] == c.points[b] {
            let (z, l) = &c.points[a];
            entry.record(
                Residual::Text(format!("x{} = x{} = ({z}, {l})", a + 1, b + 1)),
                || format!("points {} and {}", a + 1, b + 1),
            );
        } else {
            entry.record_ok();
        }
    }
    report
}

/// `δ = r²(g − 1) + 1`, half the dimension of the rank-`r` Higgs moduli
/// on a genus-`g` curve.
pub fn delta(rank: u64, genus: u64) -> Result<u64> {
    if rank == 0 || genus == 0 {
        return Err(Error::Invalid("rank and genus must be at least 1".into()));
    }
    rank.checked_mul(rank)
        .and_then(|r2| r2.checked_mul(genus - 1))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::Invalid("δ overflows u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_poly, parse_series};

    #[test]
    fn product_star_examples() {
        let ps = ProductSpace::new(2).unwrap();
        let (z1, l1, l2) = (ps.zeta(0), ps.lambda(0), ps.lambda(1));
        assert_eq!(
            product_star(&ps, &z1, &l2, 4).unwrap(),
            HbarSeries::from_poly(parse_poly("q1*p2", 4).unwrap(), 4)
        );
        assert_eq!(
            product_star(&ps, &z1, &l1, 4).unwrap(),
            parse_series("q1*p1 - 1/2*i*h", 4, 4).unwrap()
        );
        let f = parse_poly("q1^2*p2 + 3", 4).unwrap();
        assert_eq!(
            product_star(&ps, &SparsePoly::one(4), &f, 4).unwrap(),
            HbarSeries::from_poly(f, 4)
        );
        assert!(product_star(&ps, &SparsePoly::var(2, 0), &z1, 4).is_err());
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        let s = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(s.compose(&s.inverse()).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::all(4).count(), 24);
    }

    #[test]
    fn permute_examples() {
        let f = parse_poly("q1*p2", 4).unwrap();
        assert_eq!(permute_poly(&Permutation::identity(2), &f).unwrap(), f);
        let t = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(
            permute_poly(&t, &f).unwrap(),
            parse_poly("q2*p1", 4).unwrap()
        );
        let s = Permutation::new(vec![1, 2, 0]).unwrap();
        let g = parse_poly("q1^2*p3 + i*p2", 6).unwrap();
        let back = permute_poly(&s.inverse(), &permute_poly(&s, &g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(permute_poly(&t, &parse_poly("z1", 6).unwrap()).is_err());
    }

    #[test]
    fn equivariance_examples() {
        let ps = ProductSpace::new(2).unwrap();
        let pairs = vec![
            (ps.zeta(0), ps.lambda(0)),
            (ps.zeta(1).pow(2), ps.lambda(0).pow(2)),
        ];
        assert!(
            equivariance_check(&ps, &Permutation::identity(2), &pairs, 4)
                .unwrap()
                .passed()
        );
        let t = Permutation::transposition(2, 0, 1).unwrap();
        assert!(equivariance_check(&ps, &t, &pairs, 4).unwrap().passed());
        let bad =
            equivariance_check_with(&ps, &t, &|f| permute_base_only(&t, f), &pairs, 4).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn symmetrize_examples() {
        let l1 = parse_poly("p1", 4).unwrap();
        assert_eq!(
            symmetrize(&l1).unwrap(),
            parse_poly("1/2*p1 + 1/2*p2", 4).unwrap()
        );
        let sym = parse_poly("q1*p1 + q2*p2", 4).unwrap();
        assert_eq!(symmetrize(&sym).unwrap(), sym);
        assert!(is_symmetric(&sym).unwrap());
        assert!(!is_symmetric(&l1).unwrap());
    }

    #[test]
    fn power_sums_commute() {
        let ps = ProductSpace::new(3).unwrap();
        assert_eq!(
            power_sum(&ps, 2).unwrap(),
            parse_poly("p1^2 + p2^2 + p3^2", 6).unwrap()
        );
        assert!(is_symmetric(&power_sum(&ps, 3).unwrap()).unwrap());
        assert!(power_sum_commutation_check(&ps, 1, 2, 6).unwrap().passed());
    }

    #[test]
    fn configurations() {
        let pt = |a: i64, b: i64| (ExactComplex::from_int(a), ExactComplex::from_int(b));
        let ok = Configuration {
            points: vec![pt(0, 0), pt(1, 0), pt(0, 1)],
        };
        assert!(configuration_check(&ok).passed());
        let same_base = Configuration {
            points: vec![pt(1, 0), pt(1, 2)],
        };
        assert!(configuration_check(&same_base).passed());
        let clash = Configuration {
            points: vec![pt(0, 0), pt(1, 1), pt(1, 1)],
        };
        let r = configuration_check(&clash);
        assert!(!r.passed());
        assert_eq!(
            r.outcomes[0].witness.as_ref().unwrap().inputs,
            "points 2 and 3"
        );
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(2, 2).unwrap(), 5);
        assert_eq!(delta(1, 2).unwrap(), 2);
        assert!(delta(0, 2).is_err());
    }
}
