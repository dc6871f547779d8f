//! Moyal-Weyl star product for a constant Poisson bivector, and the
//! executable checks of the deformation-quantization axioms.
//!
//! The bidifferential operator `D` lives on `V × V`: for `f ⊗ g`, written as
//! a polynomial in `2m` variables (first copy `x`, second copy `y`),
//! `D = Σ π^{ab} ∂_{x_a} ∂_{y_b}`. The star product is
//! `f ⋆ g = Σ_k (i/2)^k / k! · h^k · Δ* D^k (f ⊗ g)` where `Δ*` restricts to
//! the diagonal `x = y`. Because `D` strictly lowers the degree in each
//! copy, the sum stops once `k` exceeds `min(deg f, deg g)`.
//!
//! Each coefficient only ever sees derivatives of the inputs, weighted by
//! universal constants, so the "universal polynomial in the derivatives"
//! axiom holds by construction and is not tested at runtime.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{check_arity, Error, Result};
use crate::matrix::Matrix;
use crate::poisson::{
    bivector_from_form, bracket, form_from_bivector, PoissonBivector, SymplecticForm,
};
use crate::poly::SparsePoly;
use crate::report::{AxiomReport, CheckReport};
use crate::scalar::ExactComplex;
use crate::series::HbarSeries;

/// Names of the axiom checks, as they appear in reports.
pub mod axiom {
    pub const PRODUCT: &str = "leading-product";
    pub const UNIT: &str = "unit";
    pub const COMMUTATOR: &str = "commutator";
    pub const ASSOCIATIVITY: &str = "associativity";
    pub const EQUIVARIANCE: &str = "equivariance";
}

/// A star product given as an associative operation on truncated series.
pub trait Quantization {
    fn arity(&self) -> usize;

    /// Truncation order `K`.
    fn order(&self) -> usize;

    fn star_series(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries>;

    fn star_poly(&self, f: &SparsePoly, g: &SparsePoly) -> Result<HbarSeries> {
        let k = self.order();
        self.star_series(
            &HbarSeries::from_poly(f.clone(), k),
            &HbarSeries::from_poly(g.clone(), k),
        )
    }
}

/// `exp(i h D / 2)`-type product with constant bivector `π`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarProduct {
    pi: PoissonBivector,
    order: usize,
    /// Scalar in front of `h^k Δ* D^k`; `(i/2)^k / k!` for Moyal-Weyl.
    weights: Vec<ExactComplex>,
}

/// `(i/2)^k / k!` for `k = 0..=order`.
pub fn moyal_weights(order: usize) -> Vec<ExactComplex> {
    let half_i = ExactComplex::gaussian(0, 1, 1, 2);
    let mut w = Vec::with_capacity(order + 1);
    let mut factorial = BigRational::one();
    for k in 0..=order {
        if k > 0 {
            factorial *= BigRational::from_integer(BigInt::from(k));
        }
        let inv_fact = ExactComplex::from_rational(factorial.recip());
        w.push(&half_i.pow(k as u32) * &inv_fact);
    }
    w
}

impl StarProduct {
    pub fn new(pi: PoissonBivector, order: usize) -> Result<Self> {
        if pi.dim() == 0 || !pi.dim().is_multiple_of(2) {
            return Err(Error::MalformedForm(format!(
                "bivector dimension {} is not even",
                pi.dim()
            )));
        }
        Ok(StarProduct {
            pi,
            order,
            weights: moyal_weights(order),
        })
    }

    pub fn from_form(form: &SymplecticForm, order: usize) -> Result<Self> {
        Self::new(bivector_from_form(form)?, order)
    }

    /// Same bidifferential structure with arbitrary weights; only useful
    /// for building deliberately broken products.
    pub fn with_weights(pi: PoissonBivector, weights: Vec<ExactComplex>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Invalid("at least one weight is required".into()));
        }
        Ok(StarProduct {
            pi,
            order: weights.len() - 1,
            weights,
        })
    }

    pub fn bivector(&self) -> &PoissonBivector {
        &self.pi
    }

    pub fn weights(&self) -> &[ExactComplex] {
        &self.weights
    }

    /// The same product truncated at a different order.
    pub fn with_order(&self, order: usize) -> StarProduct {
        let mut weights = moyal_weights(order);
        for (k, w) in weights.iter_mut().enumerate() {
            if let Some(own) = self.weights.get(k) {
                *w = own.clone();
            }
        }
        StarProduct {
            pi: self.pi.clone(),
            order,
            weights,
        }
    }

    /// `f ⋆ g` as a series truncated at `K`.
    pub fn star(&self, f: &SparsePoly, g: &SparsePoly) -> Result<HbarSeries> {
        self.star_upto(f, g, self.order)
    }

    fn star_upto(&self, f: &SparsePoly, g: &SparsePoly, max_k: usize) -> Result<HbarSeries> {
        let m = self.pi.dim();
        check_arity(m, f.arity())?;
        check_arity(m, g.arity())?;
        let entries = self.pi.nonzero_entries();
        let mut coeffs = vec![SparsePoly::zero(m); self.order + 1];
        let mut t = tensor(f, g);
        for k in 0..=max_k {
            if t.is_empty() {
                break;
            }
            let w = &self.weights[k];
            if !w.is_zero() {
                coeffs[k] = diagonal(&t, m).scale(w);
            }
            if k < max_k {
                t = apply_d(&t, m, &entries);
            }
        }
        HbarSeries::new(coeffs)
    }

    /// Cauchy convolution in `h` of the coefficientwise star products.
    pub fn star_series(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries> {
        check_arity(self.pi.dim(), f.arity())?;
        check_arity(self.pi.dim(), g.arity())?;
        if f.order() != g.order() {
            return Err(Error::OrderMismatch {
                left: f.order(),
                right: g.order(),
            });
        }
        let order = f.order().min(self.order);
        let mut out = HbarSeries::zero(f.arity(), order);
        for (j, fj) in f.coeffs().iter().enumerate().take(order + 1) {
            if fj.is_zero() {
                continue;
            }
            for (l, gl) in g.coeffs().iter().enumerate().take(order + 1 - j) {
                if gl.is_zero() {
                    continue;
                }
                let part = self.star_upto(fj, gl, order - j - l)?;
                out.add_shifted(&part, j + l);
            }
        }
        Ok(out)
    }

    /// `f ⋆ g − g ⋆ f`.
    pub fn star_commutator(&self, f: &SparsePoly, g: &SparsePoly) -> Result<HbarSeries> {
        self.star(f, g)?.try_sub(&self.star(g, f)?)
    }
}

impl Quantization for StarProduct {
    fn arity(&self) -> usize {
        self.pi.dim()
    }

    fn order(&self) -> usize {
        self.order
    }

    fn star_series(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries> {
        StarProduct::star_series(self, f, g)
    }
}

type Tensor = HashMap<Vec<u32>, ExactComplex>;

/// `f ⊗ g` as a polynomial on `V × V` (exponent vectors of length `2m`).
fn tensor(f: &SparsePoly, g: &SparsePoly) -> Tensor {
    let mut t = HashMap::with_capacity(f.len() * g.len());
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let mut e = Vec::with_capacity(mf.arity() * 2);
            e.extend_from_slice(mf.exps());
            e.extend_from_slice(mg.exps());
            t.insert(e, cf * cg);
        }
    }
    t
}

/// One application of `D = Σ π^{ab} ∂_{x_a} ∂_{y_b}`.
fn apply_d(t: &Tensor, m: usize, entries: &[(usize, usize, ExactComplex)]) -> Tensor {
    let mut out: Tensor = HashMap::with_capacity(t.len());
    for (e, c) in t {
        for (a, b, p) in entries {
            let ea = e[*a];
            let eb = e[m + *b];
            if ea == 0 || eb == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[*a] -= 1;
            ne[m + *b] -= 1;
            let coeff = (c * p).scale_int(ea as u64 * eb as u64);
            *out.entry(ne).or_default() += &coeff;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Δ*`: set `y = x`.
fn diagonal(t: &Tensor, m: usize) -> SparsePoly {
    let terms = t.iter().map(|(e, c)| {
        let exps: Vec<u32> = (0..m).map(|j| e[j] + e[m + j]).collect();
        (exps, c.clone())
    });
    SparsePoly::from_terms(m, terms).expect("diagonal has arity m")
}

/// `Δ* D^k (f ⊗ g)`.
pub fn bidiff_power(
    pi: &PoissonBivector,
    k: usize,
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<SparsePoly> {
    let m = pi.dim();
    check_arity(m, f.arity())?;
    check_arity(m, g.arity())?;
    let entries = pi.nonzero_entries();
    let mut t = tensor(f, g);
    for _ in 0..k {
        if t.is_empty() {
            break;
        }
        t = apply_d(&t, m, &entries);
    }
    Ok(diagonal(&t, m))
}

/// `T(F)`: compose every coefficient with `v ↦ v + v0`.
pub fn translate_series(f: &HbarSeries, v0: &[ExactComplex]) -> Result<HbarSeries> {
    let m = f.arity();
    if v0.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "translation of length {} for arity {m}",
            v0.len()
        )));
    }
    let id = Matrix::identity(m);
    f.try_map(|c| c.affine_subst(&id, v0))
}

/// `SᵀΘS − Θ` for the form recovered from `π`.
pub fn symplectic_residual(pi: &PoissonBivector, s: &Matrix) -> Result<Matrix> {
    let theta = form_from_bivector(pi)?;
    let m = theta.matrix();
    if s.rows() != m.rows() || s.cols() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, form is {}x{}",
            s.rows(),
            s.cols(),
            m.rows(),
            m.cols()
        )));
    }
    s.transpose().mul(m)?.mul(s)?.sub(m)
}

/// Check `(f∘S) ⋆ (g∘S) = (f ⋆ g)∘S` on the given pairs. `S` must be
/// symplectic for the form of `sp`; otherwise the call is rejected.
pub fn linear_action_check(
    sp: &StarProduct,
    s: &Matrix,
    pairs: &[(SparsePoly, SparsePoly)],
) -> Result<CheckReport> {
    let residual = symplectic_residual(&sp.pi, s)?;
    if !residual.is_zero() {
        return Err(Error::NotSymplectic(format!("SᵀΘS − Θ = {residual}")));
    }
    let zero = vec![ExactComplex::zero(); s.rows()];
    let pull = |p: &SparsePoly| p.affine_subst(s, &zero);
    let mut report = CheckReport::new(format!("linear action S = {s}"), Some(sp.order));
    for (f, g) in pairs {
        let lhs = sp.star(&pull(f)?, &pull(g)?)?;
        let rhs = sp.star(f, g)?.try_map(pull)?;
        report.record(axiom::EQUIVARIANCE, lhs.try_sub(&rhs)?.into(), || {
            format!("f = {f}, g = {g}")
        });
    }
    Ok(report)
}

/// Inputs for the axiom verifier. All series share one arity and order.
#[derive(Clone, Debug, Default)]
pub struct AxiomCorpus {
    pub pairs: Vec<(HbarSeries, HbarSeries)>,
    pub triples: Vec<(HbarSeries, HbarSeries, HbarSeries)>,
}

impl AxiomCorpus {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.triples.is_empty()
    }

    /// Polynomial pairs and triples lifted to series of order `order`.
    pub fn from_polys(
        pairs: &[(SparsePoly, SparsePoly)],
        triples: &[(SparsePoly, SparsePoly, SparsePoly)],
        order: usize,
    ) -> Self {
        let lift = |p: &SparsePoly| HbarSeries::from_poly(p.clone(), order);
        AxiomCorpus {
            pairs: pairs.iter().map(|(f, g)| (lift(f), lift(g))).collect(),
            triples: triples
                .iter()
                .map(|(f, g, k)| (lift(f), lift(g), lift(k)))
                .collect(),
        }
    }
}

/// Run the axiom suite for `sp` against its own bracket.
pub fn verify_dq_axioms(sp: &StarProduct, corpus: &AxiomCorpus) -> Result<AxiomReport> {
    let pi = sp.pi.clone();
    verify_dq_axioms_against(sp, &|f, g| bracket(&pi, f, g), corpus)
}

/// Run the axiom suite for any quantization against a reference bracket:
///
/// * leading term of `F ⋆ G` is `f₀ g₀`;
/// * `1 ⋆ t = t = t ⋆ 1` for the `h⁰` parts `t` of the corpus;
/// * `F ⋆ G − G ⋆ F = i h {f₀, g₀} + O(h²)`;
/// * `(F ⋆ G) ⋆ H = F ⋆ (G ⋆ H)`.
///
/// Everything is compared exactly up to the product's truncation order.
pub fn verify_dq_axioms_against<Q, B>(
    q: &Q,
    reference: &B,
    corpus: &AxiomCorpus,
) -> Result<AxiomReport>
where
    Q: Quantization + ?Sized,
    B: Fn(&SparsePoly, &SparsePoly) -> Result<SparsePoly> + ?Sized,
{
    if corpus.is_empty() {
        return Err(Error::Invalid("axiom corpus is empty".into()));
    }
    let order = q.order();
    let m = q.arity();
    let mut report = AxiomReport::new("deformation quantization axioms", Some(order));
    let fit = |s: &HbarSeries| -> Result<HbarSeries> {
        check_arity(m, s.arity())?;
        Ok(s.truncate(order))
    };
    let one = HbarSeries::from_poly(SparsePoly::one(m), order);
    let i = ExactComplex::i();

    let mut units_checked = std::collections::HashSet::new();
    for (f, g) in &corpus.pairs {
        let (f, g) = (fit(f)?, fit(g)?);
        let fg = q.star_series(&f, &g)?;
        let gf = q.star_series(&g, &f)?;
        let inputs = || format!("F = {f}, G = {g}");

        let lead = fg.coeff(0) - &(f.coeff(0) * g.coeff(0));
        report.record(axiom::PRODUCT, lead.into(), inputs);

        for t in [f.coeff(0), g.coeff(0)] {
            if !units_checked.insert(t.clone()) {
                continue;
            }
            let ts = HbarSeries::from_poly(t.clone(), order);
            let left = q.star_series(&one, &ts)?.try_sub(&ts)?;
            let right = q.star_series(&ts, &one)?.try_sub(&ts)?;
            let mut residual = left;
            if residual.is_zero() {
                residual = right;
            }
            report.record(axiom::UNIT, residual.into(), || format!("t = {t}"));
        }

        // only the h^0 and h^1 parts of the commutator are constrained
        let comm = fg.try_sub(&gf)?;
        let mut cs = vec![SparsePoly::zero(m); order + 1];
        cs[0] = comm.coeff(0).clone();
        if order >= 1 {
            let expected = reference(f.coeff(0), g.coeff(0))?.scale(&i);
            cs[1] = comm.coeff(1) - &expected;
        }
        report.record(axiom::COMMUTATOR, HbarSeries::new(cs)?.into(), inputs);
    }

    for (f, g, k) in &corpus.triples {
        let (f, g, k) = (fit(f)?, fit(g)?, fit(k)?);
        let left = q.star_series(&q.star_series(&f, &g)?, &k)?;
        let right = q.star_series(&f, &q.star_series(&g, &k)?)?;
        report.record(axiom::ASSOCIATIVITY, left.try_sub(&right)?.into(), || {
            format!("F = {f}, G = {g}, H = {k}")
        });
    }
    Ok(report)
}

/// Whether `f ⋆ g` stops at `h^{min(deg f, deg g)}`.
pub fn expansion_is_finite(sp: &StarProduct, f: &SparsePoly, g: &SparsePoly) -> Result<bool> {
    let s = sp.star(f, g)?;
    let bound = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => a.min(b) as usize,
        _ => return Ok(s.is_zero()),
    };
    Ok(s.coeffs().iter().skip(bound + 1).all(SparsePoly::is_zero))
}
