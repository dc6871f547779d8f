//! Transport of star products along polynomial symplectomorphisms.
//!
//! A [`SymplectoMap`] carries explicit polynomial components for the map
//! `m` and its inverse. Functions are moved with `Ψ(F) = F ∘ m⁻¹` and back
//! with `Ψ⁻¹(F) = F ∘ m`, coefficientwise in `h`, and the transported
//! product is `F ⋆' G = Ψ⁻¹(Ψ F ⋆ Ψ G)`.

use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use crate::corpus;
use crate::error::{check_arity, Error, Result};
use crate::matrix::Matrix;
use crate::moyal::{axiom, verify_dq_axioms_against, AxiomCorpus, Quantization, StarProduct};
use crate::poisson::{bracket, form_from_bivector, PoissonBivector, SymplecticForm};
use crate::poly::{affine_components, identity_components, SparsePoly};
use crate::report::{AxiomReport, CheckReport, Residual};
use crate::scalar::ExactComplex;
use crate::series::HbarSeries;
use crate::text::{format_list, parse_poly};

/// Outcome names used by [`check_symplecto`].
pub mod check {
    pub const SYMPLECTIC: &str = "symplectic";
    pub const FORWARD_INVERSE: &str = "forward∘inverse";
    pub const INVERSE_FORWARD: &str = "inverse∘forward";
    /// Commutator compared with the bracket of the form itself.
    pub const COMMUTATOR_FORM: &str = "commutator-vs-form";
}

/// Polynomial map with a declared polynomial inverse.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplectoMap {
    dim: usize,
    forward: Vec<SparsePoly>,
    inverse: Vec<SparsePoly>,
    degree_bound: u32,
}

fn max_degree(ps: &[SparsePoly]) -> u32 {
    ps.iter().filter_map(SparsePoly::degree).max().unwrap_or(0)
}

impl SymplectoMap {
    /// Validate shapes and that no component exceeds `degree_bound`.
    /// Being an inverse pair and being symplectic are checked separately
    /// by [`check_symplecto`].
    pub fn new(
        forward: Vec<SparsePoly>,
        inverse: Vec<SparsePoly>,
        degree_bound: u32,
    ) -> Result<Self> {
        let dim = forward.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidMap(format!(
                "dimension must be even and positive, got {dim}"
            )));
        }
        if inverse.len() != dim {
            return Err(Error::InvalidMap(format!(
                "forward has {dim} components but inverse has {}",
                inverse.len()
            )));
        }
        for p in forward.iter().chain(&inverse) {
            check_arity(dim, p.arity())?;
        }
        let actual = max_degree(&forward).max(max_degree(&inverse));
        if actual > degree_bound {
            return Err(Error::InvalidMap(format!(
                "component degree {actual} exceeds the declared bound {degree_bound}"
            )));
        }
        Ok(SymplectoMap {
            dim,
            forward,
            inverse,
            degree_bound,
        })
    }

    /// Build from components, taking the degree bound from them.
    pub fn from_components(forward: Vec<SparsePoly>, inverse: Vec<SparsePoly>) -> Result<Self> {
        let bound = max_degree(&forward).max(max_degree(&inverse));
        Self::new(forward, inverse, bound)
    }

    /// Parse `{"dim": 2, "forward": ["z1", ..], "inverse": [..], "degree_bound": 2}`.
    pub fn from_json(src: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(src).map_err(|e| Error::InvalidMap(format!("bad JSON: {e}")))?;
        let bad = |m: &str| Error::InvalidMap(m.to_string());
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer \"dim\""))? as usize;
        let bound = v
            .get("degree_bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer \"degree_bound\""))?;
        let comps = |key: &str| -> Result<Vec<SparsePoly>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing \"{key}\" array")))?
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let s = c
                        .as_str()
                        .ok_or_else(|| bad(&format!("{key}[{k}] must be a string")))?;
                    parse_poly(s, dim).map_err(|e| Error::InvalidMap(format!("{key}[{k}]: {e}")))
                })
                .collect()
        };
        let (forward, inverse) = (comps("forward")?, comps("inverse")?);
        if forward.len() != dim {
            return Err(bad(&format!("\"forward\" must have {dim} components")));
        }
        Self::new(
            forward,
            inverse,
            u32::try_from(bound).map_err(|_| bad("degree bound too large"))?,
        )
    }

    pub fn to_json(&self) -> String {
        let strs = |ps: &[SparsePoly]| ps.iter().map(ToString::to_string).collect::<Vec<_>>();
        serde_json::to_string_pretty(&serde_json::json!({
            "dim": self.dim,
            "forward": strs(&self.forward),
            "inverse": strs(&self.inverse),
            "degree_bound": self.degree_bound,
        }))
        .expect("plain JSON")
    }

    pub fn identity(dim: usize) -> Self {
        let id = identity_components(dim);
        SymplectoMap {
            dim,
            forward: id.clone(),
            inverse: id,
            degree_bound: 1,
        }
    }

    /// `x ↦ x + v`.
    pub fn translation(v: &[ExactComplex]) -> Result<Self> {
        let minus: Vec<ExactComplex> = v.iter().map(|c| -c).collect();
        let id = Matrix::identity(v.len());
        Self::from_components(affine_components(&id, v), affine_components(&id, &minus))
    }

    /// `x ↦ A x`.
    pub fn linear(a: &Matrix) -> Result<Self> {
        let zero = vec![ExactComplex::zero(); a.rows()];
        let inv = a.inverse()?;
        Self::from_components(affine_components(a, &zero), affine_components(&inv, &zero))
    }

    /// `(z1, z2) ↦ (z1, z2 + p(z1))`; `p` must not involve `z2`.
    pub fn fiber_shear(p: &SparsePoly) -> Result<Self> {
        check_arity(2, p.arity())?;
        if p.uses_var(1) {
            return Err(Error::InvalidMap(
                "fiber shear must depend on z1 only".into(),
            ));
        }
        let (z1, z2) = (SparsePoly::var(2, 0), SparsePoly::var(2, 1));
        Self::from_components(vec![z1.clone(), &z2 + p], vec![z1, &z2 - p])
    }

    /// `(z1, z2) ↦ (z1 + q(z2), z2)`; `q` must not involve `z1`.
    pub fn base_shear(q: &SparsePoly) -> Result<Self> {
        check_arity(2, q.arity())?;
        if q.uses_var(0) {
            return Err(Error::InvalidMap(
                "base shear must depend on z2 only".into(),
            ));
        }
        let (z1, z2) = (SparsePoly::var(2, 0), SparsePoly::var(2, 1));
        Self::from_components(vec![&z1 + q, z2.clone()], vec![&z1 - q, z2])
    }

    /// The shear `(z1, z2) ↦ (z1, z2 + 3 z1²)`.
    pub fn standard_shear() -> Self {
        let p = SparsePoly::var(2, 0)
            .pow(2)
            .scale(&ExactComplex::from_int(3));
        Self::fiber_shear(&p).expect("valid shear")
    }

    /// Apply `self`, then `next`.
    pub fn then(&self, next: &SymplectoMap) -> Result<Self> {
        check_arity(self.dim, next.dim)?;
        let forward = next
            .forward
            .iter()
            .map(|c| c.subst(&self.forward))
            .collect::<Result<_>>()?;
        let inverse = self
            .inverse
            .iter()
            .map(|c| c.subst(&next.inverse))
            .collect::<Result<_>>()?;
        Self::from_components(forward, inverse)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forward(&self) -> &[SparsePoly] {
        &self.forward
    }

    pub fn inverse(&self) -> &[SparsePoly] {
        &self.inverse
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Swap the roles of forward and inverse.
    pub fn inverted(&self) -> Self {
        SymplectoMap {
            dim: self.dim,
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            degree_bound: self.degree_bound,
        }
    }

    /// `J[a][b] = ∂ forward_a / ∂ z_b`.
    pub fn jacobian(&self) -> Result<Vec<Vec<SparsePoly>>> {
        self.forward
            .iter()
            .map(|c| (0..self.dim).map(|b| c.diff(b)).collect())
            .collect()
    }
}

fn constant_entry(dim: usize, c: &ExactComplex) -> SparsePoly {
    SparsePoly::constant(dim, c.clone())
}

/// `JᵀΘJ − Θ` with polynomial entries.
pub fn symplectic_residual(
    m: &SymplectoMap,
    form: &SymplecticForm,
) -> Result<Vec<Vec<SparsePoly>>> {
    let n = m.dim();
    if form.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "map has dimension {n}, form {}",
            form.dim()
        )));
    }
    let j = m.jacobian()?;
    let theta = form.matrix();
    // ΘJ first, then Jᵀ(ΘJ)
    let mut tj = vec![vec![SparsePoly::zero(n); n]; n];
    for (a, row) in tj.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            for c in 0..n {
                let t = theta.get(a, c);
                if !t.is_zero() {
                    *slot = slot.try_add(&j[c][b].scale(t))?;
                }
            }
        }
    }
    let mut out = vec![vec![SparsePoly::zero(n); n]; n];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut acc = constant_entry(n, &-theta.get(a, b));
            for c in 0..n {
                acc = acc.try_add(&j[c][a].try_mul(&tj[c][b])?)?;
            }
            *slot = acc;
        }
    }
    Ok(out)
}

fn composition_residual(
    outer: &[SparsePoly],
    inner: &[SparsePoly],
) -> Result<Vec<Vec<SparsePoly>>> {
    let id = identity_components(outer.len());
    let row = outer
        .iter()
        .zip(&id)
        .map(|(c, z)| c.subst(inner)?.try_sub(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![row])
}

/// Check `JᵀΘJ = Θ` symbolically and both composition identities.
pub fn check_symplecto(m: &SymplectoMap, form: &SymplecticForm) -> Result<CheckReport> {
    let mut report = CheckReport::new(
        format!("symplectomorphism {}", format_list(m.forward())),
        None,
    );
    let label = || format!("forward = {}", format_list(m.forward()));
    report.record(
        check::SYMPLECTIC,
        Residual::PolyMatrix(symplectic_residual(m, form)?),
        label,
    );
    report.record(
        check::FORWARD_INVERSE,
        Residual::PolyMatrix(composition_residual(m.forward(), m.inverse())?),
        label,
    );
    report.record(
        check::INVERSE_FORWARD,
        Residual::PolyMatrix(composition_residual(m.inverse(), m.forward())?),
        label,
    );
    Ok(report)
}

/// `Ψ(F) = F ∘ m⁻¹`, coefficientwise.
pub fn psi_map(m: &SymplectoMap, f: &HbarSeries) -> Result<HbarSeries> {
    check_arity(m.dim(), f.arity())?;
    f.try_map(|c| c.subst(m.inverse()))
}

/// `Ψ⁻¹(F) = F ∘ m`, coefficientwise.
pub fn psi_inverse(m: &SymplectoMap, f: &HbarSeries) -> Result<HbarSeries> {
    check_arity(m.dim(), f.arity())?;
    f.try_map(|c| c.subst(m.forward()))
}

/// `F ⋆' G = Ψ⁻¹(Ψ F ⋆ Ψ G)`.
#[derive(Clone, Debug)]
pub struct TransportedStar {
    map: SymplectoMap,
    star: StarProduct,
}

impl TransportedStar {
    /// Rejects maps that fail [`check_symplecto`] for the form of `star`.
    pub fn new(map: SymplectoMap, star: StarProduct) -> Result<Self> {
        let form = form_from_bivector(star.bivector())?;
        let report = check_symplecto(&map, &form)?;
        if !report.passed() {
            let w = report
                .outcomes
                .iter()
                .find_map(|o| {
                    o.witness
                        .as_ref()
                        .map(|w| format!("{}: {}", o.name, w.residual))
                })
                .unwrap_or_default();
            return Err(Error::NotSymplectic(w));
        }
        Ok(TransportedStar { map, star })
    }

    /// Skip the symplectic check. Only for negative controls.
    pub fn new_unchecked(map: SymplectoMap, star: StarProduct) -> Result<Self> {
        check_arity(star.bivector().dim(), map.dim())?;
        Ok(TransportedStar { map, star })
    }

    pub fn map(&self) -> &SymplectoMap {
        &self.map
    }

    pub fn star(&self, f: &SparsePoly, g: &SparsePoly) -> Result<HbarSeries> {
        self.star_poly(f, g)
    }

    /// `{f, g}_m = {f∘m⁻¹, g∘m⁻¹} ∘ m`.
    pub fn pullback_bracket(&self, f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
        let inv = self.map.inverse();
        bracket(self.star.bivector(), &f.subst(inv)?, &g.subst(inv)?)?.subst(self.map.forward())
    }
}

impl Quantization for TransportedStar {
    fn arity(&self) -> usize {
        self.map.dim()
    }

    fn order(&self) -> usize {
        Quantization::order(&self.star)
    }

    fn star_series(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries> {
        let moved = self
            .star
            .star_series(&psi_map(&self.map, f)?, &psi_map(&self.map, g)?)?;
        psi_inverse(&self.map, &moved)
    }
}

/// `Ψ⁻¹(Ψ f ⋆ Ψ g)` to order `order`; the map must be symplectic for the
/// form of `sp`.
pub fn transported_star(
    m: &SymplectoMap,
    sp: &StarProduct,
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> Result<HbarSeries> {
    TransportedStar::new(m.clone(), sp.with_order(order))?.star(f, g)
}

/// Axiom suite for the transported product, with the commutator compared
/// against the pullback bracket. The report also carries
/// [`check::COMMUTATOR_FORM`]: the commutator against the bracket of the
/// underlying form, which is what the transported product must reproduce
/// as a quantization of the same symplectic manifold.
pub fn verify_transported_dq(
    m: &SymplectoMap,
    sp: &StarProduct,
    corpus: &AxiomCorpus,
    order: usize,
) -> Result<AxiomReport> {
    let tq = TransportedStar::new(m.clone(), sp.with_order(order))?;
    verify_transported_quantization(&tq, corpus)
}

/// As [`verify_transported_dq`] for an already built product (possibly
/// built with [`TransportedStar::new_unchecked`]).
pub fn verify_transported_quantization(
    tq: &TransportedStar,
    corpus: &AxiomCorpus,
) -> Result<AxiomReport> {
    let mut report = verify_dq_axioms_against(tq, &|f, g| tq.pullback_bracket(f, g), corpus)?;
    report.title = format!(
        "transported deformation quantization along {}",
        format_list(tq.map.forward())
    );
    let order = Quantization::order(tq);
    let pi: &PoissonBivector = tq.star.bivector();
    let i = ExactComplex::i();
    let entry = report.entry(check::COMMUTATOR_FORM);
    if order >= 1 {
        for (f, g) in &corpus.pairs {
            let (f0, g0) = (f.coeff(0), g.coeff(0));
            let comm = tq.star_poly(f0, g0)?.try_sub(&tq.star_poly(g0, f0)?)?;
            let r = comm.coeff(1) - &bracket(pi, f0, g0)?.scale(&i);
            entry.record(r.into(), || format!("f = {f0}, g = {g0}"));
        }
    }
    // keep the commutator outcomes adjacent
    if let Some(k) = report
        .outcomes
        .iter()
        .position(|o| o.name == axiom::COMMUTATOR)
    {
        let extra = report.outcomes.pop().expect("just inserted");
        report.outcomes.insert(k + 1, extra);
    }
    Ok(report)
}

/// A random polynomial symplectomorphism of `C^2` for `ω₀`: a composition
/// of `shears` alternating fiber and base shears with polynomials of degree
/// at most `max_degree`, followed by an `SL(2)` map and a translation.
pub fn random_symplecto<R: Rng>(
    rng: &mut R,
    shears: usize,
    max_degree: u32,
) -> Result<SymplectoMap> {
    let mut m = SymplectoMap::identity(2);
    for s in 0..shears {
        let d = rng.gen_range(2..=max_degree.max(2));
        let mut p = SparsePoly::zero(2);
        for e in 1..=d {
            let c = corpus::scalar(rng, e == d);
            p = &p + &SparsePoly::var(2, 0).pow(e).scale(&c);
        }
        let step = if s % 2 == 0 {
            SymplectoMap::fiber_shear(&p)?
        } else {
            SymplectoMap::base_shear(&p.relabel(&[1, 0])?)?
        };
        m = m.then(&step)?;
    }
    m = m.then(&SymplectoMap::linear(&corpus::sl2(rng))?)?;
    m.then(&SymplectoMap::translation(&corpus::vector(rng, 2))?)
}
