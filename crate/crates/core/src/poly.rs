//! Sparse multivariate polynomials over [`ExactComplex`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_arity, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::ExactComplex;

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `arity` variables `z1..zm`.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex exponent vectors and
/// never store a zero coefficient, so two polynomials are equal exactly when
/// their maps are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    arity: usize,
    terms: BTreeMap<Monomial, ExactComplex>,
}

fn accumulate(acc: &mut HashMap<Monomial, ExactComplex>, mono: Monomial, coeff: ExactComplex) {
    match acc.entry(mono) {
        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &coeff,
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
    }
}

/// Nested Horner evaluation of `Σ c_m g^m`, one variable per level, so
/// every multiplication is by a single component `g[var]`.
fn horner(
    terms: &[(&Monomial, &ExactComplex)],
    var: usize,
    g: &[SparsePoly],
    target: usize,
) -> SparsePoly {
    if var == g.len() {
        let c = terms
            .iter()
            .fold(ExactComplex::zero(), |acc, (_, c)| &acc + *c);
        return SparsePoly::constant(target, c);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &ExactComplex)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[var]).or_default().push((m, c));
    }
    let mut acc = SparsePoly::zero(target);
    let mut prev: Option<u32> = None;
    for (&e, group) in groups.iter().rev() {
        if let Some(p) = prev {
            for _ in e..p {
                acc = &acc * &g[var];
            }
        }
        acc = &acc + &horner(group, var + 1, g, target);
        prev = Some(e);
    }
    for _ in 0..prev.unwrap_or(0) {
        acc = &acc * &g[var];
    }
    acc
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, ExactComplex::one())
    }

    pub fn constant(arity: usize, c: ExactComplex) -> Self {
        Self::monomial(Monomial::one(arity), c)
    }

    /// The coordinate function `z_{index+1}` (0-based index).
    pub fn var(arity: usize, index: usize) -> Self {
        Self::monomial(Monomial::var(arity, index), ExactComplex::one())
    }

    pub fn monomial(mono: Monomial, c: ExactComplex) -> Self {
        let arity = mono.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        SparsePoly { arity, terms }
    }

    /// Build from `(exponents, coefficient)` pairs, collecting like terms.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactComplex)>,
    {
        let mut acc = HashMap::new();
        for (e, c) in terms {
            check_arity(arity, e.len())?;
            accumulate(&mut acc, Monomial(e), c);
        }
        Ok(Self::from_map(arity, acc))
    }

    fn from_map(arity: usize, acc: HashMap<Monomial, ExactComplex>) -> Self {
        SparsePoly {
            arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> ExactComplex {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Total degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Largest exponent of variable `index` appearing in any term.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.0[index]).max().unwrap_or(0)
    }

    /// Whether variable `index` occurs in some term.
    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.0[index] > 0)
    }

    pub fn constant_term(&self) -> ExactComplex {
        self.terms
            .get(&Monomial::one(self.arity))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        check_arity(self.arity, other.arity)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_default();
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(SparsePoly {
            arity: self.arity,
            terms,
        })
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        check_arity(self.arity, other.arity)?;
        let mut acc = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Ok(Self::from_map(self.arity, acc))
    }

    pub fn scale(&self, c: &ExactComplex) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `index` (0-based).
    pub fn diff(&self, index: usize) -> Result<SparsePoly> {
        if index >= self.arity {
            return Err(Error::VariableOutOfRange {
                index: index + 1,
                arity: self.arity,
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            terms.insert(Monomial(exps), c.scale_int(e as u64));
        }
        Ok(SparsePoly {
            arity: self.arity,
            terms,
        })
    }

    /// `f ∘ g`: substitute `g[j]` for `z_{j+1}` and expand.
    pub fn subst(&self, g: &[SparsePoly]) -> Result<SparsePoly> {
        check_arity(self.arity, g.len())?;
        let target = g[0].arity;
        for gj in g {
            check_arity(target, gj.arity)?;
        }
        let terms: Vec<(&Monomial, &ExactComplex)> = self.terms.iter().collect();
        Ok(horner(&terms, 0, g, target))
    }

    /// `f ∘ (v ↦ A v + c)`.
    pub fn affine_subst(&self, a: &Matrix, c: &[ExactComplex]) -> Result<SparsePoly> {
        let m = self.arity;
        if a.rows() != m || a.cols() != m || c.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "affine map must be {m}x{m} with a length-{m} shift, got {}x{} and {}",
                a.rows(),
                a.cols(),
                c.len()
            )));
        }
        self.subst(&affine_components(a, c))
    }

    /// Rename variables: `z_j` becomes `z_{map[j]}` (0-based, target arity
    /// unchanged). `map` need not be a bijection.
    pub fn relabel(&self, map: &[usize]) -> Result<SparsePoly> {
        check_arity(self.arity, map.len())?;
        if let Some(&bad) = map.iter().find(|&&t| t >= self.arity) {
            return Err(Error::VariableOutOfRange {
                index: bad + 1,
                arity: self.arity,
            });
        }
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; self.arity];
            for (j, &x) in m.0.iter().enumerate() {
                e[map[j]] += x;
            }
            accumulate(&mut acc, Monomial(e), c.clone());
        }
        Ok(Self::from_map(self.arity, acc))
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[ExactComplex]) -> Result<ExactComplex> {
        check_arity(self.arity, point.len())?;
        let mut total = ExactComplex::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Embed into a larger variable set: `z_j` becomes `z_{offset+j}` in arity
    /// `arity`.
    pub fn embed(&self, arity: usize, offset: usize) -> Result<SparsePoly> {
        if offset + self.arity > arity {
            return Err(Error::DimensionMismatch(format!(
                "cannot embed arity {} at offset {offset} into arity {arity}",
                self.arity
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; arity];
                e[offset..offset + self.arity].copy_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(SparsePoly { arity, terms })
    }
}

/// Components of the affine map `v ↦ A v + c` as linear polynomials.
pub fn affine_components(a: &Matrix, c: &[ExactComplex]) -> Vec<SparsePoly> {
    let m = a.rows();
    (0..m)
        .map(|j| {
            let mut p = SparsePoly::constant(a.cols(), c[j].clone());
            for k in 0..a.cols() {
                p = &p + &SparsePoly::var(a.cols(), k).scale(a.get(j, k));
            }
            p
        })
        .collect()
}

/// The identity substitution `(z1, .., zm)`.
pub fn identity_components(arity: usize) -> Vec<SparsePoly> {
    (0..arity).map(|j| SparsePoly::var(arity, j)).collect()
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_terms(
            self.terms.iter().rev().map(|(m, c)| (m, c, 0)),
        ))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.arity)
    }
}

// Operator forms panic on arity mismatch; the `try_*` methods report it.
impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Serialized as canonical text.
impl serde::Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
