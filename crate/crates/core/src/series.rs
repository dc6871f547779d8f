//! Truncated formal power series `f_0 + h f_1 + ... + h^K f_K`.

use std::fmt;

use crate::error::{check_arity, Error, Result};
use crate::poly::SparsePoly;
use crate::scalar::ExactComplex;

/// A formal series in `h` truncated at order `K`, with polynomial
/// coefficients that all share one arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    arity: usize,
    coeffs: Vec<SparsePoly>,
}

impl HbarSeries {
    pub fn zero(arity: usize, order: usize) -> Self {
        HbarSeries {
            arity,
            coeffs: vec![SparsePoly::zero(arity); order + 1],
        }
    }

    /// `f` as a series with no `h` corrections.
    pub fn from_poly(f: SparsePoly, order: usize) -> Self {
        let mut s = Self::zero(f.arity(), order);
        s.coeffs[0] = f;
        s
    }

    /// `h^k f`, truncated at `order` (so zero when `k > order`).
    pub fn hbar_power(f: SparsePoly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(f.arity(), order);
        if k <= order {
            s.coeffs[k] = f;
        }
        s
    }

    /// Series with coefficient list `coeffs`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<SparsePoly>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Invalid("a series needs at least one coefficient".into()))?;
        let arity = first.arity();
        for c in &coeffs {
            check_arity(arity, c.arity())?;
        }
        Ok(HbarSeries { arity, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &SparsePoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<SparsePoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SparsePoly::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> HbarSeries {
        let mut coeffs: Vec<SparsePoly> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, SparsePoly::zero(self.arity));
        HbarSeries {
            arity: self.arity,
            coeffs,
        }
    }

    pub fn try_add(&self, other: &HbarSeries) -> Result<HbarSeries> {
        check_arity(self.arity, other.arity)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        Ok(HbarSeries {
            arity: self.arity,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &HbarSeries) -> Result<HbarSeries> {
        self.try_add(&other.neg())
    }

    /// Cauchy product of the commutative (pointwise) multiplication.
    pub fn try_mul(&self, other: &HbarSeries) -> Result<HbarSeries> {
        check_arity(self.arity, other.arity)?;
        let order = self.order().min(other.order());
        let mut coeffs = vec![SparsePoly::zero(self.arity); order + 1];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            for j in 0..=k {
                if self.coeffs[j].is_zero() || other.coeffs[k - j].is_zero() {
                    continue;
                }
                *slot = &*slot + &(&self.coeffs[j] * &other.coeffs[k - j]);
            }
        }
        Ok(HbarSeries {
            arity: self.arity,
            coeffs,
        })
    }

    pub fn neg(&self) -> HbarSeries {
        self.map(|c| -c)
    }

    pub fn scale(&self, s: &ExactComplex) -> HbarSeries {
        self.map(|c| c.scale(s))
    }

    /// Apply `f` to every coefficient. The arity follows the output.
    pub fn map<F: Fn(&SparsePoly) -> SparsePoly>(&self, f: F) -> HbarSeries {
        let coeffs: Vec<SparsePoly> = self.coeffs.iter().map(f).collect();
        HbarSeries {
            arity: coeffs[0].arity(),
            coeffs,
        }
    }

    pub fn try_map<F: Fn(&SparsePoly) -> Result<SparsePoly>>(&self, f: F) -> Result<HbarSeries> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        HbarSeries::new(coeffs)
    }

    /// Add `h^shift * s` into `self`, dropping terms beyond `self`'s order.
    pub(crate) fn add_shifted(&mut self, s: &HbarSeries, shift: usize) {
        for (k, c) in s.coeffs.iter().enumerate() {
            let idx = k + shift;
            if idx > self.order() {
                break;
            }
            if !c.is_zero() {
                self.coeffs[idx] = &self.coeffs[idx] + c;
            }
        }
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().rev().map(move |(m, c)| (m, c, k)));
        f.write_str(&crate::text::format_terms(terms))
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HbarSeries[{}; K={}]({self})", self.arity, self.order())
    }
}

/// Serialized as canonical text.
impl serde::Serialize for HbarSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
