//! Exact deformation-quantization workbench.
//!
//! Everything is computed over Gaussian rationals, so every identity the
//! checks assert is an exact equality of polynomials or truncated
//! `h`-series. The crate is layered bottom-up:
//!
//! * [`scalar`], [`poly`], [`series`], [`matrix`]: exact arithmetic.
//! * [`poisson`]: constant symplectic forms and their Poisson brackets.
//! * [`moyal`]: the Moyal-Weyl star product and the axiom verifier.
//! * [`atlas`]: translation surfaces, cotangent charts and chart patching.
//! * [`multi`]: product phase spaces and symmetric-group equivariance.
//! * [`transport`]: star products carried along polynomial symplectomorphisms.
//! * [`text`]: the canonical text grammar (parser and printer).
//! * [`corpus`]: seeded random inputs for the property checks.

pub mod atlas;
pub mod corpus;
pub mod error;
pub mod matrix;
pub mod moyal;
pub mod multi;
pub mod poisson;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;
pub mod text;
pub mod transport;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{Monomial, SparsePoly};
pub use scalar::ExactComplex;
pub use series::HbarSeries;

/// Default truncation order for `h`-series.
pub const DEFAULT_ORDER: usize = 8;
