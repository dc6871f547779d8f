//! Constant symplectic forms, their Poisson bivectors and brackets.
//!
//! Conventions. A form is stored as the matrix `M[a][b] = Θ(e_a, e_b)`;
//! wedge products use `(α∧β)(u, v) = α(u)β(v) − α(v)β(u)`. The map
//! `η: V → V*` is `η(v) = −i_v Θ`, i.e. `η(v)(w) = −Θ(v, w) = Θ(w, v)`,
//! which is the same statement as `η(w)(v) = Θ(v, w)`. Hence
//! `τ(df) = X` is the solution of `Θ(v, X) = df(v)` for all `v`, that is
//! `M X = ∇f`, and `{f, g} = Θ(τ df, τ dg)`. Working this through gives
//! `π = −M⁻¹`; with `ω₀ = dz2∧dz1` this yields `{z1, z2} = −1`.

use serde::Serialize;

use crate::error::{check_arity, Error, Result};
use crate::matrix::Matrix;
use crate::poly::SparsePoly;
use crate::scalar::ExactComplex;

/// A constant symplectic form on `C^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticForm {
    mat: Matrix,
}

impl SymplecticForm {
    pub fn new(mat: Matrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::MalformedForm(format!(
                "{}x{} matrix is not square",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.rows() == 0 || !mat.rows().is_multiple_of(2) {
            return Err(Error::MalformedForm(format!(
                "dimension {} is not a positive even number",
                mat.rows()
            )));
        }
        if !mat.is_antisymmetric() {
            return Err(Error::MalformedForm("matrix is not antisymmetric".into()));
        }
        if mat.det()?.is_zero() {
            return Err(Error::MalformedForm(
                "form is degenerate (zero determinant)".into(),
            ));
        }
        Ok(SymplecticForm { mat })
    }

    /// `Σ c · dz_a ∧ dz_b` over the listed `(a, b, c)` (0-based indices).
    pub fn from_wedges(dim: usize, wedges: &[(usize, usize, ExactComplex)]) -> Result<Self> {
        let mut m = Matrix::zeros(dim, dim);
        for (a, b, c) in wedges {
            if *a >= dim || *b >= dim {
                return Err(Error::MalformedForm(format!(
                    "wedge index out of range for dim {dim}"
                )));
            }
            // (dz_a ∧ dz_b)(e_a, e_b) = 1, (e_b, e_a) = -1
            m.set(*a, *b, m.get(*a, *b) + c);
            m.set(*b, *a, m.get(*b, *a) - c);
        }
        Self::new(m)
    }

    /// `ω₀ = dz2 ∧ dz1` on `C^2`, the Liouville form of `T*C` with base
    /// coordinate `z1` and fiber coordinate `z2`.
    pub fn omega0() -> Self {
        Self::from_wedges(2, &[(1, 0, ExactComplex::one())]).expect("omega0 is symplectic")
    }

    /// `ω₀ ⊕ ... ⊕ ω₀` on `C^{2n}`, coordinates `(z1, z2), (z3, z4), ...`.
    pub fn omega0_product(n: usize) -> Self {
        let block = Self::omega0().mat;
        Self::new(Matrix::block_diagonal(&vec![block; n])).expect("product of symplectic blocks")
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `Θ(u, v)`.
    pub fn eval(&self, u: &[ExactComplex], v: &[ExactComplex]) -> ExactComplex {
        let mv = self.mat.mul_vec(v).expect("dimension checked by caller");
        u.iter()
            .zip(&mv)
            .fold(ExactComplex::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// `τ(α)`: the vector `X` with `η(X) = α`, i.e. `Θ(v, X) = α(v)` for all `v`.
    pub fn tau(&self, covector: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        self.mat.solve(covector)
    }

    pub fn scale(&self, s: &ExactComplex) -> Result<Self> {
        Self::new(self.mat.scale(s))
    }
}

/// The Poisson bivector `π^{ab} = {z_a, z_b}` of a constant form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonBivector {
    pi: Matrix,
}

impl PoissonBivector {
    /// Wrap an antisymmetric matrix directly. Used for deliberately wrong
    /// bivectors in mutation tests; normal code goes through
    /// [`bivector_from_form`].
    pub fn from_matrix(pi: Matrix) -> Result<Self> {
        if !pi.is_antisymmetric() {
            return Err(Error::MalformedForm("bivector is not antisymmetric".into()));
        }
        Ok(PoissonBivector { pi })
    }

    pub fn dim(&self) -> usize {
        self.pi.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.pi
    }

    pub fn get(&self, a: usize, b: usize) -> &ExactComplex {
        self.pi.get(a, b)
    }

    /// Nonzero entries `(a, b, π^{ab})`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, ExactComplex)> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let v = self.pi.get(a, b);
                if !v.is_zero() {
                    out.push((a, b, v.clone()));
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        PoissonBivector { pi: self.pi.neg() }
    }
}

/// Derive `π` from `Θ` by evaluating `Θ(τ dz_a, τ dz_b)`.
pub fn bivector_from_form(form: &SymplecticForm) -> Result<PoissonBivector> {
    let n = form.dim();
    let hamiltonian: Vec<Vec<ExactComplex>> = (0..n)
        .map(|a| {
            let mut dz = vec![ExactComplex::zero(); n];
            dz[a] = ExactComplex::one();
            form.tau(&dz)
        })
        .collect::<Result<_>>()
        .map_err(|_| Error::MalformedForm("form is singular".into()))?;
    let mut pi = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            pi.set(a, b, form.eval(&hamiltonian[a], &hamiltonian[b]));
        }
    }
    Ok(PoissonBivector { pi })
}

/// Recover `Θ` from `π` under the same convention (`M = −π⁻¹`).
pub fn form_from_bivector(pi: &PoissonBivector) -> Result<SymplecticForm> {
    let inv = pi
        .pi
        .inverse()
        .map_err(|_| Error::MalformedForm("bivector is degenerate".into()))?;
    SymplecticForm::new(inv.neg())
}

/// `{f, g} = Σ π^{ab} ∂_a f ∂_b g`.
pub fn bracket(pi: &PoissonBivector, f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
    check_arity(pi.dim(), f.arity())?;
    check_arity(pi.dim(), g.arity())?;
    let n = pi.dim();
    let df: Vec<SparsePoly> = (0..n).map(|a| f.diff(a)).collect::<Result<_>>()?;
    let dg: Vec<SparsePoly> = (0..n).map(|b| g.diff(b)).collect::<Result<_>>()?;
    let mut out = SparsePoly::zero(n);
    for (a, b, c) in pi.nonzero_entries() {
        if df[a].is_zero() || dg[b].is_zero() {
            continue;
        }
        out = &out + &(&df[a] * &dg[b]).scale(&c);
    }
    Ok(out)
}

/// `{f,{g,k}} + {g,{k,f}} + {k,{f,g}}`.
pub fn jacobi_residual(
    pi: &PoissonBivector,
    f: &SparsePoly,
    g: &SparsePoly,
    k: &SparsePoly,
) -> Result<SparsePoly> {
    let a = bracket(pi, f, &bracket(pi, g, k)?)?;
    let b = bracket(pi, g, &bracket(pi, k, f)?)?;
    let c = bracket(pi, k, &bracket(pi, f, g)?)?;
    Ok(&(&a + &b) + &c)
}

/// `{f, g k} − {f, g}·k − {f, k}·g`.
pub fn leibniz_residual(
    pi: &PoissonBivector,
    f: &SparsePoly,
    g: &SparsePoly,
    k: &SparsePoly,
) -> Result<SparsePoly> {
    let lhs = bracket(pi, f, &g.try_mul(k)?)?;
    let rhs = &(&bracket(pi, f, g)? * k) + &(&bracket(pi, f, k)? * g);
    Ok(&lhs - &rhs)
}

/// `{f, g} + {g, f}`.
pub fn antisymmetry_residual(
    pi: &PoissonBivector,
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<SparsePoly> {
    Ok(&bracket(pi, f, g)? + &bracket(pi, g, f)?)
}
