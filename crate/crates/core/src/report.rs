//! Pass/fail reports carrying exact residuals.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::matrix::Matrix;
use crate::poly::SparsePoly;
use crate::series::HbarSeries;

/// An exact residual: zero means the checked identity holds.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Poly(SparsePoly),
    Series(HbarSeries),
    Matrix(Matrix),
    /// Matrix with polynomial entries, e.g. `JᵀΘJ − Θ` for a polynomial map.
    PolyMatrix(Vec<Vec<SparsePoly>>),
    Text(String),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Poly(p) => p.is_zero(),
            Residual::Series(s) => s.is_zero(),
            Residual::Matrix(m) => m.is_zero(),
            Residual::PolyMatrix(rows) => rows.iter().flatten().all(SparsePoly::is_zero),
            Residual::Text(_) => false,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Poly(p) => write!(f, "{p}"),
            Residual::Series(s) => write!(f, "{s}"),
            Residual::Matrix(m) => write!(f, "{m}"),
            Residual::PolyMatrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    })
                    .collect();
                write!(f, "[{}]", rows.join("; "))
            }
            Residual::Text(t) => f.write_str(t),
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<SparsePoly> for Residual {
    fn from(p: SparsePoly) -> Self {
        Residual::Poly(p)
    }
}

impl From<HbarSeries> for Residual {
    fn from(s: HbarSeries) -> Self {
        Residual::Series(s)
    }
}

impl From<Matrix> for Residual {
    fn from(m: Matrix) -> Self {
        Residual::Matrix(m)
    }
}

/// First failing case of a check.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub case: usize,
    pub inputs: String,
    pub residual: Residual,
}

/// Result of one named identity checked over a number of cases.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            cases: 0,
            failures: 0,
            passed: true,
            witness: None,
        }
    }

    /// Record a case that holds without a residual to show.
    pub fn record_ok(&mut self) {
        self.cases += 1;
    }

    /// Record one case. `inputs` is only rendered for the first failure.
    pub fn record<F: FnOnce() -> String>(&mut self, residual: Residual, inputs: F) {
        let case = self.cases;
        self.cases += 1;
        if !residual.is_zero() {
            self.failures += 1;
            self.passed = false;
            if self.witness.is_none() {
                self.witness = Some(Witness {
                    case,
                    inputs: inputs(),
                    residual,
                });
            }
        }
    }
}

/// A list of named checks, e.g. the deformation-quantization axioms.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub title: String,
    /// Truncation order the identities were checked to, when relevant.
    pub order: Option<usize>,
    pub outcomes: Vec<CheckOutcome>,
}

/// Per-axiom report of the deformation-quantization verifier.
pub type AxiomReport = CheckReport;

impl CheckReport {
    pub fn new(title: impl Into<String>, order: Option<usize>) -> Self {
        CheckReport {
            title: title.into(),
            order,
            outcomes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    /// Outcome slot for `name`, created on first use.
    pub fn entry(&mut self, name: &str) -> &mut CheckOutcome {
        if let Some(k) = self.outcomes.iter().position(|o| o.name == name) {
            &mut self.outcomes[k]
        } else {
            self.outcomes.push(CheckOutcome::new(name));
            self.outcomes.last_mut().unwrap()
        }
    }

    pub fn record<F: FnOnce() -> String>(&mut self, name: &str, residual: Residual, inputs: F) {
        self.entry(name).record(residual, inputs);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.title)?;
        if let Some(k) = self.order {
            write!(f, " (order {k})")?;
        }
        writeln!(f)?;
        for o in &self.outcomes {
            writeln!(
                f,
                "  {:<4} {:<22} {}/{} cases",
                if o.passed { "pass" } else { "FAIL" },
                o.name,
                o.cases - o.failures,
                o.cases
            )?;
            if let Some(w) = &o.witness {
                writeln!(f, "       case {}: {}", w.case, w.inputs)?;
                writeln!(f, "       residual: {}", w.residual)?;
            }
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "checks FAILED"
            }
        )
    }
}
