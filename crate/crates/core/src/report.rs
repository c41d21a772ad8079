//! Report-style results with machine-readable witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    Unbounded,
    NotMonotone,
    ZeroNotPreserved,
    OneNotPreserved,
    NotZeroSeparating,
    EndpointMismatch,
    MissingMorphism,
    UnexpectedMorphism,
    IdentityLaw,
    CompositionLaw,
    NotIsomorphism,
    SquareNotCommuting,
    NotNormalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
    /// Labels of the elements (or base indices) exhibiting the failure.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            ok: true,
            violations: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, clause: Clause, detail: S, witness: Vec<String>) {
        self.ok = false;
        self.violations.push(Violation {
            clause,
            detail: detail.into(),
            witness,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.ok &= other.ok;
        self.violations.extend(other.violations);
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?}: {} [{}]", v.clause, v.detail, v.witness.join(", ")))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}
