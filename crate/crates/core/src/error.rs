use thiserror::Error;

use crate::report::Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("relation is not antisymmetric: `{0}` and `{1}` are mutually comparable")]
    NotAntisymmetric(String, String),
    #[error("cyclic covers: `{0}` and `{1}` lie on a cycle")]
    CyclicCovers(String, String),
    #[error("not bounded: {0}")]
    NotBounded(String),
    #[error("not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },
    #[error("not a {{0,1}}-sublattice: {0}")]
    NotSublattice(String),
    #[error("map mismatch: {0}")]
    MapMismatch(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(Report),
    #[error("invalid embedding functor: {0}")]
    InvalidEmbedding(String),
    #[error("functor is not normalized: {0}")]
    NotNormalized(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed or inconsistent user input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::BudgetExceeded(_) | Error::Invariant(_))
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyCarrier => "empty carrier",
            Error::DuplicateLabel(_) => "duplicate label",
            Error::UnknownLabel(_) => "unknown label",
            Error::IndexOutOfRange(_) => "index out of range",
            Error::NotAntisymmetric(..) => "not antisymmetric",
            Error::CyclicCovers(..) => "cyclic covers",
            Error::NotBounded(_) => "not bounded",
            Error::NotALattice { .. } => "not a lattice",
            Error::NotSublattice(_) => "not a sublattice",
            Error::MapMismatch(_) => "map mismatch",
            Error::InvalidFunctor(_) => "invalid functor",
            Error::InvalidEmbedding(_) => "invalid embedding",
            Error::NotNormalized(_) => "not normalized",
            Error::BaseMismatch(_) => "base mismatch",
            Error::BudgetExceeded(_) => "budget exceeded",
            Error::Input(_) => "invalid input",
            Error::Invariant(_) => "invariant violation",
            Error::Json(_) => "malformed json",
        }
    }

    /// Labels of the offending elements, when the error names any.
    pub fn witness(&self) -> Vec<String> {
        match self {
            Error::DuplicateLabel(a) | Error::UnknownLabel(a) => vec![a.clone()],
            Error::NotAntisymmetric(a, b) | Error::CyclicCovers(a, b) => vec![a.clone(), b.clone()],
            Error::NotALattice { a, b, .. } => vec![a.clone(), b.clone()],
            Error::InvalidFunctor(r) => r.violations.first().map(|v| v.witness.clone()).unwrap_or_default(),
            _ => Vec::new(),
        }
    }
}
