//! Exact verification toolkit for Mazur-Tate modular elements of elliptic
//! curves over Q: modular symbols, group-ring arithmetic, cyclotomic and
//! p-adic machinery, and the executable identities built from them.

pub mod arith;
pub mod characters;
pub mod conjectures;
pub mod curve;
pub mod cyclotomic;
pub mod formalgroup;
pub mod groupring;
pub mod linalg;
pub mod lseries;
pub mod mazurtate;
pub mod modsym;
pub mod numeric;
pub mod otsuki;
pub mod padic;
pub mod periods;
pub mod report;

use std::fmt;

/// Crate-wide error type. Variant names follow the failure surfaces of the
/// individual operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    PrecisionUnsupported(String),
    NotMinimal(String),
    NotASubfield(String),
    HypothesisViolated(String),
    NormalizationAmbiguous(String),
    ConvergenceFailure(String),
    SingularOperator(String),
    ConfigInvalid(String),
    CacheCorrupt(String),
    BadInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionUnsupported(s) => write!(f, "precision unsupported: {s}"),
            Error::NotMinimal(s) => write!(f, "model not minimal: {s}"),
            Error::NotASubfield(s) => write!(f, "not a subfield: {s}"),
            Error::HypothesisViolated(s) => write!(f, "hypothesis violated: {s}"),
            Error::NormalizationAmbiguous(s) => write!(f, "normalization ambiguous: {s}"),
            Error::ConvergenceFailure(s) => write!(f, "convergence failure: {s}"),
            Error::SingularOperator(s) => write!(f, "singular operator: {s}"),
            Error::ConfigInvalid(s) => write!(f, "invalid config: {s}"),
            Error::CacheCorrupt(s) => write!(f, "cache corrupt: {s}"),
            Error::BadInput(s) => write!(f, "bad input: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
