use thiserror::Error;

use crate::monomial::{Monomial, Restriction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} lies outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ambient size {n} exceeds the supported maximum of {max}")]
    AmbientTooLarge { n: usize, max: usize },

    #[error("supports of {left} and {right} overlap; product is not square-free")]
    OverlappingSupports { left: Monomial, right: Monomial },

    #[error("monomial {monomial} has degree {found}, expected {expected}")]
    DegreeMismatch {
        monomial: Monomial,
        found: usize,
        expected: usize,
    },

    #[error("monomial {monomial} violates the {mode} restriction by {set}")]
    RestrictionViolated {
        monomial: Monomial,
        set: Monomial,
        mode: Restriction,
    },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("generator {0} has degree below 2")]
    LowDegreeGenerator(Monomial),

    #[error("the full simplex has no Alexander dual")]
    FullSimplex,

    #[error("ideal is not an f-ideal; the direct unmixedness test does not apply")]
    NotFIdeal,

    #[error("V({n},{d}) is empty: C({n},{d}) is odd")]
    EmptyFIdealClass { n: usize, d: usize },

    #[error("cannot pad {size} monomials to {target}")]
    PaddingOverflow { size: usize, target: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("search budget exhausted; value lies in [{lower}, {upper}]")]
    SearchTimeout { lower: usize, upper: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
