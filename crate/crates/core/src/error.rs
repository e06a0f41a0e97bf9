use num_bigint::BigInt;
use thiserror::Error;

use crate::bqf::QuadForm;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quadratic form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: BigInt, b: BigInt, c: BigInt },

    #[error("quadratic form ({a}, {b}, {c}) is not reduced")]
    NotReduced { a: BigInt, b: BigInt, c: BigInt },

    #[error("matrix determinant must be +1 or -1, got {0}")]
    NotUnimodular(BigInt),

    #[error("isogeny degree must be at least {min}, got {d}")]
    InvalidDegree { d: BigInt, min: u32 },

    #[error("form {form} is not the matrix of a class for d = {d}")]
    NotInImage { form: Box<QuadForm>, d: BigInt },

    #[error("coefficients ({0}, {1}, {2}) are not in the positive cone of (F1, F2, Delta)")]
    NotInCone(BigInt, BigInt, BigInt),

    /// `inequality` names the failed ampleness condition.
    #[error("class ({a1}, {a2}, {a3}) is not ample: {inequality} fails")]
    NotAmple {
        a1: BigInt,
        a2: BigInt,
        a3: BigInt,
        inequality: &'static str,
    },

    #[error("pair (0, 0) does not define a curve")]
    ZeroPair,

    #[error("pair ({0}, {1}) is not coprime")]
    NotCoprime(BigInt, BigInt),

    #[error("search radius {radius} is too small, need at least {required}")]
    RadiusInsufficient { radius: BigInt, required: BigInt },

    #[error("invalid principally reduced form ({a}, {b}, {c}): {reason}")]
    InvalidPPClass {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        reason: &'static str,
    },

    #[error("class is not a principal polarization (L^2 = {0})")]
    NotPrincipal(BigInt),

    #[error("principal polarization is irreducible")]
    Irreducible,

    #[error("no solution found within search bound {0}")]
    NotFound(BigInt),

    #[error("bound must be non-negative, got {0}")]
    NegativeBound(BigInt),
}

impl Error {
    /// Whether the error is a violated mathematical precondition (as opposed
    /// to an exhausted search).
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::NotFound(_) | Error::RadiusInsufficient { .. })
    }
}
