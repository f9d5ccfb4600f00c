//! Construction and verification of X₁ exceptional orthogonal polynomials.
//!
//! The four supported families (Laguerre types I/II/III and Jacobi) are
//! orthogonal polynomial systems that skip one degree. Each polynomial is
//! recovered from the *adjusted moments* of the weight — moments of
//! `(x − ξ)^k` where `ξ` is the root of the degree-one denominator factor
//! `η` — by solving a small bordered-Hankel linear system. Everything the
//! construction relies on (moment recursions, closed-form initial moments,
//! the exceptional condition at ξ, eigenfunction structure, orthogonality)
//! can be cross-checked against direct numerical quadrature; the [`verify`]
//! module does exactly that.
//!
//! The crate is `no_std`-compatible (requires `alloc`); all floating-point
//! math goes through `libm` so results are identical with or without `std`.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod dd;
pub mod detrep;
pub mod family;
pub mod linalg;
pub mod moments;
pub mod poly;
pub mod quadrature;
pub mod specfun;
pub mod verify;

use core::fmt;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Γ(x) evaluated at a pole (x a non-positive integer).
    GammaPole { x: f64 },
    /// An argument was outside the admissible domain of the function.
    /// `what` names the violated constraint.
    Domain { what: &'static str, value: f64 },
    /// Appell F₁ parameter restriction (needs c > a > 0) violated.
    ParameterRestriction { what: &'static str },
    /// Adaptive quadrature failed to reach the requested tolerance.
    /// Carries the best value obtained and its error estimate.
    QuadratureNonConvergence { best: f64, error_estimate: f64 },
    /// Invalid quadrature configuration (non-positive tolerance, zero depth).
    InvalidQuadratureSpec { what: &'static str },
    /// Division by the zero polynomial.
    DivisionByZeroPolynomial,
    /// A rational expression expected to reduce to a polynomial did not
    /// (division remainder exceeded the tolerance).
    NonPolynomialResult { remainder_norm: f64 },
    /// Family parameters violate the admissibility constraints.
    ParameterDomain { what: &'static str },
    /// Requested degree is not admissible for the family (e.g. the skipped
    /// degree 1 of Laguerre type III).
    InadmissibleDegree { n: usize },
    /// Fewer moments available than the matrix assembly requires.
    InsufficientMoments { needed: usize, have: usize },
    /// The moment matrix is numerically singular.
    SingularMatrix { condition_estimate: f64 },
    /// Gram–Schmidt hit a pivot with vanishing norm.
    RankDeficient { pivot: usize },
    /// Moment recursion step with vanishing leading coefficient k·r₂ + s₁.
    VanishingLeadingCoefficient { k: usize },
    /// Quadratic η with complex roots (discriminant < 0).
    ComplexRoots { discriminant: f64 },
    /// The image of the operator is not a polynomial: the input violates
    /// the exceptional condition.
    NonPolynomialImage { remainder_norm: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GammaPole { x } => write!(f, "gamma pole at x = {x}"),
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::ParameterRestriction { what } => {
                write!(f, "parameter restriction violated: {what}")
            }
            Error::QuadratureNonConvergence {
                best,
                error_estimate,
            } => write!(
                f,
                "quadrature did not converge (best {best}, estimate {error_estimate})"
            ),
            Error::InvalidQuadratureSpec { what } => {
                write!(f, "invalid quadrature spec: {what}")
            }
            Error::DivisionByZeroPolynomial => write!(f, "division by zero polynomial"),
            Error::NonPolynomialResult { remainder_norm } => write!(
                f,
                "expression did not reduce to a polynomial (remainder norm {remainder_norm})"
            ),
            Error::ParameterDomain { what } => write!(f, "invalid family parameters: {what}"),
            Error::InadmissibleDegree { n } => write!(f, "degree {n} is not admissible"),
            Error::InsufficientMoments { needed, have } => {
                write!(f, "need {needed} moments, have {have}")
            }
            Error::SingularMatrix { condition_estimate } => {
                write!(f, "singular matrix (condition estimate {condition_estimate})")
            }
            Error::RankDeficient { pivot } => write!(f, "rank deficiency at pivot {pivot}"),
            Error::VanishingLeadingCoefficient { k } => {
                write!(f, "recursion coefficient k*r2+s1 vanishes at k = {k}")
            }
            Error::ComplexRoots { discriminant } => {
                write!(f, "quadratic has complex roots (discriminant {discriminant})")
            }
            Error::NonPolynomialImage { remainder_norm } => write!(
                f,
                "operator image is not a polynomial (remainder norm {remainder_norm}); \
                 the input violates the exceptional condition"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
