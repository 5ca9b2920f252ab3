//! Exact arithmetic over `F_p` and `F_{p^2}`, generic finite-field
//! extensions, and dense polynomial algebra on top of them.

pub mod bipoly;
pub mod field;
pub mod poly;

use std::fmt;

/// Errors from field construction and polynomial algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// The modulus failed a deterministic primality check.
    CompositeModulus(u64),
    /// `p = 2` is not supported; the quadratic extension model needs odd `p`.
    TwoNotSupported,
    /// The modulus is too large for the canonical `a + b*p` encoding.
    ModulusTooLarge(u64),
    /// `gcd(0, 0)` requested.
    BothZero,
    /// Resultant input has degree 0 in the eliminated variable.
    DegenerateInput,
    /// Root-finding on the zero polynomial.
    ZeroPolynomial,
    /// Interpolation nodes repeat an x-value.
    DuplicateNode,
    /// The field has too few usable evaluation points for the requested
    /// degree bound.
    NotEnoughPoints,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::CompositeModulus(p) => write!(f, "modulus {p} is not prime"),
            AlgebraError::TwoNotSupported => write!(f, "p = 2 is not supported"),
            AlgebraError::ModulusTooLarge(p) => {
                write!(f, "modulus {p} exceeds the canonical-encoding limit")
            }
            AlgebraError::BothZero => write!(f, "gcd of two zero polynomials"),
            AlgebraError::DegenerateInput => {
                write!(f, "resultant input is constant in the eliminated variable")
            }
            AlgebraError::ZeroPolynomial => write!(f, "zero polynomial has every element as root"),
            AlgebraError::DuplicateNode => write!(f, "interpolation nodes must be distinct"),
            AlgebraError::NotEnoughPoints => {
                write!(f, "field too small for the required evaluation points")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}
