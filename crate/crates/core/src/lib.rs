//! Exact-arithmetic toolkit for cubic elliptic varieties.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals: Smith normal forms and Mordell-Weil groups, rational
//! polyhedral cones (nef, Mori, moving), the four Cox ring presentations
//! with their `Z^4`-gradings, multigraded Hilbert counts, GIT chamber
//! certificates, and the classification of a cubic-plus-line input into
//! one of the seven variety types.

pub mod classify;
pub mod cones;
pub mod coxring;
pub mod exact_linalg;
pub mod polynom;
pub mod report;
pub mod varieties;
pub mod verify;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Integer matrix over [`Int`].
pub type IntMat = exact_linalg::IntMatrix<Int>;

pub use cones::Cone;
pub use exact_linalg::{GroupInvariants, SnfResult};
pub use polynom::{MultiPoly, VariableContext};
pub use varieties::VarietyType;

/// Convenience constructor for small integers.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
