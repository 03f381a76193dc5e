//! Exact computational tools for finite Coxeter groups.
//!
//! The crate builds the finite Coxeter groups A_n, BC_n, D_n, I2(m), H3 and H4,
//! their exact character tables and fake degrees, the one-parameter family of
//! representations carried by the span of the group's involutions, unipotent
//! character data with Fourier transform matrices, Frobenius-Schur indicator
//! functions, and Kazhdan-Lusztig polynomials with their left cells.  All
//! arithmetic is exact: arbitrary-precision rationals, the quadratic field
//! Q(sqrt5), and cyclotomic fields Q(zeta_N) in the power basis.
//!
//! The numeric kernel (`Poly`, `Mat`) is generic over a scalar ring so the same
//! code runs over exact fields and over `f64`/`Complex64` for floating-point
//! sanity bridges; concrete aliases for the common instantiations are exported
//! at the crate root.

pub mod chartab;
pub mod combinat;
pub mod coxgroup;
pub mod cyclo;
pub mod fourier;
pub mod invmod;
pub mod klcells;
pub mod mat;
pub mod uch;

pub use cyclo::{CycloNumber, GoldenRational, Poly, Rational};
pub use mat::Mat;

/// Polynomials over the rationals.
pub type QPoly = Poly<Rational>;
/// Polynomials over cyclotomic numbers.
pub type CPoly = Poly<CycloNumber>;
/// Polynomials over Q(sqrt5).
pub type GPoly = Poly<GoldenRational>;
/// Dense matrices over the rationals.
pub type QMat = Mat<Rational>;
/// Dense matrices over cyclotomic numbers.
pub type CMat = Mat<CycloNumber>;
/// Dense matrices over Q(sqrt5).
pub type GMat = Mat<GoldenRational>;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("group order {order} exceeds bound {bound}")]
    BoundExceeded { order: u64, bound: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("missing data: {0}")]
    MissingData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

mod scalar {
    use num_traits::{One, Zero};
    use std::fmt::Debug;
    use std::ops::{Add, Div, Mul, Neg, Sub};

    /// Minimal ring interface used by the generic numeric kernel.
    pub trait RingScalar:
        Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
    {
    }

    impl<T> RingScalar for T where
        T: Clone
            + PartialEq
            + Debug
            + Zero
            + One
            + Neg<Output = T>
            + Add<Output = T>
            + Sub<Output = T>
            + Mul<Output = T>
    {
    }

    /// Rings with exact division, i.e. fields.
    pub trait FieldScalar: RingScalar + Div<Output = Self> {
        /// Multiplicative inverse; panics on zero.
        fn inv(&self) -> Self {
            Self::one() / self.clone()
        }
    }

    impl<T> FieldScalar for T where T: RingScalar + Div<Output = T> {}
}

pub use scalar::{FieldScalar, RingScalar};
