//! Exact-arithmetic matrix Lie affgebras.
//!
//! Scalars and matrices live in [`scalar`] and [`matrix`]; [`affine`] holds the
//! heap/action/bracket interface, [`classes`] the normalised matrix classes,
//! [`transforms`] the conjugations onto block form and [`verify`] the check
//! engine.

pub mod affine;
pub mod classes;
pub mod error;
pub mod matrix;
pub mod scalar;
pub mod solver;
pub mod transforms;
pub mod verify;
pub mod wire;

pub use error::{AlgebraError, Result};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
