//! Exact curvature and Schouten–Weyl invariants of left-invariant Lorentzian
//! metrics on three-dimensional Lie groups.
//!
//! The pipeline runs bottom-up: [`scalar`] supplies the coefficient ring,
//! [`tensor`] the index algebra, [`lie`] the structure constants and frame
//! families, [`curvature`] the connection through the Schouten–Weyl tensor,
//! and [`audit`] the condition systems and table checks built on top.

#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod curvature;
pub mod error;
pub mod lie;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{parse_poly, Polynomial, Rational, Scalar, ScalarValue, VarList};
pub use tensor::{Direction, Metric, Tensor, Variance};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
