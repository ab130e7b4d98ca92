//! Exact-arithmetic laboratory for classical Padé approximation.
//!
//! Coefficients and approximants are exact rationals; norms, roots and
//! error grids use MPFR floats of configurable precision (256 bits by
//! default).

pub mod convergence;
pub mod error;
pub mod linalg;
pub mod pade;
pub mod sequence;
pub mod series;

pub use error::{Error, Result};
pub use rug::{Float, Integer, Rational};
