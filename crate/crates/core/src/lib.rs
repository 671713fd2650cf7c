//! Implicit representations of parametric curves and surfaces.
//!
//! The crate builds interpolation matrices whose kernels hold implicit
//! equations, answers ray queries against parametric patches through a
//! single preprocessed row vector, and computes conical implicit surfaces
//! for space curves from resultants of hyperplane pencils.

mod error;
mod scalar;

pub mod linalg;
pub mod model;
pub mod bivariate;
pub mod chow;
pub mod corpus;
pub mod interp;
pub mod interval;
pub mod poly;
pub mod rayshoot;
pub mod resultant;
pub mod roots;
pub mod supports;

pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly, UniPoly, Vars};
pub use scalar::{
    f64_to_rational, int, parse_rational, rat, rational_to_f64, Mode, Rational, Scalar,
    DEFAULT_FLOAT_ZERO_TOL,
};
