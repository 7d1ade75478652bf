//! Exact verification tools for universal virtual and welded braid groups
//! and their homogeneous local representations.
//!
//! The numeric core is generic over an exact [`Scalar`]; the aliases below
//! fix the instantiations used throughout: Gaussian rationals for
//! specialized values and rational functions over them for symbolic
//! parameters.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod presentations;
pub mod representations;

pub use error::{Error, Result};
pub use exactnum::{GaussianRational, Scalar};

/// Polynomials in named parameters over Q(i).
pub type MultiPoly = exactnum::Poly<GaussianRational>;
/// Rational functions in named parameters over Q(i).
pub type RatFunc = exactnum::RationalFunction<GaussianRational>;
