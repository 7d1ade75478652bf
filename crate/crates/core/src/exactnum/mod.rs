//! Exact scalars: Gaussian rationals, multivariate polynomials over them and
//! the field of rational functions in named parameters.
//!
//! Everything here is immutable and `Send + Sync`; every operation returns a
//! fresh value.

mod gaussian;
mod parse;
mod poly;
mod ratfunc;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use gaussian::GaussianRational;
pub use parse::{parse_gaussian, parse_poly};
pub use poly::{make_vars, Monomial, Poly, Vars};
pub use ratfunc::RationalFunction;

/// A commutative ring element with partial inversion. Fields invert every
/// nonzero element; polynomial rings only invert nonzero constants.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn inv(&self) -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * &r)
    }

    /// Canonical textual form used in reports.
    fn render(&self) -> String;
}

/// Implements the four owned/borrowed combinations of a binary operator in
/// terms of a `fn(&T, &T) -> T`.
macro_rules! forward_binop {
    (impl<$($g:ident: $b:path),*> $tr:ident, $method:ident for $ty:ty => $f:ident) => {
        impl<$($g: $b),*> std::ops::$tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                <$ty>::$f(&self, &rhs)
            }
        }
        impl<'a, $($g: $b),*> std::ops::$tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                <$ty>::$f(&self, rhs)
            }
        }
        impl<'a, $($g: $b),*> std::ops::$tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                <$ty>::$f(self, &rhs)
            }
        }
        impl<'a, 'b, $($g: $b),*> std::ops::$tr<&'b $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'b $ty) -> $ty {
                <$ty>::$f(self, rhs)
            }
        }
    };
}
pub(crate) use forward_binop;
