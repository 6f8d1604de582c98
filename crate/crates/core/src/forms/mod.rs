//! Exact exterior calculus on the state manifold in the `(p, V)` chart.
//!
//! Coefficient functions are finite sums of Laurent monomials
//! `c · nR^γ · c_v^δ · p^α · V^β`. Addition and subtraction live in the sum,
//! division in negative exponents. Potentials additionally admit `ln p` and
//! `ln V` terms with state-independent coefficients.

mod calculus;
mod field;
mod text;

use std::fmt;

use num_traits::{FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

pub use calculus::{d_one, d_scalar, find_potential, is_closed, OneForm, Potential, TwoForm, ZeroForm};
pub use field::{Constants, Exponents, Monomial, ScalarField};
pub use text::{parse_field, parse_one_form};

/// Scalar ring for symbolic coefficients.
///
/// Implemented for every signed numeric type that converts to and from
/// primitives, which covers `Ratio<i64>`, `BigRational` and the float types.
/// Exact types are required wherever closedness must be decided.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + PartialEq + Signed + FromPrimitive + ToPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable in the coefficient ring")
    }
}

impl<T> Coefficient for T where
    T: Clone + fmt::Debug + fmt::Display + PartialEq + Signed + FromPrimitive + ToPrimitive
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("1-form is not closed")]
    NotClosed,
    #[error("closed 1-form has no potential in the supported grammar: {0}")]
    NotIntegrable(String),
    #[error("logarithm coefficient depends on p or V: {0}")]
    StateDependentLog(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
