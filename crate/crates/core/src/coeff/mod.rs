//! Exact arithmetic: polynomials over ℤ and ℚ, rational functions, and
//! truncated series in q and in auxiliary variables.

mod aux;
mod gcd;
mod matrix;
mod poly;
mod qseries;
mod ratfunc;
mod ring;

pub use aux::{AuxSeries, AuxVar};
pub use gcd::{content_in, gcd, gcd_many};
pub use matrix::Matrix;
pub use poly::{Coef, Monomial, MultiPoly, Poly, Var, ZPoly, NVARS};
pub use qseries::{lift_rational, rational_coeffs, QSeries};
pub use ratfunc::{parse_ratfunc, RatFunc};
pub use ring::{rat, rat_int, Ring, Scalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} vanishes identically after substitution")]
    VanishingDenominator(String),
    #[error("coefficient of {var}^{exponent} requested outside the window [{low}, {high}]")]
    OutsideWindow {
        var: String,
        exponent: i64,
        low: i64,
        high: i64,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand constructors used throughout the crate.
pub fn t1() -> RatFunc {
    RatFunc::var(Var::T1)
}

pub fn t2() -> RatFunc {
    RatFunc::var(Var::T2)
}

pub fn alpha() -> RatFunc {
    RatFunc::var(Var::Alpha)
}

pub fn m_var() -> RatFunc {
    RatFunc::var(Var::M)
}

pub fn q_var() -> RatFunc {
    RatFunc::var(Var::Q)
}

pub fn t_var() -> RatFunc {
    RatFunc::var(Var::T)
}

pub fn rf(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

pub fn rfq(n: i64, d: i64) -> RatFunc {
    RatFunc::from_ratio(n, d)
}

#[cfg(test)]
mod tests;
