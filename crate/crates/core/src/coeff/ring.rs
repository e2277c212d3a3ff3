use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with a ℚ-algebra structure, as used by the series and
/// matrix containers. Methods take references so big coefficients are not
/// moved around needlessly.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    /// Zero of the same shape (same truncation order for series).
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;
    /// Multiplicative inverse when it exists.
    fn inverse(&self) -> Option<Self>;
    /// Rough size, used to choose cheap pivots.
    fn complexity(&self) -> usize {
        1
    }
}

/// A ring whose zero and one need no template.
pub trait Scalar: Ring {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_rational(q: BigRational) -> Self;
    fn from_int(i: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(i)))
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for BigRational {
    fn nil() -> Self {
        BigRational::zero()
    }
    fn unit() -> Self {
        BigRational::one()
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
}

/// Shorthand for a rational from numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
