use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ring::Ring;
use super::CoeffError;

/// Tag of an auxiliary formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxVar {
    Z,
    T0,
    S,
    W,
    Y,
}

impl fmt::Display for AuxVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuxVar::Z => "z",
            AuxVar::T0 => "t0",
            AuxVar::S => "s",
            AuxVar::W => "w",
            AuxVar::Y => "y",
        };
        write!(f, "{}", s)
    }
}

/// Laurent series in one auxiliary variable, known exactly on the window
/// `[low, high]`. Reading a coefficient outside the window is an error.
#[derive(Clone, PartialEq, Debug)]
pub struct AuxSeries<T> {
    var: AuxVar,
    low: i64,
    coeffs: Vec<T>,
}

impl<T: Clone> AuxSeries<T> {
    pub fn new(var: AuxVar, low: i64, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "empty window");
        AuxSeries { var, low, coeffs }
    }

    pub fn from_fn(var: AuxVar, low: i64, high: i64, f: impl Fn(i64) -> T) -> Self {
        assert!(high >= low, "empty window");
        AuxSeries {
            var,
            low,
            coeffs: (low..=high).map(f).collect(),
        }
    }

    pub fn var(&self) -> AuxVar {
        self.var
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> Result<&T, CoeffError> {
        if k < self.low || k > self.high() {
            return Err(CoeffError::OutsideWindow {
                var: self.var.to_string(),
                exponent: k,
                low: self.low,
                high: self.high(),
            });
        }
        Ok(&self.coeffs[(k - self.low) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        let low = self.low;
        self.coeffs.iter().enumerate().map(move |(i, c)| (low + i as i64, c))
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> AuxSeries<U> {
        AuxSeries {
            var: self.var,
            low: self.low,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Narrow the window; fails if the new window is not inside the old one.
    pub fn restrict(&self, low: i64, high: i64) -> Result<Self, CoeffError> {
        self.coeff(low)?;
        self.coeff(high)?;
        Ok(AuxSeries {
            var: self.var,
            low,
            coeffs: self.coeffs[(low - self.low) as usize..=(high - self.low) as usize].to_vec(),
        })
    }
}

impl<T: Ring> AuxSeries<T> {
    fn check_var(&self, o: &Self) {
        assert_eq!(self.var, o.var, "mixing auxiliary variables");
    }

    /// Sum; known on [min low, min high].
    pub fn add(&self, o: &Self) -> Self {
        self.check_var(o);
        let low = self.low.min(o.low);
        let high = self.high().min(o.high());
        let zero = self.coeffs[0].zero_like();
        AuxSeries::from_fn(self.var, low, high, |k| {
            let a = if k >= self.low { Some(&self.coeffs[(k - self.low) as usize]) } else { None };
            let b = if k >= o.low { Some(&o.coeffs[(k - o.low) as usize]) } else { None };
            match (a, b) {
                (Some(x), Some(y)) => x.plus(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => zero.clone(),
            }
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product; known on [l1+l2, min(l1+h2, l2+h1)].
    pub fn mul(&self, o: &Self) -> Self {
        self.check_var(o);
        let low = self.low + o.low;
        let high = (self.low + o.high()).min(o.low + self.high());
        let zero = self.coeffs[0].zero_like();
        AuxSeries::from_fn(self.var, low, high, |k| {
            let mut acc = zero.clone();
            for (i, a) in self.iter() {
                let j = k - i;
                if j < o.low || j > o.high() {
                    continue;
                }
                let b = &o.coeffs[(j - o.low) as usize];
                if a.is_nil() || b.is_nil() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x.scaled(c))
    }

    pub fn mul_coeff(&self, c: &T) -> Self {
        self.map(|x| x.times(c))
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        AuxSeries {
            var: self.var,
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.iter().find(|(_, c)| !c.is_nil()).map(|(k, _)| k)
    }

    /// exp of a series with zero coefficients at exponents ≤ 0.
    pub fn exp(&self) -> Result<Self, CoeffError> {
        for (k, c) in self.iter() {
            if k <= 0 && !c.is_nil() {
                return Err(CoeffError::Precondition(format!(
                    "exp needs positive valuation in {}",
                    self.var
                )));
            }
        }
        let high = self.high();
        if high < 0 {
            return Err(CoeffError::Precondition("exp of an empty window".into()));
        }
        let zero = self.coeffs[0].zero_like();
        let f = |k: i64| -> T {
            if k < self.low || k > high {
                zero.clone()
            } else {
                self.coeffs[(k - self.low) as usize].clone()
            }
        };
        let mut g: Vec<T> = vec![zero.one_like()];
        for m in 1..=high {
            let mut acc = zero.clone();
            for k in 1..=m {
                let fk = f(k);
                if fk.is_nil() {
                    continue;
                }
                acc = acc.plus(&fk.times(&g[(m - k) as usize]).scaled(&BigRational::from_integer(BigInt::from(k))));
            }
            g.push(acc.scaled(&BigRational::new(BigInt::one(), BigInt::from(m))));
        }
        Ok(AuxSeries {
            var: self.var,
            low: 0,
            coeffs: g,
        })
    }

    /// Multiplicative inverse; the lowest nonzero coefficient must be
    /// invertible.
    pub fn inverse(&self) -> Result<Self, CoeffError> {
        let v = self
            .valuation()
            .ok_or_else(|| CoeffError::Precondition("inverse of zero series".into()))?;
        let lead = self.coeff(v)?;
        let g0 = lead
            .inverse()
            .ok_or_else(|| CoeffError::Precondition("leading coefficient not invertible".into()))?;
        let high = self.high();
        let n = (high - v + 1) as usize;
        let a: Vec<T> = (0..n).map(|i| self.coeffs[(v - self.low) as usize + i].clone()).collect();
        let mut g: Vec<T> = vec![g0.clone()];
        for m in 1..n {
            let mut acc = g0.zero_like();
            for k in 1..=m {
                if a[k].is_nil() {
                    continue;
                }
                acc = acc.plus(&a[k].times(&g[m - k]));
            }
            g.push(acc.times(&g0).negated());
        }
        Ok(AuxSeries {
            var: self.var,
            low: -v,
            coeffs: g,
        })
    }
}
