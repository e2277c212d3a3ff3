use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ratfunc::RatFunc;
use super::ring::{Ring, Scalar};
use super::CoeffError;

/// Power series in q known exactly through `q^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct QSeries<R = RatFunc> {
    coeffs: Vec<R>,
}

impl<R: Scalar> QSeries<R> {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![R::nil(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::unit(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c · q^k`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros (the input is taken to be exact) or truncates.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::nil());
        QSeries { coeffs }
    }

    /// `(a q^j; q)_∞ = ∏_{n ≥ 0} (1 − a q^{n+j})` through `q^order`.
    pub fn pochhammer(a: &R, j: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if a.is_nil() {
            return s;
        }
        for e in j..=order {
            // multiply by (1 − a q^e) in place, from the top down
            if e == 0 {
                let f = R::unit().minus(a);
                for c in s.coeffs.iter_mut() {
                    *c = c.times(&f);
                }
                continue;
            }
            for n in (e..=order).rev() {
                let t = s.coeffs[n - e].times(a);
                s.coeffs[n] = s.coeffs[n].minus(&t);
            }
        }
        s
    }

    /// `(q; q)_∞`.
    pub fn euler(order: usize) -> Self {
        Self::pochhammer(&R::unit(), 1, order)
    }
}

impl<R: Ring> QSeries<R> {
    /// Series from an exact coefficient list; `coeffs` must be non-empty.
    pub fn from_exact(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&R, CoeffError> {
        self.coeffs.get(n).ok_or(CoeffError::OutsideWindow {
            var: "q".into(),
            exponent: n as i64,
            low: 0,
            high: self.order() as i64,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let n = self.coeffs.len();
        let mut out = vec![z; n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        QSeries { coeffs: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        QSeries {
            coeffs: (0..n).map(|i| self.coeffs[i].plus(&o.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        QSeries {
            coeffs: (0..n).map(|i| self.coeffs[i].minus(&o.coeffs[i])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[0].zero_like();
            for i in 0..=k {
                if self.coeffs[i].is_nil() || o.coeffs[k - i].is_nil() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[i].times(&o.coeffs[k - i]));
            }
            out.push(acc);
        }
        QSeries { coeffs: out }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Multiply every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn exp(&self) -> Result<Self, CoeffError> {
        if !self.coeffs[0].is_nil() {
            return Err(CoeffError::Precondition("exp needs constant term 0".into()));
        }
        let n = self.coeffs.len();
        let mut g: Vec<R> = Vec::with_capacity(n);
        g.push(self.coeffs[0].one_like());
        for m in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_nil() {
                    continue;
                }
                let t = self.coeffs[k].times(&g[m - k]).scaled(&int(k as i64));
                acc = acc.plus(&t);
            }
            g.push(acc.scaled(&BigRational::new(BigInt::one(), BigInt::from(m as i64))));
        }
        Ok(QSeries { coeffs: g })
    }

    pub fn log(&self) -> Result<Self, CoeffError> {
        let one = self.coeffs[0].one_like();
        if self.coeffs[0] != one {
            return Err(CoeffError::Precondition("log needs constant term 1".into()));
        }
        let n = self.coeffs.len();
        let mut h: Vec<R> = Vec::with_capacity(n);
        h.push(self.coeffs[0].zero_like());
        for m in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..m {
                if h[k].is_nil() || self.coeffs[m - k].is_nil() {
                    continue;
                }
                acc = acc.plus(&h[k].times(&self.coeffs[m - k]).scaled(&int(k as i64)));
            }
            let t = acc.scaled(&BigRational::new(BigInt::one(), BigInt::from(m as i64)));
            h.push(self.coeffs[m].minus(&t));
        }
        Ok(QSeries { coeffs: h })
    }

    /// `f^c := exp(c · log f)`; needs constant term 1.
    pub fn pow(&self, c: &R) -> Result<Self, CoeffError> {
        self.log()?.mul_coeff(c).exp()
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        let g0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| CoeffError::Precondition("constant term not invertible".into()))?;
        let n = self.coeffs.len();
        let mut g: Vec<R> = Vec::with_capacity(n);
        g.push(g0.clone());
        for m in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_nil() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[k].times(&g[m - k]));
            }
            g.push(acc.times(&g0).negated());
        }
        Ok(QSeries { coeffs: g })
    }
}

fn int(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl<R: Ring> Ring for QSeries<R> {
    fn zero_like(&self) -> Self {
        self.map(|c| c.zero_like())
    }
    fn one_like(&self) -> Self {
        let mut s = self.zero_like();
        s.coeffs[0] = self.coeffs[0].one_like();
        s
    }
    fn is_nil(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_nil())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }
    fn inverse(&self) -> Option<Self> {
        QSeries::inverse(self).ok()
    }
}

/// Renders one signed term of a series; returns (negative?, body).
fn split_sign(s: &str, simple: bool) -> (bool, String) {
    if simple {
        if let Some(rest) = s.strip_prefix('-') {
            return (true, rest.to_string());
        }
        (false, s.to_string())
    } else {
        (false, format!("({})", s))
    }
}

fn fmt_series(items: &[(String, bool)], order: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // items[n] = (coefficient string, coefficient is a single signed term)
    let mut first = true;
    for (n, (s, simple)) in items.iter().enumerate() {
        if s == "0" {
            continue;
        }
        let (neg, body) = split_sign(s, *simple);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match n {
            0 => write!(f, "{}", body)?,
            _ => {
                let qp = if n == 1 { "q".to_string() } else { format!("q^{}", n) };
                if body == "1" {
                    write!(f, "{}", qp)?;
                } else {
                    write!(f, "{}*{}", body, qp)?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    write!(f, " + O(q^{})", order + 1)
}

fn is_single_term(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains('+') && !body.contains('-') && !body.contains('(')
}

impl fmt::Display for QSeries<RatFunc> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(String, bool)> = self
            .coeffs
            .iter()
            .map(|c| {
                let s = c.to_string();
                let simple = is_single_term(&s) && !s.contains("/(") && c.is_polynomial();
                let simple = simple || c.is_constant();
                (s, simple)
            })
            .collect();
        fmt_series(&items, self.order(), f)
    }
}

impl fmt::Display for QSeries<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(String, bool)> = self.coeffs.iter().map(|c| (c.to_string(), true)).collect();
        fmt_series(&items, self.order(), f)
    }
}

/// True when every coefficient is a rational constant; returns them.
pub fn rational_coeffs(s: &QSeries<RatFunc>) -> Option<QSeries<BigRational>> {
    let cs: Option<Vec<BigRational>> = s.coeffs().iter().map(|c| c.as_rational()).collect();
    cs.map(QSeries::from_exact)
}

pub fn lift_rational(s: &QSeries<BigRational>) -> QSeries<RatFunc> {
    s.map(|c| RatFunc::from_rational(c.clone()))
}
