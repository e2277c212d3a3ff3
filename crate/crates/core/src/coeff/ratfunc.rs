use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Monomial, MultiPoly, Var, ZPoly, NVARS};
use super::ring::{Ring, Scalar};
use super::CoeffError;

/// Exact rational function `c · num / den` over ℚ.
///
/// `num` and `den` are primitive integer polynomials with positive leading
/// coefficient and no common factor; zero is `0 · 1/1`. The representation is
/// unique, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    c: BigRational,
    num: ZPoly,
    den: ZPoly,
}

fn q_to_z_combo(c1: &BigRational, x: &ZPoly, c2: &BigRational, y: &ZPoly) -> (BigRational, ZPoly) {
    // c1·x + c2·y with integer arithmetic, returned as (scalar, primitive)
    let l = c1.denom().lcm(c2.denom());
    let k1 = c1.numer() * (&l / c1.denom());
    let k2 = c2.numer() * (&l / c2.denom());
    let s = x.scale(&k1).add(&y.scale(&k2));
    let (cont, p) = s.primitive();
    (BigRational::new(cont, l), p)
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            c: BigRational::zero(),
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            c,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(v: Var) -> Self {
        RatFunc {
            c: BigRational::one(),
            num: ZPoly::var(v),
            den: ZPoly::one(),
        }
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let m = ZPoly::monomial(Monomial::var(v, e.unsigned_abs() as u16), BigInt::one());
        if e >= 0 {
            RatFunc {
                c: BigRational::one(),
                num: m,
                den: ZPoly::one(),
            }
        } else {
            RatFunc {
                c: BigRational::one(),
                num: ZPoly::one(),
                den: m,
            }
        }
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        let (c, z) = p.to_primitive_z();
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            c,
            num: z,
            den: ZPoly::one(),
        }
    }

    /// `n / d`, reduced.
    pub fn new(n: &MultiPoly, d: &MultiPoly) -> Result<Self, CoeffError> {
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let (cn, zn) = n.to_primitive_z();
        let (cd, zd) = d.to_primitive_z();
        if cn.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::from_parts(cn / cd, zn, zd))
    }

    /// Reduce `c · n / d` with `n`, `d` primitive and positive.
    fn from_parts(c: BigRational, n: ZPoly, d: ZPoly) -> Self {
        if c.is_zero() || n.is_zero() {
            return Self::zero();
        }
        if d.is_one() || n.is_one() {
            return RatFunc { c, num: n, den: d };
        }
        let g = gcd(&n, &d);
        if g.is_one() {
            RatFunc { c, num: n, den: d }
        } else {
            RatFunc {
                c,
                num: n.div_exact(&g).expect("gcd divides"),
                den: d.div_exact(&g).expect("gcd divides"),
            }
        }
    }

    /// Build `c · n / d` where the caller guarantees gcd(n, d) = 1; only
    /// normalizes integer content and signs.
    pub(crate) fn from_coprime(c: BigRational, n: &ZPoly, d: &ZPoly) -> Self {
        if c.is_zero() || n.is_zero() {
            return Self::zero();
        }
        let (cn, pn) = n.primitive();
        let (cd, pd) = d.primitive();
        RatFunc {
            c: c * BigRational::new(cn, cd),
            num: pn,
            den: pd,
        }
    }

    /// Build from integer numerator and denominator of arbitrary content.
    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.c.clone())
        } else {
            None
        }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.c
    }

    /// Numerator in the canonical form whose denominator is monic over ℚ.
    pub fn numer(&self) -> MultiPoly {
        let lc = BigRational::from_integer(self.den.leading_coef());
        self.num.to_rational().scale(&(&self.c / lc))
    }

    /// Denominator, monic over ℚ (leading coefficient 1).
    pub fn denom(&self) -> MultiPoly {
        let lc = BigRational::from_integer(self.den.leading_coef());
        self.den.to_rational().scale(&lc.recip())
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.num.has_var(v) || self.den.has_var(v)
    }

    pub fn var_mask(&self) -> u16 {
        self.num.var_mask() | self.den.var_mask()
    }

    pub fn num_degree_in(&self, v: Var) -> u16 {
        self.num.degree_in(v)
    }

    pub fn den_degree_in(&self, v: Var) -> u16 {
        self.den.degree_in(v)
    }

    /// Size measure used for pivot choice.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let (c, n) = q_to_z_combo(&self.c, &self.num, &o.c, &o.num);
            if c.is_zero() {
                return Self::zero();
            }
            return Self::from_parts(c, n, self.den.clone());
        }
        if self.den.is_one() || o.den.is_one() {
            // (a + b·D)/D with the polynomial side lifted: already coprime
            let (p, r) = if self.den.is_one() { (self, o) } else { (o, self) };
            let lifted = p.num.mul(&r.den);
            let (c, n) = q_to_z_combo(&p.c, &lifted, &r.c, &r.num);
            if c.is_zero() {
                return Self::zero();
            }
            return RatFunc {
                c,
                num: n,
                den: r.den.clone(),
            };
        }
        let d = gcd(&self.den, &o.den);
        let (ad, bd) = if d.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (
                self.den.div_exact(&d).expect("gcd divides"),
                o.den.div_exact(&d).expect("gcd divides"),
            )
        };
        let x = self.num.mul(&bd);
        let y = o.num.mul(&ad);
        let (c, n) = q_to_z_combo(&self.c, &x, &o.c, &y);
        if c.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&bd);
        if d.is_one() {
            return RatFunc { c, num: n, den };
        }
        // only factors of d can cancel
        let g = gcd(&n, &d);
        if g.is_one() {
            RatFunc { c, num: n, den }
        } else {
            RatFunc {
                c,
                num: n.div_exact(&g).expect("gcd divides"),
                den: den.div_exact(&g).expect("gcd divides"),
            }
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RatFunc {
            c: -&self.c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let c = &self.c * &o.c;
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                c,
                num: self.num.mul(&o.num),
                den: ZPoly::one(),
            };
        }
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        RatFunc {
            c,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() || self.is_zero() {
            return Self::zero();
        }
        RatFunc {
            c: &self.c * q,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RatFunc {
            c: self.c.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        if self.is_zero() {
            return if e == 0 { Self::one() } else { Self::zero() };
        }
        let e = e as u32;
        RatFunc {
            c: num_traits::pow(self.c.clone(), e as usize),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact substitution `var := value`.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<Self, CoeffError> {
        if !self.has_var(v) {
            return Ok(self.clone());
        }
        let p = value.num.clone();
        let q = value.den.clone();
        let vc = &value.c;
        // homogenized Horner: Σ a_i (c p)^i q^{d-i}
        let hom = |f: &ZPoly| -> (MultiPoly, u16) {
            let cs = f.coeffs_in(v);
            let d = (cs.len() - 1) as u16;
            let cp = p.to_rational().scale(vc);
            let qq = q.to_rational();
            let mut total = MultiPoly::zero();
            let mut ppow = vec![MultiPoly::one()];
            for i in 1..=d as usize {
                let next = ppow[i - 1].mul(&cp);
                ppow.push(next);
            }
            let mut qpow = vec![MultiPoly::one()];
            for i in 1..=d as usize {
                let next = qpow[i - 1].mul(&qq);
                qpow.push(next);
            }
            for (i, c) in cs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = c.to_rational().mul(&ppow[i]).mul(&qpow[d as usize - i]);
                total = total.add(&term);
            }
            (total, d)
        };
        let (nn, dn) = hom(&self.num);
        let (dd, ddeg) = hom(&self.den);
        if dd.is_zero() {
            return Err(CoeffError::VanishingDenominator(format!(
                "{}",
                self.den.to_rational()
            )));
        }
        // value = (num/q^dn) / (den/q^ddeg) · c
        let qq = q.to_rational();
        let (top, bottom) = if dn >= ddeg {
            (nn, dd.mul(&qq.pow((dn - ddeg) as u32)))
        } else {
            (nn.mul(&qq.pow((ddeg - dn) as u32)), dd)
        };
        Ok(RatFunc::new(&top, &bottom)?.scale(&self.c))
    }

    /// Substitute several variables at once (applied left to right).
    pub fn substitute_all(&self, subs: &[(Var, RatFunc)]) -> Result<Self, CoeffError> {
        let mut r = self.clone();
        for (v, val) in subs {
            r = r.substitute(*v, val)?;
        }
        Ok(r)
    }

    /// Evaluate at a rational point; `None` if the denominator vanishes.
    pub fn eval(&self, point: &dyn Fn(Var) -> BigRational) -> Option<BigRational> {
        let n = self.num.to_rational().eval_all(point);
        let d = self.den.to_rational().eval_all(point);
        if d.is_zero() {
            None
        } else {
            Some(&self.c * n / d)
        }
    }

    /// Apply a permutation of the variables (e.g. t1 ↔ t2).
    pub fn permute_vars(&self, perm: &[Var; NVARS]) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.num.permute_vars(perm);
        let d = self.den.permute_vars(perm);
        RatFunc::from_coprime(self.c.clone(), &n, &d)
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let mut perm = Var::ALL;
        perm[a.index()] = b;
        perm[b.index()] = a;
        self.permute_vars(&perm)
    }

    /// Degree of homogeneity in the given variables, if homogeneous.
    pub fn homogeneous_degree(&self, vars: &[Var]) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let n = self.num.homogeneous_degree(vars)? as i64;
        let d = self.den.homogeneous_degree(vars)? as i64;
        Some(n - d)
    }

    /// Multiply by a monomial, cancelling against the denominator.
    /// Coefficients of the numerator as a polynomial in `v` (denominator
    /// must be free of `v`); used for degree bookkeeping.
    pub fn coeffs_in(&self, v: Var) -> Option<Vec<RatFunc>> {
        if self.den.has_var(v) {
            return None;
        }
        let cs = self.num.coeffs_in(v);
        Some(
            cs.iter()
                .map(|c| {
                    if c.is_zero() {
                        RatFunc::zero()
                    } else {
                        let (k, p) = c.primitive();
                        RatFunc::from_parts(&self.c * BigRational::from_integer(k), p, self.den.clone())
                    }
                })
                .collect(),
        )
    }
}

/// Remove the common factor of `n` and `d`.
fn cancel(n: &ZPoly, d: &ZPoly) -> (ZPoly, ZPoly) {
    if d.is_one() || n.is_one() {
        return (n.clone(), d.clone());
    }
    if d.is_monomial() {
        let g = n.monomial_content().gcd(&d.terms()[0].0);
        if g.is_one() {
            return (n.clone(), d.clone());
        }
        return (n.div_monomial(&g), d.div_monomial(&g));
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (
            n.div_exact(&g).expect("gcd divides"),
            d.div_exact(&g).expect("gcd divides"),
        )
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn is_nil(&self) -> bool {
        RatFunc::is_zero(self)
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
        self.inv().ok()
    }
    fn complexity(&self) -> usize {
        self.num.terms().iter().chain(self.den.terms()).map(|(_, c)| c.bits() as usize + 8).sum()
    }
}

impl Scalar for RatFunc {
    fn nil() -> Self {
        RatFunc::zero()
    }
    fn unit() -> Self {
        RatFunc::one()
    }
    fn from_rational(q: BigRational) -> Self {
        RatFunc::from_rational(q)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::add(self, o)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        RatFunc::sub(self, o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::mul(self, o)
    }
}

/// Panics on division by zero; use [`RatFunc::div`] for a checked version.
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        RatFunc::div(self, o).expect("division by zero rational function")
    }
}

impl<'a> Neg for &'a RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl From<i64> for RatFunc {
    fn from(i: i64) -> Self {
        RatFunc::from_int(i)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

impl From<BigRational> for RatFunc {
    fn from(q: BigRational) -> Self {
        RatFunc::from_rational(q)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numer();
        if self.den.is_one() {
            return write!(f, "{}", n);
        }
        let d = self.denom();
        let ns = n.to_string();
        let ns = if n.len() > 1 || ns.contains('/') {
            format!("({})", ns)
        } else {
            ns
        };
        let ds = d.to_string();
        if d.len() > 1 || ds.contains('*') {
            write!(f, "{}/({})", ns, ds)
        } else {
            write!(f, "{}/{}", ns, ds)
        }
    }
}

/// Parse the canonical text form produced by `Display` (and more generally
/// any expression built from rationals, variables, + - * / ^ and parentheses).
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, CoeffError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CoeffError::Parse(format!("trailing input in '{}'", s)));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CoeffError> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().map_err(|_| CoeffError::Parse(txt.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CoeffError::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek().cloned() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c)) = self.peek().cloned() {
            if c == '*' || c == '/' {
                self.pos += 1;
                let t = self.unary()?;
                acc = if c == '*' { acc.mul(&t) } else { acc.div(&t)? };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, CoeffError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, CoeffError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i32 = n
                        .try_into()
                        .map_err(|_| CoeffError::Parse("exponent too large".into()))?;
                    let e = if neg { -e } else { e };
                    if e < 0 && base.is_zero() {
                        return Err(CoeffError::DivisionByZero);
                    }
                    Ok(base.pow(e))
                }
                _ => Err(CoeffError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, CoeffError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Var::from_name(&name)
                    .map(RatFunc::var)
                    .ok_or_else(|| CoeffError::Parse(format!("unknown variable '{}'", name)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(CoeffError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(CoeffError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}
