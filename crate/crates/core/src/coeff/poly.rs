use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const NVARS: usize = 9;

/// The fixed, ordered variable set. `a`, `b`, `r` are spare formal scalars
/// (exponents of vertex operators); `q`, `t` are the Macdonald parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T1,
    T2,
    Alpha,
    M,
    Q,
    T,
    A,
    B,
    R,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::T1,
        Var::T2,
        Var::Alpha,
        Var::M,
        Var::Q,
        Var::T,
        Var::A,
        Var::B,
        Var::R,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::Alpha => "alpha",
            Var::M => "m",
            Var::Q => "q",
            Var::T => "t",
            Var::A => "a",
            Var::B => "b",
            Var::R => "r",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = [0u16; NVARS];
        for i in 0..NVARS {
            r[i] = self.0[i]
                .checked_add(o.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(r)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..NVARS).all(|i| self.0[i] <= o.0[i])
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = [0u16; NVARS];
        for i in 0..NVARS {
            r[i] = self.0[i] - o.0[i];
        }
        Monomial(r)
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = [0u16; NVARS];
        for i in 0..NVARS {
            r[i] = self.0[i].min(o.0[i]);
        }
        Monomial(r)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = [0u16; NVARS];
        for i in 0..NVARS {
            r[i] = self.0[i].max(o.0[i]);
        }
        Monomial(r)
    }

    pub fn var_mask(&self) -> u16 {
        let mut m = 0u16;
        for i in 0..NVARS {
            if self.0[i] > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    fn fmt_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Small multiplicative hasher for exponent vectors.
#[derive(Default)]
pub struct MonoHasher(u64);

impl Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u16(&mut self, i: u16) {
        self.0 = (self.0.rotate_left(5) ^ i as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
    fn write_usize(&mut self, i: usize) {
        self.0 = (self.0.rotate_left(5) ^ i as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

pub type MonoMap<V> = HashMap<Monomial, V, BuildHasherDefault<MonoHasher>>;

/// Coefficient ring of a polynomial: ℤ or ℚ.
pub trait Coef: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn czero() -> Self;
    fn cone() -> Self;
    fn cis_zero(&self) -> bool;
    fn cis_one(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn add_assign_ref(&mut self, o: &Self);
    fn cis_negative(&self) -> bool;
    fn from_i64(i: i64) -> Self;
}

impl Coef for BigInt {
    fn czero() -> Self {
        Zero::zero()
    }
    fn cone() -> Self {
        One::one()
    }
    fn cis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cis_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn cis_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_i64(i: i64) -> Self {
        BigInt::from(i)
    }
}

impl Coef for BigRational {
    fn czero() -> Self {
        Zero::zero()
    }
    fn cone() -> Self {
        One::one()
    }
    fn cis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cis_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn cis_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_i64(i: i64) -> Self {
        BigRational::from_integer(BigInt::from(i))
    }
}

/// Sparse multivariate polynomial; terms sorted by decreasing monomial,
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomials over ℚ.
pub type MultiPoly = Poly<BigRational>;
/// Polynomials over ℤ (internal to gcd and rational-function code).
pub type ZPoly = Poly<BigInt>;

impl<C: Coef> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::cone())
    }

    pub fn constant(c: C) -> Self {
        if c.cis_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), C::cone())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        if c.cis_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: MonoMap<C> = MonoMap::default();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(e) => e.add_assign_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: MonoMap<C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.cis_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Terms must already be strictly decreasing and nonzero.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.cis_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::czero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coef(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::czero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn var_mask(&self) -> u16 {
        self.terms.iter().fold(0, |m, t| m | t.0.var_mask())
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some(t) => t.0,
            None => return Monomial::one(),
        };
        for t in it {
            g = g.gcd(&t.0);
        }
        g
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub_ref(&b[j].1)
                    } else {
                        a[i].1.add_ref(&b[j].1)
                    };
                    if !c.cis_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg_ref() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.cis_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        if c.cis_zero() {
            return Self::zero();
        }
        // multiplication by a monomial preserves the term order
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.mul(mono), x.mul_ref(c)))
                .collect(),
        }
    }

    /// `self / mono` assuming every term is divisible.
    pub fn div_monomial(&self, mono: &Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.div(mono), x.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if a.len() == 1 {
            return b.mul_monomial(&a.terms[0].0, &a.terms[0].1);
        }
        let mut map: MonoMap<C> = MonoMap::default();
        map.reserve(a.len() * b.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let p = ca.mul_ref(cb);
                match map.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&p),
                    None => {
                        map.insert(m, p);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients with respect to `v`: entry i is the coefficient of v^i.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut mm = *m;
            mm.0[v.index()] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| {
                // removing a variable can break the order, so resort
                let mut t = t;
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    /// Coefficient of v^e.
    pub fn coeff_of(&self, v: Var, e: u16) -> Self {
        let mut t: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| {
                let mut mm = *m;
                mm.0[v.index()] = 0;
                (mm, c.clone())
            })
            .collect();
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms: t }
    }

    /// Evaluate one variable at a constant.
    pub fn eval_var(&self, v: Var, x: &C) -> Self {
        let d = self.degree_in(v) as usize;
        let mut pows = Vec::with_capacity(d + 1);
        pows.push(C::cone());
        for i in 1..=d {
            let p = pows[i - 1].mul_ref(x);
            pows.push(p);
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) as usize;
            let mut mm = *m;
            mm.0[v.index()] = 0;
            (mm, c.mul_ref(&pows[e]))
        }))
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: Var, val: &Self) -> Self {
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(val).add(c);
        }
        acc
    }

    /// Rename variables by a permutation given as a map on indices.
    pub fn permute_vars(&self, perm: &[Var; NVARS]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut r = [0u16; NVARS];
            for i in 0..NVARS {
                r[perm[i].index()] = m.0[i];
            }
            (Monomial(r), c.clone())
        }))
    }

    /// Total degree of each term restricted to the variables in `mask`,
    /// if all terms agree.
    pub fn homogeneous_degree(&self, vars: &[Var]) -> Option<u32> {
        let mut d = None;
        for (m, _) in &self.terms {
            let e: u32 = vars.iter().map(|v| m.exp(*v) as u32).sum();
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }
}

impl ZPoly {
    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c / d)).collect(),
        }
    }

    /// Primitive part with positive leading coefficient, and the signed content.
    pub fn primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.leading_coef().is_negative() {
            c = -c;
        }
        if c.is_one() {
            (c, self.clone())
        } else {
            let p = self.div_int(&c);
            (c, p)
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = d.terms[0].clone();
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                let (q, r) = c.div_rem(&lc);
                if !r.is_zero() {
                    return None;
                }
                out.push((m.div(&lm), q));
            }
            return Some(Poly { terms: out });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        // cheap necessary condition on individual variable degrees
        for v in Var::ALL {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem: std::collections::BTreeMap<Monomial, BigInt> =
            self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((&m, _)) = rem.iter().next_back() {
            let c = rem.remove(&m).unwrap();
            if !lm.divides(&m) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            for (dm, dc) in &d.terms[1..] {
                let mm = dm.mul(&qm);
                let prod = dc * &qc;
                match rem.get_mut(&mm) {
                    Some(e) => {
                        *e -= &prod;
                        if e.is_zero() {
                            rem.remove(&mm);
                        }
                    }
                    None => {
                        rem.insert(mm, -prod);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn to_rational(&self) -> MultiPoly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl MultiPoly {
    /// Write `self = c · z` with `z` primitive over ℤ with positive leading
    /// coefficient.
    pub fn to_primitive_z(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (BigRational::zero(), ZPoly::zero());
        }
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let z = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.numer() * (&l / c.denom())))
                .collect::<Vec<_>>(),
        };
        let (cont, p) = z.primitive();
        (BigRational::new(cont, l), p)
    }

    pub fn eval_all(&self, point: &dyn Fn(Var) -> BigRational) -> BigRational {
        let mut vals: Vec<BigRational> = Vec::with_capacity(NVARS);
        for v in Var::ALL {
            vals.push(point(v));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(vals[v.index()].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = Signed::is_negative(c);
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                m.fmt_vars(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
