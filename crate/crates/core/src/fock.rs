//! The Fock space over ℚ(t₁,t₂,…), Heisenberg modes and normally ordered
//! operators.
//!
//! Convention: `[𝔞_k, 𝔞_l] = k δ_{k,−l}`. Under `p_λ ↔ 𝔞_{−λ}|0⟩` a creation
//! mode `𝔞_{−k}` multiplies by `p_k` and `𝔞_k` acts as `k ∂/∂p_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::coeff::{Matrix, QSeries, RatFunc};
use crate::error::{input, Error, Result};
use crate::partitions::{partitions_of, GeneralizedPartition, Partition};

/// Finite combination of basis vectors `𝔞_{−λ}|0⟩`; read as a symmetric
/// function in the power sums it is `Σ c_λ p_λ`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FockVector {
    terms: BTreeMap<Partition, RatFunc>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(l: Partition) -> Self {
        Self::monomial(l, RatFunc::one())
    }

    pub fn monomial(l: Partition, c: RatFunc) -> Self {
        let mut v = Self::zero();
        v.add_term(l, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, RatFunc)>) -> Self {
        let mut v = Self::zero();
        for (l, c) in terms {
            v.add_term(l, &c);
        }
        v
    }

    pub fn add_term(&mut self, l: Partition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&l);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(l, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: &Partition) -> RatFunc {
        self.terms.get(l).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map(|x| x.mul(c))
    }

    pub fn scale_q(&self, c: &BigRational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Coefficientwise map; zero results are dropped.
    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut v = Self::zero();
        for (l, c) in &self.terms {
            v.add_term(l.clone(), &f(c)?);
        }
        Ok(v)
    }

    /// Rescale the `p_μ` coefficient by `f(μ)`.
    pub fn map_with_partition(&self, f: impl Fn(&Partition, &RatFunc) -> RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(l, c))))
    }

    /// Degree-`n` component.
    pub fn component(&self, n: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|l| l.size()).max()
    }

    /// Coefficients on the degree-`n` basis, in enumeration order.
    pub fn to_column(&self, n: u32) -> Vec<RatFunc> {
        partitions_of(n).iter().map(|l| self.coeff(l)).collect()
    }

    pub fn from_column(n: u32, col: &[RatFunc]) -> Self {
        Self::from_terms(partitions_of(n).into_iter().zip(col.iter().cloned()))
    }

    /// Multiply by the power-sum monomial `p_μ` (that is, apply `𝔞_{−μ}`).
    pub fn mul_p(&self, mu: &Partition) -> Self {
        Self {
            terms: self.terms.iter().map(|(l, c)| (l.union(mu), c.clone())).collect(),
        }
    }
}

impl fmt::Display for FockVector {
    /// `c*p[2,1] + …`; the vacuum is `p[∅]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(l, c)| {
                if c.is_one() {
                    format!("p[{}]", l)
                } else {
                    format!("({})*p[{}]", c, l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Apply the single mode `𝔞_k`.
pub fn apply_mode(k: i32, v: &FockVector) -> Result<FockVector> {
    if k == 0 {
        return input("there is no mode a(0)");
    }
    let op = NormalOrderedOp::monomial(GeneralizedPartition::from_parts(&[k])?, RatFunc::one());
    Ok(op.apply(v))
}

/// Result of applying the annihilation part `𝔞_{a}` to `p_μ`:
/// `∏_k k^{a_k} m_k(μ)!/(m_k(μ)−a_k)!`, or `None` when `a ⊄ μ`.
fn annihilate(a: &Partition, mu: &Partition) -> Option<(Partition, BigInt)> {
    if a.is_empty() {
        return Some((mu.clone(), BigInt::one()));
    }
    let mut factor = BigInt::one();
    for (k, ak) in a.multiplicities() {
        let m = mu.multiplicity(k);
        if m < ak {
            return None;
        }
        for j in 0..ak {
            factor *= BigInt::from(k) * BigInt::from(m - j);
        }
    }
    Some((mu.difference(a).expect("checked containment"), factor))
}

/// Degree and length bounds for symbolic composition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    /// Results are exact on vectors of degree ≤ `max_degree`.
    pub max_degree: u32,
    /// Longest monomial allowed in a result.
    pub max_length: usize,
}

/// `Σ c_λ 𝔞_λ`, each `𝔞_λ` normally ordered (creations, then annihilations).
/// The stored number is the coefficient of `𝔞_λ` itself; a display of the
/// form `Σ g_λ 𝔞_λ/λ^!` corresponds to `c_λ = g_λ/λ^!`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct NormalOrderedOp {
    terms: BTreeMap<GeneralizedPartition, RatFunc>,
}

impl NormalOrderedOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(GeneralizedPartition::empty(), RatFunc::one())
    }

    pub fn monomial(l: GeneralizedPartition, c: RatFunc) -> Self {
        let mut a = Self::zero();
        a.add_term(l, &c);
        a
    }

    /// The single mode `𝔞_k`.
    pub fn mode(k: i32) -> Result<Self> {
        Ok(Self::monomial(GeneralizedPartition::from_parts(&[k])?, RatFunc::one()))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GeneralizedPartition, RatFunc)>) -> Self {
        let mut a = Self::zero();
        for (l, c) in terms {
            a.add_term(l, &c);
        }
        a
    }

    pub fn add_term(&mut self, l: GeneralizedPartition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&l);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(l, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneralizedPartition, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: &GeneralizedPartition) -> RatFunc {
        self.terms.get(l).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// `g_λ = λ^!·c_λ`, the coefficient in the `𝔞_λ/λ^!` normalization.
    pub fn g_coeff(&self, l: &GeneralizedPartition) -> RatFunc {
        self.coeff(l).scale(&BigRational::from_integer(l.factorial()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut a = Self::zero();
        for (l, c) in &self.terms {
            a.add_term(l.clone(), &f(c)?);
        }
        Ok(a)
    }

    pub fn map_with_term(&self, f: impl Fn(&GeneralizedPartition, &RatFunc) -> RatFunc) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(l, c))))
    }

    /// Keep the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&GeneralizedPartition) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common conformal weight, `None` when terms disagree (or no terms).
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|l| l.size());
        let w = it.next()?;
        if it.all(|x| x == w) {
            Some(w)
        } else {
            None
        }
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Apply to a vector; annihilation modes act first.
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (l, c) in &self.terms {
            let ann = l.annihilation();
            let cre = l.creation();
            for (mu, cm) in v.terms() {
                if let Some((rest, f)) = annihilate(&ann, mu) {
                    let coef = c.mul(cm).scale(&BigRational::from_integer(f));
                    out.add_term(rest.union(&cre), &coef);
                }
            }
        }
        out
    }

    /// Normally ordered product `self · o`, exact on degrees ≤ `w.max_degree`.
    /// Terms whose annihilation part exceeds the degree bound act as zero
    /// there and are dropped; a surviving term longer than `w.max_length` is
    /// an error.
    pub fn compose(&self, o: &Self, w: Window) -> Result<Self> {
        let mut acc: BTreeMap<GeneralizedPartition, RatFunc> = BTreeMap::new();
        for (la, ca) in &self.terms {
            for (lb, cb) in &o.terms {
                let c = ca.mul(cb);
                for (gp, f) in wick(la, lb) {
                    if gp.size_plus() > w.max_degree as i64 {
                        continue;
                    }
                    let t = c.scale(&BigRational::from_integer(f));
                    match acc.get_mut(&gp) {
                        Some(x) => *x = x.add(&t),
                        None => {
                            acc.insert(gp, t);
                        }
                    }
                }
            }
        }
        let out = Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        };
        let over: Vec<String> = out
            .terms
            .keys()
            .filter(|l| l.len() > w.max_length)
            .map(|l| l.to_string())
            .collect();
        if !over.is_empty() {
            return Err(Error::Window(format!(
                "{} term(s) longer than {}: {}",
                over.len(),
                w.max_length,
                over.join("; ")
            )));
        }
        Ok(out)
    }

    /// `[self, o]` within the window.
    pub fn commutator(&self, o: &Self, w: Window) -> Result<Self> {
        Ok(self.compose(o, w)?.sub(&o.compose(self, w)?))
    }

    /// Matrix from the degree-`d` basis to the degree-`d − weight` basis,
    /// where the weight of `𝔞_λ` is `|λ| = Σλᵢ`. Columns are images of basis
    /// vectors; every term must have the given weight.
    pub fn block(&self, d: u32, weight: i64) -> Result<Matrix<RatFunc>> {
        if let Some(l) = self.terms.keys().find(|l| l.size() != weight) {
            return input(format!("term {} does not have conformal weight {}", l, weight));
        }
        let target = d as i64 - weight;
        if target < 0 {
            return Ok(Matrix::zeros(0, partitions_of(d).len()));
        }
        let rows = partitions_of(target as u32);
        let cols = partitions_of(d);
        let index: BTreeMap<&Partition, usize> = rows.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let images: Vec<FockVector> = cols.par_iter().map(|mu| self.apply(&FockVector::basis(mu.clone()))).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (j, img) in images.iter().enumerate() {
            for (l, c) in img.terms() {
                m.set(index[l], j, c.clone());
            }
        }
        Ok(m)
    }

    /// Matrix of a degree-preserving operator on the degree-`n` component.
    pub fn matrix_on_degree(&self, n: u32) -> Result<Matrix<RatFunc>> {
        self.block(n, 0)
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Normal ordering of `𝔞_a 𝔞_b` for two normally ordered monomials.
/// For each mode `k > 0`, moving `x` annihilators `𝔞_k` of `a` past `y`
/// creators `𝔞_{−k}` of `b` gives `Σ_c C(x,c) C(y,c) c! k^c 𝔞_{−k}^{y−c} 𝔞_k^{x−c}`.
fn wick(a: &GeneralizedPartition, b: &GeneralizedPartition) -> Vec<(GeneralizedPartition, BigInt)> {
    // modes where contractions can happen
    let pairs: Vec<(i32, u32, u32)> = a
        .iter()
        .filter(|&(k, _)| k > 0)
        .filter_map(|(k, x)| {
            let y = b.multiplicity(-k);
            (y > 0).then_some((k, x, y))
        })
        .collect();
    let base: BTreeMap<i32, u32> = {
        let mut m = BTreeMap::new();
        for (k, x) in a.iter().chain(b.iter()) {
            *m.entry(k).or_insert(0) += x;
        }
        m
    };
    let mut out = Vec::new();
    let mut choice = vec![0u32; pairs.len()];
    loop {
        let mut mult = base.clone();
        let mut f = BigInt::one();
        for (idx, &(k, x, y)) in pairs.iter().enumerate() {
            let c = choice[idx];
            if c == 0 {
                continue;
            }
            let fact: BigInt = (1..=c).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
            f *= binom(x, c) * binom(y, c) * fact * BigInt::from(k).pow(c);
            *mult.get_mut(&k).unwrap() -= c;
            *mult.get_mut(&-k).unwrap() -= c;
        }
        let gp = GeneralizedPartition::from_multiplicities(mult).expect("nonzero parts");
        out.push((gp, f));
        // next choice vector
        let mut i = 0;
        loop {
            if i == pairs.len() {
                return out;
            }
            let (_, x, y) = pairs[i];
            if choice[i] < x.min(y) {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Display for NormalOrderedOp {
    /// `c*a(-2)a(1)^2 + …`, one term per generalized partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let word = monomial_text(l);
                if c.is_one() {
                    word
                } else {
                    format!("({})*{}", c, word)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `a(-2)a(1)^2`; the empty monomial is `1`.
pub fn monomial_text(l: &GeneralizedPartition) -> String {
    if l.is_empty() {
        return "1".into();
    }
    l.iter()
        .map(|(i, m)| if m == 1 { format!("a({})", i) } else { format!("a({})^{}", i, m) })
        .collect()
}

/// Per-degree matrices of an operator of fixed conformal weight: the block
/// for degree `d` maps the degree-`d` basis to the degree-`d − weight` one.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedMatrices {
    pub weight: i64,
    pub blocks: BTreeMap<u32, Matrix<RatFunc>>,
}

impl GradedMatrices {
    pub fn from_op(a: &NormalOrderedOp, weight: i64, max_degree: u32) -> Result<Self> {
        let blocks: Result<Vec<(u32, Matrix<RatFunc>)>> =
            (0..=max_degree).into_par_iter().map(|d| Ok((d, a.block(d, weight)?))).collect();
        Ok(GradedMatrices {
            weight,
            blocks: blocks?.into_iter().collect(),
        })
    }

    pub fn block(&self, d: u32) -> Result<&Matrix<RatFunc>> {
        self.blocks
            .get(&d)
            .ok_or_else(|| Error::Input(format!("no matrix for degree {}", d)))
    }
}

/// Recover `Σ c_λ 𝔞_λ` from the action on degrees ≤ `max_degree`.
///
/// Triangular in the degree: on degree `d` the residual of the target after
/// subtracting the monomials already found is matched by new monomials with
/// `|λ⁺| = d`, and `𝔞_λ p_μ = δ_{λ⁺,μ} z_μ p_{−λ⁻}` for those. A needed
/// monomial longer than `max_length` makes the span insufficient.
pub fn expand_in_monomials(target: &GradedMatrices, max_degree: u32, max_length: usize) -> Result<NormalOrderedOp> {
    let w = target.weight;
    let mut found = NormalOrderedOp::zero();
    for d in 0..=max_degree {
        let out_deg = d as i64 - w;
        if out_deg < 0 {
            continue;
        }
        let t = target.block(d)?;
        let have = found.block(d, w)?;
        let rows = partitions_of(out_deg as u32);
        let cols = partitions_of(d);
        let mut over = Vec::new();
        let mut fresh = Vec::new();
        for (j, mu) in cols.iter().enumerate() {
            let z = BigRational::from_integer(mu.z());
            for (i, nu) in rows.iter().enumerate() {
                let r = t.get(i, j).sub(have.get(i, j));
                if r.is_zero() {
                    continue;
                }
                let l = GeneralizedPartition::from_modes(nu, mu);
                if l.len() > max_length {
                    over.push(format!("{} (residual {})", l, r));
                    continue;
                }
                fresh.push((l, r.scale(&z.recip())));
            }
        }
        if !over.is_empty() {
            return Err(Error::Span(format!(
                "degree {} needs monomials longer than {}: {}",
                d,
                max_length,
                over.join("; ")
            )));
        }
        for (l, c) in fresh {
            found.add_term(l, &c);
        }
    }
    Ok(found)
}

/// `Σ_n qⁿ tr(block(n))` for a degree-preserving operator.
pub fn trace_q(blocks: impl Fn(u32) -> Result<Matrix<RatFunc>> + Sync, q_order: usize) -> Result<QSeries> {
    let traces: Result<Vec<RatFunc>> = (0..=q_order as u32)
        .into_par_iter()
        .map(|n| {
            let m = blocks(n)?;
            if m.rows() != m.cols() {
                return input(format!("degree {} block is not square", n));
            }
            let mut acc = RatFunc::zero();
            for i in 0..m.rows() {
                acc = acc.add(m.get(i, i));
            }
            Ok(acc)
        })
        .collect();
    Ok(QSeries::from_exact(traces?))
}

/// `exp(Σ_{k>0} b_k/k · 𝔞_{±k})`, homogeneous piece of total mode degree `j`:
/// `Σ_{λ⊢j} ∏_k (b_k/k)^{m_k}/m_k! · 𝔞_{±λ}`.
pub fn exp_modes_piece(creation: bool, b: &dyn Fn(u32) -> RatFunc, j: u32) -> NormalOrderedOp {
    let mut op = NormalOrderedOp::zero();
    let mut cache: BTreeMap<u32, RatFunc> = BTreeMap::new();
    for l in partitions_of(j) {
        let mut c = RatFunc::one();
        for (k, m) in l.multiplicities() {
            let bk = cache.entry(k).or_insert_with(|| b(k).scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
            let fact: BigInt = (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
            c = c.mul(&bk.pow(m as i32)).scale(&BigRational::new(BigInt::one(), fact));
        }
        let gp = if creation {
            GeneralizedPartition::from_modes(&l, &Partition::empty())
        } else {
            GeneralizedPartition::from_modes(&Partition::empty(), &l)
        };
        op.add_term(gp, &c);
    }
    op
}

#[cfg(test)]
mod tests;
