//! Vertex operators `Γ±(cz)^r`, the deformed operators `V` and `Ṽ`, their
//! zero modes, the operator `𝔅̄(q,t⁻¹)` and its `t₀`-coefficients, and `𝐖`.
//!
//! `Γ₋(cz)^r = exp(r Σ (cz)ᵏ/k 𝔞₋ₖ)` and `Γ₊(cz)^r = exp(r Σ (cz)⁻ᵏ/k 𝔞ₖ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::coeff::{alpha, m_var, q_var, rf, rfq, t1, t2, t_var, AuxSeries, AuxVar, RatFunc, Var};
use crate::error::{input, Error, Result};
use crate::fock::{exp_modes_piece, FockVector, NormalOrderedOp};
use crate::partitions::{generalized_partitions, partitions_of, GeneralizedPartition, LengthBound, Partition};
use crate::symfunc::{macdonald_j, transformed_h};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `Γ₋`, creation modes, raises the `z`-power
    Minus,
    /// `Γ₊`, annihilation modes, lowers the `z`-power
    Plus,
}

/// One factor `Γ±(scale·z)^exponent`.
#[derive(Clone, PartialEq, Debug)]
pub struct GammaFactor {
    pub side: Side,
    pub scale: RatFunc,
    pub exponent: RatFunc,
}

impl GammaFactor {
    pub fn new(side: Side, scale: RatFunc, exponent: RatFunc) -> Self {
        GammaFactor { side, scale, exponent }
    }

    /// Coefficient of `z^{±j}`: `exp(Σ b_k/k 𝔞_{∓k})` at mode degree `j`.
    fn piece(&self, j: u32) -> NormalOrderedOp {
        let (r, c) = (self.exponent.clone(), self.scale.clone());
        match self.side {
            Side::Minus => exp_modes_piece(true, &|k| r.mul(&c.pow(k as i32)), j),
            Side::Plus => exp_modes_piece(false, &|k| r.mul(&c.pow(-(k as i32))), j),
        }
    }
}

/// An ordered product of Γ factors; the rightmost acts first.
pub type VertexWord = Vec<GammaFactor>;

/// Exact coefficients of a `z`-series of vectors up to `high`.
struct Partial {
    terms: BTreeMap<i64, FockVector>,
    high: i64,
}

fn apply_factor(f: &GammaFactor, s: Partial) -> Partial {
    match f.side {
        Side::Minus => {
            let low = s.terms.keys().next().copied().unwrap_or(0);
            let span = (s.high - low).max(0) as u32;
            let pieces: Vec<NormalOrderedOp> = (0..=span).into_par_iter().map(|j| f.piece(j)).collect();
            let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
            for (&e, v) in &s.terms {
                for j in 0..=(s.high - e) {
                    let w = pieces[j as usize].apply(v);
                    if !w.is_zero() {
                        let slot = out.entry(e + j).or_default();
                        *slot = slot.add(&w);
                    }
                }
            }
            Partial { terms: out, high: s.high }
        }
        Side::Plus => {
            let d = s.terms.values().filter_map(|v| v.max_degree()).max().unwrap_or(0);
            let pieces: Vec<NormalOrderedOp> = (0..=d).into_par_iter().map(|j| f.piece(j)).collect();
            let high = s.high - d as i64;
            let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
            for (&e, v) in &s.terms {
                let dv = v.max_degree().unwrap_or(0);
                for i in 0..=dv {
                    if e - (i as i64) > high {
                        continue;
                    }
                    let w = pieces[i as usize].apply(v);
                    if !w.is_zero() {
                        let slot = out.entry(e - i as i64).or_default();
                        *slot = slot.add(&w);
                    }
                }
            }
            Partial { terms: out, high }
        }
    }
}

/// Apply a word to `v`, returning the `z`-series exactly on `[low, high]`,
/// where `low` is the most negative power that can occur.
pub fn apply_word(word: &[GammaFactor], v: &FockVector, high: i64) -> Result<AuxSeries<FockVector>> {
    let mut slack = 0i64;
    for _ in 0..6 {
        let mut s = Partial {
            terms: [(0, v.clone())].into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            high: high + slack,
        };
        let mut low = 0i64;
        for f in word.iter().rev() {
            if f.side == Side::Plus {
                low -= s.terms.values().filter_map(|v| v.max_degree()).max().unwrap_or(0) as i64;
            }
            s = apply_factor(f, s);
        }
        if s.high >= high {
            let terms = s.terms;
            return Ok(AuxSeries::from_fn(AuxVar::Z, low.min(high), high, |e| {
                terms.get(&e).cloned().unwrap_or_default()
            }));
        }
        slack += high - s.high;
    }
    Err(Error::Window(format!(
        "the word does not determine the coefficients up to z^{} (annihilators act after unbounded creations)",
        high
    )))
}

/// `Γ±(scale·z)^r v` exactly up to `z^high`; for `Γ₊` the series terminates.
pub fn gamma_apply(side: Side, scale: &RatFunc, r: &RatFunc, v: &FockVector, high: i64) -> Result<AuxSeries<FockVector>> {
    apply_word(&[GammaFactor::new(side, scale.clone(), r.clone())], v, high)
}

/// The four formal scalars of `V(z; q, t, q̃, t̃)`.
#[derive(Clone, PartialEq, Debug)]
pub struct VParams {
    pub q: RatFunc,
    pub t: RatFunc,
    pub q_tilde: RatFunc,
    pub t_tilde: RatFunc,
}

/// Creation pieces `C_j` and annihilation pieces `A_j` of a product of two
/// exponentials with coefficients `b_k z^{±k}/k`.
pub struct ExpPair {
    cre: Box<dyn Fn(u32) -> RatFunc + Sync>,
    ann: Box<dyn Fn(u32) -> RatFunc + Sync>,
}

impl ExpPair {
    pub fn new(cre: impl Fn(u32) -> RatFunc + Sync + 'static, ann: impl Fn(u32) -> RatFunc + Sync + 'static) -> Self {
        ExpPair {
            cre: Box::new(cre),
            ann: Box::new(ann),
        }
    }

    pub fn creation(&self, j: u32) -> NormalOrderedOp {
        exp_modes_piece(true, &*self.cre, j)
    }

    pub fn annihilation(&self, j: u32) -> NormalOrderedOp {
        exp_modes_piece(false, &*self.ann, j)
    }

    /// `Σ_j z^{j−i} C_j A_i v` exactly on `[−deg v, high]`.
    pub fn apply(&self, v: &FockVector, high: i64) -> AuxSeries<FockVector> {
        let d = v.max_degree().unwrap_or(0) as i64;
        let anns: Vec<FockVector> = (0..=d).into_par_iter().map(|i| self.annihilation(i as u32).apply(v)).collect();
        let top = (high + d).max(0);
        let cres: Vec<NormalOrderedOp> = (0..=top).into_par_iter().map(|j| self.creation(j as u32)).collect();
        AuxSeries::from_fn(AuxVar::Z, -d, high.max(-d), |e| {
            let mut acc = FockVector::zero();
            for (i, w) in anns.iter().enumerate() {
                let j = e + i as i64;
                if j >= 0 && j <= top && !w.is_zero() {
                    acc = acc.add(&cres[j as usize].apply(w));
                }
            }
            acc
        })
    }

    /// The `z⁰` coefficient `Σ_j C_j A_j v`.
    pub fn zero_mode(&self, v: &FockVector) -> FockVector {
        let d = v.max_degree().unwrap_or(0);
        (0..=d)
            .into_par_iter()
            .map(|j| self.creation(j).apply(&self.annihilation(j).apply(v)))
            .reduce(FockVector::zero, |a, b| a.add(&b))
    }

    /// The zero mode as a normally ordered operator, exact on degrees ≤ `n`.
    pub fn zero_mode_op(&self, n: u32) -> NormalOrderedOp {
        let mut op = NormalOrderedOp::zero();
        for j in 0..=n {
            let c = self.creation(j);
            let a = self.annihilation(j);
            for (lc, cc) in c.terms() {
                for (la, ca) in a.terms() {
                    let gp = GeneralizedPartition::from_multiplicities(lc.iter().chain(la.iter())).expect("nonzero parts");
                    op.add_term(gp, &cc.mul(ca));
                }
            }
        }
        op
    }
}

/// `V(z; q, t, q̃, t̃)` in its exponential form.
pub fn v_operator(p: &VParams) -> ExpPair {
    let VParams { q, t, q_tilde, t_tilde } = p.clone();
    ExpPair::new(
        move |k| q.pow(k as i32).sub(&q_tilde.pow(k as i32)),
        move |k| t_tilde.pow(k as i32).sub(&t.pow(k as i32)),
    )
}

/// `V v` exactly on `[−deg v, high]`.
pub fn v_apply(p: &VParams, v: &FockVector, high: i64) -> AuxSeries<FockVector> {
    v_operator(p).apply(v, high)
}

/// `Γ₋(qz) Γ₋(q̃z)⁻¹ Γ₊(t̃⁻¹z) Γ₊(t⁻¹z)⁻¹`.
pub fn v_word(p: &VParams) -> Result<VertexWord> {
    Ok(vec![
        GammaFactor::new(Side::Minus, p.q.clone(), rf(1)),
        GammaFactor::new(Side::Minus, p.q_tilde.clone(), rf(-1)),
        GammaFactor::new(Side::Plus, p.t_tilde.inv()?, rf(1)),
        GammaFactor::new(Side::Plus, p.t.inv()?, rf(-1)),
    ])
}

/// The `V` that defines `𝔅̄(q,t⁻¹)`: `V(z; t, t⁻¹, 1, qt⁻¹)` with `q`, `t` formal.
pub fn bbar_v() -> ExpPair {
    let t = t_var();
    let q = q_var();
    ExpPair::new(
        {
            let t = t.clone();
            move |k| t.pow(k as i32).sub(&rf(1))
        },
        move |k| q.pow(k as i32).sub(&rf(1)).mul(&t.pow(-(k as i32))),
    )
}

/// `𝔅̄(q,t⁻¹) v = (v − V₀ v)/((1−q)(1−t⁻¹))`.
pub fn bbar_apply(v: &FockVector) -> FockVector {
    let v0 = bbar_v().zero_mode(v);
    let den = rf(1).sub(&q_var()).mul(&rf(1).sub(&t_var().inv().expect("nonzero")));
    v.sub(&v0).scale(&den.inv().expect("nonzero"))
}

/// `Σ_□ q^{a′} t^{−ℓ′}`, the eigenvalue of `𝔅̄(q,t⁻¹)` on `J_λ(X;q,t)`.
pub fn bbar_eigenvalue(l: &Partition) -> RatFunc {
    l.all_cell_stats().iter().fold(RatFunc::zero(), |acc, s| {
        acc.add(&q_var().pow(s.coarm as i32).mul(&t_var().pow(-(s.coleg as i32))))
    })
}

/// `Ṽ(z; q, t, 1, 1)`: creation coefficients `−1`, annihilation `(1−qᵏ)(1−tᵏ)`.
pub fn vtilde_operator() -> ExpPair {
    ExpPair::new(
        |_| rf(-1),
        |k| rf(1).sub(&q_var().pow(k as i32)).mul(&rf(1).sub(&t_var().pow(k as i32))),
    )
}

/// `𝔅(q,t) v = (v − Ṽ₀ v)/((1−q)(1−t))`.
pub fn b_apply(v: &FockVector) -> FockVector {
    let v0 = vtilde_operator().zero_mode(v);
    let den = rf(1).sub(&q_var()).mul(&rf(1).sub(&t_var()));
    v.sub(&v0).scale(&den.inv().expect("nonzero"))
}

/// `Σ_□ q^{a′} t^{ℓ′}`, the eigenvalue of `𝔅(q,t)` on `H̃_λ`.
pub fn b_eigenvalue(l: &Partition) -> RatFunc {
    l.all_cell_stats().iter().fold(RatFunc::zero(), |acc, s| {
        acc.add(&q_var().pow(s.coarm as i32).mul(&t_var().pow(s.coleg as i32)))
    })
}

/// Partitions of size ≤ `max` where `𝔅̄(q,t⁻¹) J_λ ≠ eigenvalue · J_λ`.
pub fn bbar_eigen_mismatches(max: u32) -> Result<Vec<String>> {
    let ps: Vec<Partition> = (0..=max).flat_map(partitions_of).collect();
    let out: Result<Vec<Option<String>>> = ps
        .par_iter()
        .map(|l| {
            let j = macdonald_j(l)?;
            let ok = bbar_apply(&j) == j.scale(&bbar_eigenvalue(l));
            Ok((!ok).then(|| l.to_string()))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

/// Partitions of size ≤ `max` where `𝔅(q,t) H̃_λ ≠ eigenvalue · H̃_λ`.
pub fn b_eigen_mismatches(max: u32) -> Result<Vec<String>> {
    let ps: Vec<Partition> = (0..=max).flat_map(partitions_of).collect();
    let out: Result<Vec<Option<String>>> = ps
        .par_iter()
        .map(|l| {
            let h = transformed_h(l)?;
            let ok = b_apply(&h) == h.scale(&b_eigenvalue(l));
            Ok((!ok).then(|| l.to_string()))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

fn t0_series(order: usize, f: impl Fn(usize) -> RatFunc) -> AuxSeries<RatFunc> {
    AuxSeries::from_fn(AuxVar::T0, 0, order as i64, |r| f(r as usize))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `(e^{x t₀} − 1)/(x t₀) = Σ x^r t₀^r/(r+1)!`
fn e_shift(x: &RatFunc, order: usize) -> AuxSeries<RatFunc> {
    t0_series(order, |r| x.pow(r as i32).scale(&BigRational::new(BigInt::one(), factorial(r + 1))))
}

/// `e^{x t₀}`
fn e_lin(x: &RatFunc, order: usize) -> AuxSeries<RatFunc> {
    t0_series(order, |r| x.pow(r as i32).scale(&BigRational::new(BigInt::one(), factorial(r))))
}

/// The generalized partitions of size 0 with `2 ≤ ℓ ≤ k+2` and `|λ⁺| ≤ n`.
pub fn bbar_support(k: u32, n: u32) -> Result<Vec<GeneralizedPartition>> {
    Ok(generalized_partitions(0, LengthBound::AtMost(k as usize + 2), Some(n))?
        .into_iter()
        .filter(|l| l.len() >= 2 && l.size_plus() <= n as i64)
        .collect())
}

/// `𝔅̄ₖ^{(α)}`: the `t₀ᵏ` coefficient of `𝔅̄(q,t⁻¹)` at `q = e^{αt₀}`,
/// `t = e^{t₀}`, exact on degrees ≤ `n`.
///
/// Per monomial, `g_λ = α^{ℓ(λ⁺)−1} Coeff_{t₀^{k+2−ℓ}}` of
/// `∏_{−i∈λ} E(i) ∏_{j∈λ} E(jα)e^{−jt₀} / (E(α)E(−1))`, `E(x) = (e^{xt₀}−1)/(xt₀)`.
pub fn bbar_k(k: u32, n: u32) -> Result<NormalOrderedOp> {
    let order = k as usize;
    let a = alpha();
    let den = e_shift(&a, order).mul(&e_shift(&rf(-1), order)).inverse()?;
    let support = bbar_support(k, n)?;
    let terms: Result<Vec<(GeneralizedPartition, RatFunc)>> = support
        .par_iter()
        .map(|l| {
            let top = k as i64 + 2 - l.len() as i64;
            let mut s = den.clone();
            for (i, m) in l.iter() {
                let f = if i < 0 {
                    e_shift(&rf(-i as i64), order)
                } else {
                    let x = rf(i as i64);
                    e_shift(&a.mul(&x), order).mul(&e_lin(&x.neg(), order))
                };
                for _ in 0..m {
                    s = s.mul(&f);
                }
            }
            let g = s.coeff(top)?.mul(&a.pow(l.plus().len() as i32 - 1));
            let c = g.scale(&BigRational::new(BigInt::one(), l.factorial()));
            Ok((l.clone(), c))
        })
        .collect();
    Ok(NormalOrderedOp::from_terms(terms?))
}

fn gp_coeff(l: &GeneralizedPartition, g: RatFunc) -> RatFunc {
    g.scale(&BigRational::new(BigInt::one(), l.factorial()))
}

/// The closed displays of `𝔅̄ₖ^{(α)}` for `k ≤ 2`, restricted to `|λ⁺| ≤ n`.
pub fn bbar_display(k: u32, n: u32) -> Result<NormalOrderedOp> {
    let a = alpha();
    let am1 = a.sub(&rf(1));
    let mut op = NormalOrderedOp::zero();
    let diag = |i: u32| GeneralizedPartition::from_parts(&[-(i as i32), i as i32]).expect("nonzero");
    match k {
        0 => {
            for i in 1..=n {
                op.add_term(diag(i), &rf(1));
            }
        }
        1 => {
            for l in bbar_support(1, n)?.into_iter().filter(|l| l.len() == 3) {
                let g = a.pow(l.plus().len() as i32 - 1);
                op.add_term(l.clone(), &gp_coeff(&l, g));
            }
            for i in 1..=n {
                op.add_term(diag(i), &rfq(i as i64 - 1, 2).mul(&am1));
            }
        }
        2 => {
            for l in bbar_support(2, n)? {
                let lp = l.plus().len() as i32;
                let g = match l.len() {
                    4 => a.pow(lp - 1),
                    3 => a.pow(lp - 1).mul(&rfq(l.size_plus() - 1, 2)).mul(&am1),
                    _ => continue,
                };
                op.add_term(l.clone(), &gp_coeff(&l, g));
            }
            for i in 1..=n as i64 {
                let c1 = rfq(1, 12).sub(&rfq(i, 4)).add(&rfq(i * i, 8)).mul(&am1.pow(2));
                let c2 = rf(i * i).mul(&a.pow(2)).sub(&a.mul(&rf(2))).add(&rf(i * i)).mul(&rfq(1, 24));
                op.add_term(diag(i as u32), &c1.add(&c2));
            }
        }
        _ => return input(format!("no closed display for k = {}", k)),
    }
    Ok(op)
}

/// `𝐖 = Γ₋(z)^{m+t₁+t₂} Γ₊(z)^{m/(t₁t₂)}` with `m` formal.
pub fn w_word() -> VertexWord {
    let up = m_var().add(&t1()).add(&t2());
    let down = m_var().div(&t1().mul(&t2())).expect("nonzero");
    vec![
        GammaFactor::new(Side::Minus, rf(1), up),
        GammaFactor::new(Side::Plus, rf(1), down),
    ]
}

pub fn w_apply(v: &FockVector, high: i64) -> Result<AuxSeries<FockVector>> {
    apply_word(&w_word(), v, high)
}

fn all_basis(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

/// Check `[Γ₊(z)^r, 𝔞₋ₙ] = r z⁻ⁿ Γ₊(z)^r` with `r` formal on all basis vectors
/// of degree ≤ `max_deg`, for `1 ≤ n ≤ max_n`, on `z`-powers down to `−window`.
pub fn gamma_commutator_mismatches(max_deg: u32, max_n: u32, window: u32) -> Vec<String> {
    let r = RatFunc::var(Var::R);
    let g = GammaFactor::new(Side::Plus, rf(1), r.clone());
    let pieces: Vec<NormalOrderedOp> = (0..=window).map(|j| g.piece(j)).collect();
    let basis = all_basis(max_deg);
    let cases: Vec<(u32, Partition)> = (1..=max_n).flat_map(|n| basis.iter().map(move |mu| (n, mu.clone()))).collect();
    cases
        .par_iter()
        .flat_map_iter(|(n, mu)| {
            let v = FockVector::basis(mu.clone());
            let an = Partition::new(vec![*n]).expect("positive");
            let mut bad = Vec::new();
            for j in 0..=window {
                let lhs = pieces[j as usize].apply(&v.mul_p(&an)).sub(&pieces[j as usize].apply(&v).mul_p(&an));
                let rhs = if j >= *n {
                    pieces[(j - n) as usize].apply(&v).scale(&r)
                } else {
                    FockVector::zero()
                };
                if lhs != rhs {
                    bad.push(format!("n={} v=p[{}] z^-{}", n, mu, j));
                }
            }
            bad
        })
        .collect()
}

/// Check `Γ₊(z)^a Γ₋(y)^b = (1−z⁻¹y)^{−ab} Γ₋(y)^b Γ₊(z)^a` with `a`, `b`
/// formal on basis vectors of degree ≤ `max_deg`, coefficients
/// `z^{−i} y^j` for `i, j ≤ window`.
pub fn gamma_exchange_mismatches(max_deg: u32, window: u32) -> Vec<String> {
    let a = RatFunc::var(Var::A);
    let b = RatFunc::var(Var::B);
    let plus = GammaFactor::new(Side::Plus, rf(1), a.clone());
    let minus = GammaFactor::new(Side::Minus, rf(1), b.clone());
    let top = window + max_deg;
    let ap: Vec<NormalOrderedOp> = (0..=top).map(|j| plus.piece(j)).collect();
    let cm: Vec<NormalOrderedOp> = (0..=window).map(|j| minus.piece(j)).collect();
    // (1−x)^{−ab} = Σ (ab)(ab+1)…(ab+n−1)/n! xⁿ
    let ab = a.mul(&b);
    let mut binom = vec![RatFunc::one()];
    for n in 1..=window as i64 {
        let prev = binom[n as usize - 1].clone();
        binom.push(prev.mul(&ab.add(&rf(n - 1))).mul(&rfq(1, n)));
    }
    all_basis(max_deg)
        .par_iter()
        .flat_map_iter(|mu| {
            let v = FockVector::basis(mu.clone());
            let mut bad = Vec::new();
            for i in 0..=window {
                for j in 0..=window {
                    let lhs = ap[i as usize].apply(&cm[j as usize].apply(&v));
                    let mut rhs = FockVector::zero();
                    for n in 0..=i.min(j) {
                        let inner = cm[(j - n) as usize].apply(&ap[(i - n) as usize].apply(&v));
                        rhs = rhs.add(&inner.scale(&binom[n as usize]));
                    }
                    if lhs != rhs {
                        bad.push(format!("v=p[{}] z^-{} y^{}", mu, i, j));
                    }
                }
            }
            bad
        })
        .collect()
}

#[cfg(test)]
mod tests;
