//! Equivariant derivatives `𝔣⁽ᵏ⁾ = ad(𝔊₁)ᵏ 𝔣` of Heisenberg operators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::chern::gk_fock;
use crate::coeff::{rf, rfq, t1, t2, RatFunc};
use crate::error::{input, Error, Result};
use crate::fock::{expand_in_monomials, GradedMatrices, NormalOrderedOp, Window};
use crate::partitions::{generalized_partitions, GeneralizedPartition, LengthBound};
use crate::report::{Item, Report};

/// `ε(i, j) = 1` iff `ij < 0` and `i + j > 0`, or `i, j < 0`.
pub fn epsilon(i: i32, j: i32) -> bool {
    (i * j < 0 && i + j > 0) || (i < 0 && j < 0)
}

/// `(n/2) Σ_{i+j=n} (−t₁t₂)^{ε(i,j)} 𝔞ᵢ𝔞ⱼ + n(|n|−1)/2 (t₁+t₂) 𝔞ₙ` with
/// `|i|, |j| ≤ bound`.
pub fn a_prime_closed(n: i32, bound: u32) -> Result<NormalOrderedOp> {
    if n == 0 {
        return input("a_prime_closed needs n ≠ 0");
    }
    if bound < n.unsigned_abs() {
        return input(format!("part bound {} below |n| = {}", bound, n.abs()));
    }
    let b = bound as i32;
    let half_n = rfq(n as i64, 2);
    let mtt = t1().mul(&t2()).neg();
    let mut op = NormalOrderedOp::zero();
    for i in -b..=b {
        let j = n - i;
        if i == 0 || j == 0 || j.abs() > b {
            continue;
        }
        // i + j = n ≠ 0, so the pair is already normally ordered up to a swap
        let c = if epsilon(i, j) { half_n.mul(&mtt) } else { half_n.clone() };
        op.add_term(GeneralizedPartition::from_parts(&[i, j])?, &c);
    }
    let lin = rfq(n as i64 * (n.abs() as i64 - 1), 2).mul(&t1().add(&t2()));
    op.add_term(GeneralizedPartition::from_parts(&[n])?, &lin);
    Ok(op)
}

/// Degree window used for the `k`-th derivative of `𝔞₋ₙ`.
pub fn default_window(n: u32, k: u32) -> u32 {
    n + 2 * k + 2
}

/// `ad(𝔊₁)ᵏ f`, exact on degrees ≤ `max_degree`; `raise` is how far `f`
/// raises the degree, so that `𝔊₁` is taken exact on degrees ≤ max + raise.
pub fn derivative(f: &NormalOrderedOp, k: u32, max_degree: u32, raise: u32) -> Result<NormalOrderedOp> {
    let g1 = gk_fock(1, max_degree + raise)?;
    let mut cur = f.clone();
    for _ in 0..k {
        // the two products have longer terms that cancel in the commutator
        let w = Window {
            max_degree,
            max_length: g1.max_length() + cur.max_length(),
        };
        let limit = cur.max_length() + 1;
        cur = g1.commutator(&cur, w)?;
        if cur.max_length() > limit {
            return Err(Error::Window(format!(
                "commutator produced a term of length {} > {}",
                cur.max_length(),
                limit
            )));
        }
    }
    Ok(cur)
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `nᵏ k! (−1)^{ℓ(λ⁺)} (t₁t₂)^{ℓ(λ⁻)−1} / λ^!`.
pub fn leading_coefficient(n: u32, k: u32, l: &GeneralizedPartition) -> RatFunc {
    let lp = l.plus().len();
    let lm = l.minus().len() as i32;
    let sign = if lp % 2 == 0 { 1 } else { -1 };
    let c = BigInt::from(n).pow(k) * factorial(k) * BigInt::from(sign);
    t1().mul(&t2()).pow(lm - 1).scale(&BigRational::new(c, l.factorial()))
}

fn filter_degree(op: &NormalOrderedOp, max_degree: u32) -> NormalOrderedOp {
    op.filter(|l| l.size_plus() <= max_degree as i64)
}

/// `[𝔊₁, 𝔞₋ₙ]` against the closed form on degrees ≤ `max_degree`.
pub fn first_derivative_check(n: u32, max_degree: u32) -> Result<Item> {
    let d = derivative(&NormalOrderedOp::mode(-(n as i32))?, 1, max_degree, n)?;
    let closed = filter_degree(&a_prime_closed(-(n as i32), max_degree + n)?, max_degree);
    let diff = d.sub(&closed);
    let bad: Vec<String> = diff
        .terms()
        .map(|(l, _)| format!("{}: derived {} closed {}", l, d.coeff(l), closed.coeff(l)))
        .collect();
    Ok(Item::none_of(format!("[G1, a(-{})] on degrees ≤ {}", n, max_degree), &bad))
}

/// Leading length-(k+1) coefficients of `𝔞₋ₙ⁽ᵏ⁾`, read off the monomial
/// expansion of its graded matrices on degrees ≤ `max_degree`.
pub fn leading_term_check(n: u32, k: u32, max_degree: u32) -> Result<Report> {
    let mut r = Report::new("derivative-leading").param("n", n).param("k", k).param("degmax", max_degree);
    let d = derivative(&NormalOrderedOp::mode(-(n as i32))?, k, max_degree, n)?;
    if d.weight().map_or(false, |w| w != -(n as i64)) {
        return input(format!("derivative has weight {:?}", d.weight()));
    }
    let top = k as usize + 1;
    let g = GradedMatrices::from_op(&d, -(n as i64), max_degree)?;
    let e = expand_in_monomials(&g, max_degree, top)?;
    let consistent = e == filter_degree(&d, max_degree);
    r.push(Item::outcome(
        "monomial expansion reproduces the commutator",
        format!("{} terms", e.len()),
        consistent,
    ));
    let longer: Vec<String> = e.terms().filter(|(l, _)| l.len() > top).map(|(l, _)| l.to_string()).collect();
    r.push(Item::none_of(format!("no terms longer than {}", top), &longer));
    let cands: Vec<GeneralizedPartition> = generalized_partitions(-(n as i64), LengthBound::Exactly(top), Some(max_degree + n))?
        .into_iter()
        .filter(|l| l.size_plus() <= max_degree as i64)
        .collect();
    let bad: Vec<String> = cands
        .par_iter()
        .filter_map(|l| {
            let want = leading_coefficient(n, k, l);
            let got = e.coeff(l);
            (want != got).then(|| format!("{}: expected {} got {}", l, want, got))
        })
        .collect();
    r.push(Item::none_of(format!("{} leading coefficients", cands.len()), &bad));
    Ok(r)
}

/// `derivative(f, k)` equals one more commutator applied to `derivative(f, k − 1)`.
pub fn chain_consistency(n: u32, k: u32, max_degree: u32) -> Result<bool> {
    let f = NormalOrderedOp::mode(-(n as i32))?;
    let a = derivative(&f, k, max_degree, n)?;
    let b = derivative(&derivative(&f, k - 1, max_degree, n)?, 1, max_degree, n)?;
    Ok(a == b)
}

/// `[𝔊₁, 𝔊₀] = 0` as an operator identity on degrees ≤ `max_degree`.
pub fn g0_is_constant(max_degree: u32) -> Result<bool> {
    let g0 = gk_fock(0, max_degree)?;
    let d = derivative(&g0, 1, max_degree, 0)?;
    Ok(d.is_zero() && !g0.is_zero() && g0.coeff(&GeneralizedPartition::from_parts(&[-1, 1])?) == rf(1))
}

#[cfg(test)]
mod tests;
