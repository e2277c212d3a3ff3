//! Brackets, bi-brackets, Z-values and fitting q-series against bracket spans.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::{rat_int, QSeries};
use crate::error::{input, Result};

/// Index of a bracket `[s]` or of a bi-bracket `[s; r]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BracketIndex {
    s: Vec<u32>,
    r: Vec<u32>,
}

impl BracketIndex {
    pub fn bracket(s: &[u32]) -> Result<Self> {
        Self::bi(s, &vec![0; s.len()])
    }

    pub fn bi(s: &[u32], r: &[u32]) -> Result<Self> {
        if s.len() != r.len() {
            return input(format!("index lengths differ: {} vs {}", s.len(), r.len()));
        }
        if s.iter().any(|&x| x == 0) {
            return input("bracket entries must be at least 1");
        }
        Ok(BracketIndex { s: s.to_vec(), r: r.to_vec() })
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum::<u32>() + self.r.iter().sum::<u32>()
    }

    pub fn is_plain(&self) -> bool {
        self.r.iter().all(|&x| x == 0)
    }

    /// Parses `2,1` or `2,1;0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('[').trim_end_matches(']');
        let list = |t: &str| -> Result<Vec<u32>> {
            let t = t.trim();
            if t.is_empty() || t == "∅" {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse::<u32>().or_else(|_| input(format!("bad bracket entry {:?}", x))))
                .collect()
        };
        match text.split_once(';') {
            Some((s, r)) => Self::bi(&list(s)?, &list(r)?),
            None => Self::bracket(&list(text)?),
        }
    }

    pub fn series(&self, order: usize) -> QSeries<BigRational> {
        bibracket(&self.s, &self.r, order).expect("validated index")
    }
}

impl fmt::Display for BracketIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.is_plain() {
            write!(f, "[{}]", join(&self.s))
        } else {
            write!(f, "[{};{}]", join(&self.s), join(&self.r))
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn pow_ratio(base: u64, e: u32, fact: u32) -> BigRational {
    BigRational::new(BigInt::from(base).pow(e), factorial(fact))
}

/// Coefficients of `P_{s−1}(t)`, lowest power first.
pub fn eulerian_poly(s: u32) -> Result<Vec<BigRational>> {
    if s == 0 {
        return input("eulerian_poly needs s ≥ 1");
    }
    let n = s as usize;
    // t P_{s−1}(t) = (1 − t)^s Σ_d d^{s−1} t^d, a polynomial of degree ≤ s
    let mut series: Vec<BigRational> = (0..=n).map(|d| rat_int(d as i64).pow(s as i32 - 1)).collect();
    series[0] = BigRational::zero();
    for _ in 0..s {
        for d in (1..=n).rev() {
            let prev = series[d - 1].clone();
            series[d] -= prev;
        }
    }
    let mut p = series[1..].to_vec();
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    Ok(p)
}

/// Σ over `n₁ > … > n_ℓ ≥ 1` of `∏ fᵢ(nᵢ)`, where `fᵢ(n)` is a series with
/// zero coefficients below `q^n`.
fn nested_sum(factors: &[Box<dyn Fn(usize) -> QSeries<BigRational> + Sync + '_>], order: usize) -> QSeries<BigRational> {
    if factors.is_empty() {
        return QSeries::one(order);
    }
    // cum[n] = the sum over the innermost indices with the outermost of them ≤ n
    let last = factors.len() - 1;
    let mut cum: Vec<QSeries<BigRational>> = Vec::with_capacity(order + 1);
    let mut acc = QSeries::zero(order);
    cum.push(acc.clone());
    for n in 1..=order {
        acc = acc.add(&factors[last](n));
        cum.push(acc.clone());
    }
    for f in factors[..last].iter().rev() {
        let terms: Vec<QSeries<BigRational>> = (1..=order).into_par_iter().map(|n| f(n).mul(&cum[n - 1])).collect();
        let mut acc = QSeries::zero(order);
        let mut next = vec![acc.clone()];
        for t in terms {
            acc = acc.add(&t);
            next.push(acc.clone());
        }
        cum = next;
    }
    cum[order].clone()
}

/// Bi-bracket `[s; r]` through `q^order`.
pub fn bibracket(s: &[u32], r: &[u32], order: usize) -> Result<QSeries<BigRational>> {
    let idx = BracketIndex::bi(s, r)?;
    let factors: Vec<Box<dyn Fn(usize) -> QSeries<BigRational> + Sync>> = idx
        .s
        .iter()
        .zip(&idx.r)
        .map(|(&si, &ri)| {
            Box::new(move |u: usize| {
                let mut c = vec![BigRational::zero(); order + 1];
                let lead = pow_ratio(u as u64, ri, ri);
                for v in 1..=order / u {
                    c[u * v] = &lead * pow_ratio(v as u64, si - 1, si - 1);
                }
                QSeries::from_exact(c)
            }) as Box<dyn Fn(usize) -> QSeries<BigRational> + Sync>
        })
        .collect();
    Ok(nested_sum(&factors, order))
}

/// Bracket `[s₁,…,s_ℓ]` through `q^order`, via the bi-bracket double sum.
pub fn bracket(s: &[u32], order: usize) -> Result<QSeries<BigRational>> {
    bibracket(s, &vec![0; s.len()], order)
}

/// `Z_Q(s)` for the numerator family `numer(s)` (coefficients lowest first).
fn z_q(s: &[u32], numer: impl Fn(u32) -> Vec<BigRational>, order: usize) -> QSeries<BigRational> {
    let factors: Vec<Box<dyn Fn(usize) -> QSeries<BigRational> + Sync>> = s
        .iter()
        .map(|&si| {
            // Q(x)/(1 − x)^s as a series in x
            let num = numer(si);
            let mut base = QSeries::from_coeffs(num, order);
            let one_minus_x = QSeries::from_coeffs(vec![BigRational::one(), -BigRational::one()], order);
            let inv = one_minus_x.inverse().expect("unit constant term");
            for _ in 0..si {
                base = base.mul(&inv);
            }
            Box::new(move |n: usize| {
                let mut c = vec![BigRational::zero(); order + 1];
                for (j, x) in base.coeffs().iter().enumerate() {
                    if j * n > order {
                        break;
                    }
                    c[j * n] = x.clone();
                }
                QSeries::from_exact(c)
            }) as Box<dyn Fn(usize) -> QSeries<BigRational> + Sync>
        })
        .collect();
    nested_sum(&factors, order)
}

/// Bracket through the Eulerian numerators; a cross-check of [`bracket`].
pub fn bracket_eulerian(s: &[u32], order: usize) -> Result<QSeries<BigRational>> {
    if s.iter().any(|&x| x == 0) {
        return input("bracket entries must be at least 1");
    }
    Ok(z_q(
        s,
        |si| {
            let p = eulerian_poly(si).expect("s ≥ 1");
            let f = BigRational::from_integer(factorial(si - 1));
            let mut c = vec![BigRational::zero()];
            c.extend(p.into_iter().map(|x| x / &f));
            c
        },
        order,
    ))
}

/// `Z(s₁,…,s_ℓ)` with the numerators `t^{s/2}` (s even) and
/// `t^{(s−1)/2}(1 + t)` (s odd).
pub fn z_value(s: &[u32], order: usize) -> Result<QSeries<BigRational>> {
    if let Some(x) = s.iter().find(|&&x| x < 2) {
        return input(format!("z_value needs every entry ≥ 2, got {}", x));
    }
    Ok(z_q(
        s,
        |si| {
            let half = (si / 2) as usize;
            let mut c = vec![BigRational::zero(); half + 2];
            if si % 2 == 0 {
                c[half] = BigRational::one();
            } else {
                c[half] = BigRational::one();
                c[half + 1] = BigRational::one();
            }
            c
        },
        order,
    ))
}

/// A basis element offered to [`fit_in_bracket_span`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Candidate {
    One,
    Index(BracketIndex),
}

impl Candidate {
    pub fn weight(&self) -> u32 {
        match self {
            Candidate::One => 0,
            Candidate::Index(i) => i.weight(),
        }
    }

    pub fn series(&self, order: usize) -> QSeries<BigRational> {
        match self {
            Candidate::One => QSeries::one(order),
            Candidate::Index(i) => i.series(order),
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::One => f.write_str("1"),
            Candidate::Index(i) => write!(f, "{}", i),
        }
    }
}

/// Brackets with every entry ≥ 2 and weight ≤ `max_weight`, plus `1`.
pub fn qmzv_candidates(max_weight: u32) -> Vec<Candidate> {
    fn compositions(w: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if w == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 2..=w {
            cur.push(first);
            compositions(w - first, out, cur);
            cur.pop();
        }
    }
    let mut out = vec![Candidate::One];
    for w in 2..=max_weight {
        let mut comps = Vec::new();
        compositions(w, &mut comps, &mut Vec::new());
        comps.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
        out.extend(comps.into_iter().map(|c| Candidate::Index(BracketIndex::bracket(&c).unwrap())));
    }
    out
}

#[derive(Clone, PartialEq, Debug)]
pub enum FitOutcome {
    /// An exact solution on every available coefficient; `unique` is false
    /// when the candidates are dependent through the order (free ones set to 0).
    Fit {
        coeffs: Vec<(Candidate, BigRational)>,
        unique: bool,
    },
    /// The first q-power at which the system becomes inconsistent.
    Inconsistent { q_power: usize },
}

impl FitOutcome {
    pub fn coeff(&self, c: &Candidate) -> Option<&BigRational> {
        match self {
            FitOutcome::Fit { coeffs, .. } => coeffs.iter().find(|(k, _)| k == c).map(|(_, v)| v),
            FitOutcome::Inconsistent { .. } => None,
        }
    }

    pub fn is_fit(&self) -> bool {
        matches!(self, FitOutcome::Fit { .. })
    }
}

impl fmt::Display for FitOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitOutcome::Fit { coeffs, unique } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| format!("({})*{}", v, c))
                    .collect();
                let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                if *unique {
                    f.write_str(&body)
                } else {
                    write!(f, "{} (not unique)", body)
                }
            }
            FitOutcome::Inconsistent { q_power } => write!(f, "no fit: inconsistent at q^{}", q_power),
        }
    }
}

pub const DEFAULT_FIT_MARGIN: usize = 10;

/// Solves `f = Σ c_i · candidate_i` on all coefficients `q^0 … q^order`.
pub fn fit_in_bracket_span(f: &QSeries<BigRational>, candidates: &[Candidate], order: usize) -> Result<FitOutcome> {
    if order < candidates.len() + DEFAULT_FIT_MARGIN {
        return input(format!(
            "q-order {} too small for {} candidates (margin {})",
            order,
            candidates.len(),
            DEFAULT_FIT_MARGIN
        ));
    }
    if f.order() < order {
        return input(format!("series known through q^{} only", f.order()));
    }
    let cols: Vec<QSeries<BigRational>> = candidates.par_iter().map(|c| c.series(order)).collect();
    let nc = candidates.len();
    // incremental row echelon form; each row is [a_0 … a_{nc−1} | b]
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for n in 0..=order {
        let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs()[n].clone()).collect();
        row.push(f.coeffs()[n].clone());
        for (p, prow) in &pivots {
            if !row[*p].is_zero() {
                let factor = row[*p].clone();
                for j in 0..=nc {
                    if !prow[j].is_zero() {
                        let t = &factor * &prow[j];
                        row[j] -= t;
                    }
                }
            }
        }
        match (0..nc).find(|&j| !row[j].is_zero()) {
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    *x = &*x * &inv;
                }
                for (_, prow) in pivots.iter_mut() {
                    if !prow[p].is_zero() {
                        let factor = prow[p].clone();
                        for j in 0..=nc {
                            if !row[j].is_zero() {
                                let t = &factor * &row[j];
                                prow[j] -= t;
                            }
                        }
                    }
                }
                pivots.push((p, row));
            }
            None => {
                if !row[nc].is_zero() {
                    return Ok(FitOutcome::Inconsistent { q_power: n });
                }
            }
        }
    }
    let mut sol = vec![BigRational::zero(); nc];
    for (p, prow) in &pivots {
        sol[*p] = prow[nc].clone();
    }
    Ok(FitOutcome::Fit {
        coeffs: candidates.iter().cloned().zip(sol).collect(),
        unique: pivots.len() == nc,
    })
}

#[cfg(test)]
mod tests;
