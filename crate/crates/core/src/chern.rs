//! The equivariant Chern character operators `𝔊ₖ(t₁,t₂)`.
//!
//! `𝔊ₖ` is diagonal on the fixed-point classes `𝐉^λ` with eigenvalue
//! `Σ_□ (−1)ᵏ/k! (a′t₁ + ℓ′t₂)ᵏ`. The Fock-side form is
//! `t₂ᵏ t₁^{δ(·)} 𝔅̄ₖ^{(α)}` at `α = −t₁/t₂`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::coeff::{alpha, rf, rfq, t1, t2, Matrix, RatFunc, Var};
use crate::error::Result;
use crate::fock::{expand_in_monomials, GradedMatrices, NormalOrderedOp};
use crate::partitions::{partitions_of, GeneralizedPartition, Partition};
use crate::report::{Item, Report};
use crate::symfunc::{fixed_point_matrix, jack_j};
use crate::vertex::{bbar_k, bbar_support};

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `Σ_□ (−1)ᵏ/k! (a′t₁ + ℓ′t₂)ᵏ`
pub fn eigenvalue(l: &Partition, k: u32) -> RatFunc {
    let inv = BigRational::new(BigInt::one(), factorial(k));
    l.all_cell_stats().iter().fold(RatFunc::zero(), |acc, s| {
        let x = t1().mul(&rf(s.coarm as i64)).add(&t2().mul(&rf(s.coleg as i64))).neg();
        acc.add(&x.pow(k as i32).scale(&inv))
    })
}

/// `Σ_□ (a′α − ℓ′)ᵏ/k!`; equals `t₂⁻ᵏ` times [`eigenvalue`] at `α = −t₁/t₂`.
pub fn eigenvalue_alpha(l: &Partition, k: u32) -> RatFunc {
    let inv = BigRational::new(BigInt::one(), factorial(k));
    l.all_cell_stats().iter().fold(RatFunc::zero(), |acc, s| {
        let x = alpha().mul(&rf(s.coarm as i64)).sub(&rf(s.coleg as i64));
        acc.add(&x.pow(k as i32).scale(&inv))
    })
}

/// Jack integral forms of degree `n` as columns, and the inverse matrix.
fn jack_matrices(n: u32) -> Result<Arc<(Matrix<RatFunc>, Matrix<RatFunc>)>> {
    static SLOT: OnceLock<Mutex<HashMap<u32, Arc<(Matrix<RatFunc>, Matrix<RatFunc>)>>>> = OnceLock::new();
    let map = SLOT.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let ps = partitions_of(n);
    let cols: Result<Vec<Vec<RatFunc>>> = ps.par_iter().map(|l| Ok(jack_j(l)?.to_column(n))).collect();
    let cols = cols?;
    let b = Matrix::from_fn(ps.len(), ps.len(), |i, j| cols[j][i].clone());
    let binv = b.inverse()?;
    let v = Arc::new((b, binv));
    map.lock().unwrap().insert(n, v.clone());
    Ok(v)
}

fn minus_t1_over_t2() -> RatFunc {
    t1().neg().div(&t2()).expect("nonzero")
}

/// Matrix of `𝔊ₖ` on degree `n` in the `p`-basis.
///
/// With `𝐉^λ = t₂^{|λ|} L J^{(α)}`, `L = diag(t₁^{ℓ(μ)})`, the conjugation is
/// done over `ℚ(α)` and only then specialized: `L t₂ᵏ (B D B⁻¹)|_{α=−t₁/t₂} L⁻¹`.
pub fn gk_eigen_block(k: u32, n: u32) -> Result<Matrix<RatFunc>> {
    let ps = partitions_of(n);
    let jm = jack_matrices(n)?;
    let (b, binv) = (&jm.0, &jm.1);
    let d = Matrix::diagonal(&ps.iter().map(|l| eigenvalue_alpha(l, k)).collect::<Vec<_>>());
    let a = b.mul(&d).mul(binv);
    let sub = minus_t1_over_t2();
    let t2k = t2().pow(k as i32);
    let entries: Result<Vec<RatFunc>> = (0..ps.len() * ps.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / ps.len(), idx % ps.len());
            let c = a.get(i, j);
            if c.is_zero() {
                return Ok(RatFunc::zero());
            }
            let shift = ps[i].len() as i32 - ps[j].len() as i32;
            Ok(c.substitute(Var::Alpha, &sub)?.mul(&t2k).mul(&t1().pow(shift)))
        })
        .collect();
    let entries = entries?;
    Ok(Matrix::from_fn(ps.len(), ps.len(), |i, j| entries[i * ps.len() + j].clone()))
}

/// The eigen-defined `𝔊ₖ` on all degrees ≤ `n_max`.
pub fn gk_eigen(k: u32, n_max: u32) -> Result<GradedMatrices> {
    let blocks: Result<Vec<(u32, Matrix<RatFunc>)>> =
        (0..=n_max).map(|n| Ok((n, gk_eigen_block(k, n)?))).collect();
    Ok(GradedMatrices {
        weight: 0,
        blocks: blocks?.into_iter().collect(),
    })
}

/// Slow oracle: `P D P⁻¹` with the fixed-point classes as the columns of `P`.
pub fn gk_eigen_block_direct(k: u32, n: u32) -> Result<Matrix<RatFunc>> {
    let p = fixed_point_matrix(n)?;
    let d = Matrix::diagonal(&partitions_of(n).iter().map(|l| eigenvalue(l, k)).collect::<Vec<_>>());
    Ok(p.mul(&d).mul(&p.inverse()?))
}

/// `t₂ᵏ t₁^{δ(λ)}` times each coefficient, after `α ↦ −t₁/t₂`.
pub fn twist(op: &NormalOrderedOp, k: u32) -> Result<NormalOrderedOp> {
    let sub = minus_t1_over_t2();
    let t2k = t2().pow(k as i32);
    let terms: Result<Vec<(GeneralizedPartition, RatFunc)>> = op
        .terms()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(l, c)| {
            let v = c.substitute(Var::Alpha, &sub)?.mul(&t2k).mul(&t1().pow(l.delta() as i32));
            Ok(((*l).clone(), v))
        })
        .collect();
    Ok(NormalOrderedOp::from_terms(terms?))
}

/// The Fock-side `𝔊ₖ`, exact on degrees ≤ `n`.
pub fn gk_fock(k: u32, n: u32) -> Result<NormalOrderedOp> {
    twist(&bbar_k(k, n)?, k)
}

fn diag(i: u32) -> GeneralizedPartition {
    GeneralizedPartition::from_parts(&[-(i as i32), i as i32]).expect("nonzero")
}

fn over_factorial(l: &GeneralizedPartition, g: RatFunc) -> RatFunc {
    g.scale(&BigRational::new(BigInt::one(), l.factorial()))
}

/// The closed form of `𝔊₁` restricted to parts ≤ `n`:
/// `½Σ(t₁t₂ 𝔞₋ᵢ𝔞₋ⱼ𝔞ᵢ₊ⱼ − 𝔞₋ᵢ₋ⱼ𝔞ᵢ𝔞ⱼ) − (t₁+t₂)Σ (i−1)/2 𝔞₋ᵢ𝔞ᵢ`.
pub fn g1_display(n: u32) -> NormalOrderedOp {
    let mut op = NormalOrderedOp::zero();
    let half = rfq(1, 2);
    let tt = t1().mul(&t2());
    for i in 1..=n as i32 {
        for j in 1..=n as i32 - i {
            let up = GeneralizedPartition::from_parts(&[-i, -j, i + j]).expect("nonzero");
            let down = GeneralizedPartition::from_parts(&[-i - j, i, j]).expect("nonzero");
            op.add_term(up, &half.mul(&tt));
            op.add_term(down, &half.neg());
        }
    }
    let s = t1().add(&t2());
    for i in 1..=n {
        op.add_term(diag(i), &s.mul(&rfq(i as i64 - 1, 2)).neg());
    }
    op
}

/// The closed form of `𝔊₂` restricted to `|λ⁺| ≤ n`.
pub fn g2_display(n: u32) -> Result<NormalOrderedOp> {
    let mut op = NormalOrderedOp::zero();
    let tt = t1().mul(&t2());
    let s = t1().add(&t2());
    for l in bbar_support(2, n)? {
        let lp = l.plus().len() as i32;
        let lm = l.minus().len() as i32;
        let sign = |e: i32| if e % 2 == 0 { rf(1) } else { rf(-1) };
        let g = match l.len() {
            4 => sign(lp - 1).mul(&tt.pow(lm - 1)),
            3 => rfq(l.size_plus() - 1, 2).mul(&sign(lp)).mul(&tt.pow(lm - 1)).mul(&s),
            _ => continue,
        };
        op.add_term(l.clone(), &over_factorial(&l, g));
    }
    for i in 1..=n as i64 {
        let c = rfq(2 * i * i - 3 * i + 1, 12).mul(&s.pow(2)).add(&rfq(1 - i * i, 12).mul(&tt));
        op.add_term(diag(i as u32), &c);
    }
    Ok(op)
}

/// Conjectured top-length coefficient `(−1)^{ℓ(λ⁺)−1}(t₁t₂)^{ℓ(λ⁻)−1}/λ^!`.
pub fn conjectured_leading(l: &GeneralizedPartition) -> RatFunc {
    let lp = l.plus().len() as i32;
    let lm = l.minus().len() as i32;
    let sign = if (lp - 1) % 2 == 0 { rf(1) } else { rf(-1) };
    over_factorial(l, sign.mul(&t1().mul(&t2()).pow(lm - 1)))
}

/// Compare the eigen-defined and Fock-side `𝔊ₖ` as matrices on every degree
/// ≤ `n`; one item per degree, listing mismatching entries.
pub fn verify_gk_routes(k: u32, n: u32) -> Result<Report> {
    let fock = gk_fock(k, n)?;
    let mut r = Report::new("gk-routes").param("k", k).param("degmax", n);
    let items: Result<Vec<Item>> = (0..=n)
        .into_par_iter()
        .map(|d| {
            let e = gk_eigen_block(k, d)?;
            let f = fock.matrix_on_degree(d)?;
            let ps = partitions_of(d);
            let mut bad = Vec::new();
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    if e.get(i, j) != f.get(i, j) {
                        bad.push(format!("[{},{}] eigen={} fock={}", ps[i], ps[j], e.get(i, j), f.get(i, j)));
                    }
                }
            }
            Ok(Item::none_of(format!("k={} degree {}", k, d), &bad))
        })
        .collect();
    for it in items? {
        r.push(it);
    }
    Ok(r)
}

/// One top-length monomial of the probe.
#[derive(Clone, PartialEq, Debug)]
pub struct ProbeRow {
    pub monomial: GeneralizedPartition,
    pub conjectured: RatFunc,
    pub found: RatFunc,
}

impl ProbeRow {
    pub fn agrees(&self) -> bool {
        self.conjectured == self.found
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Probe {
    pub k: u32,
    pub degree: u32,
    pub rows: Vec<ProbeRow>,
    /// Terms of length < k+2.
    pub remainder: NormalOrderedOp,
}

/// Expand the eigen-defined `𝔊ₖ` on degrees ≤ `n` in monomials of length ≤
/// `max_len` and compare every length-`(k+2)` coefficient with the
/// conjectured leading term.
pub fn conjecture_probe(k: u32, n: u32, max_len: usize) -> Result<Probe> {
    let g = gk_eigen(k, n)?;
    let op = expand_in_monomials(&g, n, max_len)?;
    let top = k as usize + 2;
    let rows = bbar_support(k, n)?
        .into_iter()
        .filter(|l| l.len() == top)
        .map(|l| ProbeRow {
            conjectured: conjectured_leading(&l),
            found: op.coeff(&l),
            monomial: l,
        })
        .collect();
    let remainder = op.filter(|l| l.len() < top);
    Ok(Probe {
        k,
        degree: n,
        rows,
        remainder,
    })
}

impl Probe {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("conjecture-probe").param("k", self.k).param("degmax", self.degree);
        let agree = self.rows.iter().filter(|x| x.agrees()).count();
        for row in &self.rows {
            // the probe asserts nothing; disagreement is data
            r.push(Item {
                name: format!("leading {}", row.monomial),
                expected: Some(row.conjectured.to_string()),
                got: row.found.to_string(),
                pass: true,
            });
        }
        r.push(Item::outcome(
            "summary",
            format!("{} of {} leading coefficients agree; {} lower-length terms", agree, self.rows.len(), self.remainder.len()),
            true,
        ));
        r
    }
}

#[cfg(test)]
mod tests;
