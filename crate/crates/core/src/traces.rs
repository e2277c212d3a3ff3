//! Trace generating series of products of Chern character operators, the
//! vacuum trace and reduced series, with their cross-route checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::eigenvalue;
use crate::coeff::{
    alpha, lift_rational, m_var, rat, rf, t1, t2, AuxSeries, AuxVar, QSeries, RatFunc, Var,
};
use crate::error::Result;
use crate::fock::{exp_modes_piece, trace_q, NormalOrderedOp, Window};
use crate::partitions::{partitions_of, Partition};
use crate::qzeta::{bracket, fit_in_bracket_span, qmzv_candidates, Candidate, BracketIndex, FitOutcome};
use crate::report::{Item, Report};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Eigen,
    ClosedForm,
    FockTrace,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Eigen => "eigen",
            Route::ClosedForm => "closed-form",
            Route::FockTrace => "fock-trace",
        })
    }
}

/// A q-series with coefficients in ℚ(t₁,t₂)[m], tagged with its origin.
#[derive(Clone, PartialEq, Debug)]
pub struct TraceSeries {
    pub klist: Vec<u32>,
    pub route: Route,
    pub series: QSeries<RatFunc>,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    klist: &'a [u32],
    route: Route,
    qmax: usize,
    coefficients: Vec<String>,
}

impl TraceSeries {
    pub fn to_json(&self) -> String {
        let j = TraceJson {
            klist: &self.klist,
            route: self.route,
            qmax: self.series.order(),
            coefficients: self.series.coeffs().iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("q_power,coefficient\n");
        for (n, c) in self.series.coeffs().iter().enumerate() {
            s.push_str(&format!("{},\"{}\"\n", n, c));
        }
        s
    }
}

/// `(m+t₁+t₂)m/(t₁t₂)`, the exponent shift of the vacuum trace.
fn vacuum_exponent(m: &RatFunc) -> RatFunc {
    m.add(&t1()).add(&t2()).mul(m).div(&t1().mul(&t2())).expect("t₁t₂ ≠ 0")
}

/// Diagonal coefficient of the vertex operator on the fixed-point class `λ`.
pub fn a_diag(l: &Partition, m: &RatFunc) -> RatFunc {
    let mut num = RatFunc::one();
    let mut den = RatFunc::one();
    for s in l.all_cell_stats() {
        let (a, lg) = (rf(s.arm as i64), rf(s.leg as i64));
        let x = t2().mul(&lg.add(&rf(1))).sub(&t1().mul(&a));
        let y = t1().mul(&a.add(&rf(1))).sub(&t2().mul(&lg));
        num = num.mul(&m.add(&x)).mul(&m.add(&y));
        den = den.mul(&x).mul(&y);
    }
    num.div(&den).expect("cell factors are nonzero")
}

fn sum_tree(v: Vec<RatFunc>) -> RatFunc {
    v.into_par_iter().reduce(RatFunc::zero, |a, b| a.add(&b))
}

/// `Σ_λ q^{|λ|} a_{λ,λ} ∏ⱼ Σ_□ (−1)^{kⱼ}/kⱼ!(a′t₁+ℓ′t₂)^{kⱼ}` through `q^order`.
pub fn raw_trace(klist: &[u32], order: usize, m: &RatFunc) -> TraceSeries {
    let coeffs: Vec<RatFunc> = (0..=order as u32)
        .map(|n| {
            let terms: Vec<RatFunc> = partitions_of(n)
                .par_iter()
                .map(|l| {
                    let ev = klist.iter().fold(RatFunc::one(), |acc, &k| {
                        if acc.is_zero() {
                            acc
                        } else {
                            acc.mul(&eigenvalue(l, k))
                        }
                    });
                    if ev.is_zero() {
                        ev
                    } else {
                        ev.mul(&a_diag(l, m))
                    }
                })
                .collect();
            sum_tree(terms)
        })
        .collect();
    TraceSeries {
        klist: klist.to_vec(),
        route: Route::Eigen,
        series: QSeries::from_exact(coeffs),
    }
}

/// `(q;q)_∞^{−1−(m+t₁+t₂)m/(t₁t₂)}`.
pub fn vacuum_trace(order: usize, m: &RatFunc) -> TraceSeries {
    let e = rf(-1).sub(&vacuum_exponent(m));
    TraceSeries {
        klist: Vec::new(),
        route: Route::ClosedForm,
        series: euler_power(order, &e),
    }
}

/// `(q;q)_∞^e` through exp/log.
fn euler_power(order: usize, e: &RatFunc) -> QSeries<RatFunc> {
    let log = lift_rational(&QSeries::<BigRational>::euler(order).log().expect("constant term 1"));
    log.mul_coeff(e).exp().expect("constant term 0")
}

/// The trace divided by the vacuum trace.
pub fn reduced(klist: &[u32], order: usize, m: &RatFunc) -> TraceSeries {
    let raw = raw_trace(klist, order, m);
    let e = rf(1).add(&vacuum_exponent(m));
    TraceSeries {
        klist: klist.to_vec(),
        route: Route::Eigen,
        series: raw.series.mul(&euler_power(order, &e)),
    }
}

fn bracket_rf(s: &[u32], order: usize) -> QSeries<RatFunc> {
    lift_rational(&bracket(s, order).expect("valid index"))
}

/// `(1 + (m+t₁+t₂)m/(t₁t₂))·[2]`.
pub fn ch0_closed(order: usize, m: &RatFunc) -> TraceSeries {
    let c = rf(1).add(&vacuum_exponent(m));
    TraceSeries {
        klist: vec![0],
        route: Route::ClosedForm,
        series: bracket_rf(&[2], order).mul_coeff(&c),
    }
}

/// `(t₁+t₂ + (m+t₁+t₂)(t₁+t₂)m/(t₁t₂))·([2] − 2[3])/2`.
pub fn ch1_closed(order: usize, m: &RatFunc) -> TraceSeries {
    let s = t1().add(&t2());
    let c = s.add(&vacuum_exponent(m).mul(&s));
    let b = bracket_rf(&[2], order).sub(&bracket_rf(&[3], order).scale(&rat(2, 1))).scale(&rat(1, 2));
    TraceSeries {
        klist: vec![1],
        route: Route::ClosedForm,
        series: b.mul_coeff(&c),
    }
}

/// `(eˣ − 1)/x` through `x^order`, at `x = c·z`.
fn e_series(c: &RatFunc, order: i64) -> AuxSeries<RatFunc> {
    AuxSeries::from_fn(AuxVar::Z, 0, order, |r| {
        let f: BigInt = (1..=r + 1).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        c.pow(r as i32).scale(&BigRational::new(BigInt::one(), f))
    })
}

/// The m = 0 one-point series through the z-expansion:
/// `t₂ᵏ Coeff_{zᵏ} 1/((1−q̃)(1−t̃⁻¹)) · (1 − (q)(q̃t̃⁻¹q)/((q̃q)(t̃⁻¹q)))`
/// with `q̃ = e^{αz}`, `t̃ = eᶻ`, `α = −t₁/t₂`.
pub fn reduced_m0_onepoint(k: u32, order: usize) -> Result<TraceSeries> {
    let top = k as i64 + 2;
    let a = alpha();
    // log of the product: −Σ_N q^N Σ_{r|N} r^{j−1} P_j(α) z^j, where
    // P_j is the z^j coefficient of (e^{αz} − 1)(e^{−z} − 1)
    let fact = |n: i64| -> BigInt { (1..=n).fold(BigInt::one(), |x, i| x * BigInt::from(i)) };
    let p: Vec<RatFunc> = (0..=top)
        .map(|j| {
            let mut acc = RatFunc::zero();
            for i in 1..j {
                let b = j - i;
                let c = BigRational::new(if b % 2 == 0 { BigInt::one() } else { -BigInt::one() }, fact(i) * fact(b));
                acc = acc.add(&a.pow(i as i32).scale(&c));
            }
            acc
        })
        .collect();
    let log = AuxSeries::from_fn(AuxVar::Z, 0, top, |j| {
        let mut coeffs = vec![RatFunc::zero(); order + 1];
        if j >= 2 {
            for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
                let mut sigma = BigInt::zero();
                for r in 1..=n {
                    if n % r == 0 {
                        sigma += BigInt::from(r).pow(j as u32 - 1);
                    }
                }
                *c = p[j as usize].scale(&BigRational::from_integer(-sigma));
            }
        }
        QSeries::from_exact(coeffs)
    });
    let f = log.exp()?;
    let one = AuxSeries::from_fn(AuxVar::Z, 0, top, |j| if j == 0 { QSeries::one(order) } else { QSeries::zero(order) });
    // 1 − F = z²·G, and 1/((1−q̃)(1−t̃⁻¹)) = −1/(αz²) · 1/(E(αz)E(−z))
    let g = one.sub(&f).restrict(2, top)?.shift(-2);
    let e = e_series(&a, k as i64).mul(&e_series(&rf(-1), k as i64)).inverse()?;
    let lift = |s: &AuxSeries<RatFunc>| s.map(|c| QSeries::constant(c.clone(), order));
    let h = g.mul(&lift(&e));
    let sub = t1().neg().div(&t2())?;
    let scale = t2().pow(k as i32).div(&a)?.neg();
    let series = h.coeff(k as i64)?.map(|c| {
        c.mul(&scale).substitute(Var::Alpha, &sub).expect("t₂ ≠ 0")
    });
    Ok(TraceSeries {
        klist: vec![k],
        route: Route::ClosedForm,
        series,
    })
}

fn compare_series(name: &str, expected: &QSeries<RatFunc>, got: &QSeries<RatFunc>) -> Item {
    let n = expected.order().min(got.order());
    match (0..=n).find(|&i| expected.coeffs()[i] != got.coeffs()[i]) {
        None => Item::outcome(name, format!("agree through q^{}", n), true),
        Some(i) => Item {
            name: format!("{} (q^{})", name, i),
            expected: Some(expected.coeffs()[i].to_string()),
            got: got.coeffs()[i].to_string(),
            pass: false,
        },
    }
}

/// The reduced one-point series at m = 0 against the z-expansion formula.
pub fn route_equality(k_max: u32, order: usize) -> Result<Report> {
    let mut r = Report::new("route-equality").param("kmax", k_max).param("qmax", order);
    for k in 0..=k_max {
        let eig = reduced(&[k], order, &rf(0));
        let closed = reduced_m0_onepoint(k, order)?;
        r.push(compare_series(&format!("k={}", k), &closed.series, &eig.series));
    }
    Ok(r)
}

/// Both closed forms with m, t₁, t₂ symbolic.
pub fn closed_forms(order: usize) -> Report {
    let m = m_var();
    let mut r = Report::new("reduced-closed-forms").param("qmax", order);
    r.push(compare_series("<ch0>'", &ch0_closed(order, &m).series, &reduced(&[0], order, &m).series));
    r.push(compare_series("<ch1>'", &ch1_closed(order, &m).series, &reduced(&[1], order, &m).series));
    r.push(compare_series(
        "<> against vacuum",
        &vacuum_trace(order, &m).series,
        &raw_trace(&[], order, &m).series,
    ));
    r
}

/// `Tr q^𝔫 Γ₋(y)^b Γ₊(x)^a` against `(q;q)⁻¹ (yx⁻¹q;q)^{−ab}` with `a`, `b`
/// formal, coefficient by coefficient in `w = y/x` through `w^w_max`.
pub fn gamma_trace_check(order: usize, w_max: u32) -> Result<Report> {
    let mut r = Report::new("vacuum-trace").param("qmax", order).param("window", w_max);
    let a = RatFunc::var(Var::A);
    let b = RatFunc::var(Var::B);
    // right side: exp(ab Σ_{r≥1} (w^r/r) q^r/(1 − q^r)) / (q;q)
    let ab = a.mul(&b);
    let log = AuxSeries::from_fn(AuxVar::W, 0, w_max as i64, |j| {
        let mut c = vec![RatFunc::zero(); order + 1];
        if j > 0 {
            let j = j as usize;
            for n in (j..=order).step_by(j) {
                c[n] = ab.scale(&rat(1, j as i64));
            }
        }
        QSeries::from_exact(c)
    });
    let euler_inv = QSeries::<RatFunc>::euler(order).inverse()?;
    let rhs = log.exp()?.map(|s| s.mul(&euler_inv));
    let w = Window {
        max_degree: order as u32 + w_max,
        max_length: 2 * w_max as usize,
    };
    for j in 0..=w_max {
        let cre = exp_modes_piece(true, &|_| b.clone(), j);
        let ann = exp_modes_piece(false, &|_| a.clone(), j);
        let op: NormalOrderedOp = cre.compose(&ann, w)?;
        let lhs = trace_q(|n| op.matrix_on_degree(n), order)?;
        r.push(compare_series(&format!("w^{}", j), rhs.coeff(j as i64)?, &lhs));
        // the (ab)¹ part alone
        let lin = |s: &QSeries<RatFunc>| -> QSeries<RatFunc> {
            s.map(|c| {
                let d = c.numer();
                let keep = crate::coeff::MultiPoly::from_terms(
                    d.terms().iter().filter(|(mono, _)| mono.exp(Var::A) == 1 && mono.exp(Var::B) == 1).cloned(),
                );
                RatFunc::from_poly(&keep)
            })
        };
        r.push(compare_series(&format!("w^{} (ab)^1", j), &lin(rhs.coeff(j as i64)?), &lin(&lhs)));
    }
    Ok(r)
}

/// Per-coefficient homogeneity of degree `Σkᵢ` and `t₁ ↔ t₂` symmetry of the
/// reduced series at m = 0.
pub fn homogeneity_symmetry(klist: &[u32], order: usize) -> Vec<Item> {
    let s = reduced(klist, order, &rf(0));
    let deg: u32 = klist.iter().sum();
    let mut bad_h = Vec::new();
    let mut bad_s = Vec::new();
    for (n, c) in s.series.coeffs().iter().enumerate() {
        if !c.is_zero() && c.homogeneous_degree(&[Var::T1, Var::T2]) != Some(deg as i64) {
            bad_h.push(format!("q^{}: {}", n, c));
        }
        if &c.swap_vars(Var::T1, Var::T2) != c {
            bad_s.push(format!("q^{}: {}", n, c));
        }
    }
    let tag = format!("{:?}", klist);
    vec![
        Item::none_of(format!("{} homogeneous of degree {}", tag, deg), &bad_h),
        Item::none_of(format!("{} symmetric", tag), &bad_s),
    ]
}

/// Coefficient of `t₁ᵏ` in the one-point series at m = 0, as rationals.
pub fn top_t1_coefficient(k: u32, order: usize) -> Result<QSeries<BigRational>> {
    let s = reduced_m0_onepoint(k, order)?;
    Ok(s.series.map(|c| {
        debug_assert!(c.is_polynomial());
        c.numer()
            .terms()
            .iter()
            .find(|(mono, _)| mono.exp(Var::T1) as u32 == k && mono.degree() == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }))
}

/// Fits the `t₁ᵏ` coefficient against brackets with entries ≥ 2 of weight
/// ≤ k+2 and checks that the weight-(k+2) part is `(−1)ᵏ[k+2]`.
pub fn top_weight_fit(k: u32, order: usize) -> Result<Vec<Item>> {
    let f = top_t1_coefficient(k, order)?;
    let cands = qmzv_candidates(k + 2);
    let fit = fit_in_bracket_span(&f, &cands, order)?;
    let mut items = vec![Item::outcome(format!("k={} fit", k), fit.to_string(), fit.is_fit())];
    if let FitOutcome::Fit { coeffs, unique } = &fit {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let lead = Candidate::Index(BracketIndex::bracket(&[k + 2])?);
        let bad: Vec<String> = coeffs
            .iter()
            .filter(|(c, _)| c.weight() == k + 2)
            .filter(|(c, v)| if *c == lead { *v != BigRational::from_integer(sign.into()) } else { !v.is_zero() })
            .map(|(c, v)| format!("{} has coefficient {}", c, v))
            .collect();
        items.push(Item::outcome(
            format!("k={} top weight part is {}[{}]", k, if sign > 0 { "" } else { "-" }, k + 2),
            if bad.is_empty() { "yes".into() } else { bad.join("; ") },
            bad.is_empty() && *unique,
        ));
    }
    Ok(items)
}

/// Every q-coefficient of the reduced series has m-degree ≤ Σ(kᵢ+2).
pub fn m_degree_bound(klist: &[u32], order: usize) -> Item {
    let s = reduced(klist, order, &m_var());
    let bound: u32 = klist.iter().map(|k| k + 2).sum();
    let mut bad = Vec::new();
    let mut worst = 0;
    for (n, c) in s.series.coeffs().iter().enumerate() {
        let d = c.num_degree_in(Var::M) as u32;
        worst = worst.max(d);
        if c.den_degree_in(Var::M) > 0 || d > bound {
            bad.push(format!("q^{} has m-degree {}", n, d));
        }
    }
    let mut it = Item::none_of(format!("{:?} m-degree ≤ {}", klist, bound), &bad);
    if it.pass {
        it.got = format!("max m-degree {}", worst);
    }
    it
}

#[cfg(test)]
mod tests;
