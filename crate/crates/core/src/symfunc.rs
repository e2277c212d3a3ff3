//! Symmetric functions in the power-sum basis, read off a [`FockVector`]:
//! monomial functions, Gram–Schmidt for Jack and Macdonald, the integral
//! forms, transformed Macdonald functions and the fixed-point classes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::coeff::{alpha, q_var, rf, t1, t2, t_var, Matrix, RatFunc, Var};
use crate::error::{input, Error, Result};
use crate::fock::FockVector;
use crate::partitions::{partitions_of, Partition};

/// Default degree bound for the symmetric-function families.
pub const DEFAULT_BOUND: u32 = 8;

/// The two scalar products, each diagonal in the power sums.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum InnerProduct {
    /// `⟨p_λ,p_λ⟩ = z_λ α^{ℓ(λ)}`
    Jack,
    /// `⟨p_λ,p_λ⟩ = z_λ ∏ᵢ (1−q^{λᵢ})/(1−t^{λᵢ})`
    Macdonald,
}

impl InnerProduct {
    pub fn norm(self, l: &Partition) -> RatFunc {
        let z = RatFunc::from_rational(BigRational::from_integer(l.z()));
        match self {
            InnerProduct::Jack => z.mul(&alpha().pow(l.len() as i32)),
            InnerProduct::Macdonald => {
                let mut c = z;
                for &p in l.parts() {
                    let num = rf(1).sub(&q_var().pow(p as i32));
                    let den = rf(1).sub(&t_var().pow(p as i32));
                    c = c.mul(&num.div(&den).expect("nonzero"));
                }
                c
            }
        }
    }

    pub fn pair(self, f: &FockVector, g: &FockVector) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (l, c) in f.terms() {
            let d = g.coeff(l);
            if !d.is_zero() {
                acc = acc.add(&c.mul(&d).mul(&self.norm(l)));
            }
        }
        acc
    }
}

/// Number of ways to place the parts of `l` into `mu.len()` boxes so that
/// box `j` sums to `mu[j]`; the coefficient of `x^μ` in `p_λ`.
fn placements(parts: &[u32], room: &mut [u32]) -> u64 {
    let Some((&first, rest)) = parts.split_first() else {
        return room.iter().all(|&r| r == 0) as u64;
    };
    let mut total = 0;
    for j in 0..room.len() {
        if room[j] >= first {
            room[j] -= first;
            total += placements(rest, room);
            room[j] += first;
        }
    }
    total
}

fn cache<K: std::hash::Hash + Eq + Clone, V: Clone>(
    slot: &'static OnceLock<Mutex<HashMap<K, V>>>,
    key: K,
    build: impl FnOnce() -> V,
) -> V {
    let map = slot.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    // built outside the lock; a concurrent duplicate build gives the same value
    let v = build();
    map.lock().unwrap().entry(key).or_insert(v).clone()
}

/// The monomial functions `m_λ`, `λ ⊢ n`, in the power sums, in the order
/// of [`partitions_of`].
pub fn monomials_in_p(n: u32) -> Arc<Vec<FockVector>> {
    static SLOT: OnceLock<Mutex<HashMap<u32, Arc<Vec<FockVector>>>>> = OnceLock::new();
    cache(&SLOT, n, || {
        let ps = partitions_of(n);
        let k = ps.len();
        let r = Matrix::from_fn(k, k, |i, j| {
            let mut room = ps[j].parts().to_vec();
            BigRational::from_integer(BigInt::from(placements(ps[i].parts(), &mut room)))
        });
        // p_λ = Σ_μ R[λ,μ] m_μ
        let inv = r.inverse().expect("p-to-m transition is invertible");
        let out = (0..k)
            .map(|j| {
                // m_μ = Σ_λ R⁻¹[μ,λ] p_λ
                FockVector::from_terms(
                    (0..k).map(|i| (ps[i].clone(), RatFunc::from_rational(inv.get(j, i).clone()))),
                )
            })
            .collect();
        Arc::new(out)
    })
}

pub fn monomial_sym(l: &Partition) -> FockVector {
    let ps = partitions_of(l.size());
    let i = ps.iter().position(|x| x == l).expect("listed");
    monomials_in_p(l.size())[i].clone()
}

/// Product of symmetric functions in the power-sum basis.
pub fn sym_mul(f: &FockVector, g: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            out.add_term(a.union(b), &ca.mul(cb));
        }
    }
    out
}

/// Complete homogeneous `h_n = Σ_{μ⊢n} p_μ/z_μ`.
pub fn complete_h(n: u32) -> FockVector {
    FockVector::from_terms(partitions_of(n).into_iter().map(|l| {
        let z = BigRational::from_integer(l.z());
        (l, RatFunc::from_rational(z.recip()))
    }))
}

/// Schur function by the Jacobi–Trudi determinant `det h_{λᵢ−i+j}`.
pub fn schur(l: &Partition) -> FockVector {
    let n = l.len();
    if n == 0 {
        return FockVector::vacuum();
    }
    let h = |i: usize, j: usize| -> FockVector {
        let d = l.parts()[i] as i64 - i as i64 + j as i64;
        if d < 0 {
            FockVector::zero()
        } else {
            complete_h(d as u32)
        }
    };
    // Laplace expansion along the first row, fine for the sizes used
    fn det(cols: &[usize], row: usize, h: &dyn Fn(usize, usize) -> FockVector) -> FockVector {
        if cols.is_empty() {
            return FockVector::vacuum();
        }
        let mut acc = FockVector::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let e = h(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = sym_mul(&e, &det(&rest, row + 1, h));
            acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    det(&cols, 0, &h)
}

/// Monic `P_λ` for every `λ ⊢ n` in the order of [`partitions_of`].
///
/// Partitions are processed in increasing lexicographic order, which
/// extends dominance; each `m_λ` is orthogonalized against all earlier `P_μ`.
pub fn gram_schmidt_family(n: u32, ip: InnerProduct) -> Arc<Vec<FockVector>> {
    static SLOT: OnceLock<Mutex<HashMap<(u32, InnerProduct), Arc<Vec<FockVector>>>>> = OnceLock::new();
    cache(&SLOT, (n, ip), || {
        let ms = monomials_in_p(n);
        let k = ms.len();
        let mut done: Vec<(FockVector, RatFunc)> = Vec::with_capacity(k);
        for i in (0..k).rev() {
            let mut p = ms[i].clone();
            for (q, qq) in &done {
                let c = ip.pair(&ms[i], q).div(qq).expect("nonzero norm");
                if !c.is_zero() {
                    p = p.sub(&q.scale(&c));
                }
            }
            let norm = ip.pair(&p, &p);
            done.push((p, norm));
        }
        done.reverse();
        Arc::new(done.into_iter().map(|(p, _)| p).collect())
    })
}

fn check_bound(l: &Partition, bound: u32) -> Result<()> {
    if l.size() > bound {
        return input(format!("|{}| = {} exceeds the bound {}", l, l.size(), bound));
    }
    Ok(())
}

pub fn gram_schmidt_p(l: &Partition, ip: InnerProduct) -> Result<FockVector> {
    check_bound(l, DEFAULT_BOUND)?;
    let ps = partitions_of(l.size());
    let i = ps.iter().position(|x| x == l).expect("listed");
    Ok(gram_schmidt_family(l.size(), ip)[i].clone())
}

/// `∏_□ (α a(□) + ℓ(□) + 1)`
pub fn jack_normalizer(l: &Partition) -> RatFunc {
    l.all_cell_stats().iter().fold(RatFunc::one(), |acc, s| {
        acc.mul(&alpha().mul(&rf(s.arm as i64)).add(&rf(s.leg as i64 + 1)))
    })
}

/// `∏_□ (1 − q^{a(□)} t^{ℓ(□)+1})`
pub fn macdonald_normalizer(l: &Partition) -> RatFunc {
    l.all_cell_stats().iter().fold(RatFunc::one(), |acc, s| {
        let mono = q_var().pow(s.arm as i32).mul(&t_var().pow(s.leg as i32 + 1));
        acc.mul(&rf(1).sub(&mono))
    })
}

/// Jack integral form `J_λ^{(α)}`.
pub fn jack_j(l: &Partition) -> Result<FockVector> {
    Ok(gram_schmidt_p(l, InnerProduct::Jack)?.scale(&jack_normalizer(l)))
}

/// Macdonald integral form `J_λ(X;q,t)`.
pub fn macdonald_j(l: &Partition) -> Result<FockVector> {
    Ok(gram_schmidt_p(l, InnerProduct::Macdonald)?.scale(&macdonald_normalizer(l)))
}

/// The Jack form as the limit of `(1−t)^{−|λ|} J_λ(X; t^α, t)` at `t → 1`.
///
/// With `t = e^{t₀}` a coefficient `Σ c_{ij} qⁱtʲ` becomes
/// `Σ_r t₀^r Σ c_{ij}(iα+j)^r/r!`; orders below `|λ|` must vanish and the
/// limit is `(−1)^{|λ|}` times order `|λ|`.
pub fn jack_j_limit(l: &Partition) -> Result<FockVector> {
    let n = l.size();
    let mj = macdonald_j(l)?;
    mj.try_map(|c| {
        if !c.denom().is_one() {
            return Err(Error::Input(format!("non-polynomial Macdonald coefficient {}", c)));
        }
        let num = c.numer();
        let mut fr = vec![RatFunc::zero(); n as usize + 1];
        for (mono, coef) in num.terms() {
            let i = mono.exp(Var::Q) as i64;
            let j = mono.exp(Var::T) as i64;
            let base = alpha().mul(&rf(i)).add(&rf(j));
            let mut pw = RatFunc::from_rational(coef.clone());
            let mut fact = BigInt::one();
            for (r, slot) in fr.iter_mut().enumerate() {
                if r > 0 {
                    pw = pw.mul(&base);
                    fact *= BigInt::from(r);
                }
                *slot = slot.add(&pw.scale(&BigRational::new(BigInt::one(), fact.clone())));
            }
        }
        if let Some(r) = fr[..n as usize].iter().position(|x| !x.is_zero()) {
            return Err(Error::Input(format!("order t0^{} does not vanish for {}", r, l)));
        }
        let top = fr[n as usize].clone();
        Ok(if n % 2 == 0 { top } else { top.neg() })
    })
}

/// Partitions of size ≤ `max` violating
/// `J_λ(q⁻¹,t⁻¹) = (−1)^{|λ|} q^{−n(λ′)} t^{−n(λ)−|λ|} J_λ(q,t)`.
pub fn macdonald_duality_mismatches(max: u32) -> Result<Vec<String>> {
    let qi = q_var().inv()?;
    let ti = t_var().inv()?;
    let ps: Vec<Partition> = (1..=max).flat_map(partitions_of).collect();
    let out: Result<Vec<Option<String>>> = ps
        .par_iter()
        .map(|l| {
            let j = macdonald_j(l)?;
            let lhs = j.try_map(|c| Ok(c.substitute_all(&[(Var::Q, qi.clone()), (Var::T, ti.clone())])?))?;
            let n = l.size();
            let sign = if n % 2 == 0 { rf(1) } else { rf(-1) };
            let f = sign
                .mul(&q_var().pow(-(l.conjugate().n() as i32)))
                .mul(&t_var().pow(-(l.n() as i32) - n as i32));
            Ok((lhs != j.scale(&f)).then(|| l.to_string()))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

/// `p_k ↦ factor(k)·p_k`, extended multiplicatively.
pub fn plethysm_scale(f: &FockVector, factor: &dyn Fn(u32) -> RatFunc) -> FockVector {
    let mut cache: HashMap<u32, RatFunc> = HashMap::new();
    let mut out = FockVector::zero();
    for (l, c) in f.terms() {
        let mut s = c.clone();
        for &p in l.parts() {
            let fk = cache.entry(p).or_insert_with(|| factor(p));
            s = s.mul(fk);
        }
        out.add_term(l.clone(), &s);
    }
    out
}

fn invert_t(f: &FockVector) -> Result<FockVector> {
    let inv = t_var().inv()?;
    f.try_map(|c| Ok(c.substitute(Var::T, &inv)?))
}

/// `H̃_λ = t^{n(λ)} J_λ(X; q, t⁻¹)[p_k ↦ p_k/(1−t^{−k})]`.
pub fn transformed_h(l: &Partition) -> Result<FockVector> {
    let j = invert_t(&macdonald_j(l)?)?;
    let scaled = plethysm_scale(&j, &|k| {
        rf(1).sub(&t_var().pow(-(k as i32))).inv().expect("nonzero")
    });
    Ok(scaled.scale(&t_var().pow(l.n() as i32)))
}

/// Inverse of [`transformed_h`]: `J_λ = t^{n(λ)} H̃_λ[(1−t)X; q, t⁻¹]`.
pub fn j_from_h(l: &Partition, h: &FockVector) -> Result<FockVector> {
    let hi = invert_t(h)?;
    let scaled = plethysm_scale(&hi, &|k| rf(1).sub(&t_var().pow(k as i32)));
    Ok(scaled.scale(&t_var().pow(l.n() as i32)))
}

/// The fixed-point class `𝐉^λ = t₂^{|λ|} t₁^{ℓ(·)} J_λ^{(α)}|_{α=−t₁/t₂}`.
pub fn fixed_point_class(l: &Partition) -> Result<FockVector> {
    let a = t1().neg().div(&t2())?;
    let j = jack_j(l)?;
    let pre = t2().pow(l.size() as i32);
    j.try_map(|c| Ok(c.substitute(Var::Alpha, &a)?)).map(|v| {
        v.map_with_partition(|mu, c| c.mul(&pre).mul(&t1().pow(mu.len() as i32)))
    })
}

/// Columns `𝐉^λ`, `λ ⊢ n`, in the p-basis.
pub fn fixed_point_matrix(n: u32) -> Result<Matrix<RatFunc>> {
    let ps = partitions_of(n);
    let cols: Result<Vec<Vec<RatFunc>>> = ps.iter().map(|l| Ok(fixed_point_class(l)?.to_column(n))).collect();
    let cols = cols?;
    Ok(Matrix::from_fn(ps.len(), ps.len(), |i, j| cols[j][i].clone()))
}

#[cfg(test)]
mod tests;
