//! Multivariate gcd over ℤ.
//!
//! Strategy: strip monomial and integer content, drop variables that occur in
//! only one argument (by taking contents), then run the heuristic gcd
//! (evaluation at a large integer, recursive, verified by trial division).
//! A primitive pseudo-remainder sequence is the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Var, ZPoly};

const HEU_ATTEMPTS: usize = 6;

/// Greatest common divisor, normalized to positive leading coefficient.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive().1.scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive().1.scale(&a.content());
    }
    if a == b {
        let (c, p) = a.primitive();
        return p.scale(&c.abs());
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    let (ca, pa) = a1.primitive();
    let (cb, pb) = b1.primitive();
    let cg = ca.abs().gcd(&cb.abs());
    let core = gcd_primitive(&pa, &pb);
    core.mul_monomial(&mg, &cg)
}

/// gcd of a list of polynomials.
pub fn gcd_many<'a>(ps: impl IntoIterator<Item = &'a ZPoly>) -> ZPoly {
    let mut g = ZPoly::zero();
    for p in ps {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of primitive polynomials with no monomial content.
fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_constant() || b.is_constant() {
        return ZPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let ma = a.var_mask();
    let mb = b.var_mask();
    if ma & mb == 0 {
        return ZPoly::one();
    }
    // a variable present in only one argument cannot occur in the gcd
    for v in Var::ALL {
        let bit = 1u16 << v.index();
        if ma & bit != 0 && mb & bit == 0 {
            let c = content_in(a, v);
            return gcd(&c, b).primitive().1;
        }
        if mb & bit != 0 && ma & bit == 0 {
            let c = content_in(b, v);
            return gcd(a, &c).primitive().1;
        }
    }
    if let Some(g) = a.div_exact(b).map(|_| b.clone()) {
        return g;
    }
    if let Some(g) = b.div_exact(a).map(|_| a.clone()) {
        return g;
    }
    match heu_gcd(a, b) {
        Some(g) => g.primitive().1,
        None => prs_gcd(a, b).primitive().1,
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &ZPoly, v: Var) -> ZPoly {
    let cs = p.coeffs_in(v);
    let mut nonzero: Vec<&ZPoly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.len());
    gcd_many(nonzero)
}

fn lowest_var(mask: u16) -> Var {
    Var::ALL[mask.trailing_zeros() as usize]
}

/// Heuristic gcd; returns `None` when no evaluation point succeeded.
fn heu_gcd(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let mask = f.var_mask() | g.var_mask();
    if mask == 0 {
        return Some(ZPoly::constant(f.constant_term().gcd(&g.constant_term())));
    }
    let cf = f.content();
    let cg = g.content();
    let common = cf.gcd(&cg);
    let (f, g) = if common.is_one() {
        (f.clone(), g.clone())
    } else {
        (f.div_int(&common), g.div_int(&common))
    };
    let v = lowest_var(mask);
    let fnorm = f.max_norm();
    let gnorm = g.max_norm();
    // ξ ≥ 2·min(|f|,|g|) + 2 makes the trial-division test conclusive
    let mut x: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + BigInt::from(29);
    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_var(v, &x);
        let gg = g.eval_var(v, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let inner = if ff.var_mask() == 0 && gg.var_mask() == 0 {
                Some(ZPoly::constant(ff.constant_term().gcd(&gg.constant_term())))
            } else {
                heu_gcd(&ff, &gg)
            };
            if let Some(h) = inner {
                let h = interpolate(&h, v, &x).primitive().1;
                if !h.is_zero() && f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                    return Some(h.scale(&common));
                }
            }
        }
        // next evaluation point, as in the classical heuristic
        let r = x.sqrt().sqrt();
        x = (BigInt::from(73794) * &x * r) / BigInt::from(27011);
    }
    None
}

/// Inverse of evaluation at `v = x` via balanced x-adic digits.
fn interpolate(h: &ZPoly, v: Var, x: &BigInt) -> ZPoly {
    let mut h = h.clone();
    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    let half = x / BigInt::from(2);
    let mut i: u16 = 0;
    while !h.is_zero() {
        let mut digit_terms = Vec::new();
        for (m, c) in h.terms() {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            if !r.is_zero() {
                digit_terms.push((*m, r));
            }
        }
        let digit = ZPoly::from_terms(digit_terms);
        for (m, c) in digit.terms() {
            out.push((m.mul(&Monomial::var(v, i)), c.clone()));
        }
        h = h.sub(&digit).div_int(x);
        i += 1;
    }
    let p = ZPoly::from_terms(out);
    if p.leading_coef().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Primitive pseudo-remainder sequence gcd (recursive in the variables).
fn prs_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mask = a.var_mask() & b.var_mask();
    if mask == 0 {
        return gcd(a, b);
    }
    let v = lowest_var(mask);
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(v) > 0 {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, v);
            r.div_exact(&cr).expect("content divides")
        };
    }
    let g = if q.is_zero() { p } else { ZPoly::one() };
    let g = g.primitive().1;
    g.mul(&c)
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly, v: Var) -> ZPoly {
    let db = b.degree_in(v);
    let lb = b.coeff_of(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeff_of(v, dr);
        let shift = Monomial::var(v, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift, &BigInt::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[(Var, u16)], i64)]) -> ZPoly {
        ZPoly::from_terms(terms.iter().map(|(vs, c)| {
            let mut m = Monomial::one();
            for (v, e) in vs.iter() {
                m = m.mul(&Monomial::var(*v, *e));
            }
            (m, BigInt::from(*c))
        }))
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(&[(Var::T1, 2)], 1), (&[(Var::T2, 2)], -1)]);
        let b = p(&[(&[(Var::T1, 1)], 1), (&[(Var::T2, 1)], -1)]);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn coprime() {
        let a = p(&[(&[(Var::T1, 1)], 1), (&[], 1)]);
        let b = p(&[(&[(Var::T1, 1)], 1), (&[], -1)]);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = p(&[(&[(Var::Q, 1), (Var::T, 1)], 1), (&[], -1)]);
        let g1 = p(&[(&[(Var::Q, 2)], 3), (&[(Var::T, 1)], 1), (&[], 2)]);
        let g2 = p(&[(&[(Var::T, 3)], 1), (&[(Var::Q, 1)], -5)]);
        let a = f.mul(&g1);
        let b = f.mul(&g2);
        assert_eq!(prs_gcd(&a, &b).primitive().1, f);
        assert_eq!(gcd(&a, &b), f);
    }
}
