use super::*;
use crate::fock::GradedMatrices;
use crate::symfunc::jack_j;

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn p(parts: &[u32]) -> FockVector {
    FockVector::basis(part(parts))
}

#[test]
fn gamma_plus_kills_vacuum() {
    let r = RatFunc::var(Var::R);
    let s = gamma_apply(Side::Plus, &rf(1), &r, &FockVector::vacuum(), 0).unwrap();
    assert_eq!(s.low(), 0);
    assert_eq!(s.coeff(0).unwrap(), &FockVector::vacuum());
}

#[test]
fn gamma_minus_on_vacuum_is_complete_h() {
    // Γ₋(z)|0⟩ = Σ hₙ zⁿ
    let s = gamma_apply(Side::Minus, &rf(1), &rf(1), &FockVector::vacuum(), 4).unwrap();
    for n in 0..=4 {
        assert_eq!(s.coeff(n).unwrap(), &crate::symfunc::complete_h(n as u32));
    }
    assert!(s.coeff(5).is_err());
}

#[test]
fn gamma_commutator() {
    assert!(gamma_commutator_mismatches(4, 3, 5).is_empty());
}

#[test]
fn gamma_exchange() {
    assert!(gamma_exchange_mismatches(3, 4).is_empty());
}

#[test]
fn v_trivial_when_parameters_coincide() {
    let q = q_var();
    let t = t_var();
    let params = VParams {
        q: q.clone(),
        t: t.clone(),
        q_tilde: q,
        t_tilde: t,
    };
    let v = p(&[2, 1]);
    let s = v_apply(&params, &v, 3);
    for (e, w) in s.iter() {
        assert_eq!(w, &if e == 0 { v.clone() } else { FockVector::zero() });
    }
}

#[test]
fn v_exponential_equals_gamma_product() {
    let params = VParams {
        q: q_var(),
        t: t_var(),
        q_tilde: RatFunc::var(Var::A),
        t_tilde: RatFunc::var(Var::B),
    };
    for v in [FockVector::vacuum(), p(&[1]), p(&[2, 1])] {
        let direct = v_apply(&params, &v, 3);
        let word = apply_word(&v_word(&params).unwrap(), &v, 3).unwrap();
        for e in direct.low()..=3 {
            assert_eq!(direct.coeff(e).unwrap(), word.coeff(e).unwrap(), "z^{}", e);
        }
    }
}

#[test]
fn v_zero_mode_on_vacuum() {
    // no annihilation acts on |0⟩, and C₀ = 1
    let params = VParams {
        q: q_var(),
        t: t_var(),
        q_tilde: rf(1),
        t_tilde: rf(1),
    };
    assert_eq!(v_operator(&params).zero_mode(&FockVector::vacuum()), FockVector::vacuum());
}

#[test]
fn bbar_small() {
    assert!(bbar_apply(&FockVector::vacuum()).is_zero());
    let j1 = macdonald_j(&part(&[1])).unwrap();
    assert_eq!(bbar_apply(&j1), j1);
    let j2 = macdonald_j(&part(&[2])).unwrap();
    assert_eq!(bbar_apply(&j2), j2.scale(&rf(1).add(&q_var())));
}

#[test]
fn bbar_eigen_small() {
    assert!(bbar_eigen_mismatches(4).unwrap().is_empty());
}

#[test]
fn b_eigen_small() {
    assert_eq!(b_eigenvalue(&part(&[2, 1])), rf(1).add(&q_var()).add(&t_var()));
    assert!(b_eigen_mismatches(4).unwrap().is_empty());
}

#[test]
fn bbar_k_matches_displays() {
    for k in 0..=2 {
        assert_eq!(bbar_k(k, 6).unwrap(), bbar_display(k, 6).unwrap(), "k={}", k);
    }
}

#[test]
fn bbar_k_jack_eigen_relation() {
    // Σ_□ (a′α − ℓ′)ᵏ/k! on J_λ^{(α)}, for k ≤ 2
    for k in 0..=2u32 {
        let op = bbar_k(k, 4).unwrap();
        for n in 1..=4 {
            for l in partitions_of(n) {
                let j = jack_j(&l).unwrap();
                let ev = l.all_cell_stats().iter().fold(RatFunc::zero(), |acc, s| {
                    let x = alpha().mul(&rf(s.coarm as i64)).sub(&rf(s.coleg as i64));
                    let f: i64 = (1..=k as i64).product();
                    acc.add(&x.pow(k as i32).mul(&rfq(1, f)))
                });
                assert_eq!(op.apply(&j), j.scale(&ev), "k={} {}", k, l);
            }
        }
    }
}

#[test]
fn w_at_m_zero_on_vacuum() {
    let s = w_apply(&FockVector::vacuum(), 3).unwrap();
    let expect = gamma_apply(Side::Minus, &rf(1), &t1().add(&t2()), &FockVector::vacuum(), 3).unwrap();
    for e in 0..=3 {
        let got = s.coeff(e).unwrap().try_map(|c| Ok(c.substitute(Var::M, &rf(0))?)).unwrap();
        assert_eq!(&got, expect.coeff(e).unwrap());
    }
}

#[test]
fn word_with_late_annihilator_is_refused() {
    let word = vec![
        GammaFactor::new(Side::Plus, rf(1), rf(1)),
        GammaFactor::new(Side::Minus, rf(1), rf(1)),
    ];
    assert!(matches!(apply_word(&word, &FockVector::vacuum(), 2), Err(Error::Window(_))));
}

#[test]
fn zero_mode_op_agrees_with_action() {
    let zm = bbar_v().zero_mode_op(4);
    let g = GradedMatrices::from_op(&zm, 0, 3).unwrap();
    for n in 0..=3 {
        for (j, l) in partitions_of(n).into_iter().enumerate() {
            let b = g.block(n).unwrap();
            let col: Vec<RatFunc> = (0..b.rows()).map(|i| b.get(i, j).clone()).collect();
            let col = FockVector::from_column(n, &col);
            assert_eq!(col, bbar_v().zero_mode(&FockVector::basis(l)));
        }
    }
}

/// `f(q,t)` at `q = e^{αt₀}`, `t = e^{t₀}` as a `t₀`-series through `order`.
fn exp_substitute(f: &RatFunc, order: usize) -> AuxSeries<RatFunc> {
    let poly_series = |p: &crate::coeff::MultiPoly| {
        let mut acc = AuxSeries::from_fn(AuxVar::T0, 0, order as i64, |_| RatFunc::zero());
        for (mono, c) in p.terms() {
            let x = alpha().mul(&rf(mono.exp(Var::Q) as i64)).add(&rf(mono.exp(Var::T) as i64));
            let e = AuxSeries::from_fn(AuxVar::T0, 0, order as i64, |r| {
                let fact: i64 = (1..=r).product();
                x.pow(r as i32).mul(&rfq(1, fact)).scale(c)
            });
            acc = acc.add(&e);
        }
        acc
    };
    let num = poly_series(&f.numer());
    let den = poly_series(&f.denom());
    let v = den.valuation().unwrap();
    let den = den.shift(-v).restrict(0, order as i64 - v).unwrap();
    let num = num.shift(-v).restrict(0, order as i64 - v).unwrap();
    num.mul(&den.inverse().unwrap())
}

#[test]
fn bbar_3_against_direct_t0_expansion() {
    let k = 3u32;
    let zm = bbar_v().zero_mode_op(4);
    let den = rf(1).sub(&q_var()).mul(&rf(1).sub(&t_var().inv().unwrap()));
    let op = bbar_k(k, 4).unwrap();
    for l in bbar_support(k, 4).unwrap() {
        let c = zm.coeff(&l).neg().div(&den).unwrap();
        let s = exp_substitute(&c, k as usize + 4);
        assert_eq!(s.coeff(k as i64).unwrap(), &op.coeff(&l), "{}", l);
    }
}
