use super::*;
use proptest::prelude::*;

fn p(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

#[test]
fn inverse_pair_cancels() {
    let a = t1().div(&t2()).unwrap();
    let b = t2().div(&t1()).unwrap();
    assert!(a.mul(&b).is_one());
}

#[test]
fn additive_cancellation() {
    assert_eq!(t1().add(&t2()).sub(&t2()), t1());
}

#[test]
fn difference_of_squares_quotient() {
    // oracle: (t1 + t2)(t1 - t2) expands to t1^2 - t2^2 by plain multiplication
    let sum = t1().add(&t2());
    let diff = t1().sub(&t2());
    let prod = MultiPoly::var(Var::T1)
        .add(&MultiPoly::var(Var::T2))
        .mul(&MultiPoly::var(Var::T1).sub(&MultiPoly::var(Var::T2)));
    assert_eq!(RatFunc::from_poly(&prod), sum.mul(&diff));
    let q = RatFunc::from_poly(&prod).div(&diff).unwrap();
    assert_eq!(q, sum);
    assert!(q.is_polynomial());
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(t1().div(&RatFunc::zero()), Err(CoeffError::DivisionByZero));
}

#[test]
fn substitution_examples() {
    let v = t1().neg().div(&t2()).unwrap();
    assert_eq!(alpha().substitute(Var::Alpha, &v).unwrap(), v);
    assert_eq!(alpha().pow(2).substitute(Var::Alpha, &v).unwrap(), p("t1^2/t2^2"));
    let f = alpha().sub(&rf(1)).mul(&alpha());
    let g = f.substitute(Var::Alpha, &v).unwrap();
    assert_eq!(g, p("(t1^2+t1*t2)/t2^2"));
    assert_eq!(g.to_string(), "(t1^2+t1*t2)/t2^2");
}

#[test]
fn vanishing_denominator_is_reported() {
    let f = rf(1).div(&alpha().sub(&t1())).unwrap();
    let e = f.substitute(Var::Alpha, &t1()).unwrap_err();
    assert!(matches!(e, CoeffError::VanishingDenominator(_)));
}

#[test]
fn canonical_strings() {
    assert_eq!(p("1/(2*t2)").to_string(), "(1/2)/t2");
    assert_eq!(p("-t1-t2").to_string(), "-t1-t2");
    assert_eq!(p("(t1+t2)/(2*t1-4*t2)").to_string(), "(1/2*t1+1/2*t2)/(t1-2*t2)");
    assert_eq!(p("3/6").to_string(), "1/2");
    let s = p("(m+t1+t2)*m/(t1*t2)");
    assert_eq!(parse_ratfunc(&s.to_string()).unwrap(), s);
}

#[test]
fn numer_denom_monic() {
    let f = p("(t1+t2)/(2*t1-4*t2)");
    assert_eq!(f.denom().leading_coef(), rat_int(1));
    assert_eq!(RatFunc::new(&f.numer(), &f.denom()).unwrap(), f);
}

fn divisor_reciprocal_sum(n: usize) -> BigRational {
    (1..=n).filter(|k| n % k == 0).map(|k| rat(1, k as i64)).sum()
}

#[test]
fn log_of_inverse_euler_product() {
    let e = QSeries::<RatFunc>::euler(3);
    let inv = e.inverse().unwrap();
    let l = inv.log().unwrap();
    // oracle: -Σ log(1-q^n) = Σ_n Σ_k q^{nk}/k
    for n in 1..=3 {
        assert_eq!(l.coeffs()[n], RatFunc::from_rational(divisor_reciprocal_sum(n)));
    }
    assert_eq!(l.coeffs()[1], rf(1));
    assert_eq!(l.coeffs()[2], rfq(3, 2));
    assert_eq!(l.coeffs()[3], rfq(4, 3));
}

#[test]
fn exp_log_inverse_pair() {
    let f = QSeries::from_coeffs(vec![rf(1), rf(1)], 8);
    assert_eq!(f.log().unwrap().exp().unwrap(), f);
}

#[test]
fn zero_power_is_one() {
    let e = QSeries::<RatFunc>::euler(10);
    assert_eq!(e.pow(&RatFunc::zero()).unwrap(), QSeries::one(10));
}

#[test]
fn exp_log_preconditions() {
    let f = QSeries::from_coeffs(vec![rf(2), rf(1)], 4);
    assert!(f.log().is_err());
    assert!(f.exp().is_err());
}

#[test]
fn euler_product_through_q3() {
    // oracle: (1-q)(1-q^2)(1-q^3) expanded by hand = 1 - q - q^2 + q^4 + q^5 - q^6
    let e = QSeries::<RatFunc>::euler(3);
    let want = [1, -1, -1, 0];
    for (i, w) in want.iter().enumerate() {
        assert_eq!(e.coeffs()[i], rf(*w));
    }
    assert_eq!(e.to_string(), "1 - q - q^2 + O(q^4)");
}

#[test]
fn pochhammer_zero_prefactor() {
    assert_eq!(QSeries::<RatFunc>::pochhammer(&RatFunc::zero(), 0, 6), QSeries::one(6));
}

#[test]
fn euler_inverse_pair() {
    let e = QSeries::<RatFunc>::euler(12);
    assert_eq!(e.mul(&e.inverse().unwrap()), QSeries::one(12));
}

#[test]
fn pochhammer_with_j_zero() {
    // (a;q)_∞ = (1-a)(aq;q)_∞
    let a = m_var();
    let full = QSeries::pochhammer(&a, 0, 6);
    let tail = QSeries::pochhammer(&a, 1, 6);
    assert_eq!(full, tail.mul_coeff(&rf(1).sub(&a)));
}

#[test]
fn aux_window_is_enforced() {
    let s = AuxSeries::new(AuxVar::Z, -1, vec![rf(1), rf(2), rf(3)]);
    assert_eq!(s.coeff(1).unwrap(), &rf(3));
    assert!(s.coeff(2).is_err());
    assert!(s.coeff(-2).is_err());
}

#[test]
fn aux_exp_and_inverse() {
    // e^{z} e^{-z} = 1 and z/(e^z - 1) starts 1 - z/2 + z^2/12
    let z = AuxSeries::new(AuxVar::Z, 0, vec![rf(0), rf(1), rf(0), rf(0), rf(0)]);
    let ez = z.exp().unwrap();
    let emz = z.neg().exp().unwrap();
    let one = ez.mul(&emz);
    for k in 0..=4 {
        assert_eq!(one.coeff(k).unwrap(), &rf(if k == 0 { 1 } else { 0 }));
    }
    let em1 = ez.sub(&AuxSeries::new(AuxVar::Z, 0, vec![rf(1), rf(0), rf(0), rf(0), rf(0)]));
    let inv = em1.inverse().unwrap();
    assert_eq!(inv.low(), -1);
    assert_eq!(inv.coeff(-1).unwrap(), &rf(1));
    assert_eq!(inv.coeff(0).unwrap(), &rfq(-1, 2));
    assert_eq!(inv.coeff(1).unwrap(), &rfq(1, 12));
}

#[test]
fn matrix_inverse_roundtrip() {
    let m = Matrix::from_fn(3, 3, |i, j| {
        if i == j {
            t1()
        } else {
            t2().add(&rf((i + 2 * j) as i64))
        }
    });
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), Matrix::identity(3));
    assert_eq!(m.rank(), 3);
}

fn small_poly() -> impl Strategy<Value = RatFunc> {
    let vars = [Var::T1, Var::T2, Var::M];
    prop::collection::vec((-3i64..=3, 0u16..3, 0u16..3, 0u16..2), 1..4).prop_map(move |ts| {
        let p = MultiPoly::from_terms(ts.into_iter().map(|(c, a, b, d)| {
            let m = Monomial::var(vars[0], a)
                .mul(&Monomial::var(vars[1], b))
                .mul(&Monomial::var(vars[2], d));
            (m, rat_int(c))
        }));
        RatFunc::from_poly(&p)
    })
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            n
        } else {
            n.div(&d).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
        prop_assert_eq!(parse_ratfunc(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn power_laws(c1 in small_poly(), c2 in small_poly(), k in 1usize..4) {
        let order = 6;
        let f = QSeries::pochhammer(&rf(1), k, order);
        let lhs = f.pow(&c1).unwrap().mul(&f.pow(&c2).unwrap());
        let rhs = f.pow(&c1.add(&c2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extraction_commutes_with_products(a in small_poly(), b in small_poly()) {
        let f = QSeries::from_coeffs(vec![rf(1), a.clone(), b.clone()], 5);
        let g = QSeries::from_coeffs(vec![b.clone(), rf(2), a.clone()], 5);
        let h = f.mul(&g);
        prop_assert_eq!(h.coeff(1).unwrap().clone(), rf(2).add(&a.mul(&b)));
        prop_assert_eq!(h.coeff(2).unwrap().clone(), a.mul(&rf(3)).add(&b.mul(&b)));
        prop_assert!(h.coeff(6).is_err());
    }
}
