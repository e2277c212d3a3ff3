use super::*;
use crate::coeff::Var;

fn gp(parts: &[i32]) -> GeneralizedPartition {
    GeneralizedPartition::from_parts(parts).unwrap()
}

#[test]
fn epsilon_table() {
    for i in -10..=10 {
        for j in -10..=10 {
            if i == 0 || j == 0 {
                continue;
            }
            assert_eq!(epsilon(i, j), epsilon(j, i));
        }
    }
    assert!(epsilon(-1, -2));
    assert!(epsilon(3, -1));
    assert!(!epsilon(-3, 1));
    assert!(!epsilon(1, 2));
}

#[test]
fn closed_form_small() {
    let a1 = a_prime_closed(1, 3).unwrap();
    // 𝔞₋₁𝔞₂ and 𝔞₋₂𝔞₃ carry −t₁t₂ with both orders counted
    assert_eq!(a1.coeff(&gp(&[-1, 2])), t1().mul(&t2()).neg());
    assert_eq!(a1.coeff(&gp(&[-2, 3])), t1().mul(&t2()).neg());
    assert!(a1.coeff(&gp(&[1])).is_zero());
    let a2 = a_prime_closed(2, 3).unwrap();
    assert_eq!(a2.coeff(&gp(&[2])), t1().add(&t2()));
    assert_eq!(a2.coeff(&gp(&[1, 1])), rf(1));
    let m1 = a_prime_closed(-1, 3).unwrap();
    assert_eq!(m1.coeff(&gp(&[-2, 1])), rfq(1, 1).neg());
    assert_eq!(m1.coeff(&gp(&[-3, 2])), rf(-1));
    assert_eq!(m1.coeff(&gp(&[-1, 2])), rf(0));
    assert!(a_prime_closed(0, 3).is_err());
}

#[test]
fn closed_form_nonequivariant_point() {
    let a = a_prime_closed(3, 5).unwrap();
    let lin = a.coeff(&gp(&[3])).substitute_all(&[(Var::T1, rf(1)), (Var::T2, rf(-1))]).unwrap();
    assert!(lin.is_zero());
}

#[test]
fn first_derivative_small() {
    for n in 1..=3 {
        let it = first_derivative_check(n, 5).unwrap();
        assert!(it.pass, "{}", it.got);
    }
}

#[test]
fn leading_small() {
    let r = leading_term_check(1, 1, 5).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let r = leading_term_check(2, 2, 6).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn zeroth_derivative() {
    let d = derivative(&NormalOrderedOp::mode(-2).unwrap(), 0, 6, 2).unwrap();
    assert_eq!(d, NormalOrderedOp::mode(-2).unwrap());
    assert_eq!(leading_coefficient(2, 0, &gp(&[-2])), rf(1));
}

#[test]
fn chain() {
    assert!(chain_consistency(1, 2, 5).unwrap());
}

#[test]
fn g0_commutes() {
    assert!(g0_is_constant(6).unwrap());
}
