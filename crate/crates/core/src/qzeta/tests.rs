use super::*;
use crate::coeff::rat;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat_int(x)).collect()
}

/// Σ_{d | n} d^e / e!, computed by trial division.
fn divisor_sum(n: usize, e: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for d in 1..=n {
        if n % d == 0 {
            acc += rat_int(d as i64).pow(e as i32);
        }
    }
    acc / BigRational::from_integer(factorial(e))
}

#[test]
fn eulerian_small() {
    assert_eq!(eulerian_poly(1).unwrap(), ints(&[1]));
    assert_eq!(eulerian_poly(2).unwrap(), ints(&[1]));
    assert_eq!(eulerian_poly(3).unwrap(), ints(&[1, 1]));
    assert_eq!(eulerian_poly(4).unwrap(), ints(&[1, 4, 1]));
    assert!(eulerian_poly(0).is_err());
}

#[test]
fn bracket_small() {
    assert_eq!(bracket(&[], 5).unwrap(), QSeries::one(5));
    assert_eq!(bracket(&[2], 4).unwrap().coeffs(), &ints(&[0, 1, 3, 4, 7])[..]);
    assert_eq!(bracket(&[1], 3).unwrap().coeffs(), &ints(&[0, 1, 2, 2])[..]);
}

#[test]
fn bibracket_small() {
    assert_eq!(bibracket(&[], &[], 3).unwrap(), QSeries::one(3));
    // Σ u q^{uv}: σ₁(n)
    assert_eq!(bibracket(&[1], &[1], 3).unwrap().coeffs(), &ints(&[0, 1, 3, 4])[..]);
    assert!(bibracket(&[1, 2], &[0], 3).is_err());
}

#[test]
fn single_bracket_divisor_sums() {
    for s in 1..=6u32 {
        let b = bracket(&[s], 20).unwrap();
        for n in 1..=20 {
            assert_eq!(b.coeffs()[n], divisor_sum(n, s - 1), "s={} n={}", s, n);
        }
    }
}

#[test]
fn eulerian_route_agrees() {
    for s in [vec![1], vec![2], vec![5], vec![2, 1], vec![3, 2], vec![2, 2, 2]] {
        assert_eq!(bracket_eulerian(&s, 15).unwrap(), bracket(&s, 15).unwrap(), "{:?}", s);
    }
}

#[test]
fn depth_two_by_enumeration() {
    // [2,1] = Σ_{u₁>u₂, v₁, v₂} v₁ q^{u₁v₁+u₂v₂}
    let order = 12;
    let mut c = vec![BigRational::zero(); order + 1];
    for u1 in 1..=order {
        for u2 in 1..u1 {
            for v1 in 1..=order {
                for v2 in 1..=order {
                    let e = u1 * v1 + u2 * v2;
                    if e <= order {
                        c[e] += rat_int(v1 as i64);
                    }
                }
            }
        }
    }
    assert_eq!(bracket(&[2, 1], order).unwrap().coeffs(), &c[..]);
}

#[test]
fn z_values() {
    let n = 30;
    let b2 = bracket(&[2], n).unwrap();
    let b3 = bracket(&[3], n).unwrap();
    let b4 = bracket(&[4], n).unwrap();
    assert_eq!(z_value(&[2], n).unwrap(), b2);
    assert_eq!(z_value(&[3], n).unwrap(), b3.scale(&rat_int(2)));
    assert_eq!(z_value(&[4], n).unwrap(), b4.sub(&b2.scale(&rat(1, 6))));
    assert!(z_value(&[2, 1], n).is_err());
}

#[test]
fn bibracket_reduces_to_bracket() {
    for s in [vec![2], vec![3], vec![2, 1], vec![1, 1], vec![3, 1, 2], vec![4, 2]] {
        let zeros = vec![0; s.len()];
        assert_eq!(bibracket(&s, &zeros, 12).unwrap(), bracket_eulerian(&s, 12).unwrap());
    }
}

fn idx(s: &[u32]) -> Candidate {
    Candidate::Index(BracketIndex::bracket(s).unwrap())
}

#[test]
fn fit_constructed() {
    let n = 14;
    let f = bracket(&[2], n).unwrap().add(&bracket(&[3], n).unwrap().scale(&rat_int(3)));
    let fit = fit_in_bracket_span(&f, &[idx(&[2]), idx(&[3])], n).unwrap();
    assert_eq!(fit.coeff(&idx(&[2])), Some(&rat_int(1)));
    assert_eq!(fit.coeff(&idx(&[3])), Some(&rat_int(3)));
}

#[test]
fn fit_z4() {
    let n = 20;
    let fit = fit_in_bracket_span(&z_value(&[4], n).unwrap(), &[idx(&[4]), idx(&[2])], n).unwrap();
    assert_eq!(fit.coeff(&idx(&[4])), Some(&rat_int(1)));
    assert_eq!(fit.coeff(&idx(&[2])), Some(&rat(-1, 6)));
}

#[test]
fn fit_rejects_cusp_form() {
    let n = 20;
    let f = QSeries::<BigRational>::euler(n).shift(1);
    match fit_in_bracket_span(&f, &[idx(&[2]), idx(&[3])], n).unwrap() {
        FitOutcome::Inconsistent { q_power } => assert!(q_power <= 3),
        other => panic!("unexpected fit {}", other),
    }
}

#[test]
fn fit_needs_margin() {
    let f = bracket(&[2], 5).unwrap();
    assert!(fit_in_bracket_span(&f, &[idx(&[2])], 5).is_err());
}

#[test]
fn stuffle_square() {
    let n = 40;
    let b2 = bracket(&[2], n).unwrap();
    let fit = fit_in_bracket_span(&b2.mul(&b2), &[idx(&[4]), idx(&[2, 2]), idx(&[2]), idx(&[3])], n).unwrap();
    assert!(fit.is_fit(), "{}", fit);
}

#[test]
fn candidate_lists() {
    let c = qmzv_candidates(4);
    let names: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    assert_eq!(names, vec!["1", "[2]", "[3]", "[4]", "[2,2]"]);
    assert_eq!(BracketIndex::parse("2,1;0,3").unwrap().to_string(), "[2,1;0,3]");
    assert_eq!(BracketIndex::parse("[2,1]").unwrap().weight(), 3);
}

proptest! {
    #[test]
    fn bracket_weight_metadata(s in proptest::collection::vec(1u32..5, 0..4)) {
        let i = BracketIndex::bracket(&s).unwrap();
        prop_assert_eq!(i.weight(), s.iter().sum::<u32>());
        prop_assert_eq!(i.depth(), s.len());
        prop_assert_eq!(BracketIndex::parse(&i.to_string()).unwrap(), i);
    }

    #[test]
    fn divisor_sum_identity(s in 1u32..7, n in 1usize..21) {
        prop_assert_eq!(bracket(&[s], 20).unwrap().coeffs()[n].clone(), divisor_sum(n, s - 1));
    }
}
