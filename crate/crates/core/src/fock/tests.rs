use super::*;
use crate::coeff::{rf, t1, t2};
use proptest::prelude::*;

fn gp(parts: &[i32]) -> GeneralizedPartition {
    GeneralizedPartition::from_parts(parts).unwrap()
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn wide(n: u32) -> Window {
    Window {
        max_degree: n,
        max_length: 64,
    }
}

/// Apply a monomial mode by mode, rightmost first.
fn apply_sequential(l: &GeneralizedPartition, v: &FockVector) -> FockVector {
    let mut parts = l.parts();
    parts.sort();
    let mut out = v.clone();
    for &k in parts.iter().rev() {
        out = apply_mode(k, &out).unwrap();
    }
    out
}

fn all_basis(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

#[test]
fn heisenberg_relations_on_vectors() {
    for k in -4i32..=4 {
        for l in -4i32..=4 {
            if k == 0 || l == 0 {
                continue;
            }
            for mu in all_basis(5) {
                let v = FockVector::basis(mu.clone());
                let kl = apply_mode(k, &apply_mode(l, &v).unwrap()).unwrap();
                let lk = apply_mode(l, &apply_mode(k, &v).unwrap()).unwrap();
                let expect = if k + l == 0 { v.scale(&rf(k as i64)) } else { FockVector::zero() };
                assert_eq!(kl.sub(&lk), expect, "k={} l={} mu={}", k, l, mu);
            }
        }
    }
}

#[test]
fn heisenberg_relations_symbolic() {
    let a3 = NormalOrderedOp::mode(3).unwrap();
    let am3 = NormalOrderedOp::mode(-3).unwrap();
    let c = a3.commutator(&am3, wide(10)).unwrap();
    assert_eq!(c, NormalOrderedOp::identity().scale(&rf(3)));
    let a2 = NormalOrderedOp::mode(2).unwrap();
    assert!(a3.commutator(&a2, wide(10)).unwrap().is_zero());
}

#[test]
fn annihilation_is_derivative() {
    // a_2 p_2^3 p_1 = 2·3 p_2^2 p_1
    let v = FockVector::basis(part(&[2, 2, 2, 1]));
    let w = apply_mode(2, &v).unwrap();
    assert_eq!(w, FockVector::monomial(part(&[2, 2, 1]), rf(6)));
    assert!(apply_mode(3, &v).unwrap().is_zero());
    assert!(apply_mode(0, &v).is_err());
}

#[test]
fn monomial_action_matches_sequential_modes() {
    let mons = [gp(&[-2, 1, 1]), gp(&[-1, -1, 2]), gp(&[-3, 1, 2]), gp(&[1, 1, 2]), gp(&[-1, -2])];
    for l in &mons {
        let op = NormalOrderedOp::monomial(l.clone(), rf(1));
        for mu in all_basis(6) {
            let v = FockVector::basis(mu);
            assert_eq!(op.apply(&v), apply_sequential(l, &v));
        }
    }
}

#[test]
fn identity_trace_counts_partitions() {
    let id = NormalOrderedOp::identity();
    let s = trace_q(|n| id.matrix_on_degree(n), 8).unwrap();
    let counts = crate::partitions::partition_counts(8);
    for n in 0..=8 {
        assert_eq!(s.coeff(n).unwrap(), &rf(counts[n] as i64));
    }
}

#[test]
fn number_operator_trace() {
    // Σ_{k>0} a_{-k} a_k has eigenvalue |λ| on p_λ
    let mut nop = NormalOrderedOp::zero();
    for k in 1..=6 {
        nop.add_term(gp(&[-k, k]), &rf(1));
    }
    for mu in all_basis(6) {
        let v = FockVector::basis(mu.clone());
        assert_eq!(nop.apply(&v), v.scale(&rf(mu.size() as i64)));
    }
}

#[test]
fn expand_recovers_operator() {
    let mut op = NormalOrderedOp::zero();
    op.add_term(gp(&[-1, -1, 2]), &t1());
    op.add_term(gp(&[-2, 1, 1]), &t2());
    op.add_term(gp(&[-1, 1]), &t1().add(&t2()));
    op.add_term(gp(&[-3, 1, 2]), &rf(5));
    let g = GradedMatrices::from_op(&op, 0, 5).unwrap();
    let back = expand_in_monomials(&g, 5, 3).unwrap();
    assert_eq!(back, op);
    let err = expand_in_monomials(&g, 5, 2).unwrap_err();
    assert!(matches!(err, Error::Span(_)));
}

#[test]
fn expand_nonzero_weight() {
    let mut op = NormalOrderedOp::zero();
    op.add_term(gp(&[-1, 3]), &t1());
    op.add_term(gp(&[1, 1]), &rf(2));
    op.add_term(gp(&[-2, 2, 2]), &t2());
    let g = GradedMatrices::from_op(&op, 2, 6).unwrap();
    assert_eq!(expand_in_monomials(&g, 6, 3).unwrap(), op);
}

#[test]
fn window_length_error_lists_terms() {
    let a = NormalOrderedOp::monomial(gp(&[-1, -1, 1]), rf(1));
    let b = NormalOrderedOp::monomial(gp(&[-1, 1, 1]), rf(1));
    let w = Window {
        max_degree: 6,
        max_length: 3,
    };
    match a.compose(&b, w) {
        Err(Error::Window(msg)) => assert!(msg.contains("(-1)^3")),
        other => panic!("expected window error, got {:?}", other),
    }
}

#[test]
fn window_drops_large_annihilators() {
    let a = NormalOrderedOp::monomial(gp(&[3]), rf(1));
    let b = NormalOrderedOp::monomial(gp(&[2]), rf(1));
    let w = Window {
        max_degree: 4,
        max_length: 8,
    };
    assert!(a.compose(&b, w).unwrap().is_zero());
}

#[test]
fn exp_creation_gives_complete_symmetric() {
    // exp(Σ p_k/k) = Σ h_n and h_n = Σ_{λ⊢n} p_λ/z_λ
    for n in 0..=5 {
        let piece = exp_modes_piece(true, &|_| rf(1), n);
        let v = piece.apply(&FockVector::vacuum());
        for l in partitions_of(n) {
            let z = BigRational::from_integer(l.z());
            assert_eq!(v.coeff(&l), RatFunc::from_rational(z.recip()));
        }
    }
}

#[test]
fn text_forms() {
    let mut op = NormalOrderedOp::zero();
    op.add_term(gp(&[-2, 1, 1]), &rf(1));
    assert_eq!(op.to_string(), "a(-2)a(1)^2");
    assert_eq!(FockVector::vacuum().to_string(), "p[∅]");
}

fn arb_monomial() -> impl Strategy<Value = GeneralizedPartition> {
    prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..4).prop_map(|v| gp(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn compose_matches_action(a in arb_monomial(), b in arb_monomial()) {
        let n = 5u32;
        let oa = NormalOrderedOp::monomial(a, t1());
        let ob = NormalOrderedOp::monomial(b.clone(), t2());
        // a acts after b, so it must be exact up to n plus b's weight
        let prod = oa.compose(&ob, wide(n + 9)).unwrap();
        for mu in all_basis(n) {
            let v = FockVector::basis(mu);
            prop_assert_eq!(prod.apply(&v), oa.apply(&ob.apply(&v)));
        }
    }
}
