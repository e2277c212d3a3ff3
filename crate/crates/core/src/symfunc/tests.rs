use super::*;
use crate::coeff::rfq;

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn p(parts: &[u32]) -> FockVector {
    FockVector::basis(part(parts))
}

#[test]
fn power_sum_to_monomial() {
    // p₁² = m₂ + 2m₁₁, so m₁₁ = (p₁² − p₂)/2
    let m11 = monomial_sym(&part(&[1, 1]));
    assert_eq!(m11, p(&[1, 1]).scale(&rfq(1, 2)).sub(&p(&[2]).scale(&rfq(1, 2))));
    assert_eq!(monomial_sym(&part(&[3])), p(&[3]));
}

#[test]
fn schur_small() {
    assert_eq!(schur(&part(&[2])), p(&[1, 1]).add(&p(&[2])).scale(&rfq(1, 2)));
    assert_eq!(schur(&part(&[1, 1])), p(&[1, 1]).sub(&p(&[2])).scale(&rfq(1, 2)));
}

#[test]
fn jack_small() {
    assert_eq!(jack_j(&part(&[1])).unwrap(), p(&[1]));
    assert_eq!(jack_j(&part(&[1, 1])).unwrap(), p(&[1, 1]).sub(&p(&[2])));
    let p11 = gram_schmidt_p(&part(&[1, 1]), InnerProduct::Jack).unwrap();
    assert_eq!(p11, p(&[1, 1]).sub(&p(&[2])).scale(&rfq(1, 2)));
    // J_(2) = p₁² + α p₂
    assert_eq!(jack_j(&part(&[2])).unwrap(), p(&[1, 1]).add(&p(&[2]).scale(&alpha())));
}

#[test]
fn jack_at_one_is_schur() {
    for n in 1..=5 {
        for l in partitions_of(n) {
            let pl = gram_schmidt_p(&l, InnerProduct::Jack).unwrap();
            let at1 = pl.try_map(|c| Ok(c.substitute(Var::Alpha, &rf(1))?)).unwrap();
            assert_eq!(at1, schur(&l), "{}", l);
        }
    }
}

#[test]
fn macdonald_q_equals_t_is_schur() {
    for n in 1..=4 {
        for l in partitions_of(n) {
            let pl = gram_schmidt_p(&l, InnerProduct::Macdonald).unwrap();
            let at = pl.try_map(|c| Ok(c.substitute(Var::Q, &t_var())?)).unwrap();
            assert_eq!(at, schur(&l), "{}", l);
        }
    }
}

#[test]
fn orthogonality() {
    for ip in [InnerProduct::Jack, InnerProduct::Macdonald] {
        let top = if ip == InnerProduct::Jack { 6 } else { 5 };
        for n in 1..=top {
            let fam = gram_schmidt_family(n, ip);
            for i in 0..fam.len() {
                for j in 0..i {
                    assert!(ip.pair(&fam[i], &fam[j]).is_zero(), "{:?} n={} {} {}", ip, n, i, j);
                }
            }
        }
    }
}

#[test]
fn macdonald_single_cell() {
    assert_eq!(macdonald_j(&part(&[1])).unwrap(), p(&[1]).scale(&rf(1).sub(&t_var())));
    assert_eq!(macdonald_j(&Partition::empty()).unwrap(), FockVector::vacuum());
}

#[test]
fn macdonald_duality() {
    assert!(macdonald_duality_mismatches(4).unwrap().is_empty());
}

#[test]
fn jack_limit_route() {
    for n in 1..=4 {
        for l in partitions_of(n) {
            assert_eq!(jack_j_limit(&l).unwrap(), jack_j(&l).unwrap(), "{}", l);
        }
    }
}

#[test]
fn transformed_round_trip_and_independence() {
    for n in 0..=4 {
        for l in partitions_of(n) {
            let h = transformed_h(&l).unwrap();
            assert_eq!(j_from_h(&l, &h).unwrap(), macdonald_j(&l).unwrap(), "{}", l);
        }
    }
    assert_eq!(transformed_h(&part(&[1])).unwrap(), p(&[1]));
    for n in 1..=4 {
        let ps = partitions_of(n);
        let cols: Vec<Vec<RatFunc>> = ps.iter().map(|l| transformed_h(l).unwrap().to_column(n)).collect();
        let m = Matrix::from_fn(ps.len(), ps.len(), |i, j| cols[j][i].clone());
        assert_eq!(m.rank(), ps.len());
    }
}

#[test]
fn fixed_point_classes() {
    assert_eq!(fixed_point_class(&part(&[1])).unwrap(), p(&[1]).scale(&t1().mul(&t2())));
    for n in 1..=5 {
        for l in partitions_of(n) {
            let a = fixed_point_class(&l).unwrap();
            let b = fixed_point_class(&l.conjugate()).unwrap().map(|c| c.swap_vars(Var::T1, Var::T2));
            assert_eq!(a, b, "{}", l);
        }
    }
    for n in 1..=5 {
        assert!(!fixed_point_matrix(n).unwrap().determinant().is_zero());
    }
}

#[test]
fn bound_enforced() {
    assert!(gram_schmidt_p(&part(&[9]), InnerProduct::Jack).is_err());
}
