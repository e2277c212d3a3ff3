use super::*;

#[test]
fn names_round_trip() {
    for (n, s) in Suite::NAMES {
        assert_eq!(n.parse::<Suite>().unwrap(), s);
        assert_eq!(s.to_string(), n);
    }
    assert!("thm-9".parse::<Suite>().is_err());
}

#[test]
fn young_suite() {
    assert!(young().unwrap().passed());
}

#[test]
fn small_configs_pass() {
    let cfg = SuiteConfig {
        qmax: Some(6),
        degmax: Some(4),
        k: None,
        n: Some(3),
    };
    for s in [Suite::Heisenberg, Suite::Gamma, Suite::QzetaIdentities, Suite::VacuumTrace] {
        let r = run(s, &cfg).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn derivative_needs_both_flags() {
    let cfg = SuiteConfig {
        n: Some(2),
        ..Default::default()
    };
    assert!(derivative(&cfg).is_err());
    let cfg = SuiteConfig {
        n: Some(2),
        k: Some(vec![1]),
        ..Default::default()
    };
    assert!(derivative(&cfg).unwrap().passed());
}
