use std::time::Instant;

use leech_core::leech::{certify_leech, compare_corollary, construct_leech, corollary_zero};
use leech_core::matrix::int;
use leech_core::niemeier::niemeier_cached;

#[test]
fn codeword_zero_for_a_few_types() {
    for label in ["A1^24", "D24", "E8^3", "A24", "A5^4D4"] {
        let n = niemeier_cached(label).unwrap();
        let t = Instant::now();
        let c = construct_leech(&n, 0).unwrap();
        assert_eq!(c.forms.a_gamma, int(2 * n.h as i64 + 1));
        let cert = certify_leech(&c.lattice, false).unwrap();
        assert!(cert.is_leech(), "{label}: {cert:?}");
        assert_eq!(cert.min_norm, 4);
        let cor = corollary_zero(&n).unwrap();
        compare_corollary(&n, &cor, &c).unwrap();
        eprintln!("{label}: {:?}", t.elapsed());
    }
}

#[test]
fn d24_nonzero_codeword() {
    let n = niemeier_cached("D24").unwrap();
    let c = construct_leech(&n, 1).unwrap();
    assert_eq!(c.forms.n_gamma, int(-6));
    assert_eq!(c.forms.a_gamma, int(-45));
    assert!(certify_leech(&c.lattice, false).unwrap().is_leech());
}

#[test]
fn niemeier_lattices_are_not_leech() {
    let n = niemeier_cached("D24").unwrap();
    let cert = certify_leech(&n.lattice, false).unwrap();
    assert!(!cert.rootless);
    assert_eq!(cert.root_count, 24 * 46);
    assert_eq!(cert.failures(), vec!["rootless"]);
}

#[test]
fn norm4_count() {
    let n = niemeier_cached("E8^3").unwrap();
    let c = construct_leech(&n, 0).unwrap();
    let t = Instant::now();
    let cert = certify_leech(&c.lattice, true).unwrap();
    eprintln!("norm-4 count in {:?}", t.elapsed());
    assert_eq!(cert.norm4_count, Some(196_560));
}
