mod common;

use leech_core::hyperbolic::{
    build_ln, compare_with_construction, deep_hole_checks, enumerate_section_classes, f_n, orthocomplement,
    section_vector, weyl_vector_ln, weyl_vector_ln_checks, z_n, DeepHoleFile,
};
use leech_core::leech::construct_leech;
use leech_core::matrix::int;
use leech_core::niemeier::niemeier_cached;

#[test]
fn ln_basics() {
    let n = niemeier_cached("E8^3").unwrap();
    let l = build_ln(&n).unwrap();
    assert_eq!(l.determinant(), int(-1));
    let g = n.gram();
    assert_eq!(f_n(&n).pair(&z_n(&n), g), int(1));
    assert_eq!(z_n(&n).pair(&z_n(&n), g), int(-2));
    let w = weyl_vector_ln(&n).unwrap();
    assert_eq!((w.a.clone(), w.b.clone()), (int(31), int(30)));
    let a1 = niemeier_cached("A1^24").unwrap();
    let w = weyl_vector_ln(&a1).unwrap();
    assert_eq!((w.a.clone(), w.b.clone()), (int(3), int(2)));
}

#[test]
fn wall_conditions_for_all_types() {
    for data in leech_core::niemeier::bundled() {
        let n = niemeier_cached(&data.label).unwrap();
        let (_, checks) = weyl_vector_ln_checks(&n);
        assert!(checks.all_pass(), "{}", data.label);
        assert_eq!(checks.with_simple.len(), 24);
    }
}

#[test]
fn section_vectors() {
    let n = niemeier_cached("D24").unwrap();
    assert_eq!(section_vector(&n, 0).unwrap(), z_n(&n));
    let s = section_vector(&n, 1).unwrap();
    assert_eq!((s.a.clone(), s.b.clone()), (int(2), int(1)));
    let sols = enumerate_section_classes(&n).unwrap();
    assert_eq!(sols.len(), 2);
    let mut vs: Vec<_> = sols.iter().map(|r| r.v.clone()).collect();
    vs.sort();
    let mut expected: Vec<_> = n.code.iter().map(|c| c.v.clone()).collect();
    expected.sort();
    assert_eq!(vs, expected);

    let e8 = niemeier_cached("E8^3").unwrap();
    assert_eq!(enumerate_section_classes(&e8).unwrap(), vec![z_n(&e8)]);
    assert_eq!(enumerate_section_classes(&niemeier_cached("A24").unwrap()).unwrap().len(), 5);
}

#[test]
fn orthocomplement_matches_construction() {
    for (label, index) in [("A24", 2), ("D16E8", 1), ("A1^24", 7)] {
        let n = niemeier_cached(label).unwrap();
        let w = weyl_vector_ln(&n).unwrap();
        let s = section_vector(&n, index).unwrap();
        let oc = orthocomplement(&n, &w, &s).unwrap();
        let con = construct_leech(&n, index).unwrap();
        let agree = compare_with_construction(&n, &oc, &con.forms, &con.basis).unwrap();
        assert!(agree.all_pass(), "{label} {index}: {agree:?}");
    }
}

#[test]
fn lattice_point_is_not_a_deep_hole() {
    let file = DeepHoleFile::read(&common::data_path("deep_hole_A1_24.json")).unwrap();
    let mut zero = file.clone();
    zero.center = vec!["0".into(); 24];
    let report = deep_hole_checks(&zero.input().unwrap()).unwrap();
    assert!(!report.is_deep_hole);
    assert_eq!(report.distance_squared.as_deref(), Some("0"));
    assert!(!report.passed());
}

#[test]
fn deep_hole_fixture_is_reproducible() {
    let derived = common::derive_deep_hole("A1^24");
    let path = common::data_path("deep_hole_A1_24.json");
    if std::env::var_os("REGENERATE_FIXTURES").is_some() {
        std::fs::write(&path, derived.to_json()).unwrap();
    }
    assert_eq!(DeepHoleFile::read(&path).unwrap(), derived);
}

#[test]
fn deep_hole_of_other_types() {
    for (label, xi0, xi1) in [("D24", 25, 2), ("A24", 25, 5)] {
        let file = common::derive_deep_hole(label);
        let report = deep_hole_checks(&file.input().unwrap()).unwrap();
        assert!(report.passed(), "{label}: {:#?}", report.checks);
        assert_eq!(report.xi0_count, Some(xi0));
        assert_eq!(report.xi1_count, Some(xi1));
        assert_eq!(report.xi0_type.as_deref(), Some(label));
    }
}
