#![allow(dead_code)]

use std::path::PathBuf;

use leech_core::hyperbolic::{f_n, hyperbolic_gram, orthocomplement, section_vector, weyl_vector_ln, DeepHoleFile};
use leech_core::matrix::rat_from_int;
use leech_core::niemeier::niemeier_cached;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

/// Derives a deep hole of the Leech lattice from a Niemeier lattice `N`.
///
/// In `L_N` the pair `u0 = w_N`, `u1 = s_0 + w_N` spans a hyperbolic plane
/// whose complement is the Leech lattice, with `u0` as its Weyl vector. The
/// isotropic vector `f_N` decomposes as `a u0 + b u1 + lambda` with
/// `a = <f_N, u1> = h + 1`, `b = <f_N, u0> = h`, and the deep hole is
/// `c = lambda / h`, written in the complement's basis.
pub fn derive_deep_hole(label: &str) -> DeepHoleFile {
    let n = niemeier_cached(label).unwrap();
    let g = n.gram();
    let gl = hyperbolic_gram(g);
    let w = weyl_vector_ln(&n).unwrap();
    let s0 = section_vector(&n, 0).unwrap();
    let oc = orthocomplement(&n, &w, &s0).unwrap();
    let f = f_n(&n);
    let u0 = w.clone();
    let u1 = s0.add(&w);
    let a = f.pair(&u1, g);
    let b = f.pair(&u0, g);
    let h = BigInt::from(n.h);
    assert_eq!(b, h);
    assert_eq!(a, &h + 1);
    let lambda: Vec<BigInt> = f
        .coords()
        .iter()
        .zip(u0.coords())
        .zip(u1.coords())
        .map(|((x, p), q)| x - &a * p - &b * q)
        .collect();
    // coordinates y with y K = lambda, from the Gram: y (K G Kt) = lambda G Kt
    let k = &oc.basis;
    let rhs = k.transpose().left_mul(&gl.left_mul(&lambda));
    let y = oc.lattice.gram().to_rat().solve_left(&leech_core::matrix::to_rat_vec(&rhs)).unwrap();
    let back: Vec<BigRational> = k.to_rat().left_mul(&y);
    assert_eq!(back, leech_core::matrix::to_rat_vec(&lambda));
    let hr = rat_from_int(&h);
    let center: Vec<BigRational> = y.iter().map(|x| x / &hr).collect();
    DeepHoleFile::new(oc.lattice.gram(), &center, Some(n.label.clone()), Some(n.h))
}
