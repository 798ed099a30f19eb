//! `L_N = U + N` with vectors `(a, b, v)` and pairing `a b' + a' b + <v, v'>`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerate::{vectors_near, Acceptance};
use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeDesc, Signature};
use crate::leech::LinearForms;
use crate::matrix::{IntMatrix, IntVector};
use crate::niemeier::NiemeierLattice;
use crate::normal_form::{left_kernel, row_module_basis};

/// A vector `(a, b, v)` of `U + M` for a definite lattice `M`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HypVector {
    pub a: BigInt,
    pub b: BigInt,
    pub v: IntVector,
}

impl HypVector {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, v: IntVector) -> Self {
        HypVector { a: a.into(), b: b.into(), v }
    }

    /// Coordinates `(a, b, v_0, v_1, ...)`.
    pub fn coords(&self) -> IntVector {
        let mut out = vec![self.a.clone(), self.b.clone()];
        out.extend(self.v.iter().cloned());
        out
    }

    pub fn from_coords(x: &[BigInt]) -> Self {
        HypVector { a: x[0].clone(), b: x[1].clone(), v: x[2..].to_vec() }
    }

    pub fn pair(&self, other: &HypVector, gram: &IntMatrix) -> BigInt {
        &self.a * &other.b + &other.a * &self.b + gram.pair(&self.v, &other.v)
    }

    pub fn scale(&self, k: &BigInt) -> HypVector {
        HypVector { a: &self.a * k, b: &self.b * k, v: self.v.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, o: &HypVector) -> HypVector {
        HypVector { a: &self.a + &o.a, b: &self.b + &o.b, v: self.v.iter().zip(&o.v).map(|(x, y)| x + y).collect() }
    }
}

/// Gram of `U + M` in coordinates `(a, b, v)`.
pub fn hyperbolic_gram(m: &IntMatrix) -> IntMatrix {
    let mut u = IntMatrix::zeros(2, 2);
    u[(0, 1)] = BigInt::one();
    u[(1, 0)] = BigInt::one();
    IntMatrix::block_diagonal(&[&u, m])
}

/// `L_N` as a lattice; checks rank 26, hyperbolic signature, evenness and `|det| = 1`.
pub fn build_ln(n: &NiemeierLattice) -> Result<LatticeDesc> {
    let l = LatticeDesc::new(hyperbolic_gram(n.gram()))?;
    let ok = l.rank() == 26 && l.signature() == Signature::Hyperbolic && l.is_even() && l.is_unimodular();
    if !ok {
        return Err(LatticeError::consistency("hyperbolic", "L_N even unimodular of signature (1,25)", n.label.clone()));
    }
    Ok(l)
}

/// `f_N = (1, 0, 0)`.
pub fn f_n(n: &NiemeierLattice) -> HypVector {
    HypVector::new(1, 0, vec![BigInt::zero(); n.rank()])
}

/// `z_N = (-1, 1, 0)`.
pub fn z_n(n: &NiemeierLattice) -> HypVector {
    HypVector::new(-1, 1, vec![BigInt::zero(); n.rank()])
}

/// `theta_i = (1, 0, -mu_i)` for component `i`.
pub fn theta_n(n: &NiemeierLattice, i: usize) -> HypVector {
    HypVector::new(1, 0, n.highest_root(i).iter().map(|x| -x).collect())
}

/// Outcome of the wall checks on `w_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallChecks {
    pub norm: BigInt,
    pub with_z: BigInt,
    /// Pairings with the simple roots, in Theta order.
    pub with_simple: Vec<BigInt>,
    /// Pairings with the extending nodes `theta_i`.
    pub with_theta: Vec<BigInt>,
}

impl WallChecks {
    pub fn all_pass(&self) -> bool {
        self.norm.is_zero()
            && self.with_z.is_one()
            && self.with_simple.iter().all(One::is_one)
            && self.with_theta.iter().all(One::is_one)
    }
}

/// `w_N = (h + 1, h, rho)` with all of its pairings.
pub fn weyl_vector_ln_checks(n: &NiemeierLattice) -> (HypVector, WallChecks) {
    let h = BigInt::from(n.h);
    let w = HypVector::new(&h + 1, h, n.rho.clone());
    let g = n.gram();
    let pair_root = |r: IntVector| w.pair(&HypVector::new(0, 0, r), g);
    let checks = WallChecks {
        norm: w.pair(&w, g),
        with_z: w.pair(&z_n(n), g),
        with_simple: n.all_simple_roots().into_iter().map(pair_root).collect(),
        with_theta: (0..n.components.len()).map(|i| w.pair(&theta_n(n, i), g)).collect(),
    };
    (w, checks)
}

/// `w_N`, failing unless every wall condition holds.
pub fn weyl_vector_ln(n: &NiemeierLattice) -> Result<HypVector> {
    let (w, checks) = weyl_vector_ln_checks(n);
    if !checks.all_pass() {
        return Err(LatticeError::consistency("hyperbolic", "w_N wall conditions", format!("{}: {checks:?}", n.label)));
    }
    Ok(w)
}

/// `s = (-1 - n/2, 1, v)` for codeword `index`, with `n = <v, v>`.
pub fn section_vector(n: &NiemeierLattice, index: usize) -> Result<HypVector> {
    let word = n.codeword(index)?;
    if num_integer::Integer::is_odd(&word.norm) {
        return Err(LatticeError::consistency("hyperbolic", "n_gamma even", word.norm.to_string()));
    }
    let s = HypVector::new(BigInt::from(-1) - &word.norm / 2, 1, word.v.clone());
    let g = n.gram();
    let w = weyl_vector_ln(n)?;
    let ok = s.pair(&s, g) == BigInt::from(-2) && s.pair(&f_n(n), g).is_one() && s.pair(&w, g).is_one();
    if !ok {
        return Err(LatticeError::consistency("hyperbolic", "section vector pairings", format!("{} codeword {index}", n.label)));
    }
    Ok(s)
}

/// All `r` with `<r, r> = -2` and `<f_N, r> = <w_N, r> = 1`, sorted.
///
/// Writing `r = (a, 1, v)`, the conditions are equivalent to
/// `|q(v - rho/h)| = 2(h+1)/h` and `a = -1 - <v, v>/2`.
pub fn enumerate_section_classes(n: &NiemeierLattice) -> Result<Vec<HypVector>> {
    let h = BigInt::from(n.h);
    let center: Vec<BigRational> = n.rho.iter().map(|x| BigRational::new(x.clone(), h.clone())).collect();
    let target = BigRational::new(BigInt::from(2) * (&h + 1), h.clone());
    let sols = vectors_near(&n.lattice, &center, &Acceptance::Exactly(target))?;
    let g = n.gram();
    let w = weyl_vector_ln(n)?;
    let f = f_n(n);
    let mut out = Vec::with_capacity(sols.len());
    for v in sols {
        let norm = n.pair(&v, &v);
        let r = HypVector::new(BigInt::from(-1) - &norm / 2, 1, v);
        let ok = r.pair(&r, g) == BigInt::from(-2) && r.pair(&f, g).is_one() && r.pair(&w, g).is_one();
        if !ok {
            return Err(LatticeError::consistency("hyperbolic", "section class pairings", n.label.clone()));
        }
        out.push(r);
    }
    if out.len() != n.code_order() {
        return Err(LatticeError::consistency(
            "hyperbolic",
            "section class count = |code|",
            format!("{}: {} solutions, |code| = {}", n.label, out.len(), n.code_order()),
        ));
    }
    out.sort();
    Ok(out)
}

/// The orthogonal complement of `{w_N, s}` in `L_N`.
#[derive(Clone, Debug)]
pub struct Orthocomplement {
    /// Basis rows in `(a, b, v)` coordinates.
    pub basis: IntMatrix,
    pub lattice: LatticeDesc,
    /// The `v`-parts of the basis rows: the projection to `N`.
    pub projection: IntMatrix,
}

pub fn orthocomplement(n: &NiemeierLattice, w: &HypVector, s: &HypVector) -> Result<Orthocomplement> {
    let gl = hyperbolic_gram(n.gram());
    let gw = gl.left_mul(&w.coords());
    let gs = gl.left_mul(&s.coords());
    let mut m = IntMatrix::zeros(gl.rows(), 2);
    for i in 0..gl.rows() {
        m[(i, 0)] = gw[i].clone();
        m[(i, 1)] = gs[i].clone();
    }
    let basis = left_kernel(&m);
    let gram = &(&basis * &gl) * &basis.transpose();
    let lattice = LatticeDesc::new(gram)?;
    if lattice.rank() != n.rank() || !lattice.is_even() || !lattice.is_unimodular() {
        return Err(LatticeError::consistency("hyperbolic", "complement even unimodular of rank 24", n.label.clone()));
    }
    let projection = basis.col_range(2, basis.cols());
    Ok(Orthocomplement { basis, lattice, projection })
}

/// Result of comparing the complement with the closed-form construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAgreement {
    /// `(a, b) = (alpha_1(u), alpha_0(u))` on every basis row.
    pub coordinates: bool,
    /// Projection spans the same submodule of `N` as the construction's basis.
    pub module: bool,
    /// Complement Gram equals the modified form on the projected rows.
    pub gram: bool,
}

impl OracleAgreement {
    pub fn all_pass(&self) -> bool {
        self.coordinates && self.module && self.gram
    }
}

/// Compares the orthocomplement of `{w_N, s_gamma}` with the sublattice
/// `sublattice_basis` (rows in N coordinates) carrying the forms `forms`.
pub fn compare_with_construction(
    n: &NiemeierLattice,
    oc: &Orthocomplement,
    forms: &LinearForms,
    sublattice_basis: &IntMatrix,
) -> Result<OracleAgreement> {
    let coordinates = (0..oc.basis.rows()).all(|i| {
        let u = oc.projection.row(i);
        let a0 = forms.alpha0(u);
        let a1 = forms.alpha1(u);
        a0 == BigRational::from_integer(oc.basis[(i, 1)].clone()) && a1 == BigRational::from_integer(oc.basis[(i, 0)].clone())
    });
    let module = row_module_basis(&oc.projection) == row_module_basis(sublattice_basis);
    let gram = coordinates && forms.gram_on(n, &oc.projection)? == *oc.lattice.gram();
    Ok(OracleAgreement { coordinates, module, gram })
}
