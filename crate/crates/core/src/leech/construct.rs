//! The sublattice `{u in N : alpha_0(u) in Z}` with the modified form
//! `<u, u'> + alpha_0(u) alpha_1(u') + alpha_1(u) alpha_0(u')`, and the
//! codeword-zero specialization `{u : <u, rho> = 0 mod 2h+1}` computed on a
//! separate path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeDesc, Signature};
use crate::lll::lll_reduce;
use crate::matrix::{content, IntMatrix, IntVector};
use crate::niemeier::{CodeElement, NiemeierLattice};
use crate::normal_form::{left_kernel, row_module_basis, smith_normal_form};

/// The linear forms attached to a codeword, on N coordinates.
#[derive(Clone, Debug)]
pub struct LinearForms {
    pub h: BigInt,
    pub n_gamma: BigInt,
    pub a_gamma: BigInt,
    /// `G (h v - rho)`, so that `alpha_0(u) = c . u / a`.
    pub c: IntVector,
    /// `G v`, so that `<v, u> = gv . u`.
    pub gv: IntVector,
}

fn dot(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl LinearForms {
    pub fn new(n: &NiemeierLattice, v: &[BigInt]) -> Result<Self> {
        let h = BigInt::from(n.h);
        let n_gamma = n.pair(v, v);
        if n_gamma.is_odd() {
            return Err(LatticeError::consistency("leech-build", "n_gamma even", n_gamma.to_string()));
        }
        let a_gamma: BigInt = &h * 2 + 1 + &h * &n_gamma / 2;
        if a_gamma.is_zero() {
            return Err(LatticeError::consistency("leech-build", "a_gamma non-zero", n.label.clone()));
        }
        let w: IntVector = v.iter().zip(&n.rho).map(|(x, r)| &h * x - r).collect();
        let c = n.gram().left_mul(&w);
        let gv = n.gram().left_mul(v);
        Ok(LinearForms { h, n_gamma, a_gamma, c, gv })
    }

    pub fn alpha0(&self, u: &[BigInt]) -> BigRational {
        BigRational::new(dot(&self.c, u), self.a_gamma.clone())
    }

    pub fn alpha1(&self, u: &[BigInt]) -> BigRational {
        let k = BigRational::from_integer(BigInt::one() + &self.n_gamma / 2);
        k * self.alpha0(u) - BigRational::from_integer(dot(&self.gv, u))
    }

    /// The modified pairing on two vectors of `N`.
    pub fn pair(&self, n: &NiemeierLattice, u: &[BigInt], w: &[BigInt]) -> BigRational {
        BigRational::from_integer(n.pair(u, w)) + self.alpha0(u) * self.alpha1(w) + self.alpha1(u) * self.alpha0(w)
    }

    /// `|a| / gcd(a, content(c))`, the index of the sublattice in `N`.
    pub fn expected_index(&self) -> BigInt {
        self.a_gamma.abs() / self.a_gamma.gcd(&content(&self.c))
    }

    /// Gram of the modified form on the given rows; must be integral.
    pub fn gram_on(&self, n: &NiemeierLattice, rows: &IntMatrix) -> Result<IntMatrix> {
        let k = rows.rows();
        let a0: Vec<BigRational> = (0..k).map(|i| self.alpha0(rows.row(i))).collect();
        let a1: Vec<BigRational> = (0..k).map(|i| self.alpha1(rows.row(i))).collect();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let x = BigRational::from_integer(n.pair(rows.row(i), rows.row(j))) + &a0[i] * &a1[j] + &a1[i] * &a0[j];
                if !x.is_integer() {
                    return Err(LatticeError::consistency("leech-build", "integral modified form", format!("entry ({i},{j}) = {x}")));
                }
                g[(i, j)] = x.to_integer();
                g[(j, i)] = g[(i, j)].clone();
            }
        }
        Ok(g)
    }
}

/// A constructed rank-24 lattice with its provenance.
#[derive(Clone, Debug)]
pub struct ConstructedLattice {
    pub label: String,
    pub codeword: usize,
    pub classes: CodeElement,
    pub v: IntVector,
    pub forms: LinearForms,
    pub index: BigInt,
    /// Kernel basis of the sublattice in N coordinates, before reduction.
    pub kernel_basis: IntMatrix,
    /// LLL-reduced basis in N coordinates.
    pub basis: IntMatrix,
    /// The modified form on `basis`.
    pub lattice: LatticeDesc,
}

impl ConstructedLattice {
    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    /// The same lattice with the form negated (positive-definite convention).
    pub fn positive(&self) -> LatticeDesc {
        self.lattice.negated()
    }
}

/// Basis of `{u : c . u = 0 mod m}` as the `u`-part of the integer left
/// kernel of the column `(c; m)`.
fn congruence_kernel(c: &[BigInt], m: &BigInt) -> IntMatrix {
    let n = c.len();
    let mut col = IntMatrix::zeros(n + 1, 1);
    for (i, x) in c.iter().enumerate() {
        col[(i, 0)] = x.clone();
    }
    col[(n, 0)] = m.clone();
    left_kernel(&col).col_range(0, n)
}

fn reduce(n: &NiemeierLattice, rows: IntMatrix, gram: IntMatrix) -> Result<(IntMatrix, LatticeDesc)> {
    let l = LatticeDesc::new(gram)?;
    if l.signature() != Signature::NegativeDefinite {
        return Err(LatticeError::consistency("leech-build", "negative definite", n.label.clone()));
    }
    let red = lll_reduce(&l)?;
    let basis = &red.transform * &rows;
    Ok((basis, red.lattice))
}

/// The construction for codeword `index` of `n`.
pub fn construct_leech(n: &NiemeierLattice, index: usize) -> Result<ConstructedLattice> {
    let word = n.codeword(index)?;
    let forms = LinearForms::new(n, &word.v)?;
    let kernel_basis = congruence_kernel(&forms.c, &forms.a_gamma);
    if kernel_basis.rows() != n.rank() {
        return Err(LatticeError::consistency("leech-build", "kernel rank", format!("{}", kernel_basis.rows())));
    }
    let index_found = kernel_basis.determinant().abs();
    let expected = forms.expected_index();
    if index_found != expected {
        return Err(LatticeError::consistency(
            "leech-build",
            "sublattice index",
            format!("{}: det {index_found}, expected {expected}", n.label),
        ));
    }
    let kernel_gram = forms.gram_on(n, &kernel_basis)?;
    let (basis, lattice) = reduce(n, kernel_basis.clone(), kernel_gram)?;
    Ok(ConstructedLattice {
        label: n.label.clone(),
        codeword: index,
        classes: word.classes.clone(),
        v: word.v.clone(),
        forms,
        index: index_found,
        kernel_basis,
        basis,
        lattice,
    })
}

/// The codeword-zero lattice `{u : <u, rho> = 0 mod 2h+1}` with
/// `<u, u'> + 2 <u, rho> <u', rho> / (2h+1)^2`.
#[derive(Clone, Debug)]
pub struct CorollaryLattice {
    pub label: String,
    pub modulus: BigInt,
    /// Basis in N coordinates (from a Smith decomposition of `u -> <u, rho>`).
    pub basis: IntMatrix,
    pub gram: IntMatrix,
}

impl CorollaryLattice {
    pub fn pair(&self, n: &NiemeierLattice, u: &[BigInt], w: &[BigInt]) -> BigRational {
        let r = |x: &[BigInt]| n.pair(x, &n.rho);
        let m2 = &self.modulus * &self.modulus;
        BigRational::from_integer(n.pair(u, w)) + BigRational::new(BigInt::from(2) * r(u) * r(w), m2)
    }
}

pub fn corollary_zero(n: &NiemeierLattice) -> Result<CorollaryLattice> {
    let modulus = BigInt::from(2 * n.h + 1);
    let d = n.gram().left_mul(&n.rho);
    // d as a 1 x 24 matrix: U d V = (g, 0, ..., 0); u = V y has <u, rho> = +-g y_0
    let mut row = IntMatrix::zeros(1, d.len());
    for (j, x) in d.iter().enumerate() {
        row[(0, j)] = x.clone();
    }
    let snf = smith_normal_form(&row);
    let g = snf.s[(0, 0)].clone();
    let scale = &modulus / g.gcd(&modulus);
    let mut basis = snf.v.transpose();
    for x in basis.row_mut(0) {
        *x *= &scale;
    }
    let mut out = CorollaryLattice { label: n.label.clone(), modulus, basis, gram: IntMatrix::zeros(0, 0) };
    let k = out.basis.rows();
    let mut gram = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let x = out.pair(n, out.basis.row(i), out.basis.row(j));
            if !x.is_integer() {
                return Err(LatticeError::consistency("leech-build", "integral corollary form", format!("({i},{j}) = {x}")));
            }
            gram[(i, j)] = x.to_integer();
        }
    }
    out.gram = gram;
    Ok(out)
}

/// Checks that the corollary lattice and a codeword-zero construction are the
/// same submodule of `N` carrying the same form.
pub fn compare_corollary(n: &NiemeierLattice, cor: &CorollaryLattice, con: &ConstructedLattice) -> Result<()> {
    if con.codeword != 0 {
        return Err(LatticeError::consistency("leech-build", "corollary compares codeword 0", con.codeword.to_string()));
    }
    if row_module_basis(&cor.basis) != row_module_basis(&con.basis) {
        return Err(LatticeError::consistency("leech-build", "corollary module equality", n.label.clone()));
    }
    for i in 0..con.basis.rows() {
        for j in 0..con.basis.rows() {
            let x = cor.pair(n, con.basis.row(i), con.basis.row(j));
            if x != BigRational::from_integer(con.gram()[(i, j)].clone()) {
                return Err(LatticeError::consistency("leech-build", "corollary form equality", format!("entry ({i},{j})")));
            }
        }
    }
    Ok(())
}
