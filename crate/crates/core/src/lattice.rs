//! Lattices given by exact Gram matrices, and their discriminant groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::matrix::{IntMatrix, IntVector, RatMatrix, RatVector};
use crate::normal_form::smith_normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signature {
    PositiveDefinite,
    NegativeDefinite,
    /// Signature `(1, n - 1)`.
    Hyperbolic,
}

/// Counts of positive, negative and zero eigenvalues of a symmetric rational matrix,
/// by congruence diagonalization (Sylvester's law of inertia).
pub fn inertia(gram: &RatMatrix) -> (usize, usize, usize) {
    let n = gram.rows();
    let mut a = gram.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else if let Some(p) = (k + 1..n).find(|&i| !a[(k, i)].is_zero()) {
                // a[k][k] = 0, a[p][p] = 0, a[k][p] != 0: add row/col p to k
                for j in 0..n {
                    let t = a[(p, j)].clone();
                    a[(k, j)] += t;
                }
                for i in 0..n {
                    let t = a[(i, p)].clone();
                    a[(i, k)] += t;
                }
            } else {
                // row k is zero
                k += 1;
                continue;
            }
        }
        let piv = a[(k, k)].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &piv;
            for j in k..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
            for j in k..n {
                let t = &f * &a[(j, k)];
                a[(j, i)] -= t;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// A lattice: an integral symmetric non-degenerate Gram matrix, with an optional
/// embedding of its basis into an ambient rational space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDesc {
    gram: IntMatrix,
    basis: Option<RatMatrix>,
    signature: Signature,
}

impl LatticeDesc {
    /// Validates symmetry and non-degeneracy and classifies the signature.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(LatticeError::Dimension("Gram matrix is not square and symmetric".into()));
        }
        let n = gram.rows();
        if n == 0 {
            return Err(LatticeError::Dimension("rank 0 lattice".into()));
        }
        let (pos, neg, zero) = inertia(&gram.to_rat());
        if zero > 0 {
            return Err(LatticeError::Degenerate(format!("Gram matrix has {zero}-dimensional radical")));
        }
        let signature = if neg == 0 {
            Signature::PositiveDefinite
        } else if pos == 0 {
            Signature::NegativeDefinite
        } else if pos == 1 && n > 1 {
            Signature::Hyperbolic
        } else {
            return Err(LatticeError::NotDefinite(format!("signature ({pos}, {neg}) is not supported")));
        };
        Ok(LatticeDesc { gram, basis: None, signature })
    }

    /// Attaches an ambient embedding; checks `basis * ambient * basis^T = gram`.
    pub fn with_basis(mut self, basis: RatMatrix, ambient: &RatMatrix) -> Result<Self> {
        if basis.rows() != self.rank() || basis.cols() != ambient.rows() {
            return Err(LatticeError::Dimension("basis does not match Gram or ambient form".into()));
        }
        let g = &(&basis * ambient) * &basis.transpose();
        if g != self.gram.to_rat() {
            return Err(LatticeError::consistency(
                "core-algebra",
                "basis-gram",
                "basis does not reproduce the Gram matrix",
            ));
        }
        self.basis = Some(basis);
        Ok(self)
    }

    pub(crate) fn with_basis_unchecked(mut self, basis: RatMatrix) -> Self {
        self.basis = Some(basis);
        self
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn basis(&self) -> Option<&RatMatrix> {
        self.basis.as_ref()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_definite(&self) -> bool {
        self.signature != Signature::Hyperbolic
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.pair(x, y)
    }

    /// The Gram matrix of the positive-definite form `|q|`; `None` for hyperbolic lattices.
    pub fn positive_gram(&self) -> Option<IntMatrix> {
        match self.signature {
            Signature::PositiveDefinite => Some(self.gram.clone()),
            Signature::NegativeDefinite => Some(self.gram.neg()),
            Signature::Hyperbolic => None,
        }
    }

    pub fn negated(&self) -> LatticeDesc {
        let signature = match self.signature {
            Signature::PositiveDefinite => Signature::NegativeDefinite,
            Signature::NegativeDefinite => Signature::PositiveDefinite,
            // only definite lattices are negated in this crate
            Signature::Hyperbolic => Signature::Hyperbolic,
        };
        LatticeDesc { gram: self.gram.neg(), basis: self.basis.clone(), signature }
    }
}

/// `M^dual / M` presented by Smith invariants.
///
/// Classes are identified with `Z^n / G Z^n` through `x -> G x` (where `x` is a
/// dual vector in lattice coordinates). With `U G V = S`, the exponent of a
/// class along generator `k` is `(U G x)_k mod d_k`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors `d_1 | d_2 | ...`, all greater than 1.
    pub invariant_factors: Vec<BigInt>,
    /// Generator vectors in lattice coordinates (elements of the dual lattice).
    pub generators: Vec<RatVector>,
    /// Rows of `U` that carry the non-trivial factors.
    reducer: Vec<IntVector>,
    gram: IntMatrix,
    /// Dual basis `r_j^dual`, one row per basis vector (rows of `G^{-1}`).
    pub dual_basis: RatMatrix,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |a, d| a * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Tests `G x` integral, i.e. `x` in the dual lattice.
    pub fn is_dual_vector(&self, x: &[BigRational]) -> bool {
        self.gram.to_rat().left_mul(x).iter().all(|v| v.is_integer())
    }

    /// Exponent tuple of the class of a dual vector `x` (lattice coordinates).
    pub fn class_of(&self, x: &[BigRational]) -> Result<Vec<BigInt>> {
        if x.len() != self.gram.rows() {
            return Err(LatticeError::Dimension("dual vector length".into()));
        }
        let y: Vec<BigRational> = self.gram.to_rat().left_mul(x);
        if !y.iter().all(|v| v.is_integer()) {
            return Err(LatticeError::NotInGroup("vector is not in the dual lattice".into()));
        }
        let y: Vec<BigInt> = y.iter().map(|v| v.to_integer()).collect();
        Ok(self
            .reducer
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| {
                let s: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                s.mod_floor(d)
            })
            .collect())
    }

    /// Normalizes an exponent tuple; rejects wrong length.
    pub fn normalize(&self, alpha: &[BigInt]) -> Result<Vec<BigInt>> {
        if alpha.len() != self.invariant_factors.len() {
            return Err(LatticeError::NotInGroup(format!(
                "expected {} exponents, got {}",
                self.invariant_factors.len(),
                alpha.len()
            )));
        }
        Ok(alpha.iter().zip(&self.invariant_factors).map(|(a, d)| a.mod_floor(d)).collect())
    }

    /// Additive order of the class with the given exponents.
    pub fn element_order(&self, alpha: &[BigInt]) -> BigInt {
        alpha.iter().zip(&self.invariant_factors).fold(BigInt::one(), |acc, (a, d)| {
            let ord = d / a.gcd(d);
            acc.lcm(&ord)
        })
    }

    /// All elements as exponent tuples, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut e = prefix.clone();
                    e.push(k.clone());
                    next.push(e);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }
}

/// Discriminant group of a non-degenerate lattice via the Smith form of its Gram.
pub fn discriminant_group(lattice: &LatticeDesc) -> Result<DiscriminantGroup> {
    let gram = lattice.gram().clone();
    let snf = smith_normal_form(&gram);
    let dual_basis = gram
        .to_rat()
        .inverse()
        .ok_or_else(|| LatticeError::Degenerate("singular Gram matrix".into()))?;
    let u_inv = snf.u.to_rat().inverse().expect("unimodular");
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    let mut reducer = Vec::new();
    for k in 0..gram.rows() {
        let d = snf.s[(k, k)].clone();
        if d.is_one() {
            continue;
        }
        // x = G^{-1} U^{-1} e_k, as a row vector (G symmetric)
        let col: Vec<BigRational> = u_inv.column(k);
        generators.push(dual_basis.left_mul(&col));
        reducer.push(snf.u.row(k).to_vec());
        invariant_factors.push(d);
    }
    Ok(DiscriminantGroup { invariant_factors, generators, reducer, gram, dual_basis })
}
