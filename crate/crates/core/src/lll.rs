//! LLL reduction of a definite Gram matrix in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeDesc, Signature};
use crate::matrix::{IntMatrix, RatMatrix};

/// Reduction quality parameter `delta = 99/100`.
pub fn default_delta() -> BigRational {
    BigRational::new(BigInt::from(99), BigInt::from(100))
}

/// Output of [`lll_reduce`]: rows of `transform` are the new basis in old
/// coordinates, so `transform * G * transform^T` is the reduced Gram.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub lattice: LatticeDesc,
    pub transform: IntMatrix,
}

/// LLL-reduces a definite lattice. Negative-definite input is reduced through
/// its negation; the returned lattice keeps the input's sign.
pub fn lll_reduce(lattice: &LatticeDesc) -> Result<Reduced> {
    let pos = lattice
        .positive_gram()
        .ok_or_else(|| LatticeError::NotDefinite("LLL needs a definite lattice".into()))?;
    let (gram, transform) = lll_gram(&pos, &default_delta());
    let gram = match lattice.signature() {
        Signature::NegativeDefinite => gram.neg(),
        _ => gram,
    };
    let mut reduced = LatticeDesc::new(gram)?;
    if let Some(b) = lattice.basis() {
        let nb = &transform.to_rat() * b;
        reduced = reduced.with_basis_unchecked(nb);
    }
    Ok(Reduced { lattice: reduced, transform })
}

fn round(x: &BigRational) -> BigInt {
    // nearest integer, halves rounded down
    let two = BigInt::from(2);
    let num = x.numer() * &two + x.denom();
    let den = x.denom() * &two;
    num_integer::Integer::div_floor(&num, &den)
}

/// Gram-matrix LLL on a positive-definite integral Gram (Cohen, Alg. 2.6.3 shape).
/// Returns the reduced Gram and the transform.
pub fn lll_gram(gram: &IntMatrix, delta: &BigRational) -> (IntMatrix, IntMatrix) {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut t = IntMatrix::identity(n);
    if n <= 1 {
        return (g, t);
    }
    let mut mu = RatMatrix::zeros(n, n);
    let mut b: Vec<BigRational> = vec![BigRational::zero(); n];
    b[0] = BigRational::from_integer(g[(0, 0)].clone());
    let mut k = 1;
    let mut kmax = 0;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    let red = |k: usize, l: usize, g: &mut IntMatrix, t: &mut IntMatrix, mu: &mut RatMatrix| {
        if mu[(k, l)].abs() <= half {
            return;
        }
        let q = round(&mu[(k, l)]);
        // basis row k -= q * row l, applied as a congruence on g
        for j in 0..n {
            let v = &q * &t[(l, j)];
            t[(k, j)] -= v;
        }
        for j in 0..n {
            let v = &q * &g[(l, j)];
            g[(k, j)] -= v;
        }
        for i in 0..n {
            let v = &q * &g[(i, l)];
            g[(i, k)] -= v;
        }
        let qr = BigRational::from_integer(q);
        mu[(k, l)] -= &qr;
        for i in 0..l {
            let v = &qr * &mu[(l, i)];
            mu[(k, i)] -= v;
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut v = BigRational::from_integer(g[(k, j)].clone());
                for i in 0..j {
                    v -= &mu[(j, i)] * &mu[(k, i)] * &b[i];
                }
                if j < k {
                    mu[(k, j)] = v / &b[j];
                } else {
                    b[k] = v;
                }
            }
        }
        red(k, k - 1, &mut g, &mut t, &mut mu);
        let lovasz = (delta - &mu[(k, k - 1)] * &mu[(k, k - 1)]) * &b[k - 1];
        if b[k] < lovasz {
            // swap k and k-1
            t.swap_rows(k, k - 1);
            g.swap_rows(k, k - 1);
            g.swap_cols(k, k - 1);
            for j in 0..k - 1 {
                let tmp = mu[(k, j)].clone();
                mu[(k, j)] = mu[(k - 1, j)].clone();
                mu[(k - 1, j)] = tmp;
            }
            let m = mu[(k, k - 1)].clone();
            let bb = &b[k] + &m * &m * &b[k - 1];
            mu[(k, k - 1)] = &m * &b[k - 1] / &bb;
            b[k] = &b[k - 1] * &b[k] / &bb;
            b[k - 1] = bb;
            for i in k + 1..=kmax {
                let tt = mu[(i, k)].clone();
                mu[(i, k)] = &mu[(i, k - 1)] - &m * &tt;
                let v = &tt + &mu[(k, k - 1)] * &mu[(i, k)];
                mu[(i, k - 1)] = v;
            }
            k = std::cmp::max(1, k - 1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                red(k, l, &mut g, &mut t, &mut mu);
            }
            k += 1;
        }
    }
    (g, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn reduced_a2_is_stable() {
        let g = IntMatrix::from_i64(2, 2, &[2, -1, -1, 2]).unwrap();
        let (r, t) = lll_gram(&g, &default_delta());
        assert_eq!(r[(0, 0)], int(2));
        assert_eq!(r[(1, 1)], int(2));
        assert_eq!(t.determinant().abs(), int(1));
    }

    #[test]
    fn recovers_short_basis() {
        // basis (b1, b1 + b2) of the lattice with Gram [[4,2],[2,4]]
        let g = IntMatrix::from_i64(2, 2, &[4, 6, 6, 12]).unwrap();
        let (r, t) = lll_gram(&g, &default_delta());
        assert_eq!(&(&t * &g) * &t.transpose(), r);
        assert_eq!(r[(0, 0)], int(4));
        assert_eq!(r[(1, 1)], int(4));
        assert_eq!(r[(0, 1)].abs(), int(2));
    }

    #[test]
    fn negative_definite_keeps_sign() {
        let l = LatticeDesc::new(IntMatrix::from_i64(2, 2, &[-4, -6, -6, -12]).unwrap()).unwrap();
        let red = lll_reduce(&l).unwrap();
        assert_eq!(red.lattice.signature(), Signature::NegativeDefinite);
        assert_eq!(red.lattice.gram()[(0, 0)], int(-4));
    }

    #[test]
    fn hyperbolic_rejected() {
        let l = LatticeDesc::new(IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap()).unwrap();
        assert!(lll_reduce(&l).is_err());
    }
}
