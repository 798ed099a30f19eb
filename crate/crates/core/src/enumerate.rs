//! Fincke-Pohst enumeration of lattice points in definite forms.
//!
//! The search tree is built from an exact rational `L D L^T` decomposition of
//! the LLL-reduced positive Gram. Its `f64` images only prune the tree, with a
//! slack margin; every emitted vector is accepted or rejected by an exact
//! integer evaluation of the form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{LatticeError, Result};
use crate::lattice::LatticeDesc;
use crate::lll::lll_reduce;
use crate::matrix::{IntMatrix, IntVector, RatMatrix};

/// Relative slack for the floating-point pruning hint.
const SLACK: f64 = 1e-7;

/// What to do with the exact value `|q(x - c)|` of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// `0 < |q| <= bound` (the zero vector is excluded in the homogeneous case).
    AtMost(BigRational),
    /// `|q| == target`.
    Exactly(BigRational),
}

impl Acceptance {
    fn bound(&self) -> &BigRational {
        match self {
            Acceptance::AtMost(b) | Acceptance::Exactly(b) => b,
        }
    }
}

/// Exact `L D L^T` of a positive-definite Gram: `q(y) = sum_k d_k (y_k + sum_{j>k} l_{jk} y_j)^2`.
pub fn ldl(gram: &IntMatrix) -> Result<(RatMatrix, Vec<BigRational>)> {
    let n = gram.rows();
    let g = gram.to_rat();
    let mut l = RatMatrix::identity(n);
    let mut d = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut di = g[(i, i)].clone();
        for k in 0..i {
            di -= &l[(i, k)] * &l[(i, k)] * &d[k];
        }
        if !di.is_positive() {
            return Err(LatticeError::NotDefinite("non-positive pivot in LDL".into()));
        }
        for j in i + 1..n {
            let mut v = g[(j, i)].clone();
            for k in 0..i {
                v -= &l[(j, k)] * &l[(i, k)] * &d[k];
            }
            l[(j, i)] = v / &di;
        }
        d[i] = di;
    }
    Ok((l, d))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Prepared search over an LLL-reduced positive-definite Gram.
struct Search {
    n: usize,
    gram: Vec<i64>,
    /// `mu[k * n + j] = l_{jk}` for `j > k`.
    mu: Vec<f64>,
    d: Vec<f64>,
    /// Center in reduced coordinates as `f64` (pruning only).
    center: Vec<f64>,
    bound: f64,
}

impl Search {
    fn new(gram: &IntMatrix, center: &[f64], bound: f64) -> Result<Self> {
        let n = gram.rows();
        let (l, d) = ldl(gram)?;
        let mut mu = vec![0.0; n * n];
        for k in 0..n {
            for j in k + 1..n {
                mu[k * n + j] = to_f64(&l[(j, k)]);
            }
        }
        let small = gram
            .entries()
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() < (1i64 << 40)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| LatticeError::InvalidBound("reduced Gram entries too large for enumeration".into()))?;
        Ok(Search {
            n,
            gram: small,
            mu,
            d: d.iter().map(to_f64).collect(),
            center: center.to_vec(),
            bound,
        })
    }

    /// Candidate interval at level `k` given the fixed coordinates above it.
    fn interval(&self, k: usize, y: &[i64], remaining: f64) -> (f64, i64, i64) {
        let n = self.n;
        let mut t = 0.0;
        for j in k + 1..n {
            t += self.mu[k * n + j] * (y[j] as f64 - self.center[j]);
        }
        let c = self.center[k] - t;
        let slack = SLACK * (1.0 + self.bound);
        let r = ((remaining + slack).max(0.0) / self.d[k]).sqrt();
        let lo = (c - r - SLACK).ceil() as i64;
        let hi = (c + r + SLACK).floor() as i64;
        (c, lo, hi)
    }

    fn descend(&self, k: usize, y: &mut Vec<i64>, remaining: f64, out: &mut dyn FnMut(&[i64])) {
        let (c, lo, hi) = self.interval(k, y, remaining);
        for v in lo..=hi {
            let diff = v as f64 - c;
            let rest = remaining - self.d[k] * diff * diff;
            if rest < -SLACK * (1.0 + self.bound) {
                continue;
            }
            y[k] = v;
            if k == 0 {
                out(y);
            } else {
                self.descend(k - 1, y, rest, out);
            }
        }
        y[k] = 0;
    }

    /// Visits every candidate; the top level is split across threads and each
    /// branch's candidates are returned in sweep order.
    fn collect<T: Send>(&self, leaf: impl Fn(&[i64]) -> Option<T> + Sync) -> Vec<T> {
        let n = self.n;
        let top = n - 1;
        let (_, lo, hi) = self.interval(top, &vec![0; n], self.bound);
        let branches: Vec<i64> = (lo..=hi).collect();
        let per_branch: Vec<Vec<T>> = branches
            .par_iter()
            .map(|&v| {
                let mut found = Vec::new();
                let mut y = vec![0i64; n];
                let diff = v as f64 - self.center[top];
                let rest = self.bound - self.d[top] * diff * diff;
                if rest < -SLACK * (1.0 + self.bound) {
                    return found;
                }
                y[top] = v;
                if top == 0 {
                    if let Some(t) = leaf(&y) {
                        found.push(t);
                    }
                } else {
                    self.descend(top - 1, &mut y, rest, &mut |c| {
                        if let Some(t) = leaf(c) {
                            found.push(t);
                        }
                    });
                }
                found
            })
            .collect();
        per_branch.into_iter().flatten().collect()
    }

    fn norm(&self, y: &[i64]) -> i128 {
        let n = self.n;
        let mut acc: i128 = 0;
        for i in 0..n {
            if y[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += self.gram[i * n + j] as i128 * y[j] as i128;
            }
            acc += y[i] as i128 * row;
        }
        acc
    }
}

/// A prepared enumeration problem on a definite lattice: the positive form
/// `|q|`, LLL-reduced, with the transform back to the caller's basis.
pub struct Enumerator {
    reduced: IntMatrix,
    transform: IntMatrix,
    transform_inv: RatMatrix,
}

impl Enumerator {
    pub fn new(lattice: &LatticeDesc) -> Result<Self> {
        if !lattice.is_definite() {
            return Err(LatticeError::NotDefinite("enumeration needs a definite lattice".into()));
        }
        let red = lll_reduce(lattice)?;
        let reduced = red.lattice.positive_gram().expect("definite");
        let transform_inv = red.transform.to_rat().inverse().expect("unimodular transform");
        Ok(Enumerator { reduced, transform: red.transform, transform_inv })
    }

    pub fn rank(&self) -> usize {
        self.reduced.rows()
    }

    fn to_original(&self, y: &[i64]) -> IntVector {
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        self.transform.left_mul(&yb)
    }

    /// Every non-zero `x` with `|q(x)| <= bound`, sorted lexicographically.
    pub fn short_vectors(&self, bound: &BigRational) -> Result<Vec<IntVector>> {
        if !bound.is_positive() {
            return Err(LatticeError::InvalidBound(format!("bound must be positive, got {bound}")));
        }
        let search = Search::new(&self.reduced, &vec![0.0; self.rank()], to_f64(bound))?;
        let bound_num = bound.floor().to_integer().to_i128().unwrap_or(i128::MAX);
        let mut out = search.collect(|y| {
            let q = search.norm(y);
            (q != 0 && q <= bound_num).then(|| self.to_original(y))
        });
        out.sort();
        Ok(out)
    }

    /// Number of non-zero `x` with `|q(x)| == value`, without materializing them.
    pub fn count_with_norm(&self, value: u64) -> Result<u64> {
        if value == 0 {
            return Err(LatticeError::InvalidBound("norm 0".into()));
        }
        let search = Search::new(&self.reduced, &vec![0.0; self.rank()], value as f64)?;
        let v = value as i128;
        let counts = search.collect(|y| (search.norm(y) == v).then_some(()));
        Ok(counts.len() as u64)
    }

    /// Every `x` with `|q(x - center)|` accepted by `accept`, sorted lexicographically.
    pub fn near(&self, center: &[BigRational], accept: &Acceptance) -> Result<Vec<IntVector>> {
        if center.len() != self.rank() {
            return Err(LatticeError::Dimension(format!(
                "center has {} coordinates, lattice rank is {}",
                center.len(),
                self.rank()
            )));
        }
        let bound = accept.bound();
        if bound.is_negative() || (matches!(accept, Acceptance::AtMost(_)) && bound.is_zero()) {
            return Err(LatticeError::InvalidBound(format!("bound must be positive, got {bound}")));
        }
        // center in reduced coordinates: c = c' * T  =>  c' = c * T^{-1}
        let reduced_center = self.transform_inv.left_mul(center);
        let den = reduced_center.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let scaled: Vec<BigInt> =
            reduced_center.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let den2 = &den * &den;
        let centre_f: Vec<f64> = reduced_center.iter().map(to_f64).collect();
        let search = Search::new(&self.reduced, &centre_f, to_f64(bound))?;
        let gram = &self.reduced;
        let mut out = search.collect(|y| {
            // den^2 q(y - c) = q(den*y - den*c), evaluated exactly
            let z: Vec<BigInt> = y.iter().zip(&scaled).map(|(&v, s)| BigInt::from(v) * &den - s).collect();
            let q = BigRational::new(gram.pair(&z, &z), den2.clone());
            let ok = match accept {
                Acceptance::AtMost(b) => &q <= b,
                Acceptance::Exactly(t) => &q == t,
            };
            ok.then(|| self.to_original(y))
        });
        out.sort();
        Ok(out)
    }
}

/// Non-zero vectors with `|q(x)| <= bound` of a definite lattice, sorted lexicographically.
pub fn short_vectors(lattice: &LatticeDesc, bound: u64) -> Result<Vec<IntVector>> {
    if bound == 0 {
        return Err(LatticeError::InvalidBound("bound must be positive".into()));
    }
    Enumerator::new(lattice)?.short_vectors(&BigRational::from_integer(BigInt::from(bound)))
}

/// Lattice points `x` with `|q(x - center)|` accepted by `accept`, sorted lexicographically.
pub fn vectors_near(lattice: &LatticeDesc, center: &[BigRational], accept: &Acceptance) -> Result<Vec<IntVector>> {
    Enumerator::new(lattice)?.near(center, accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rat};
    use proptest::prelude::*;

    fn lat(n: usize, d: &[i64]) -> LatticeDesc {
        LatticeDesc::new(IntMatrix::from_i64(n, n, d).unwrap()).unwrap()
    }

    /// Brute force over a coordinate box.
    fn brute(g: &IntMatrix, radius: i64, pred: impl Fn(&BigInt) -> bool) -> Vec<IntVector> {
        let n = g.rows();
        let mut out = Vec::new();
        let mut x = vec![-radius; n];
        loop {
            let v: Vec<BigInt> = x.iter().map(|&a| int(a)).collect();
            if pred(&g.pair(&v, &v).abs()) && !v.iter().all(|a| a.is_zero()) {
                out.push(v);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                x[i] += 1;
                if x[i] > radius {
                    x[i] = -radius;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn a1_roots() {
        let v = short_vectors(&lat(1, &[-2]), 2).unwrap();
        assert_eq!(v, vec![vec![int(-1)], vec![int(1)]]);
    }

    #[test]
    fn a2_has_six_roots() {
        let g = lat(2, &[-2, 1, 1, -2]);
        assert_eq!(short_vectors(&g, 2).unwrap().len(), 6);
    }

    #[test]
    fn bad_inputs() {
        let g = lat(2, &[-2, 1, 1, -2]);
        assert!(short_vectors(&g, 0).is_err());
        assert!(vectors_near(&g, &[rat(1, 2)], &Acceptance::AtMost(rat(1, 1))).is_err());
        assert!(short_vectors(&lat(2, &[0, 1, 1, 0]), 2).is_err());
    }

    #[test]
    fn inhomogeneous_a1() {
        // points of 2Z-scaled line at distance^2 exactly 1/2 from 1/2: x = 0, 1
        let g = lat(1, &[2]);
        let v = vectors_near(&g, &[rat(1, 2)], &Acceptance::Exactly(rat(1, 2))).unwrap();
        assert_eq!(v, vec![vec![int(0)], vec![int(1)]]);
    }

    #[test]
    fn count_matches_listing() {
        let g = lat(3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        let e = Enumerator::new(&g).unwrap();
        let listed = e.short_vectors(&rat(4, 1)).unwrap();
        let norm4 = listed.iter().filter(|v| g.pair(v, v) == int(4)).count() as u64;
        assert_eq!(e.count_with_norm(4).unwrap(), norm4);
    }

    fn definite_gram() -> impl Strategy<Value = IntMatrix> {
        // B B^T + I for small integer B is positive definite
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(-2i64..3, n * n).prop_map(move |b| {
                let b = IntMatrix::from_i64(n, n, &b).unwrap();
                let mut g = &b * &b.transpose();
                for i in 0..n {
                    g[(i, i)] += int(1);
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn agrees_with_brute_force(g in definite_gram(), bound in 1u64..7) {
            let l = LatticeDesc::new(g.clone()).unwrap();
            let got = short_vectors(&l, bound).unwrap();
            // |x_i| <= sqrt(bound * (G^{-1})_ii) <= bound since G >= I
            let expect = brute(&g, bound as i64, |q| *q <= int(bound as i64));
            prop_assert_eq!(&got, &expect);
            prop_assert_eq!(got.len() % 2, 0);
        }

        #[test]
        fn invariant_under_basis_change(g in definite_gram(), seed in proptest::collection::vec(-2i64..3, 16)) {
            let n = g.rows();
            // unimodular change: identity plus strictly upper part
            let mut t = IntMatrix::identity(n);
            for i in 0..n { for j in i + 1..n { t[(i, j)] = int(seed[(i * n + j) % 16]); } }
            let g2 = &(&t * &g) * &t.transpose();
            let a = short_vectors(&LatticeDesc::new(g).unwrap(), 4).unwrap();
            let b = short_vectors(&LatticeDesc::new(g2).unwrap(), 4).unwrap();
            let mut mapped: Vec<IntVector> = b.iter().map(|x| t.left_mul(x)).collect();
            mapped.sort();
            prop_assert_eq!(a, mapped);
        }
    }
}
