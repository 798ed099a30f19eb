//! Hermite and Smith normal forms of integer matrices, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Replaces rows `(a, b)` by `(x*a + y*b, -q*a + p*b)`, a unimodular step.
fn combine_rows(m: &mut IntMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
    for j in 0..m.cols() {
        let ra = m[(a, j)].clone();
        let rb = m[(b, j)].clone();
        m[(a, j)] = x * &ra + y * &rb;
        m[(b, j)] = p * &rb - q * &ra;
    }
}

fn combine_cols(m: &mut IntMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
    for i in 0..m.rows() {
        let ca = m[(i, a)].clone();
        let cb = m[(i, b)].clone();
        m[(i, a)] = x * &ca + y * &cb;
        m[(i, b)] = p * &cb - q * &ca;
    }
}

/// Coefficients `(x, y, p, q)` with `x*a + y*b = g`, `p = a/g`, `q = b/g`.
/// When `a | b` the pivot row is kept (`x = 1, y = 0`) so eliminations make progress.
fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if !a.is_zero() && b.is_multiple_of(a) {
        return (BigInt::one(), BigInt::zero(), BigInt::one(), b / a);
    }
    let e = a.extended_gcd(b);
    let (p, q) = (a / &e.gcd, b / &e.gcd);
    (e.x, e.y, p, q)
}

fn add_row_multiple(m: &mut IntMatrix, target: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let t = f * &m[(src, j)];
        m[(target, j)] += t;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in m.row_mut(i) {
        *x = -&*x;
    }
}

/// Eliminates column `c` below row `r` of `h` by gcd row operations mirrored
/// on `u`. Leaves the gcd of the column in `(r, c)`.
fn gcd_column(h: &mut IntMatrix, u: &mut IntMatrix, r: usize, c: usize) {
    for i in r + 1..h.rows() {
        if h[(i, c)].is_zero() {
            continue;
        }
        let (x, y, p, q) = bezout(&h[(r, c)], &h[(i, c)]);
        combine_rows(h, r, i, &x, &y, &p, &q);
        combine_rows(u, r, i, &x, &y, &p, &q);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U * M = H`, `U`
/// unimodular, `H` in row echelon form with positive pivots, entries above
/// each pivot reduced into `[0, pivot)` and zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        gcd_column(&mut h, &mut u, r, c);
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let piv = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&piv);
            let f = -q;
            add_row_multiple(&mut h, i, r, &f);
            add_row_multiple(&mut u, i, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Rank of the Hermite form (number of non-zero rows).
pub fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Basis of the integer left kernel `{x : x * M = 0}`, one vector per row.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let rank = hnf_rank(&h);
    u.row_range(rank, m.rows())
}

/// Hermite basis (non-zero rows of the HNF) of the row module of `m`.
pub fn row_module_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rank = hnf_rank(&h);
    h.row_range(0, rank)
}

/// Result of [`smith_normal_form`]: `u * m * v = s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries `d1 | d2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).filter(|d| !d.is_zero()).collect()
    }
}

/// Smith normal form with non-negative diagonal entries, each dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let k = m.rows().min(m.cols());
    for t in 0..k {
        // pivot: smallest non-zero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..s.rows() {
            for j in t..s.cols() {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            gcd_column(&mut s, &mut u, t, t);
            for j in t + 1..s.cols() {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let (x, y, p, q) = bezout(&s[(t, t)], &s[(t, j)]);
                combine_cols(&mut s, t, j, &x, &y, &p, &q);
                combine_cols(&mut v, t, j, &x, &y, &p, &q);
            }
            let column_clear = (t + 1..s.rows()).all(|i| s[(i, t)].is_zero());
            if !column_clear {
                continue;
            }
            let piv = s[(t, t)].clone();
            let offender = (t + 1..s.rows())
                .find(|&i| (t + 1..s.cols()).any(|j| !s[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row_multiple(&mut s, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { s, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, d).unwrap()
    }

    #[test]
    fn hnf_of_diagonal_is_unchanged() {
        let a = m(2, 2, &[2, 0, 0, 2]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_preserves_determinant() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h);
        assert_eq!(h.determinant().abs(), int(2));
        assert_eq!(h, m(2, 2, &[1, 0, 0, 2]));
    }

    #[test]
    fn hnf_normalizes_sign() {
        let (h, _) = hermite_normal_form(&m(1, 1, &[-3]));
        assert_eq!(h, m(1, 1, &[3]));
    }

    #[test]
    fn hnf_of_zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u.determinant().abs(), int(1));
    }

    #[test]
    fn left_kernel_of_column() {
        let a = m(3, 1, &[2, 3, 5]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 2);
        assert!(is_zero(&(&k * &a)));
    }

    fn is_zero(a: &IntMatrix) -> bool {
        a.entries().iter().all(|x| x.is_zero())
    }

    #[test]
    fn snf_small_cases() {
        let f = smith_normal_form(&m(1, 1, &[-2]));
        assert_eq!(f.invariant_factors(), vec![int(2)]);
        // D4 Cartan-type Gram, centre node 1
        let d4 = m(4, 4, &[-2, 1, 0, 0, 1, -2, 1, 1, 0, 1, -2, 0, 0, 1, 0, -2]);
        let f = smith_normal_form(&d4);
        assert_eq!(&(&f.u * &d4) * &f.v, f.s);
        let nontrivial: Vec<_> = f.invariant_factors().into_iter().filter(|d| *d != int(1)).collect();
        assert_eq!(nontrivial, vec![int(2), int(2)]);
    }

    #[test]
    fn snf_divisibility_needs_fixup() {
        // diag(2, 3) has Smith form diag(1, 6)
        let f = smith_normal_form(&m(2, 2, &[2, 0, 0, 3]));
        assert_eq!(f.invariant_factors(), vec![int(1), int(6)]);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |d| m(r, c, &d))
        })
    }

    proptest! {
        #[test]
        fn hnf_transform_is_unimodular(a in small_matrix()) {
            let (h, u) = hermite_normal_form(&a);
            prop_assert_eq!(&u * &a, h.clone());
            prop_assert_eq!(u.determinant().abs(), int(1));
            // echelon with reduced positive pivots
            let rank = hnf_rank(&h);
            let mut last = None;
            for i in 0..rank {
                let p = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()).unwrap();
                prop_assert!(last.map_or(true, |l| p > l));
                prop_assert!(h[(i, p)].is_positive());
                for k in 0..i {
                    prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                }
                last = Some(p);
            }
        }

        #[test]
        fn snf_is_diagonal_chain(a in small_matrix()) {
            let f = smith_normal_form(&a);
            prop_assert_eq!(&(&f.u * &a) * &f.v, f.s.clone());
            prop_assert_eq!(f.u.determinant().abs(), int(1));
            prop_assert_eq!(f.v.determinant().abs(), int(1));
            for i in 0..f.s.rows() {
                for j in 0..f.s.cols() {
                    if i != j { prop_assert!(f.s[(i, j)].is_zero()); }
                }
            }
            let d = f.invariant_factors();
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }
}
