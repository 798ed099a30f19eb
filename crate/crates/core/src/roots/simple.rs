//! Simple root systems extracted from a full root set.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{LatticeError, Result};
use crate::matrix::{IntMatrix, IntVector};

use super::ade::{identify_ade_decomposition, IdentifiedComponent};

/// A simple root system `Θ`, its Gram and its connected components.
#[derive(Clone, Debug)]
pub struct SimpleSystem {
    /// Simple roots in the coordinates of the input roots, sorted lexicographically.
    pub roots: Vec<IntVector>,
    /// Pairings `<r_i, r_j>` in the ambient form.
    pub gram: IntMatrix,
    /// Components with their types; `nodes` index into `roots`.
    pub components: Vec<IdentifiedComponent>,
}

/// Positive under the functional `x -> x_0 + e x_1 + e^2 x_2 + ...` for an
/// infinitesimal `e`: the first non-zero coordinate is positive.
pub fn is_positive(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

fn small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Extracts the simple roots of the positive system cut out by the
/// lexicographic functional: the positive roots that are not a sum of two
/// positive roots. `ambient` is the Gram of the coordinate system of `roots`.
pub fn extract_simple_system(roots: &[IntVector], ambient: &IntMatrix) -> Result<SimpleSystem> {
    if roots.is_empty() {
        return Err(LatticeError::NotAde("empty root set".into()));
    }
    let n = ambient.rows();
    if roots.iter().any(|r| r.len() != n) {
        return Err(LatticeError::Dimension("root length does not match the Gram".into()));
    }
    let positive: Vec<Vec<i64>> = roots
        .iter()
        .filter(|r| is_positive(r))
        .map(|r| small(r).ok_or_else(|| LatticeError::Dimension("root coordinates out of range".into())))
        .collect::<Result<_>>()?;
    if positive.len() * 2 != roots.len() {
        return Err(LatticeError::NotAde("root set is not closed under negation".into()));
    }
    let set: HashSet<&[i64]> = positive.iter().map(Vec::as_slice).collect();
    let mut decomposable: HashSet<Vec<i64>> = HashSet::new();
    for (i, a) in positive.iter().enumerate() {
        for b in &positive[i + 1..] {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if set.contains(s.as_slice()) {
                decomposable.insert(s);
            }
        }
    }
    let mut simple: Vec<IntVector> = positive
        .iter()
        .filter(|r| !decomposable.contains(*r))
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    simple.sort();
    let k = simple.len();
    let mut gram = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = ambient.pair(&simple[i], &simple[j]);
        }
    }
    let components = identify_ade_decomposition(&gram)?;
    Ok(SimpleSystem { roots: simple, gram, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::short_vectors;
    use crate::roots::ade::{cartan_gram, AdeType};

    fn roots_of(t: &str) -> (Vec<IntVector>, IntMatrix) {
        let l = cartan_gram(t.parse::<AdeType>().unwrap());
        (short_vectors(&l, 2).unwrap(), l.gram().clone())
    }

    #[test]
    fn a1_single_root() {
        let (r, g) = roots_of("A1");
        let s = extract_simple_system(&r, &g).unwrap();
        assert_eq!(s.roots, vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn a2_matches_brute_force() {
        let (r, g) = roots_of("A2");
        let s = extract_simple_system(&r, &g).unwrap();
        assert_eq!(s.roots.len(), 2);
        assert_eq!(s.gram[(0, 1)], BigInt::from(1));
        // brute force: pairs of positive roots with pairing 1 that generate every positive root
        // with non-negative coefficients
        let pos: Vec<_> = r.iter().filter(|v| is_positive(v)).cloned().collect();
        let mut bases = Vec::new();
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if g.pair(&pos[i], &pos[j]) != BigInt::from(1) {
                    continue;
                }
                let all = pos.iter().all(|p| {
                    (0..=2).any(|a| {
                        (0..=2).any(|b| {
                            let v: Vec<BigInt> =
                                (0..2).map(|k| &pos[i][k] * BigInt::from(a) + &pos[j][k] * BigInt::from(b)).collect();
                            &v == p
                        })
                    })
                });
                if all {
                    bases.push(vec![pos[i].clone(), pos[j].clone()]);
                }
            }
        }
        assert_eq!(bases, vec![s.roots.clone()]);
    }

    #[test]
    fn e8_and_mixed() {
        let (r, g) = roots_of("E8");
        assert_eq!(r.len(), 240);
        let s = extract_simple_system(&r, &g).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].ade.to_string(), "E8");

        let blocks = [cartan_gram("D5".parse().unwrap()), cartan_gram("A3".parse().unwrap())];
        let g = IntMatrix::block_diagonal(&[blocks[0].gram(), blocks[1].gram()]);
        let l = crate::lattice::LatticeDesc::new(g.clone()).unwrap();
        let r = short_vectors(&l, 2).unwrap();
        let s = extract_simple_system(&r, &g).unwrap();
        let types: Vec<String> = s.components.iter().map(|c| c.ade.to_string()).collect();
        assert_eq!(types, vec!["D5", "A3"]);
    }

    #[test]
    fn rejects_bad_input() {
        let g = IntMatrix::from_i64(1, 1, &[-2]).unwrap();
        assert!(extract_simple_system(&[], &g).is_err());
        assert!(extract_simple_system(&[vec![BigInt::from(1)]], &g).is_err());
    }
}
