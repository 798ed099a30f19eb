//! Connected root components: m-function, Coxeter number, Weyl vector and
//! canonical representatives of the discriminant group.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::short_vectors;
use crate::error::{LatticeError, Result};
use crate::lattice::{discriminant_group, DiscriminantGroup, LatticeDesc};
use crate::matrix::{rat_from_int, IntMatrix, IntVector, RatVector};
use crate::normal_form::left_kernel;

use super::ade::{cartan_gram, extended_gram, AdeType};

/// The four characterizations of the Coxeter number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterMode {
    /// Number of roots divided by the rank.
    RootCount,
    /// Solved from `<rho, rho> = -n h (h + 1) / 12`.
    WeylNorm,
    /// `<mu, rho> + 1`.
    HighestRoot,
    /// Order of a Coxeter element.
    CoxeterElement,
}

impl CoxeterMode {
    pub const ALL: [CoxeterMode; 4] =
        [CoxeterMode::RootCount, CoxeterMode::WeylNorm, CoxeterMode::HighestRoot, CoxeterMode::CoxeterElement];
}

impl fmt::Display for CoxeterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CoxeterMode::RootCount => "a",
            CoxeterMode::WeylNorm => "b",
            CoxeterMode::HighestRoot => "c",
            CoxeterMode::CoxeterElement => "d",
        };
        f.write_str(c)
    }
}

impl FromStr for CoxeterMode {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(CoxeterMode::RootCount),
            "b" => Ok(CoxeterMode::WeylNorm),
            "c" => Ok(CoxeterMode::HighestRoot),
            "d" => Ok(CoxeterMode::CoxeterElement),
            _ => Err(LatticeError::Parse(format!("unknown Coxeter mode {s:?}"))),
        }
    }
}

/// One connected ADE component in its own coordinates (the simple roots are
/// the standard basis, numbered as in [`super::ade`]).
#[derive(Debug)]
pub struct RootComponent {
    pub ade: AdeType,
    pub lattice: LatticeDesc,
    /// `m` on the simple roots; the extending node has `m = 1`.
    pub m: Vec<u64>,
    /// Highest-root combination `mu = sum m(r) r`, in simple-root coordinates.
    pub highest_root: IntVector,
    pub coxeter_number: u64,
    coxeter_modes: [u64; 4],
    /// Weyl vector: `<rho, r> = 1` for every simple root.
    pub rho: RatVector,
    pub disc: DiscriminantGroup,
    /// Indices `j` with `m(r_j) = 1`.
    pub j_set: Vec<usize>,
    /// Class in the discriminant group of `r_j^dual` for each `j` in `j_set`.
    pub j_classes: Vec<Vec<BigInt>>,
    /// Number of roots, by enumeration.
    pub root_count: usize,
}

impl RootComponent {
    pub fn rank(&self) -> usize {
        self.ade.rank()
    }

    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    /// Coxeter number computed by one characterization.
    pub fn coxeter_number_by(&self, mode: CoxeterMode) -> u64 {
        let k = CoxeterMode::ALL.iter().position(|&m| m == mode).unwrap();
        self.coxeter_modes[k]
    }

    /// Dual vector `r_j^dual` (`<r_j^dual, r_k> = delta_jk`).
    pub fn dual(&self, j: usize) -> RatVector {
        self.disc.dual_basis.row(j).to_vec()
    }

    /// `<rho, rho>`.
    pub fn rho_norm(&self) -> BigRational {
        self.lattice.gram().to_rat().pair(&self.rho, &self.rho)
    }

    /// Canonical representative of a discriminant class: `0` for the zero
    /// class, otherwise the unique `r_j^dual` with `m(r_j) = 1` in that class.
    pub fn canonical_rep(&self, alpha: &[BigInt]) -> Result<RatVector> {
        let alpha = self.disc.normalize(alpha)?;
        if alpha.iter().all(Zero::is_zero) {
            return Ok(vec![BigRational::zero(); self.rank()]);
        }
        let k = self
            .j_classes
            .iter()
            .position(|c| *c == alpha)
            .ok_or_else(|| LatticeError::NotInGroup(format!("no representative for {alpha:?}")))?;
        Ok(self.dual(self.j_set[k]))
    }

    /// Class of a dual vector given in this component's coordinates.
    pub fn class_of(&self, x: &[BigRational]) -> Result<Vec<BigInt>> {
        self.disc.class_of(x)
    }

    fn build(ade: AdeType) -> Result<Self> {
        let n = ade.rank();
        let lattice = cartan_gram(ade);
        let gram = lattice.gram().clone();
        let check = |ok: bool, what: &'static str, detail: String| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(LatticeError::consistency("roots", what, format!("{ade}: {detail}")))
            }
        };

        let (m_ext, m) = m_function(ade)?;
        let highest_root: IntVector = m.iter().map(|&v| BigInt::from(v)).collect();
        check(m_ext == 1, "m(theta) = 1", format!("m(theta) = {m_ext}"))?;
        // theta = -mu must pair with the simple roots as the extending node does
        let ext = extended_gram(ade);
        let mu_pair = gram.left_mul(&highest_root);
        for j in 0..n {
            check(-&mu_pair[j] == ext[(n, j)], "extending node", format!("node {j}"))?;
        }

        let disc = discriminant_group(&lattice)?;
        let ones = vec![BigRational::one(); n];
        let rho = disc.dual_basis.left_mul(&ones);
        let g = gram.to_rat();
        let rho_pair = g.left_mul(&rho);
        check(rho_pair.iter().all(One::is_one), "<rho, r> = 1", format!("{rho_pair:?}"))?;

        let roots = short_vectors(&lattice, 2)?;
        let root_count = roots.len();
        let modes = [
            mode_root_count(root_count, n, ade)?,
            mode_weyl_norm(&g.pair(&rho, &rho), n, ade)?,
            mode_highest_root(&g.pair(&highest_root.iter().map(rat_from_int).collect::<Vec<_>>(), &rho), ade)?,
            mode_coxeter_element(&gram, ade)?,
        ];
        check(
            modes.iter().all(|&h| h == modes[0]),
            "Coxeter number modes agree",
            format!("a={} b={} c={} d={}", modes[0], modes[1], modes[2], modes[3]),
        )?;
        let h = modes[0];
        let msum: u64 = m.iter().sum::<u64>() + m_ext;
        check(msum == h, "sum of m = h", format!("{msum} vs {h}"))?;

        let j_set: Vec<usize> = (0..n).filter(|&j| m[j] == 1).collect();
        let j_classes: Vec<Vec<BigInt>> =
            j_set.iter().map(|&j| disc.class_of(disc.dual_basis.row(j))).collect::<Result<_>>()?;
        let order = disc.order().to_usize().unwrap_or(usize::MAX);
        let mut distinct = j_classes.clone();
        distinct.sort();
        distinct.dedup();
        let bijective = j_set.len() + 1 == order
            && distinct.len() == j_classes.len()
            && j_classes.iter().all(|c| c.iter().any(|x| !x.is_zero()));
        check(bijective, "J -> A \\ {0} bijective", format!("|J| = {}, |A| = {order}", j_set.len()))?;

        Ok(RootComponent {
            ade,
            lattice,
            m,
            highest_root,
            coxeter_number: h,
            coxeter_modes: modes,
            rho,
            disc,
            j_set,
            j_classes,
            root_count,
        })
    }
}

/// `m` from the kernel of the extended Gram: returns `(m(theta), m on the simple roots)`.
fn m_function(ade: AdeType) -> Result<(u64, Vec<u64>)> {
    let n = ade.rank();
    let kernel = left_kernel(&extended_gram(ade));
    if kernel.rows() != 1 {
        return Err(LatticeError::consistency("roots", "kernel rank 1", format!("{ade}: rank {}", kernel.rows())));
    }
    let mut k: Vec<BigInt> = kernel.row(0).to_vec();
    if k[n].is_negative() {
        k.iter_mut().for_each(|x| *x = -&*x);
    }
    if !k.iter().all(|x| x.is_positive()) {
        return Err(LatticeError::consistency("roots", "m positive", format!("{ade}: {k:?}")));
    }
    let vals: Vec<u64> = k.iter().map(|x| x.to_u64().unwrap()).collect();
    Ok((vals[n], vals[..n].to_vec()))
}

fn mode_root_count(count: usize, n: usize, ade: AdeType) -> Result<u64> {
    if count % n != 0 {
        return Err(LatticeError::consistency("roots", "root count divisible by rank", format!("{ade}: {count}")));
    }
    Ok((count / n) as u64)
}

/// Positive integer root of `h (h + 1) = -12 <rho, rho> / n`.
fn mode_weyl_norm(norm: &BigRational, n: usize, ade: AdeType) -> Result<u64> {
    let bad = || LatticeError::consistency("roots", "Weyl norm has integral h", format!("{ade}: {norm}"));
    let p = -norm * BigRational::from_integer(BigInt::from(12)) / BigRational::from_integer(BigInt::from(n));
    if !p.is_integer() {
        return Err(bad());
    }
    let disc: BigInt = BigInt::one() + p.to_integer() * 4;
    let s = disc.sqrt();
    if &s * &s != disc {
        return Err(bad());
    }
    let h: BigInt = (s - 1) / 2;
    h.to_u64().ok_or_else(bad)
}

fn mode_highest_root(mu_rho: &BigRational, ade: AdeType) -> Result<u64> {
    let h = mu_rho + BigRational::one();
    if !h.is_integer() {
        return Err(LatticeError::consistency("roots", "<mu, rho> integral", format!("{ade}: {mu_rho}")));
    }
    h.to_integer().to_u64().ok_or_else(|| LatticeError::consistency("roots", "h positive", ade.to_string()))
}

/// Matrix of the reflection in simple root `r` acting on row coordinate vectors:
/// `x -> x + <x, r> r`.
fn reflection(gram: &IntMatrix, r: usize) -> Vec<Vec<i64>> {
    let n = gram.rows();
    let mut s = vec![vec![0i64; n]; n];
    for (i, row) in s.iter_mut().enumerate() {
        row[i] = 1;
        row[r] += gram[(i, r)].to_i64().unwrap();
    }
    s
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mode_coxeter_element(gram: &IntMatrix, ade: AdeType) -> Result<u64> {
    let n = gram.rows();
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let c = (0..n).fold(id.clone(), |acc, r| mul(&acc, &reflection(gram, r)));
    let mut p = c.clone();
    for k in 1..=4 * n as u64 + 8 {
        if p == id {
            return Ok(k);
        }
        p = mul(&p, &c);
    }
    Err(LatticeError::consistency("roots", "Coxeter element has finite order", ade.to_string()))
}

/// Shared, lazily built component for a type.
pub fn component(ade: AdeType) -> Result<Arc<RootComponent>> {
    static CACHE: OnceLock<Mutex<HashMap<AdeType, Arc<RootComponent>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&ade) {
        return Ok(c.clone());
    }
    let built = Arc::new(RootComponent::build(ade)?);
    Ok(cache.lock().unwrap().entry(ade).or_insert(built).clone())
}

/// Coxeter number of a type by the requested characterization.
pub fn coxeter_number(ade: AdeType, mode: CoxeterMode) -> Result<u64> {
    Ok(component(ade)?.coxeter_number_by(mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rat};
    use crate::roots::ade::{identify_ade_decomposition, Family};

    fn c(s: &str) -> Arc<RootComponent> {
        component(s.parse().unwrap()).unwrap()
    }

    fn all_niemeier_types() -> Vec<AdeType> {
        let mut v = Vec::new();
        for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 15, 17, 24] {
            v.push(AdeType::new(Family::A, n).unwrap());
        }
        for n in [4, 5, 6, 7, 8, 9, 10, 12, 16, 24] {
            v.push(AdeType::new(Family::D, n).unwrap());
        }
        for n in [6, 7, 8] {
            v.push(AdeType::new(Family::E, n).unwrap());
        }
        v
    }

    #[test]
    fn small_examples() {
        let a1 = c("A1");
        assert_eq!(a1.coxeter_number, 2);
        assert_eq!(a1.rho, vec![rat(-1, 2)]);
        assert_eq!(a1.rho_norm(), rat(-1, 2));
        assert_eq!(a1.canonical_rep(&[int(1)]).unwrap(), vec![rat(-1, 2)]);
        assert_eq!(a1.canonical_rep(&[int(0)]).unwrap(), vec![rat(0, 1)]);

        let a2 = c("A2");
        assert_eq!(a2.coxeter_number, 3);
        assert_eq!(a2.rho, vec![rat(-1, 1), rat(-1, 1)]);
        assert_eq!(a2.rho_norm(), rat(-2, 1));
        let reps: Vec<_> = a2.disc.elements().iter().skip(1).map(|a| a2.canonical_rep(a).unwrap()).collect();
        let mut expected = vec![a2.dual(0), a2.dual(1)];
        let mut got = reps.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert!(a2.canonical_rep(&[int(1), int(0)]).is_err());
    }

    #[test]
    fn m_tables() {
        assert_eq!(c("A5").m, vec![1; 5]);
        assert_eq!(c("D4").m, vec![1, 2, 1, 1]);
        let e8 = c("E8");
        assert_eq!(e8.m.iter().sum::<u64>() + 1, 30);
        assert_eq!(e8.rho_norm(), rat(-620, 1));
        for mode in CoxeterMode::ALL {
            assert_eq!(e8.coxeter_number_by(mode), 30);
        }
    }

    #[test]
    fn coxeter_numbers_of_all_types() {
        for t in all_niemeier_types() {
            let comp = component(t).unwrap();
            let n = t.rank() as u64;
            let expected = match t.family() {
                Family::A => n + 1,
                Family::D => 2 * n - 2,
                Family::E => [12, 18, 30][n as usize - 6],
            };
            assert_eq!(comp.coxeter_number, expected, "{t}");
            assert_eq!(comp.root_count as u64, n * expected);
            let h = BigInt::from(expected);
            let nn = BigInt::from(n);
            assert_eq!(comp.rho_norm(), -BigRational::new(nn * &h * (&h + 1), BigInt::from(12)));
            assert_eq!(comp.j_set.len() + 1, t.discriminant_order());
        }
    }

    #[test]
    fn highest_root_has_height_h_minus_one() {
        // oracle: the maximum of the coordinate sum over all positive roots is h - 1,
        // attained exactly by mu
        for s in ["A3", "D5", "E6", "E7", "E8"] {
            let comp = c(s);
            let roots = short_vectors(&comp.lattice, 2).unwrap();
            let best = roots.iter().max_by_key(|r| r.iter().sum::<BigInt>()).unwrap();
            assert_eq!(best, &comp.highest_root, "{s}");
            assert_eq!(best.iter().sum::<BigInt>(), BigInt::from(comp.coxeter_number - 1));
        }
    }

    #[test]
    fn removing_m1_nodes_restores_type() {
        for t in all_niemeier_types() {
            let comp = component(t).unwrap();
            let ext = extended_gram(t);
            let n = t.rank();
            let mut ms = comp.m.clone();
            ms.push(1);
            for drop in (0..=n).filter(|&i| ms[i] == 1) {
                let keep: Vec<usize> = (0..=n).filter(|&i| i != drop).collect();
                let mut g = IntMatrix::zeros(n, n);
                for (a, &i) in keep.iter().enumerate() {
                    for (b, &j) in keep.iter().enumerate() {
                        g[(a, b)] = ext[(i, j)].clone();
                    }
                }
                let found = identify_ade_decomposition(&g).unwrap();
                assert_eq!(found.len(), 1);
                assert_eq!(found[0].ade, t);
            }
        }
    }

    #[test]
    fn reflections_act_trivially_on_discriminant() {
        for s in ["A4", "D6", "E6", "E7"] {
            let comp = c(s);
            let g = comp.gram().to_rat();
            for x in &comp.disc.generators {
                for r in 0..comp.rank() {
                    // s_r(x) - x = <x, r> r
                    let coeff = g.left_mul(x)[r].clone();
                    assert!(coeff.is_integer());
                    let mut y = x.clone();
                    y[r] += coeff;
                    assert_eq!(comp.class_of(&y).unwrap(), comp.class_of(x).unwrap());
                }
            }
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("d".parse::<CoxeterMode>().unwrap(), CoxeterMode::CoxeterElement);
        assert!("e".parse::<CoxeterMode>().is_err());
        assert_eq!(coxeter_number("A1".parse().unwrap(), CoxeterMode::WeylNorm).unwrap(), 2);
    }
}
