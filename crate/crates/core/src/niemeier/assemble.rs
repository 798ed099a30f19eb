//! Assembly of a Niemeier lattice from its root components and glue.
//!
//! Two coordinate systems are used. "Theta coordinates" are the concatenated
//! simple-root coordinates of the components (the root lattice is the integer
//! span). "N coordinates" are with respect to the Hermite basis of the
//! overlattice. A row vector converts as `x_N = x_Theta * B^{-1}`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerate::Enumerator;
use crate::error::{LatticeError, Result};
use crate::lattice::LatticeDesc;
use crate::matrix::{rat_from_int, to_int_vec, to_rat_vec, IntMatrix, IntVector, RatMatrix, RatVector};
use crate::normal_form::row_module_basis;
use crate::roots::{component, extract_simple_system, format_label, AdeType, RootComponent};

use super::glue::{glue_data, GlueData};

/// Element of the glue code: one discriminant class per component.
pub type CodeElement = Vec<Vec<BigInt>>;

#[derive(Clone, Debug)]
pub struct Codeword {
    /// Position in the sorted code; `0` is the zero codeword.
    pub index: usize,
    pub classes: CodeElement,
    /// Canonical representative in Theta coordinates.
    pub v_theta: RatVector,
    /// Canonical representative in N coordinates.
    pub v: IntVector,
    /// `<v, v>`.
    pub norm: BigInt,
}

impl Codeword {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().flatten().all(Zero::is_zero)
    }
}

#[derive(Debug)]
pub struct NiemeierLattice {
    pub label: String,
    pub components: Vec<Arc<RootComponent>>,
    /// First Theta coordinate of each component.
    pub offsets: Vec<usize>,
    /// Gram of the root lattice in Theta coordinates.
    pub root_gram: IntMatrix,
    /// `N` in N coordinates, carrying its basis in Theta coordinates.
    pub lattice: LatticeDesc,
    basis_inv: RatMatrix,
    pub h: u64,
    /// Weyl vector in N coordinates.
    pub rho: IntVector,
    pub rho_theta: RatVector,
    /// All vectors of norm `-2`, in N coordinates, sorted.
    pub roots: Vec<IntVector>,
    /// Codewords sorted by their class tuples.
    pub code: Vec<Codeword>,
}

impl NiemeierLattice {
    pub fn rank(&self) -> usize {
        self.root_gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    /// Rows are the N basis in Theta coordinates.
    pub fn basis(&self) -> &RatMatrix {
        self.lattice.basis().expect("assembled lattices carry their basis")
    }

    pub fn types(&self) -> Vec<AdeType> {
        self.components.iter().map(|c| c.ade).collect()
    }

    pub fn code_order(&self) -> usize {
        self.code.len()
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.lattice.pair(x, y)
    }

    /// Theta coordinates to N coordinates; `None` unless the vector lies in `N`.
    pub fn to_n_coords(&self, x: &[BigRational]) -> Option<IntVector> {
        to_int_vec(&self.basis_inv.left_mul(x))
    }

    pub fn to_theta_coords(&self, x: &[BigInt]) -> RatVector {
        self.basis().left_mul(&to_rat_vec(x))
    }

    /// Simple roots of component `i` in N coordinates.
    pub fn simple_roots(&self, i: usize) -> Vec<IntVector> {
        (0..self.components[i].rank()).map(|j| self.unit_to_n(self.offsets[i] + j)).collect()
    }

    /// Every simple root, in Theta order, in N coordinates.
    pub fn all_simple_roots(&self) -> Vec<IntVector> {
        (0..self.rank()).map(|k| self.unit_to_n(k)).collect()
    }

    fn unit_to_n(&self, k: usize) -> IntVector {
        to_int_vec(self.basis_inv.row(k)).expect("root lattice inside N")
    }

    fn embed(&self, i: usize, local: &[BigRational]) -> RatVector {
        let mut x = vec![BigRational::zero(); self.rank()];
        x[self.offsets[i]..self.offsets[i] + local.len()].clone_from_slice(local);
        x
    }

    /// Highest root of component `i` in N coordinates.
    pub fn highest_root(&self, i: usize) -> IntVector {
        let mu = to_rat_vec(&self.components[i].highest_root);
        self.to_n_coords(&self.embed(i, &mu)).expect("roots lie in N")
    }

    /// Class of a Theta-coordinate vector of the dual of the root lattice.
    pub fn classes_of(&self, x: &[BigRational]) -> Result<CodeElement> {
        self.components
            .iter()
            .zip(&self.offsets)
            .map(|(c, &o)| c.class_of(&x[o..o + c.rank()]))
            .collect()
    }

    pub fn add_classes(&self, a: &CodeElement, b: &CodeElement) -> CodeElement {
        add_elements(&self.components, a, b)
    }

    pub fn codeword(&self, index: usize) -> Result<&Codeword> {
        self.code.get(index).ok_or_else(|| {
            LatticeError::NotInGroup(format!("codeword index {index} out of range (code has {} elements)", self.code.len()))
        })
    }

    pub fn codeword_by_classes(&self, classes: &CodeElement) -> Option<&Codeword> {
        self.code.iter().find(|c| &c.classes == classes)
    }

    /// Canonical representative `v` of a code element, in Theta coordinates
    /// (sum of the component canonical representatives).
    pub fn canonical_theta(&self, classes: &CodeElement) -> Result<RatVector> {
        let mut out = Vec::with_capacity(self.rank());
        for (c, alpha) in self.components.iter().zip(classes) {
            out.extend(c.canonical_rep(alpha)?);
        }
        Ok(out)
    }

    /// Canonical representative in N coordinates. Integrality is checked.
    pub fn canonical_representative(&self, classes: &CodeElement) -> Result<IntVector> {
        let v_theta = self.canonical_theta(classes)?;
        let v = self.to_n_coords(&v_theta).ok_or_else(|| {
            LatticeError::consistency("niemeier", "canonical representative in N", format!("{}: {classes:?}", self.label))
        })?;
        if &self.classes_of(&v_theta)? != classes {
            return Err(LatticeError::consistency("niemeier", "canonical representative class", self.label.clone()));
        }
        Ok(v)
    }

    /// `(h, rho)` with `rho` in N coordinates.
    pub fn weyl_data(&self) -> (u64, &IntVector) {
        (self.h, &self.rho)
    }

    /// Sorted list of all code elements.
    pub fn enumerate_codewords(&self) -> Vec<CodeElement> {
        self.code.iter().map(|c| c.classes.clone()).collect()
    }
}

fn add_elements(components: &[Arc<RootComponent>], a: &CodeElement, b: &CodeElement) -> CodeElement {
    components
        .iter()
        .zip(a.iter().zip(b))
        .map(|(c, (x, y))| {
            let s: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            c.disc.normalize(&s).expect("class tuples of matching length")
        })
        .collect()
}

/// Closure of the generators under addition in the product of discriminant groups.
fn generate_code(components: &[Arc<RootComponent>], gens: &[CodeElement]) -> Vec<CodeElement> {
    let zero: CodeElement = components.iter().map(|c| vec![BigInt::zero(); c.disc.invariant_factors.len()]).collect();
    let mut set: BTreeSet<CodeElement> = BTreeSet::new();
    set.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add_elements(components, &x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Assembles a bundled Niemeier lattice by label.
pub fn niemeier(label: &str) -> Result<NiemeierLattice> {
    assemble_niemeier(glue_data(label)?)
}

/// Builds `N` as the span of the root lattice and the glue vectors and checks
/// every invariant: evenness, unimodularity, root count `24h`, the root type,
/// integrality and norm of the Weyl vector, and `|code|^2 = det(root lattice)`.
pub fn assemble_niemeier(data: &GlueData) -> Result<NiemeierLattice> {
    let label = data.label.clone();
    let fail = |check: &'static str, detail: String| LatticeError::GlueData { label: label.clone(), check, detail };
    let components: Vec<Arc<RootComponent>> = data.components.iter().map(|&t| component(t)).collect::<Result<_>>()?;
    let mut offsets = Vec::with_capacity(components.len());
    let mut n = 0;
    for c in &components {
        offsets.push(n);
        n += c.rank();
    }
    if n != 24 {
        return Err(fail("rank", format!("total rank {n}")));
    }
    let root_gram = IntMatrix::block_diagonal(&components.iter().map(|c| c.gram()).collect::<Vec<_>>());

    let h = components[0].coxeter_number;
    if let Some(c) = components.iter().find(|c| c.coxeter_number != h) {
        return Err(fail("equal Coxeter numbers", format!("{} has h = {}, expected {h}", c.ade, c.coxeter_number)));
    }

    // glue classes (also checks that each glue vector lies in the dual of the root lattice)
    let class_of = |x: &[BigRational]| -> Result<CodeElement> {
        components.iter().zip(&offsets).map(|(c, &o)| c.class_of(&x[o..o + c.rank()])).collect()
    };
    let gens: Vec<CodeElement> = data
        .glue
        .iter()
        .map(|g| class_of(g).map_err(|e| fail("glue in dual lattice", e.to_string())))
        .collect::<Result<_>>()?;
    let code_elems = generate_code(&components, &gens);
    let root_det: BigInt = components.iter().map(|c| c.disc.order()).product();
    let order = BigInt::from(code_elems.len());
    if &order * &order != root_det {
        return Err(fail("code order", format!("|code| = {order}, det of roots = {root_det}")));
    }

    // Hermite basis over the common denominator
    let den = data.glue.iter().flatten().fold(BigInt::one(), |a, x| num_integer::lcm(a, x.denom().clone()));
    let mut gen_rows = IntMatrix::zeros(n + data.glue.len(), n);
    for i in 0..n {
        gen_rows[(i, i)] = den.clone();
    }
    let den_r = rat_from_int(&den);
    for (k, g) in data.glue.iter().enumerate() {
        for j in 0..n {
            gen_rows[(n + k, j)] = (&g[j] * &den_r).to_integer();
        }
    }
    let hnf = row_module_basis(&gen_rows);
    let basis = hnf.to_rat().map(|x| x / &den_r);
    let ambient = root_gram.to_rat();
    let gram_rat = &(&basis * &ambient) * &basis.transpose();
    let gram = gram_rat.to_int().ok_or_else(|| fail("integral", "overlattice Gram is not integral".into()))?;
    let lattice = LatticeDesc::new(gram)?.with_basis(basis.clone(), &ambient)?;
    if !lattice.is_even() {
        return Err(fail("even", "odd diagonal entry".into()));
    }
    if !lattice.is_unimodular() {
        return Err(fail("unimodular", format!("det = {}", lattice.determinant())));
    }
    let basis_inv = basis.inverse().expect("basis of full rank");

    let roots = Enumerator::new(&lattice)?.short_vectors(&BigRational::from_integer(2.into()))?;
    let expected_roots = 24 * h as usize;
    if roots.len() != expected_roots {
        return Err(fail("root count", format!("{} roots, expected 24h = {expected_roots}", roots.len())));
    }
    let simple = extract_simple_system(&roots, lattice.gram())?;
    let found: Vec<AdeType> = simple.components.iter().map(|c| c.ade).collect();
    if found != data.components {
        return Err(fail("root type", format!("roots have type {}", format_label(&found))));
    }

    let rho_theta: RatVector = components.iter().flat_map(|c| c.rho.iter().cloned()).collect();
    let rho = to_int_vec(&basis_inv.left_mul(&rho_theta))
        .ok_or_else(|| LatticeError::consistency("niemeier", "rho in N", label.clone()))?;
    let hb = BigInt::from(h);
    let rho_norm = lattice.pair(&rho, &rho);
    if rho_norm != -BigInt::from(2) * &hb * (&hb + 1) {
        return Err(LatticeError::consistency("niemeier", "<rho, rho> = -2h(h+1)", format!("{label}: {rho_norm}")));
    }

    let mut nl = NiemeierLattice {
        label: label.clone(),
        components,
        offsets,
        root_gram,
        lattice,
        basis_inv,
        h,
        rho,
        rho_theta,
        roots,
        code: Vec::new(),
    };
    let code: Vec<Codeword> = code_elems
        .into_par_iter()
        .enumerate()
        .map(|(index, classes)| {
            let v_theta = nl.canonical_theta(&classes)?;
            let v = nl.canonical_representative(&classes)?;
            let norm = nl.pair(&v, &v);
            Ok(Codeword { index, classes, v_theta, v, norm })
        })
        .collect::<Result<_>>()?;
    nl.code = code;
    Ok(nl)
}

/// Cache of assembled bundled lattices.
pub fn niemeier_cached(label: &str) -> Result<Arc<NiemeierLattice>> {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<NiemeierLattice>>>> = OnceLock::new();
    let data = glue_data(label)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(n) = cache.lock().unwrap().get(&data.label) {
        return Ok(n.clone());
    }
    let built = Arc::new(assemble_niemeier(data)?);
    Ok(cache.lock().unwrap().entry(data.label.clone()).or_insert(built).clone())
}

/// A deterministic sample of `count` codeword indices, evenly spaced and
/// starting with the zero codeword.
pub fn sample_codewords(n: &NiemeierLattice, count: usize) -> Vec<usize> {
    let total = n.code.len();
    if count >= total {
        return (0..total).collect();
    }
    let mut out: Vec<usize> = (0..count).map(|k| k * total / count).collect();
    out.dedup();
    out
}
