//! Checks on a candidate deep hole `c` of a Leech lattice `Lambda`.
//!
//! With `f(c) = h (-<c,c>/2, 1, c)` in `U + Lambda` and
//! `r_lambda = (-1 - <lambda,lambda>/2, 1, lambda)`, one has
//! `<f(c), r_lambda> = h (d^2/2 - 1)` where `d^2 = |q(lambda - c)|`. So the
//! slice `Xi_nu = {r_lambda : <f(c), r_lambda> = nu}` is the set of lattice
//! points at squared distance `2 (1 + nu/h)` from `c`.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::encoding::{decode_int_matrix, decode_rat_vector, encode_int_matrix, encode_rat_vector};
use crate::enumerate::{Acceptance, Enumerator};
use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeDesc, Signature};
use crate::leech::certify_leech;
use crate::matrix::{content, fmt_rat, rat_from_int, IntMatrix, IntVector, RatVector};
use crate::normal_form::left_kernel;
use crate::report::{record, Check};
use crate::roots::{component, format_label, identify_ade_decomposition, AdeType};

use super::ln::HypVector;

pub const DEEP_HOLE_FORMAT: &str = "deep-hole";
pub const DEEP_HOLE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeepHoleFile {
    pub format: String,
    pub version: u32,
    /// Gram of the Leech lattice; either sign convention is accepted.
    pub gram: Vec<Vec<String>>,
    /// Center in the coordinates of `gram`.
    pub center: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "type")]
    pub declared_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter: Option<u64>,
}

/// A validated deep-hole input: negative-definite Leech Gram and a center.
#[derive(Clone, Debug)]
pub struct DeepHoleInput {
    pub lattice: LatticeDesc,
    pub center: RatVector,
    pub declared_type: Option<Vec<AdeType>>,
    pub coxeter: Option<u64>,
}

impl DeepHoleFile {
    pub fn new(gram: &IntMatrix, center: &[BigRational], declared_type: Option<String>, coxeter: Option<u64>) -> Self {
        DeepHoleFile {
            format: DEEP_HOLE_FORMAT.into(),
            version: DEEP_HOLE_VERSION,
            gram: encode_int_matrix(gram),
            center: encode_rat_vector(center),
            declared_type,
            coxeter,
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("deep-hole files serialize") + "\n"
    }

    /// Validates the file: format, a Leech Gram (certified) and a center of matching length.
    pub fn input(&self) -> Result<DeepHoleInput> {
        if self.format != DEEP_HOLE_FORMAT || self.version != DEEP_HOLE_VERSION {
            return Err(LatticeError::Format(format!("expected {DEEP_HOLE_FORMAT} version {DEEP_HOLE_VERSION}")));
        }
        let gram = decode_int_matrix(&self.gram)?;
        let mut lattice = LatticeDesc::new(gram)?;
        if lattice.signature() == Signature::PositiveDefinite {
            lattice = lattice.negated();
        }
        let cert = certify_leech(&lattice, false)?;
        if !cert.is_leech() {
            return Err(LatticeError::Format(format!("Gram is not a Leech lattice: failed {:?}", cert.failures())));
        }
        let center = decode_rat_vector(&self.center)?;
        if center.len() != lattice.rank() {
            return Err(LatticeError::Dimension(format!("center has {} coordinates", center.len())));
        }
        let declared_type = self.declared_type.as_deref().map(crate::roots::parse_label).transpose()?;
        Ok(DeepHoleInput { lattice, center, declared_type, coxeter: self.coxeter })
    }
}

/// One connected component of `Xi_0`.
#[derive(Clone, Debug, Serialize)]
pub struct XiComponent {
    /// Extended type, named by its ordinary type.
    pub ade: AdeType,
    /// Indices into the sorted `Xi_0` list.
    pub nodes: Vec<usize>,
    /// Kernel generator `m` on `nodes`.
    pub m: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeepHoleReport {
    /// Smallest `|q(lambda - c)|` over the lattice (`None` if above 2).
    pub distance_squared: Option<String>,
    pub is_deep_hole: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi0_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi1_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi0_type: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub xi0_components: Vec<XiComponent>,
    pub checks: Vec<Check>,
}

impl DeepHoleReport {
    pub fn passed(&self) -> bool {
        self.is_deep_hole && self.checks.iter().all(|c| c.passed)
    }
}

const MODULE: &str = "hyperbolic";

fn r_lambda(l: &LatticeDesc, lambda: IntVector) -> HypVector {
    let norm = l.pair(&lambda, &lambda);
    HypVector::new(BigInt::from(-1) - norm / 2, 1, lambda)
}

/// Splits a configuration into connected components (non-zero pairing = edge).
fn components_of(gram: &IntMatrix) -> Vec<Vec<usize>> {
    let n = gram.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && !gram[(i, j)].is_zero() {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

fn sub_gram(gram: &IntMatrix, nodes: &[usize]) -> IntMatrix {
    let mut g = IntMatrix::zeros(nodes.len(), nodes.len());
    for (a, &i) in nodes.iter().enumerate() {
        for (b, &j) in nodes.iter().enumerate() {
            g[(a, b)] = gram[(i, j)].clone();
        }
    }
    g
}

/// Identifies an extended ADE configuration: the kernel generator `m` of its
/// Gram and the ordinary type left after deleting a node with `m = 1`.
fn identify_extended(gram: &IntMatrix) -> Result<(AdeType, Vec<u64>)> {
    let k = left_kernel(gram);
    let bad = |d: String| LatticeError::NotAde(format!("not an extended ADE configuration: {d}"));
    if k.rows() != 1 {
        return Err(bad(format!("kernel rank {}", k.rows())));
    }
    let mut m: Vec<BigInt> = k.row(0).to_vec();
    if m[0].is_negative() {
        m.iter_mut().for_each(|x| *x = -&*x);
    }
    if !m.iter().all(Signed::is_positive) {
        return Err(bad("kernel vector not positive".into()));
    }
    let m: Vec<u64> = m.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect();
    let drop = m.iter().position(|&x| x == 1).ok_or_else(|| bad("no node with m = 1".into()))?;
    let keep: Vec<usize> = (0..gram.rows()).filter(|&i| i != drop).collect();
    let found = identify_ade_decomposition(&sub_gram(gram, &keep))?;
    if found.len() != 1 {
        return Err(bad("deleting a node leaves a disconnected diagram".into()));
    }
    Ok((found[0].ade, m))
}

/// Runs every check. A center that is not a deep hole yields a report with
/// `is_deep_hole = false` rather than an error.
pub fn deep_hole_checks(input: &DeepHoleInput) -> Result<DeepHoleReport> {
    let l = &input.lattice;
    let c = &input.center;
    let en = Enumerator::new(l)?;
    let mut checks = Vec::new();
    let two = BigRational::from_integer(BigInt::from(2));

    // (i) distance to the lattice
    let near = en.near(c, &Acceptance::AtMost(two.clone()))?;
    let dist = |x: &IntVector| -> BigRational {
        let d: RatVector = x.iter().zip(c).map(|(a, b)| rat_from_int(a) - b).collect();
        l.gram().to_rat().pair(&d, &d).abs()
    };
    let dmin: Option<BigRational> = near.iter().map(&dist).min();
    let is_deep = dmin.as_ref() == Some(&two);
    record(
        &mut checks,
        MODULE,
        "d(c, Lambda)^2 = 2",
        is_deep,
        dmin.as_ref().map_or("greater than 2".to_string(), fmt_rat),
    );
    let mut report = DeepHoleReport {
        distance_squared: dmin.as_ref().map(fmt_rat),
        is_deep_hole: is_deep,
        h: None,
        xi0_count: None,
        xi1_count: None,
        xi0_type: None,
        xi0_components: Vec::new(),
        checks: Vec::new(),
    };
    if !is_deep {
        report.checks = checks;
        return Ok(report);
    }

    // Xi_0 and its components
    let xi0: Vec<HypVector> = near.into_iter().map(|x| r_lambda(l, x)).collect();
    let g0 = {
        let k = xi0.len();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = xi0[i].pair(&xi0[j], l.gram());
            }
        }
        g
    };
    let mut comps = Vec::new();
    for nodes in components_of(&g0) {
        let (ade, m) = identify_extended(&sub_gram(&g0, &nodes))?;
        comps.push(XiComponent { ade, nodes, m });
    }
    comps.sort_by(|a, b| b.ade.cmp(&a.ade).then(a.nodes.cmp(&b.nodes)));
    let types: Vec<AdeType> = comps.iter().map(|c| c.ade).collect();
    report.xi0_type = Some(format_label(&types));
    report.xi0_count = Some(xi0.len());

    // Coxeter number from the components
    let hs: Vec<u64> = types.iter().map(|&t| component(t).map(|c| c.coxeter_number)).collect::<Result<_>>()?;
    let h = hs[0];
    record(&mut checks, MODULE, "equal Coxeter numbers in Xi_0", hs.iter().all(|&x| x == h), format!("{hs:?}"));
    if let Some(declared) = input.coxeter {
        record(&mut checks, MODULE, "declared Coxeter number", declared == h, format!("declared {declared}, found {h}"));
    }
    if let Some(declared) = &input.declared_type {
        let mut found = types.clone();
        found.sort_by(|a, b| b.cmp(a));
        record(
            &mut checks,
            MODULE,
            "declared type",
            *declared == found,
            format!("declared {}, found {}", format_label(declared), format_label(&found)),
        );
    }
    report.h = Some(h);
    let hb = BigInt::from(h);
    let hr = rat_from_int(&hb);

    // (ii) h c primitive integral, h <c, c>/2 integral
    let hc: Vec<BigRational> = c.iter().map(|x| x * &hr).collect();
    let hc_int: Option<IntVector> = hc.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
    let primitive = hc_int.as_ref().is_some_and(|v| content(v).is_one());
    record(&mut checks, MODULE, "h c primitive in Lambda", primitive, "");
    let cc = l.gram().to_rat().pair(c, c);
    let half = &hr * &cc / BigRational::from_integer(BigInt::from(2));
    record(&mut checks, MODULE, "h <c, c>/2 integral", half.is_integer(), fmt_rat(&half));

    // Xi_1
    let target = two.clone() * (BigRational::one() + BigRational::new(BigInt::one(), hb.clone()));
    let xi1: Vec<HypVector> = en.near(c, &Acceptance::Exactly(target))?.into_iter().map(|x| r_lambda(l, x)).collect();
    report.xi1_count = Some(xi1.len());

    // f(c) and the slices
    if let (Some(hc_int), true) = (hc_int, half.is_integer()) {
        let f = HypVector::new(-half.to_integer(), hb.clone(), hc_int);
        let slice_ok = |set: &[HypVector], nu: i64| set.iter().all(|r| r.pair(&f, l.gram()) == BigInt::from(nu));
        record(&mut checks, MODULE, "<f(c), r> = 0 on Xi_0", slice_ok(&xi0, 0), "");
        record(&mut checks, MODULE, "<f(c), r> = 1 on Xi_1", slice_ok(&xi1, 1), "");
        let roots_ok = xi0.iter().chain(&xi1).all(|r| {
            r.pair(r, l.gram()) == BigInt::from(-2) && r.b.is_one()
        });
        record(&mut checks, MODULE, "Xi elements are Leech roots", roots_ok, "");

        // sum of m(r) r over each component equals f(c)
        let msum_ok = comps.iter().all(|comp| {
            let mut acc = HypVector::new(0, 0, vec![BigInt::zero(); l.rank()]);
            for (&i, &m) in comp.nodes.iter().zip(&comp.m) {
                acc = acc.add(&xi0[i].scale(&BigInt::from(m)));
            }
            acc == f
        });
        record(&mut checks, MODULE, "sum m(r) r = f(c) per component", msum_ok, "");
    }

    // each s in Xi_1 meets exactly one node per component, with pairing 1 at an m = 1 node
    let mut theta_ok = true;
    'outer: for s in &xi1 {
        for comp in &comps {
            let mut hits = 0;
            for (&i, &m) in comp.nodes.iter().zip(&comp.m) {
                let p = s.pair(&xi0[i], l.gram());
                if p.is_negative() || p > BigInt::one() {
                    theta_ok = false;
                    break 'outer;
                }
                if p.is_one() {
                    hits += 1;
                    if m != 1 {
                        theta_ok = false;
                        break 'outer;
                    }
                }
            }
            if hits != 1 {
                theta_ok = false;
                break 'outer;
            }
        }
    }
    record(&mut checks, MODULE, "unique m = 1 node per component for each s in Xi_1", theta_ok, "");
    if !xi1.is_empty() {
        let n_code = comps.iter().try_fold(BigInt::one(), |acc, comp| {
            component(comp.ade).map(|rc| acc * rc.disc.order())
        })?;
        // |Xi_1|^2 equals the discriminant of the root lattice of Xi_0's type
        let sq = BigInt::from(xi1.len()).pow(2);
        record(&mut checks, MODULE, "|Xi_1|^2 = det of the Xi_0 root type", sq == n_code, format!("{sq} vs {n_code}"));
    }
    report.xi0_components = comps;
    report.checks = checks;
    Ok(report)
}
