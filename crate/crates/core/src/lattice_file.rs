//! Lattice files: a Gram matrix plus provenance, as JSON or GAP-style text.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::encoding::{
    decode_int_matrix, encode_int_matrix, encode_int_vector, encode_rat_vector, gap_matrix, gap_record, gap_string,
};
use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeDesc, Signature};
use crate::leech::{ConstructedLattice, CorollaryLattice};
use crate::niemeier::NiemeierLattice;
use crate::roots::AdeType;

pub const LATTICE_FORMAT: &str = "lattice";
pub const LATTICE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Gap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// A Niemeier lattice with roots, in its Hermite basis.
    Niemeier {
        label: String,
        components: Vec<AdeType>,
        h: u64,
        /// Weyl vector in the lattice basis.
        rho: Vec<String>,
        /// Basis rows in concatenated simple-root coordinates.
        basis: Vec<Vec<String>>,
    },
    /// The construction from one codeword of a Niemeier lattice.
    Construction {
        niemeier: String,
        codeword: usize,
        classes: Vec<Vec<String>>,
        v_gamma: Vec<String>,
        n_gamma: String,
        a_gamma: String,
        h: u64,
        index: String,
        /// Basis rows in the Niemeier lattice's basis.
        basis: Vec<Vec<String>>,
    },
    /// The codeword-zero congruence sublattice.
    Corollary { niemeier: String, h: u64, modulus: String, basis: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub format: String,
    pub version: u32,
    pub signature: Signature,
    pub gram: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl LatticeFile {
    pub fn new(lattice: &LatticeDesc, provenance: Option<Provenance>) -> Self {
        LatticeFile {
            format: LATTICE_FORMAT.into(),
            version: LATTICE_VERSION,
            signature: lattice.signature(),
            gram: encode_int_matrix(lattice.gram()),
            provenance,
        }
    }

    pub fn from_niemeier(n: &NiemeierLattice) -> Self {
        let basis = n.basis();
        let prov = Provenance::Niemeier {
            label: n.label.clone(),
            components: n.types(),
            h: n.h,
            rho: encode_int_vector(&n.rho),
            basis: (0..basis.rows()).map(|i| encode_rat_vector(basis.row(i))).collect(),
        };
        LatticeFile::new(&n.lattice, Some(prov))
    }

    /// Export of a construction; `positive` negates the form.
    pub fn from_construction(c: &ConstructedLattice, positive: bool) -> Self {
        let prov = Provenance::Construction {
            niemeier: c.label.clone(),
            codeword: c.codeword,
            classes: c.classes.iter().map(|a| encode_int_vector(a)).collect(),
            v_gamma: encode_int_vector(&c.v),
            n_gamma: c.forms.n_gamma.to_string(),
            a_gamma: c.forms.a_gamma.to_string(),
            h: u64::try_from(&c.forms.h).unwrap_or(u64::MAX),
            index: c.index.to_string(),
            basis: encode_int_matrix(&c.basis),
        };
        let l = if positive { c.positive() } else { c.lattice.clone() };
        LatticeFile::new(&l, Some(prov))
    }

    pub fn from_corollary(c: &CorollaryLattice, h: u64) -> Result<Self> {
        let prov = Provenance::Corollary {
            niemeier: c.label.clone(),
            h,
            modulus: c.modulus.to_string(),
            basis: encode_int_matrix(&c.basis),
        };
        Ok(LatticeFile::new(&LatticeDesc::new(c.gram.clone())?, Some(prov)))
    }

    /// Re-validates the Gram and its declared signature.
    pub fn lattice(&self) -> Result<LatticeDesc> {
        if self.format != LATTICE_FORMAT {
            return Err(LatticeError::Format(format!("expected format {LATTICE_FORMAT:?}, found {:?}", self.format)));
        }
        if self.version != LATTICE_VERSION {
            return Err(LatticeError::Format(format!("unsupported lattice file version {}", self.version)));
        }
        let gram = decode_int_matrix(&self.gram)?;
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(LatticeError::Format("Gram matrix must be square and symmetric".into()));
        }
        let l = LatticeDesc::new(gram)?;
        if l.signature() != self.signature {
            return Err(LatticeError::Format(format!(
                "declared signature {:?} does not match the Gram ({:?})",
                self.signature,
                l.signature()
            )));
        }
        Ok(l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice files serialize") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_gap(&self) -> Result<String> {
        let gram = decode_int_matrix(&self.gram)?;
        let sig = match self.signature {
            Signature::PositiveDefinite => "positive-definite",
            Signature::NegativeDefinite => "negative-definite",
            Signature::Hyperbolic => "hyperbolic",
        };
        let mut fields = vec![("signature", gap_string(sig)), ("gram", gap_matrix(&gram))];
        let comment = match &self.provenance {
            None => "lattice".to_string(),
            Some(Provenance::Niemeier { label, h, rho, .. }) => {
                fields.push(("label", gap_string(label)));
                fields.push(("coxeter", h.to_string()));
                fields.push(("rho", format!("[ {} ]", rho.join(", "))));
                format!("Niemeier lattice {label}")
            }
            Some(Provenance::Construction { niemeier, codeword, n_gamma, a_gamma, h, index, basis, v_gamma, .. }) => {
                fields.push(("niemeier", gap_string(niemeier)));
                fields.push(("codeword", codeword.to_string()));
                fields.push(("coxeter", h.to_string()));
                fields.push(("v_gamma", format!("[ {} ]", v_gamma.join(", "))));
                fields.push(("n_gamma", n_gamma.clone()));
                fields.push(("a_gamma", a_gamma.clone()));
                fields.push(("index", index.clone()));
                fields.push(("basis", gap_matrix(&decode_int_matrix(basis)?)));
                format!("lattice from {niemeier}, codeword {codeword}")
            }
            Some(Provenance::Corollary { niemeier, h, modulus, basis }) => {
                fields.push(("niemeier", gap_string(niemeier)));
                fields.push(("coxeter", h.to_string()));
                fields.push(("modulus", modulus.clone()));
                fields.push(("basis", gap_matrix(&decode_int_matrix(basis)?)));
                format!("congruence sublattice of {niemeier}")
            }
        };
        Ok(gap_record(&comment, &fields))
    }

    pub fn render(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Json => Ok(self.to_json()),
            ExportFormat::Gap => self.to_gap(),
        }
    }
}
