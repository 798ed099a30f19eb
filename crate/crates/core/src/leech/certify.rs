//! Certification by the characterization: even, unimodular, rank 24,
//! negative-definite and without vectors of norm -2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::enumerate::Enumerator;
use crate::error::Result;
use crate::lattice::{LatticeDesc, Signature};
use crate::lll::lll_reduce;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rank: usize,
    pub signature: Signature,
    pub even: bool,
    pub determinant: String,
    pub unimodular: bool,
    /// Number of vectors with `|q| = 2`.
    pub root_count: u64,
    pub rootless: bool,
    /// Smallest non-zero `|q|`.
    pub min_norm: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm4_count: Option<u64>,
}

impl Certificate {
    /// All required checks; the optional norm-4 count must be 196560 when present.
    pub fn is_leech(&self) -> bool {
        self.rank == 24
            && self.signature == Signature::NegativeDefinite
            && self.even
            && self.unimodular
            && self.rootless
            && self.norm4_count.is_none_or(|c| c == LEECH_KISSING_NUMBER)
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.rank != 24 {
            out.push("rank");
        }
        if self.signature != Signature::NegativeDefinite {
            out.push("negative-definite");
        }
        if !self.even {
            out.push("even");
        }
        if !self.unimodular {
            out.push("unimodular");
        }
        if !self.rootless {
            out.push("rootless");
        }
        if self.norm4_count.is_some_and(|c| c != LEECH_KISSING_NUMBER) {
            out.push("norm-4 count");
        }
        out
    }
}

/// Number of minimal vectors of the Leech lattice.
pub const LEECH_KISSING_NUMBER: u64 = 196_560;

/// Certifies a definite lattice. Positive-definite input is negated first, so
/// the verdict always refers to the negative-definite convention.
pub fn certify_leech(lattice: &LatticeDesc, deep: bool) -> Result<Certificate> {
    let l = match lattice.signature() {
        Signature::PositiveDefinite => lattice.negated(),
        _ => lattice.clone(),
    };
    let det = l.determinant();
    let mut cert = Certificate {
        rank: l.rank(),
        signature: l.signature(),
        even: l.is_even(),
        determinant: det.to_string(),
        unimodular: det.abs() == BigInt::from(1),
        root_count: 0,
        rootless: false,
        min_norm: 0,
        norm4_count: None,
    };
    if !l.is_definite() {
        return Ok(cert);
    }
    let red = lll_reduce(&l)?;
    let en = Enumerator::new(&red.lattice)?;
    let two = BigRational::from_integer(BigInt::from(2));
    cert.root_count = en.short_vectors(&two)?.iter().filter(|x| red.lattice.pair(x, x).abs() == BigInt::from(2)).count() as u64;
    cert.rootless = cert.root_count == 0;
    // the reduced diagonal bounds the minimum; look for anything shorter
    let min_diag = (0..red.lattice.rank()).map(|i| red.lattice.gram()[(i, i)].abs()).min().unwrap_or_default();
    let below: BigInt = &min_diag - 1;
    let mut min = min_diag.clone();
    if below.is_positive() {
        for x in en.short_vectors(&BigRational::from_integer(below))? {
            min = min.min(red.lattice.pair(&x, &x).abs());
        }
    }
    cert.min_norm = min.to_u64().unwrap_or(u64::MAX);
    if deep {
        cert.norm4_count = Some(en.count_with_norm(4)?);
    }
    Ok(cert)
}
