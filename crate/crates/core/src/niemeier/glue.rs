//! Bundled glue data for the 23 Niemeier lattices with roots.
//!
//! File layout (`format = "niemeier-glue"`, `version = 1`): a list of lattices,
//! each with its component types (sorted by family then rank, descending) and
//! glue generators as rational strings in the concatenated simple-root
//! coordinates of the components.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{LatticeError, Result};
use crate::matrix::{parse_rat, RatVector};
use crate::roots::{format_label, parse_label, AdeType};

pub const GLUE_FORMAT: &str = "niemeier-glue";
pub const GLUE_VERSION: u32 = 1;

static BUNDLED_JSON: &str = include_str!("../../data/niemeier_glue.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueData {
    pub label: String,
    pub components: Vec<AdeType>,
    pub glue: Vec<RatVector>,
}

impl GlueData {
    pub fn rank(&self) -> usize {
        self.components.iter().map(AdeType::rank).sum()
    }
}

#[derive(Deserialize)]
struct FileDoc {
    format: String,
    version: u32,
    lattices: Vec<FileEntry>,
}

#[derive(Deserialize)]
struct FileEntry {
    components: Vec<AdeType>,
    glue: Vec<Vec<String>>,
}

/// Parses a glue document. Checks the version, component ordering, vector
/// lengths and that labels are unique. Lattice invariants are verified at
/// assembly time.
pub fn parse_glue_data(json: &str) -> Result<Vec<GlueData>> {
    let doc: FileDoc = serde_json::from_str(json)?;
    if doc.format != GLUE_FORMAT {
        return Err(LatticeError::Format(format!("expected format {GLUE_FORMAT:?}, found {:?}", doc.format)));
    }
    if doc.version != GLUE_VERSION {
        return Err(LatticeError::Format(format!("unsupported glue data version {}", doc.version)));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(doc.lattices.len());
    for entry in doc.lattices {
        let label = format_label(&entry.components);
        let mut sorted = entry.components.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        if sorted != entry.components {
            return Err(LatticeError::GlueData {
                label,
                check: "component order",
                detail: "components must be sorted by (family, rank) descending".into(),
            });
        }
        if !seen.insert(label.clone()) {
            return Err(LatticeError::GlueData { label, check: "unique label", detail: "duplicate entry".into() });
        }
        let rank: usize = entry.components.iter().map(AdeType::rank).sum();
        let glue = entry
            .glue
            .iter()
            .map(|row| {
                if row.len() != rank {
                    return Err(LatticeError::GlueData {
                        label: label.clone(),
                        check: "glue vector length",
                        detail: format!("{} coordinates, rank {rank}", row.len()),
                    });
                }
                row.iter().map(|s| parse_rat(s)).collect::<Result<RatVector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(GlueData { label, components: entry.components, glue });
    }
    Ok(out)
}

/// The bundled glue data, parsed once.
pub fn bundled() -> &'static [GlueData] {
    static DATA: OnceLock<Vec<GlueData>> = OnceLock::new();
    DATA.get_or_init(|| parse_glue_data(BUNDLED_JSON).expect("bundled glue data parses"))
}

pub fn bundled_labels() -> Vec<String> {
    bundled().iter().map(|g| g.label.clone()).collect()
}

/// Looks up bundled glue data by label; any spelling of the same type
/// multiset is accepted (`D16E8`, `E8 D16`, `e8d16`).
pub fn glue_data(label: &str) -> Result<&'static GlueData> {
    let unknown = || LatticeError::UnknownLabel { label: label.to_string(), valid: bundled_labels().join(", ") };
    let types = parse_label(label).map_err(|_| unknown())?;
    bundled().iter().find(|g| g.components == types).ok_or_else(unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_has_23_distinct_rank_24_entries() {
        let data = bundled();
        assert_eq!(data.len(), 23);
        assert!(data.iter().all(|g| g.rank() == 24));
        let labels: HashSet<_> = data.iter().map(|g| g.label.clone()).collect();
        assert_eq!(labels.len(), 23);
    }

    #[test]
    fn lookup_accepts_any_spelling() {
        assert_eq!(glue_data("E8 D16").unwrap().label, "D16E8");
        assert_eq!(glue_data("a1^24").unwrap().components.len(), 24);
        let err = glue_data("BADLABEL").unwrap_err().to_string();
        assert!(err.contains("A24"), "{err}");
        assert!(glue_data("A23").is_err());
    }

    #[test]
    fn rejects_bad_documents() {
        let v2 = r#"{"format":"niemeier-glue","version":2,"lattices":[]}"#;
        assert!(matches!(parse_glue_data(v2), Err(LatticeError::Format(_))));
        let dup = r#"{"format":"niemeier-glue","version":1,"lattices":[
            {"components":["E8","E8","E8"],"glue":[]},
            {"components":["E8","E8","E8"],"glue":[]}]}"#;
        assert!(matches!(parse_glue_data(dup), Err(LatticeError::GlueData { check: "unique label", .. })));
        let order = r#"{"format":"niemeier-glue","version":1,"lattices":[
            {"components":["D16","E8"],"glue":[]}]}"#;
        assert!(parse_glue_data(order).is_err());
        let short = r#"{"format":"niemeier-glue","version":1,"lattices":[
            {"components":["D24"],"glue":[["1/2"]]}]}"#;
        assert!(parse_glue_data(short).is_err());
    }
}
