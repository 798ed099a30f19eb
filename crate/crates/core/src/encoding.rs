//! Text encodings of matrices and vectors: JSON arrays of decimal strings, and a
//! GAP-style record layout.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{LatticeError, Result};
use crate::matrix::{fmt_rat, parse_int, parse_rat, IntMatrix};

pub fn encode_int_vector(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn encode_rat_vector(v: &[BigRational]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn encode_int_matrix(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| encode_int_vector(m.row(i))).collect()
}

pub fn decode_int_vector(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter().map(|s| parse_int(s)).collect()
}

pub fn decode_rat_vector(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

/// Decodes a square or rectangular integer matrix; all rows must have equal length.
pub fn decode_int_matrix(rows: &[Vec<String>]) -> Result<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(LatticeError::Format("ragged matrix".into()));
    }
    let data = rows.iter().map(|r| decode_int_vector(r)).collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(data, cols)
}

fn gap_row(row: &[BigInt]) -> String {
    let items: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    format!("[ {} ]", items.join(", "))
}

/// A GAP-readable integer matrix literal.
pub fn gap_matrix(m: &IntMatrix) -> String {
    let mut out = String::from("[\n");
    for i in 0..m.rows() {
        let sep = if i + 1 < m.rows() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", gap_row(m.row(i)));
    }
    out.push_str("  ]");
    out
}

/// A GAP record `rec( key := value, ... );` from pre-rendered values.
pub fn gap_record(comment: &str, fields: &[(&str, String)]) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("rec(\n");
    for (k, (key, value)) in fields.iter().enumerate() {
        let sep = if k + 1 < fields.len() { "," } else { "" };
        let _ = writeln!(out, "  {key} := {value}{sep}");
    }
    out.push_str(");\n");
    out
}

pub fn gap_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    #[test]
    fn round_trip() {
        let m = IntMatrix::from_i64(2, 2, &[-2, 1, 1, -2]).unwrap();
        let enc = encode_int_matrix(&m);
        assert_eq!(enc[0], vec!["-2", "1"]);
        assert_eq!(decode_int_matrix(&enc).unwrap(), m);
        assert_eq!(encode_rat_vector(&[rat(-1, 2), rat(3, 1)]), vec!["-1/2", "3"]);
        assert_eq!(decode_rat_vector(&["−1/2".to_string()]).unwrap(), vec![rat(-1, 2)]);
        assert!(decode_int_matrix(&[vec!["1".into()], vec![]]).is_err());
    }

    #[test]
    fn gap_layout() {
        let m = IntMatrix::from_i64(2, 2, &[4, 2, 2, 4]).unwrap();
        let s = gap_record("test", &[("gram", gap_matrix(&m)), ("name", gap_string("x"))]);
        assert!(s.starts_with("# test\nrec(\n  gram := [\n    [ 4, 2 ],\n    [ 2, 4 ]\n  ],\n  name := \"x\"\n);"));
    }
}
