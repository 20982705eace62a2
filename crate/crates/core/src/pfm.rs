//! The `pfm` text format for matrices over prime fields.
//!
//! ```text
//! pfm 1
//! field 3
//! size 2 4
//! labels e1 e2 e3 e4
//! 1 0 2 1
//! 0 1 1 1
//! ```
//!
//! The `labels` line is optional; absent labels default to `c0..c{n-1}`.
//! Entries are canonical residues in `[0, p)`. Tokens are split on ASCII
//! whitespace and carry no escaping, so labels must be whitespace-free.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, PrimeFieldMatrix};

pub fn default_labels(cols: usize) -> Vec<String> {
    (0..cols).map(|j| format!("c{j}")).collect()
}

/// Parses a pfm document into a matrix and its column labels.
pub fn parse(text: &str) -> Result<(PrimeFieldMatrix, Vec<String>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty document, expected `pfm 1` header"))?;
    if header != "pfm 1" {
        return Err(Error::parse(ln, format!("expected `pfm 1`, got {header:?}")));
    }

    let (ln, field_line) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, "missing `field <p>` line"))?;
    let p = match field_line.strip_prefix("field ") {
        Some(rest) => rest
            .trim()
            .parse::<u64>()
            .map_err(|e| Error::parse(ln, format!("bad field modulus: {e}")))?,
        None => return Err(Error::parse(ln, "expected `field <p>`")),
    };
    let field = FieldSpec::new(p)?;

    let (ln, size_line) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, "missing `size <rows> <cols>` line"))?;
    let dims: Vec<&str> = size_line
        .strip_prefix("size ")
        .ok_or_else(|| Error::parse(ln, "expected `size <rows> <cols>`"))?
        .split_ascii_whitespace()
        .collect();
    if dims.len() != 2 {
        return Err(Error::parse(ln, "expected `size <rows> <cols>`"));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|e| Error::parse(ln, format!("bad row count: {e}")))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|e| Error::parse(ln, format!("bad column count: {e}")))?;

    let mut rest: Vec<(usize, &str)> = lines.collect();
    let labels = if let Some((lln, first)) = rest.first().copied() {
        if let Some(lab) = first.strip_prefix("labels") {
            rest.remove(0);
            let labels: Vec<String> = lab.split_ascii_whitespace().map(String::from).collect();
            if labels.len() != cols {
                return Err(Error::parse(
                    lln,
                    format!("expected {cols} labels, got {}", labels.len()),
                ));
            }
            labels
        } else {
            default_labels(cols)
        }
    } else {
        default_labels(cols)
    };

    if rest.len() != rows {
        let at = rest.last().map(|&(l, _)| l).unwrap_or(ln) + 1;
        return Err(Error::parse(
            at,
            format!("expected {rows} row lines, got {}", rest.len()),
        ));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    for (rln, line) in rest {
        let mut count = 0usize;
        for tok in line.split_ascii_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|e| Error::parse(rln, format!("bad entry {tok:?}: {e}")))?;
            if v >= field.modulus() {
                return Err(Error::parse(
                    rln,
                    format!("entry {v} out of range for GF({})", field.modulus()),
                ));
            }
            entries.push(v);
            count += 1;
        }
        if count != cols {
            return Err(Error::parse(
                rln,
                format!("expected {cols} entries in row, got {count}"),
            ));
        }
    }

    let m = PrimeFieldMatrix::new(field, rows, cols, entries)?;
    Ok((m, labels))
}

/// Writes a matrix as a pfm document. The labels line is always emitted.
pub fn write(m: &PrimeFieldMatrix, labels: &[String]) -> String {
    let mut out = String::new();
    out.push_str("pfm 1\n");
    out.push_str(&format!("field {}\n", m.field().modulus()));
    out.push_str(&format!("size {} {}\n", m.rows(), m.cols()));
    out.push_str("labels");
    for l in labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = FieldSpec::new(3).unwrap();
        let m = PrimeFieldMatrix::new(f, 2, 3, vec![1, 0, 2, 0, 1, 1]).unwrap();
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let text = write(&m, &labels);
        let (m2, l2) = parse(&text).unwrap();
        assert_eq!(m, m2);
        assert_eq!(labels, l2);
    }

    #[test]
    fn zero_row_matrix_round_trips() {
        let f = FieldSpec::new(2).unwrap();
        let m = PrimeFieldMatrix::zero(f, 0, 4);
        let labels = default_labels(4);
        let (m2, l2) = parse(&write(&m, &labels)).unwrap();
        assert_eq!(m2.rows(), 0);
        assert_eq!(m2.cols(), 4);
        assert_eq!(l2, labels);
    }

    #[test]
    fn missing_labels_defaults() {
        let text = "pfm 1\nfield 2\nsize 1 2\n1 0\n";
        let (_, labels) = parse(text).unwrap();
        assert_eq!(labels, vec!["c0".to_string(), "c1".to_string()]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "pfm 1\nfield 2\nsize 1 2\n1 7\n";
        match parse(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("pfm 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("pfm 1\nfield 4\nsize 0 0\n") {
            Err(Error::NotPrime(4)) => {}
            other => panic!("expected NotPrime, got {other:?}"),
        }
    }

    #[test]
    fn wrong_entry_count_rejected() {
        let text = "pfm 1\nfield 2\nsize 2 2\n1 0\n1\n";
        match parse(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 5);
                assert!(msg.contains("expected 2 entries"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
