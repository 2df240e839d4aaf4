//! OEIS b-file reading and writing.
//!
//! A b-file holds one `n a(n)` pair per line; lines starting with `#` and
//! blank lines are ignored. Indices must be contiguous and ascending.

use crate::error::{Error, Result};
use crate::sequence::IntegerSequence;

/// Terms together with the index of the first one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub terms: IntegerSequence,
}

pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Format { line: line_no, message };
        let mut fields = line.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `n a(n)`, found {line:?}")));
        };
        let n: i64 = n.parse().map_err(|_| err(format!("bad index {n:?}")))?;
        let v: i64 = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        match offset {
            None => offset = Some(n),
            Some(o) => {
                let want = o + terms.len() as i64;
                if n != want {
                    return Err(err(format!("index {n} where {want} was expected")));
                }
            }
        }
        terms.push(v);
    }
    Ok(BFile {
        offset: offset.unwrap_or(1),
        terms: IntegerSequence(terms),
    })
}

pub fn read_bfile(text: &str) -> Result<IntegerSequence> {
    parse_bfile(text).map(|b| b.terms)
}

/// One `n a(n)` line per term, 1-indexed, newline-terminated.
pub fn write_bfile(seq: &IntegerSequence) -> String {
    let mut out = String::with_capacity(seq.len() * 12);
    for (i, v) in seq.terms().iter().enumerate() {
        out.push_str(&format!("{} {}\n", i + 1, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_are_skipped() {
        let s = read_bfile("# comment\n1 2\n2 6\n").unwrap();
        assert_eq!(s.terms(), &[2, 6]);
    }

    #[test]
    fn gap_reports_line() {
        let e = read_bfile("1 1\n3 6\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }), "{e}");
    }

    #[test]
    fn writer_format() {
        assert_eq!(write_bfile(&IntegerSequence(vec![1, 4, 6])), "1 1\n2 4\n3 6\n");
    }
}
