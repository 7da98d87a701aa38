//! Plain-text set files.
//!
//! ```text
//! dim 2
//! 0 0
//! 1 0
//! ```
//!
//! Blank lines are skipped and duplicates tolerated on input; the writer
//! always emits canonical order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Coord, GroupSet};
use crate::error::{Error, Result};

pub fn parse_set(text: &str) -> Result<GroupSet> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `dim` header".into() })?;
    let dim: usize = header
        .trim()
        .strip_prefix("dim")
        .and_then(|r| r.trim().parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse { line: hline + 1, msg: format!("bad header {header:?}") })?;
    let mut coords = Vec::new();
    for (i, line) in lines {
        let before = coords.len();
        for tok in line.split_whitespace() {
            let v: Coord = tok
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("not an integer: {tok:?}") })?;
            coords.push(v);
        }
        if coords.len() - before != dim {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {dim} coordinates, found {}", coords.len() - before),
            });
        }
    }
    GroupSet::from_flat(dim, coords)
}

pub fn format_set(a: &GroupSet) -> String {
    let mut out = format!("dim {}\n", a.dim());
    for p in a.iter() {
        let mut first = true;
        for x in p {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_set(path: impl AsRef<Path>) -> Result<GroupSet> {
    parse_set(&fs::read_to_string(path)?)
}

pub fn write_set(path: impl AsRef<Path>, a: &GroupSet) -> Result<()> {
    fs::write(path, format_set(a))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonicalizes() {
        let a = parse_set("dim 2\n1 0\n\n0 0\n1 0\n").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(format_set(&a), "dim 2\n0 0\n1 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_set(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_set("dim x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_set("dim 2\n1 2\n3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_set("dim 1\nfoo\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn empty_set_round_trips() {
        let e = parse_set("dim 3\n").unwrap();
        assert!(e.is_empty());
        assert_eq!(format_set(&e), "dim 3\n");
    }
}
