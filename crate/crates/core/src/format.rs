//! Plain-text file formats.
//!
//! * `.bm01`: side length, then `side` lines of exactly `side` characters
//!   from `{0,1}`.
//! * `.spm`: block order `n`, then one line per S-permutation matrix holding
//!   its `n²` column indices separated by single spaces.
//! * `.pim`: order `n`, then `2n` lines of `n` space-separated integers.
//! * `.sdk`: block order `n`, then `n²` lines of `n²` space-separated
//!   integers.
//!
//! Every line ends with `\n`. Streams of `.bm01` or `.pim` records are plain
//! concatenations; an `.spm` stream shares one header. Line and column
//! numbers in parse errors are 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generate::PiMatrix;
use crate::matrix::{BinaryMatrix, SPermutationMatrix};
use crate::permutation::Permutation;
use crate::sudoku::SudokuMatrix;

/// Line cursor that tracks position for diagnostics.
struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if !text.is_empty() && !text.ends_with('\n') {
            let line = text.lines().count();
            let column = text.lines().last().map_or(0, str::len) + 1;
            return Err(Error::parse(line, column, "missing final newline"));
        }
        Ok(Lines {
            lines: text.split_terminator('\n').collect(),
            pos: 0,
        })
    }

    fn at_end(&self) -> bool {
        self.pos == self.lines.len()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line_no = self.pos + 1;
        let line = *self.lines.get(self.pos).ok_or_else(|| {
            Error::parse(
                line_no,
                1,
                format!("unexpected end of input, expected {what}"),
            )
        })?;
        self.pos += 1;
        Ok((line_no, line))
    }

    fn header(&mut self) -> Result<usize> {
        let (line_no, line) = self.next("header")?;
        let v = parse_uint(line, line_no, 1)?;
        if v == 0 {
            return Err(Error::parse(line_no, 1, "size must be at least 1"));
        }
        Ok(v)
    }
}

fn parse_uint(token: &str, line: usize, column: usize) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            line,
            column,
            format!("expected a decimal integer, found {token:?}"),
        ));
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, column, format!("integer {token} too large")))
}

/// Parses `expected` integers in `1..=max` separated by single spaces.
fn integers(line: &str, line_no: usize, expected: usize, max: usize) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(expected);
    let mut column = 1;
    for token in line.split(' ') {
        if token.is_empty() {
            return Err(Error::parse(
                line_no,
                column,
                "expected single spaces between values",
            ));
        }
        let v = parse_uint(token, line_no, column)?;
        if v == 0 || v > max {
            return Err(Error::parse(
                line_no,
                column,
                format!("value {v} outside 1..={max}"),
            ));
        }
        out.push(v as u32);
        column += token.len() + 1;
    }
    if out.len() != expected {
        return Err(Error::parse(
            line_no,
            column,
            format!("expected {expected} values, found {}", out.len()),
        ));
    }
    Ok(out)
}

fn wrap_at(line_no: usize, err: Error) -> Error {
    match err {
        e @ Error::Parse { .. } => e,
        other => Error::parse(line_no, 1, other.to_string()),
    }
}

fn join(values: &[u32]) -> String {
    let mut s = String::with_capacity(values.len() * 3);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{v}").unwrap();
    }
    s
}

pub fn write_bm01(m: &BinaryMatrix) -> String {
    let mut s = format!("{}\n", m.side());
    for i in 1..=m.side() {
        for j in 1..=m.side() {
            s.push(if m.get(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

fn read_bm01_record(lines: &mut Lines<'_>) -> Result<BinaryMatrix> {
    let side = lines.header()?;
    let mut rows = Vec::with_capacity(side);
    for _ in 0..side {
        let (line_no, line) = lines.next("matrix row")?;
        let mut row = Vec::with_capacity(side);
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => row.push(0),
                '1' => row.push(1),
                other => {
                    return Err(Error::parse(
                        line_no,
                        c + 1,
                        format!("unexpected character {other:?}, expected 0 or 1"),
                    ))
                }
            }
        }
        if row.len() != side {
            return Err(Error::parse(
                line_no,
                row.len() + 1,
                format!("expected {side} characters, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    BinaryMatrix::from_rows(&rows)
}

/// Parses exactly one `.bm01` matrix.
pub fn parse_bm01(text: &str) -> Result<BinaryMatrix> {
    let mut lines = Lines::new(text)?;
    let m = read_bm01_record(&mut lines)?;
    expect_end(&lines)?;
    Ok(m)
}

/// Parses a concatenation of `.bm01` records.
pub fn parse_bm01_stream(text: &str) -> Result<Vec<BinaryMatrix>> {
    let mut lines = Lines::new(text)?;
    let mut out = Vec::new();
    while !lines.at_end() {
        out.push(read_bm01_record(&mut lines)?);
    }
    Ok(out)
}

fn expect_end(lines: &Lines<'_>) -> Result<()> {
    if lines.at_end() {
        Ok(())
    } else {
        Err(Error::parse(
            lines.pos + 1,
            1,
            "unexpected trailing content",
        ))
    }
}

pub fn spm_header(n: usize) -> String {
    format!("{n}\n")
}

pub fn spm_line(a: &SPermutationMatrix) -> String {
    let mut s = join(a.column_of_row());
    s.push('\n');
    s
}

/// Header plus one line per matrix. All matrices must share `n`.
pub fn write_spm(n: usize, matrices: &[SPermutationMatrix]) -> Result<String> {
    let mut s = spm_header(n);
    for a in matrices {
        if a.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: a.n(),
            });
        }
        s.push_str(&spm_line(a));
    }
    Ok(s)
}

/// Parses an `.spm` file holding any number of matrices after the header.
pub fn parse_spm(text: &str) -> Result<Vec<SPermutationMatrix>> {
    let mut lines = Lines::new(text)?;
    let n = lines.header()?;
    let side = n * n;
    let mut out = Vec::new();
    while !lines.at_end() {
        let (line_no, line) = lines.next("column indices")?;
        let cols = integers(line, line_no, side, side)?;
        out.push(SPermutationMatrix::new(n, cols).map_err(|e| wrap_at(line_no, e))?);
    }
    Ok(out)
}

pub fn write_pim(p: &PiMatrix) -> String {
    let mut s = format!("{}\n", p.n());
    for i in 1..=2 * p.n() {
        s.push_str(&join(p.row(i)));
        s.push('\n');
    }
    s
}

fn read_pim_record(lines: &mut Lines<'_>) -> Result<PiMatrix> {
    let n = lines.header()?;
    let mut rows = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        let (line_no, line) = lines.next("Pi matrix row")?;
        let values = integers(line, line_no, n, n)?;
        rows.push(Permutation::new(values).map_err(|e| wrap_at(line_no, e))?);
    }
    PiMatrix::new(n, rows)
}

pub fn parse_pim(text: &str) -> Result<PiMatrix> {
    let mut lines = Lines::new(text)?;
    let p = read_pim_record(&mut lines)?;
    expect_end(&lines)?;
    Ok(p)
}

pub fn parse_pim_stream(text: &str) -> Result<Vec<PiMatrix>> {
    let mut lines = Lines::new(text)?;
    let mut out = Vec::new();
    while !lines.at_end() {
        out.push(read_pim_record(&mut lines)?);
    }
    Ok(out)
}

pub fn write_sdk(s: &SudokuMatrix) -> String {
    let mut out = format!("{}\n", s.n());
    for row in s.rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    out
}

/// Parses the grid of an `.sdk` file without checking the Sudoku
/// constraints, so callers can report violations separately.
pub fn parse_sdk_rows(text: &str) -> Result<(usize, Vec<Vec<u32>>)> {
    let mut lines = Lines::new(text)?;
    let n = lines.header()?;
    let side = n * n;
    let mut rows = Vec::with_capacity(side);
    for _ in 0..side {
        let (line_no, line) = lines.next("grid row")?;
        rows.push(integers(line, line_no, side, side)?);
    }
    expect_end(&lines)?;
    Ok((n, rows))
}

/// Parses and validates an `.sdk` file.
pub fn parse_sdk(text: &str) -> Result<SudokuMatrix> {
    let (_, rows) = parse_sdk_rows(text)?;
    SudokuMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bm01_round_trip_and_layout() {
        let m = BinaryMatrix::from_positions(4, &[(1, 1), (2, 3), (3, 2), (4, 4)]).unwrap();
        let text = write_bm01(&m);
        assert_eq!(text, "4\n1000\n0010\n0100\n0001\n");
        assert_eq!(parse_bm01(&text).unwrap(), m);
        let two = format!("{text}{}", write_bm01(&BinaryMatrix::ones(1)));
        assert_eq!(parse_bm01_stream(&two).unwrap().len(), 2);
    }

    #[test]
    fn bm01_diagnostics() {
        assert_eq!(
            parse_bm01("2\n10\n0x\n"),
            Err(Error::parse(
                3,
                2,
                "unexpected character 'x', expected 0 or 1"
            ))
        );
        assert!(matches!(
            parse_bm01("2\n10\n0\n"),
            Err(Error::Parse {
                line: 3,
                column: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_bm01("2\n10\n01"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_bm01("2\n10\n01\n\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_bm01(" 2\n10\n01\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_bm01("2\n10 \n01\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
    }

    #[test]
    fn spm_round_trip() {
        let a = SPermutationMatrix::new(2, vec![1, 3, 2, 4]).unwrap();
        let b = SPermutationMatrix::new(2, vec![4, 2, 3, 1]).unwrap();
        let text = write_spm(2, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(text, "2\n1 3 2 4\n4 2 3 1\n");
        assert_eq!(parse_spm(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn spm_diagnostics() {
        assert!(matches!(
            parse_spm("2\n1 2 3 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_spm("2\n1 3 2 5\n"),
            Err(Error::Parse {
                line: 2,
                column: 7,
                ..
            })
        ));
        assert!(matches!(
            parse_spm("2\n1 3  2 4\n"),
            Err(Error::Parse {
                line: 2,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_spm("2\n1 3 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn pim_round_trip() {
        let p = PiMatrix::from_rows(vec![
            vec![2, 1, 3],
            vec![1, 2, 3],
            vec![3, 2, 1],
            vec![1, 3, 2],
            vec![1, 2, 3],
            vec![2, 3, 1],
        ])
        .unwrap();
        let text = write_pim(&p);
        assert_eq!(text, "3\n2 1 3\n1 2 3\n3 2 1\n1 3 2\n1 2 3\n2 3 1\n");
        assert_eq!(parse_pim(&text).unwrap(), p);
        assert!(matches!(
            parse_pim("1\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_pim("2\n1 1\n1 2\n1 2\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pim("1\n2\n1\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn sdk_round_trip() {
        let text = "2\n1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n";
        let s = parse_sdk(text).unwrap();
        assert_eq!(write_sdk(&s), text);
        assert!(matches!(
            parse_sdk("2\n1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 9\n"),
            Err(Error::Parse {
                line: 5,
                column: 7,
                ..
            })
        ));
        assert!(matches!(
            parse_sdk("2\n1 1 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n"),
            Err(Error::SudokuViolation { .. })
        ));
    }
}
