//! Reading and writing code files.
//!
//! ```text
//! q=2 n=4 k=2
//! code 1
//! 1011
//! 0101
//!
//! ```
//!
//! Every code is a `code <index>` line followed by `k` rows of `n` symbols
//! and a blank line. GF(4) symbols use `2 = w` and `3 = w + 1`.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::code::LinearCode;
use crate::gf::Field;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Parameters from the header line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub q: u32,
    pub n: usize,
    pub k: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn parse_header(line: &str) -> Option<Header> {
    let mut fields = line.split_whitespace();
    let mut value = |key: &str| fields.next()?.strip_prefix(key)?.parse::<usize>().ok();
    let q = value("q=")?;
    let n = value("n=")?;
    let k = value("k=")?;
    if fields.next().is_some() {
        return None;
    }
    Some(Header { q: q as u32, n, k })
}

pub fn parse_codes(text: &str) -> Result<(Header, Vec<LinearCode>), FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let (_, first) = lines.next().ok_or_else(|| parse_error(1, "empty file"))?;
    let header = parse_header(first).ok_or_else(|| parse_error(1, "expected `q=<q> n=<n> k=<k>`"))?;
    let field = Field::new(header.q).map_err(|e| parse_error(1, e.to_string()))?;
    let mut codes = Vec::new();
    while let Some((no, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        let index = line
            .strip_prefix("code ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| parse_error(no, format!("expected `code <index>`, found `{line}`")))?;
        if index != codes.len() + 1 {
            return Err(parse_error(no, format!("expected code {}, found code {index}", codes.len() + 1)));
        }
        let mut rows = Vec::with_capacity(header.k);
        for _ in 0..header.k {
            let (no, row) = lines.next().ok_or_else(|| parse_error(no, "file ends inside a code"))?;
            if row.chars().count() != header.n {
                return Err(parse_error(no, format!("row has {} symbols, expected {}", row.chars().count(), header.n)));
            }
            let parsed: Option<Vec<u8>> = row.chars().map(|c| c.to_digit(10).filter(|&d| d < header.q).map(|d| d as u8)).collect();
            rows.push(parsed.ok_or_else(|| parse_error(no, format!("invalid symbol in `{row}` for q = {}", header.q)))?);
        }
        if let Some((no, l)) = lines.next() {
            if !l.is_empty() {
                return Err(parse_error(no, "expected a blank line after the rows"));
            }
        }
        let code = LinearCode::from_rows(field, header.k, header.n, rows).map_err(|e| parse_error(no, e.to_string()))?;
        codes.push(code);
    }
    Ok((header, codes))
}

pub fn read_codes(path: impl AsRef<Path>) -> Result<(Header, Vec<LinearCode>), FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_codes(&text)
}

pub fn format_codes(header: Header, codes: &[LinearCode]) -> String {
    let mut out = format!("q={} n={} k={}\n", header.q, header.n, header.k);
    for (i, c) in codes.iter().enumerate() {
        let _ = writeln!(out, "code {}", i + 1);
        for row in c.generator() {
            out.extend(row.iter().map(|&x| char::from(b'0' + x)));
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn write_codes(path: impl AsRef<Path>, header: Header, codes: &[LinearCode]) -> Result<(), FormatError> {
    let path = path.as_ref();
    std::fs::write(path, format_codes(header, codes)).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
