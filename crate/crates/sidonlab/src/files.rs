//! Text file formats: point sets, S-box truth tables, and parity check
//! matrices. All three are line-oriented with a header line followed by
//! fixed-width lowercase hex, and round-trip bit-exactly.

use crate::algebra::hex_width;
use crate::codes::ParityCheckMatrix;
use crate::sbox::VectorialFunction;
use crate::sidon::PointSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

fn invalid(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Invalid { line, message: message.into() }
}

fn parse_header(line: &str, keys: &[&str]) -> Result<Vec<u32>, FormatError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != keys.len() {
        return Err(invalid(1, format!("expected header fields {keys:?}")));
    }
    keys.iter()
        .zip(fields)
        .map(|(key, field)| {
            field
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(|| invalid(1, format!("bad header field {field:?}, expected {key}=<int>")))
        })
        .collect()
}

fn parse_hex_body<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    bits: u32,
) -> Result<Vec<u32>, FormatError> {
    let width = hex_width(bits);
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.len() != width {
            return Err(invalid(idx, format!("expected {width} hex digits, got {:?}", line)));
        }
        let v = u32::from_str_radix(line, 16)
            .map_err(|_| invalid(idx, format!("bad hex value {line:?}")))?;
        if bits < 32 && v >= (1u32 << bits) {
            return Err(invalid(idx, format!("value {line} out of range for {bits} bits")));
        }
        out.push(v);
    }
    Ok(out)
}

/// Set file: `n=<n>`, then one member per line.
pub fn write_point_set(s: &PointSet) -> String {
    let mut out = format!("n={}\n", s.n());
    let w = hex_width(s.n());
    for &x in s.members() {
        out.push_str(&format!("{x:0w$x}\n", w = w));
    }
    out
}

pub fn read_point_set(text: &str) -> Result<PointSet, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| invalid(1, "empty file"))?;
    let n = parse_header(header, &["n"])?[0];
    if !(1..=32).contains(&n) {
        return Err(invalid(1, format!("dimension n={n} out of range 1..=32")));
    }
    let members = parse_hex_body(lines.map(|(i, l)| (i + 1, l)), n)?;
    Ok(PointSet::new(n, members))
}

/// S-box file: `n=<n> m=<m>`, then 2^n outputs in input order.
pub fn write_vectorial_function(f: &VectorialFunction) -> String {
    let mut out = format!("n={} m={}\n", f.n(), f.m());
    let w = hex_width(f.m());
    for &v in f.table() {
        out.push_str(&format!("{v:0w$x}\n", w = w));
    }
    out
}

pub fn read_vectorial_function(text: &str) -> Result<VectorialFunction, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| invalid(1, "empty file"))?;
    let dims = parse_header(header, &["n", "m"])?;
    let (n, m) = (dims[0], dims[1]);
    if !(1..=24).contains(&n) || !(1..=32).contains(&m) {
        return Err(invalid(1, format!("dimensions n={n} m={m} out of range")));
    }
    let table = parse_hex_body(lines.map(|(i, l)| (i + 1, l)), m)?;
    if table.len() != 1 << n {
        return Err(invalid(
            1,
            format!("expected {} table entries, found {}", 1u64 << n, table.len()),
        ));
    }
    Ok(VectorialFunction::new(n, m, table))
}

/// Parity check file: `rows=<n> cols=<N>`, then N columns.
pub fn write_parity_check(h: &ParityCheckMatrix) -> String {
    h.to_string()
}

pub fn read_parity_check(text: &str) -> Result<ParityCheckMatrix, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| invalid(1, "empty file"))?;
    let dims = parse_header(header, &["rows", "cols"])?;
    let (rows, cols) = (dims[0], dims[1]);
    if !(1..=32).contains(&rows) {
        return Err(invalid(1, format!("rows={rows} out of range 1..=32")));
    }
    let columns = parse_hex_body(lines.map(|(i, l)| (i + 1, l)), rows)?;
    if columns.len() != cols as usize {
        return Err(invalid(
            1,
            format!("expected {} columns, found {}", cols, columns.len()),
        ));
    }
    Ok(ParityCheckMatrix::new(rows, columns))
}
