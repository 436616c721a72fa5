//! Text and JSON file formats.
//!
//! * monomial list: 27 space-separated exponents per line, flatten order;
//! * orbit table: `<coeff>\t<27 exponents>\t<orbit size>` per line;
//! * expanded polynomial: `<coeff> <27 exponents>` per line, increasing
//!   monomial order;
//! * array: JSON `[[[x111, x112, x113], ...], ...]`, index order `[i][j][k]`.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use trilinvar_core::pipeline::{expand_table, invariant_kind, OrbitCoefficient};
use trilinvar_core::poly::Array333;
use trilinvar_core::{ExponentArray, Polynomial};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(#[from] trilinvar_core::Error),
    #[error("array JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

fn exponents(line: usize, field: &str) -> Result<ExponentArray, FormatError> {
    field.parse().map_err(|e: trilinvar_core::Error| parse_err(line, e.to_string()))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn write_monomials(list: &[ExponentArray]) -> String {
    let mut out = String::with_capacity(list.len() * 55);
    for e in list {
        let _ = writeln!(out, "{e}");
    }
    out
}

pub fn read_monomials(text: &str) -> Result<Vec<ExponentArray>, FormatError> {
    content_lines(text).map(|(n, l)| exponents(n, l)).collect()
}

pub fn write_orbit_table<'a>(rows: impl IntoIterator<Item = &'a OrbitCoefficient>) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{}\t{}\t{}", r.coefficient, r.min_rep, r.size);
    }
    out
}

/// Parses an orbit table. The sum kind is not stored in the file; it follows
/// from the degree (see [`invariant_kind`]).
pub fn read_orbit_table(text: &str) -> Result<Vec<OrbitCoefficient>, FormatError> {
    let mut rows = Vec::new();
    let mut degree = None;
    for (n, line) in content_lines(text) {
        let fields: Vec<&str> = line.split('\t').collect();
        let [coeff, rep, size] = fields[..] else {
            return Err(parse_err(n, format!("expected 3 tab-separated fields, got {}", fields.len())));
        };
        let coefficient: BigInt = coeff.trim().parse().map_err(|_| parse_err(n, format!("bad coefficient {coeff:?}")))?;
        let min_rep = exponents(n, rep)?;
        let size: usize = size.trim().parse().map_err(|_| parse_err(n, format!("bad orbit size {size:?}")))?;
        let d = min_rep.degree();
        if *degree.get_or_insert(d) != d {
            return Err(parse_err(n, format!("degree {d} differs from earlier rows")));
        }
        rows.push(OrbitCoefficient { coefficient, min_rep, size, kind: invariant_kind(d) });
    }
    Ok(rows)
}

pub fn write_expanded(p: &Polynomial) -> String {
    let mut out = String::with_capacity(p.len() * 58);
    for (e, c) in p.terms() {
        let _ = writeln!(out, "{c} {e}");
    }
    out
}

pub fn read_expanded(text: &str) -> Result<Polynomial, FormatError> {
    let mut terms = Vec::new();
    for (n, line) in content_lines(text) {
        let (coeff, rest) = line.trim_start().split_once(' ').ok_or_else(|| parse_err(n, "expected coefficient and 27 exponents"))?;
        let c: BigInt = coeff.parse().map_err(|_| parse_err(n, format!("bad coefficient {coeff:?}")))?;
        terms.push((exponents(n, rest)?, c));
    }
    Ok(Polynomial::from_terms(terms))
}

/// Loads a polynomial from either an orbit table or an expanded file,
/// recognised by the tab separators of the former.
pub fn read_polynomial(text: &str) -> Result<Polynomial, FormatError> {
    if content_lines(text).next().is_some_and(|(_, l)| l.contains('\t')) {
        Ok(expand_table(&read_orbit_table(text)?)?)
    } else {
        read_expanded(text)
    }
}

pub fn read_polynomial_file(path: &Path) -> Result<Polynomial, FormatError> {
    read_polynomial(&read_file(path)?)
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_array_json(text: &str) -> Result<Array333, FormatError> {
    let nested: [[[i64; 3]; 3]; 3] = serde_json::from_str(text)?;
    Ok(Array333::from_nested(nested))
}

pub fn write_array_json(x: &Array333) -> String {
    let rows: Vec<String> = (0..3)
        .map(|i| {
            let slices: Vec<String> = (0..3)
                .map(|j| {
                    let v: Vec<String> = (0..3).map(|k| x.get(i, j, k).to_string()).collect();
                    format!("[{}]", v.join(", "))
                })
                .collect();
            format!("[{}]", slices.join(", "))
        })
        .collect();
    format!("[{}]\n", rows.join(",\n "))
}
