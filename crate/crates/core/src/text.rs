//! Plain-text matrix formats.
//!
//! A matrix block is a header line `rows cols field` followed by `rows`
//! lines of whitespace-separated scalar literals. A matrix-set file is a
//! sequence of blocks. Blank lines and lines starting with `#` are ignored.
//! Certificates add a `route: <tag>` line before their matrix.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;
use crate::structure::{Certificate, Route};

/// A matrix block before its entries are interpreted in a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatrix {
    pub rows: usize,
    pub cols: usize,
    pub spec: FieldSpec,
    pub entries: Vec<String>,
    /// 1-based line of the header.
    pub line: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize, FieldSpec)> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let [r, c, f] = parts.as_slice() else {
        return Err(parse_err(line, format!("expected `rows cols field`, found `{text}`")));
    };
    let rows = r.parse().map_err(|_| parse_err(line, format!("bad row count `{r}`")))?;
    let cols = c
        .parse()
        .map_err(|_| parse_err(line, format!("bad column count `{c}`")))?;
    let spec = f.parse::<FieldSpec>().map_err(|e| parse_err(line, e))?;
    Ok((rows, cols, spec))
}

/// A `key: value` line with its 1-based line number.
pub type Tag = (usize, String, String);

/// Splits a matrix-set file into raw blocks. Lines of the form `key: value`
/// between blocks are returned separately, in order.
pub fn parse_blocks_with_tags(src: &str) -> Result<(Vec<RawMatrix>, Vec<Tag>)> {
    let mut lines = content_lines(src).peekable();
    let mut blocks = Vec::new();
    let mut tags = Vec::new();
    while let Some((line, text)) = lines.next() {
        if let Some((k, v)) = text.split_once(':') {
            tags.push((line, k.trim().to_string(), v.trim().to_string()));
            continue;
        }
        let (rows, cols, spec) = parse_header(line, text)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let Some((l, row)) = lines.next() else {
                return Err(parse_err(line, format!("matrix ends after {r} of {rows} rows")));
            };
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != cols {
                return Err(parse_err(l, format!("expected {cols} entries, found {}", toks.len())));
            }
            entries.extend(toks.into_iter().map(str::to_string));
        }
        blocks.push(RawMatrix {
            rows,
            cols,
            spec,
            entries,
            line,
        });
    }
    Ok((blocks, tags))
}

pub fn parse_raw_blocks(src: &str) -> Result<Vec<RawMatrix>> {
    let (blocks, tags) = parse_blocks_with_tags(src)?;
    if let Some((line, k, _)) = tags.first() {
        return Err(parse_err(*line, format!("unexpected `{k}:` line")));
    }
    Ok(blocks)
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// The field all blocks are read in. With `override_spec`, every entry
/// must be an integer literal so that reinterpretation is exact.
pub fn resolve_field(blocks: &[RawMatrix], override_spec: Option<&FieldSpec>) -> Result<FieldSpec> {
    let first = blocks.first().ok_or_else(|| parse_err(0, "no matrix blocks found"))?;
    for b in blocks {
        if b.spec != first.spec && override_spec.is_none() {
            return Err(Error::FieldMismatch(first.spec.to_string(), b.spec.to_string()));
        }
    }
    match override_spec {
        None => Ok(first.spec.clone()),
        Some(target) => {
            for b in blocks.iter().filter(|b| &b.spec != target) {
                if let Some(t) = b.entries.iter().find(|t| !is_integer_literal(t)) {
                    return Err(parse_err(
                        b.line,
                        format!("cannot reinterpret `{t}` from {} as {target}", b.spec),
                    ));
                }
            }
            Ok(target.clone())
        }
    }
}

/// Interprets a raw block in `field`.
pub fn to_matrix<F: Field>(raw: &RawMatrix, field: &F) -> Result<Matrix<F>> {
    let entries = raw
        .entries
        .iter()
        .map(|t| field.parse_elem(t).map_err(|e| parse_err(raw.line, e)))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(field, raw.rows, raw.cols, entries)
}

pub fn to_matrices<F: Field>(raws: &[RawMatrix], field: &F) -> Result<Vec<Matrix<F>>> {
    raws.iter().map(|r| to_matrix(r, field)).collect()
}

/// Parses a matrix-set file in its declared field.
pub fn read_matrices<F: Field>(src: &str, field: &F) -> Result<Vec<Matrix<F>>> {
    let raws = parse_raw_blocks(src)?;
    if let Some(r) = raws.iter().find(|r| r.spec != field.spec()) {
        return Err(Error::FieldMismatch(field.spec().to_string(), r.spec.to_string()));
    }
    to_matrices(&raws, field)
}

pub fn format_matrix<F: Field>(m: &Matrix<F>) -> String {
    let f = m.field();
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), f.spec());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| f.format_elem(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_matrix_set<F: Field>(ms: &[Matrix<F>]) -> String {
    ms.iter().map(format_matrix).collect::<Vec<_>>().join("\n")
}

pub fn format_certificate<F: Field>(c: &Certificate<F>) -> String {
    let mut out = String::new();
    writeln!(out, "route: {}", c.route.tag()).unwrap();
    if c.extension_degree > 1 {
        writeln!(out, "extension-degree: {}", c.extension_degree).unwrap();
    }
    out.push_str(&format_matrix(&c.witness));
    out
}

pub fn parse_certificate<F: Field>(src: &str, field: &F) -> Result<Certificate<F>> {
    let (blocks, tags) = parse_blocks_with_tags(src)?;
    let mut route = None;
    let mut extension_degree = 1;
    for (line, k, v) in &tags {
        match k.as_str() {
            "route" => {
                route = Some(Route::from_tag(v).ok_or_else(|| parse_err(*line, format!("unknown route `{v}`")))?)
            }
            "extension-degree" => {
                extension_degree = v
                    .parse()
                    .map_err(|_| parse_err(*line, format!("bad extension degree `{v}`")))?
            }
            other => return Err(parse_err(*line, format!("unexpected `{other}:` line"))),
        }
    }
    let route = route.ok_or_else(|| parse_err(0, "missing `route:` line"))?;
    let [raw] = blocks.as_slice() else {
        return Err(parse_err(
            0,
            format!("expected one witness matrix, found {}", blocks.len()),
        ));
    };
    Ok(Certificate {
        witness: to_matrix(raw, field)?,
        route,
        extension_degree,
    })
}
