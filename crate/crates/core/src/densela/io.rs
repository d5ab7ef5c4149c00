//! Matrix Market (array and coordinate, real/integer/complex) and the JSON
//! dense format `{"rows", "cols", "kind", "data"}` with complex entries
//! interleaved as real, imaginary.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{DenseMatrix, Matrix};
use super::scalar::ScalarKind;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    kind: ScalarKind,
    data: Vec<f64>,
}

pub fn to_json(a: &DenseMatrix) -> serde_json::Value {
    let doc = match a {
        DenseMatrix::Real(m) => MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            kind: ScalarKind::Real,
            data: m.data().to_vec(),
        },
        DenseMatrix::Complex(m) => MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            kind: ScalarKind::Complex,
            data: m.data().iter().flat_map(|z| [z.re, z.im]).collect(),
        },
    };
    serde_json::to_value(doc).expect("matrix serializes")
}

pub fn from_json(text: &str) -> Result<DenseMatrix> {
    let doc: MatrixJson = serde_json::from_str(text)?;
    match doc.kind {
        ScalarKind::Real => Ok(Matrix::new(doc.rows, doc.cols, doc.data)?.into()),
        ScalarKind::Complex => {
            if !doc.data.len().is_multiple_of(2) {
                return Err(Error::Parse(
                    "complex data must hold interleaved real/imaginary pairs".into(),
                ));
            }
            let data = doc
                .data
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect();
            Ok(Matrix::new(doc.rows, doc.cols, data)?.into())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

struct Header {
    layout: Layout,
    complex: bool,
    symmetry: Symmetry,
}

fn parse_header(line: &str) -> Result<Header> {
    let words: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(Error::Parse(format!(
            "expected '%%MatrixMarket matrix <format> <field> <symmetry>', got {line:?}"
        )));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(Error::Parse(format!("unsupported format {other:?}"))),
    };
    let complex = match words[3].as_str() {
        "real" | "integer" | "double" => false,
        "complex" => true,
        other => return Err(Error::Parse(format!("unsupported field {other:?}"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(Error::Parse(format!("unsupported symmetry {other:?}"))),
    };
    if symmetry == Symmetry::Hermitian && !complex {
        return Err(Error::Parse("hermitian symmetry requires a complex field".into()));
    }
    Ok(Header {
        layout,
        complex,
        symmetry,
    })
}

fn parse_usize(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("invalid {what}")))
}

fn parse_f64(tok: Option<&str>) -> Result<f64> {
    let tok = tok.ok_or_else(|| Error::Parse("missing value".into()))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid number {tok:?}")))
}

pub fn from_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines();
    let header = parse_header(lines.next().unwrap_or_default())?;
    let mut body = lines
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'));
    let size_line = body
        .next()
        .ok_or_else(|| Error::Parse("missing size line".into()))?;
    let mut size = size_line.split_whitespace();
    let rows = parse_usize(size.next(), "row count")?;
    let cols = parse_usize(size.next(), "column count")?;
    if header.symmetry != Symmetry::General && rows != cols {
        return Err(Error::Parse("symmetric storage requires a square matrix".into()));
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut put = |i: usize, j: usize, v: Complex64| -> Result<()> {
        if i >= rows || j >= cols {
            return Err(Error::Parse(format!("entry ({}, {}) out of range", i + 1, j + 1)));
        }
        entries[i * cols + j] = v;
        if i != j {
            match header.symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => entries[j * cols + i] = v,
                Symmetry::SkewSymmetric => entries[j * cols + i] = -v,
                Symmetry::Hermitian => entries[j * cols + i] = v.conj(),
            }
        }
        Ok(())
    };
    let read_value = |tokens: &mut std::str::SplitWhitespace| -> Result<Complex64> {
        let re = parse_f64(tokens.next())?;
        let im = if header.complex {
            parse_f64(tokens.next())?
        } else {
            0.0
        };
        Ok(Complex64::new(re, im))
    };

    match header.layout {
        Layout::Array => {
            // column-major; symmetric variants store the lower triangle only
            let mut positions = Vec::new();
            for j in 0..cols {
                let start = match header.symmetry {
                    Symmetry::General => 0,
                    Symmetry::Symmetric | Symmetry::Hermitian => j,
                    Symmetry::SkewSymmetric => j + 1,
                };
                positions.extend((start..rows).map(|i| (i, j)));
            }
            let mut pos = positions.into_iter();
            for line in body {
                let mut tokens = line.split_whitespace();
                let (i, j) = pos
                    .next()
                    .ok_or_else(|| Error::Parse("too many array entries".into()))?;
                put(i, j, read_value(&mut tokens)?)?;
            }
            if pos.next().is_some() {
                return Err(Error::Parse("too few array entries".into()));
            }
        }
        Layout::Coordinate => {
            let nnz = parse_usize(size.next(), "entry count")?;
            let mut seen = 0;
            for line in body {
                let mut tokens = line.split_whitespace();
                let i = parse_usize(tokens.next(), "row index")?;
                let j = parse_usize(tokens.next(), "column index")?;
                if i == 0 || j == 0 {
                    return Err(Error::Parse("Matrix Market indices are 1-based".into()));
                }
                put(i - 1, j - 1, read_value(&mut tokens)?)?;
                seen += 1;
            }
            if seen != nnz {
                return Err(Error::Parse(format!("expected {nnz} entries, found {seen}")));
            }
        }
    }

    if header.complex {
        Ok(Matrix::new(rows, cols, entries)?.into())
    } else {
        Ok(Matrix::new(rows, cols, entries.into_iter().map(|z| z.re).collect())?.into())
    }
}

/// Dense `array general` output, column-major, 17 significant digits.
pub fn to_matrix_market(a: &DenseMatrix) -> String {
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = String::new();
    match a {
        DenseMatrix::Real(m) => {
            out.push_str("%%MatrixMarket matrix array real general\n");
            out.push_str(&format!("{rows} {cols}\n"));
            for j in 0..cols {
                for i in 0..rows {
                    out.push_str(&format!("{:.16e}\n", m[(i, j)]));
                }
            }
        }
        DenseMatrix::Complex(m) => {
            out.push_str("%%MatrixMarket matrix array complex general\n");
            out.push_str(&format!("{rows} {cols}\n"));
            for j in 0..cols {
                for i in 0..rows {
                    let z = m[(i, j)];
                    out.push_str(&format!("{:.16e} {:.16e}\n", z.re, z.im));
                }
            }
        }
    }
    out
}

/// Parses either format, detected from the `%%MatrixMarket` banner.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    if text.trim_start().starts_with("%%") {
        from_matrix_market(text.trim_start())
    } else {
        from_json(text)
    }
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

/// Writes JSON for a `.json` extension, Matrix Market otherwise.
pub fn write_matrix(path: &Path, a: &DenseMatrix) -> Result<()> {
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let text = if is_json {
        serde_json::to_string_pretty(&to_json(a))?
    } else {
        to_matrix_market(a)
    };
    fs::write(path, text)?;
    Ok(())
}
