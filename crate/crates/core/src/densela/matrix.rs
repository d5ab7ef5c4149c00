use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::scalar::{Scalar, ScalarKind};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    One,
    #[default]
    Inf,
    Fro,
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(NormKind::One),
            "inf" => Ok(NormKind::Inf),
            "fro" => Ok(NormKind::Fro),
            other => Err(Error::InvalidParameter(format!("unknown norm {other:?}"))),
        }
    }
}

impl<T: Scalar> Matrix<T> {
    /// Checks shape and that every entry is finite.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{what} must be square, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Standard product, accumulated row by row in a fixed order.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| v * s)
    }

    /// `self + s I` for square matrices.
    pub fn add_identity(&self, s: T) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += s;
        }
        out
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Self {
        self.map(|v| -v).add_identity(T::one())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.modulus()))
    }

    pub fn norm(&self, which: NormKind) -> f64 {
        match which {
            NormKind::One => (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self[(i, j)].modulus()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Inf => (0..self.rows)
                .map(|i| self.row(i).iter().map(|v| v.modulus()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Fro => self.data.iter().map(|v| v.modulus_sqr()).sum::<f64>().sqrt(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Matrix of either scalar kind, as read from or written to files.
#[derive(Clone, Debug, PartialEq)]
pub enum DenseMatrix {
    Real(Matrix<f64>),
    Complex(Matrix<Complex64>),
}

impl DenseMatrix {
    pub fn kind(&self) -> ScalarKind {
        match self {
            DenseMatrix::Real(_) => ScalarKind::Real,
            DenseMatrix::Complex(_) => ScalarKind::Complex,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            DenseMatrix::Real(m) => m.rows(),
            DenseMatrix::Complex(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            DenseMatrix::Real(m) => m.cols(),
            DenseMatrix::Complex(m) => m.cols(),
        }
    }

    pub fn as_real(&self) -> Result<&Matrix<f64>> {
        match self {
            DenseMatrix::Real(m) => Ok(m),
            DenseMatrix::Complex(_) => Err(Error::KindMismatch {
                expected: "real",
                found: "complex",
            }),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DenseMatrix::Real(a), DenseMatrix::Real(b)) => a.matmul(b).map(DenseMatrix::Real),
            (DenseMatrix::Complex(a), DenseMatrix::Complex(b)) => {
                a.matmul(b).map(DenseMatrix::Complex)
            }
            (a, b) => Err(Error::KindMismatch {
                expected: a.kind().as_str(),
                found: b.kind().as_str(),
            }),
        }
    }

    pub fn norm(&self, which: NormKind) -> f64 {
        match self {
            DenseMatrix::Real(m) => m.norm(which),
            DenseMatrix::Complex(m) => m.norm(which),
        }
    }
}

impl From<Matrix<f64>> for DenseMatrix {
    fn from(m: Matrix<f64>) -> Self {
        DenseMatrix::Real(m)
    }
}

impl From<Matrix<Complex64>> for DenseMatrix {
    fn from(m: Matrix<Complex64>) -> Self {
        DenseMatrix::Complex(m)
    }
}
