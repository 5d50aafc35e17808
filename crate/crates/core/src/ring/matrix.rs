use super::Ring;
use crate::error::{Error, Result};

/// A rectangular matrix stored by columns. Zero rows or zero columns are
/// allowed; the row count is kept explicitly so that an `r × 0` matrix still
/// knows `r`.
///
/// Throughout the crate a matrix `F` of shape `m × n` is read as the map
/// `R^n → R^m`, `v ↦ F·v`; its columns are the images of the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    columns: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_columns(rows: usize, columns: Vec<Vec<E>>) -> Result<Self> {
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column {j} has length {}, expected {rows}",
                c.len()
            )));
        }
        Ok(Matrix { rows, columns })
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        let columns = (0..cols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Ok(Matrix {
            rows: rows.len(),
            columns,
        })
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            columns: vec![ring.zero_vector(rows); cols],
        }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix {
            rows: n,
            columns: (0..n).map(|i| ring.unit_vector(n, i)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[E] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<E>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<E>> {
        self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> &E {
        &self.columns[j][i]
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.columns.iter().map(|c| c[i].clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix {
            rows: self.ncols(),
            columns: (0..self.rows).map(|i| self.row(i)).collect(),
        }
    }

    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        ring.combine(v, &self.columns, self.rows)
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Result<Self> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(ring, c)).collect(),
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix<E>) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack of different row counts".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Matrix {
            rows: self.rows,
            columns,
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix<E>) -> Result<Self> {
        if self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch("vstack of different column counts".into()));
        }
        Ok(Matrix {
            rows: self.rows + other.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        })
    }

    pub fn block_diagonal<R: Ring<Elem = E>>(ring: &R, a: &Matrix<E>, b: &Matrix<E>) -> Self {
        let rows = a.rows + b.rows;
        let mut columns = Vec::with_capacity(a.ncols() + b.ncols());
        for c in &a.columns {
            let mut v = c.clone();
            v.extend(ring.zero_vector(b.rows));
            columns.push(v);
        }
        for c in &b.columns {
            let mut v = ring.zero_vector(a.rows);
            v.extend(c.iter().cloned());
            columns.push(v);
        }
        Matrix { rows, columns }
    }

    /// Columns selected by index.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix {
            rows: self.rows,
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix {
            rows: idx.len(),
            columns: self
                .columns
                .iter()
                .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
                .collect(),
        }
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.columns.iter().all(|c| ring.is_zero_vector(c))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Result<Self> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch("matrix difference of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| ring.sub_vectors(a, b))
                .collect(),
        })
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Matrix {
            rows: self.rows,
            columns: self.columns.iter().map(|v| ring.scale_vector(c, v)).collect(),
        }
    }
}
