//! Fraction-free linear algebra over a domain: determinants, rank and minors.

use crate::error::{Error, Result};
use crate::ring::{Matrix, Ring};

/// Row echelon form by fraction-free (Bareiss) elimination.
/// Returns the number of pivots and the last pivot, which for a square
/// full-rank matrix is the determinant up to the sign of the row swaps.
fn bareiss<R: Ring>(ring: &R, mut a: Vec<Vec<R::Elem>>, ncols: usize) -> Result<(usize, R::Elem, bool)> {
    let nrows = a.len();
    let mut prev = ring.one();
    let mut rank = 0;
    let mut negated = false;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negated = !negated;
        }
        let pivot = a[rank][c].clone();
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom {
            let lead = row[c].clone();
            for (x, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let num = ring.sub(&ring.mul(&pivot, x), &ring.mul(&lead, p));
                *x = ring
                    .exact_div(&num, &prev)
                    .ok_or_else(|| Error::Inconsistent("inexact division in fraction-free elimination".into()))?;
            }
            row[c] = ring.zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok((rank, prev, negated))
}

pub fn determinant<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(ring.one());
    }
    let (rank, last, negated) = bareiss(ring, m.rows(), n)?;
    if rank < n {
        return Ok(ring.zero());
    }
    Ok(if negated { ring.neg(&last) } else { last })
}

/// Rank over the fraction field.
pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<usize> {
    Ok(bareiss(ring, m.rows(), m.ncols())?.0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The nonzero `k × k` minors of `m`. For `k = 0` this is `[1]`.
pub fn minors<R: Ring>(ring: &R, m: &Matrix<R::Elem>, k: usize) -> Result<Vec<R::Elem>> {
    let mut out: Vec<R::Elem> = Vec::new();
    for minor in indexed_minors(ring, m, k)? {
        if !out.contains(&minor.value) {
            out.push(minor.value);
        }
    }
    Ok(out)
}

/// A nonzero minor together with the rows and columns it is taken from.
#[derive(Debug, Clone, PartialEq)]
pub struct Minor<E> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: E,
}

/// Every nonzero `k × k` minor of `m`, rows and columns in increasing order.
pub fn indexed_minors<R: Ring>(ring: &R, m: &Matrix<R::Elem>, k: usize) -> Result<Vec<Minor<R::Elem>>> {
    if k == 0 {
        return Ok(vec![Minor {
            rows: Vec::new(),
            cols: Vec::new(),
            value: ring.one(),
        }]);
    }
    if k > m.nrows() || k > m.ncols() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for rows in subsets(m.nrows(), k) {
        let sub = m.select_rows(&rows);
        for cols in subsets(m.ncols(), k) {
            let value = determinant(ring, &sub.select_columns(&cols))?;
            if !ring.is_zero(&value) {
                out.push(Minor {
                    rows: rows.clone(),
                    cols,
                    value,
                });
            }
        }
    }
    Ok(out)
}

/// The classical adjoint: `adj(m)·m = m·adj(m) = det(m)·I`.
pub fn adjugate<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch("adjugate of a non-square matrix".into()));
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            // entry (i, j) is the signed cofactor of m[j][i]
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let keep: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = determinant(ring, &m.select_rows(&rows).select_columns(&keep))?;
            col.push(if (i + j) % 2 == 0 { d } else { ring.neg(&d) });
        }
        cols.push(col);
    }
    Matrix::from_columns(n, cols)
}
