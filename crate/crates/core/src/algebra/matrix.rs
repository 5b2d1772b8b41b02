use std::fmt;

use super::scalar::{Scalar, Zl};
use crate::error::{Error, Result};

/// Row-major matrix over `Z_l`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatZl {
    rows: usize,
    cols: usize,
    ring: Zl,
    entries: Vec<Scalar>,
}

impl MatZl {
    pub fn from_rows(ring: Zl, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadDims("ragged or empty rows".into()));
        }
        Ok(MatZl {
            rows: rows.len(),
            cols,
            ring,
            entries: rows.iter().flatten().map(|&v| ring.elem(v)).collect(),
        })
    }

    pub fn identity(ring: Zl, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.one();
        }
        MatZl {
            rows: n,
            cols: n,
            ring,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_values(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(Scalar::value).collect())
            .collect()
    }

    pub fn mul(&self, other: &MatZl) -> Result<MatZl> {
        if self.cols != other.rows {
            return Err(Error::BadDims(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let dot = (0..self.cols).fold(self.ring.zero(), |acc, k| {
                    acc + self.get(r, k) * other.get(k, c)
                });
                entries.push(dot);
            }
        }
        Ok(MatZl {
            rows: self.rows,
            cols: other.cols,
            ring: self.ring,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::BadDims(format!(
                "{}x{} times vector of {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.ring.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatZl> {
        if self.rows != self.cols {
            return Err(Error::BadDims("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = MatZl::identity(self.ring, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = work.get(col, col).inv()?;
            work.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                let factor = work.get(r, col);
                if r != col && !factor.is_zero() {
                    work.sub_row_multiple(r, col, factor);
                    inv.sub_row_multiple(r, col, factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: Scalar) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            *e = *e * s;
        }
    }

    // row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: Scalar) {
        for c in 0..self.cols {
            let v = self.get(source, c) * factor;
            let e = &mut self.entries[target * self.cols + c];
            *e = *e - v;
        }
    }
}

impl fmt::Debug for MatZl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatZl(mod {}) {:?}", self.ring.modulus(), self.to_values())
    }
}

/// `n x t` Vandermonde matrix with entry `(j, k) = j^k` for `j = 1..=n`.
pub fn vandermonde(n: usize, t: usize, ring: Zl) -> Result<MatZl> {
    if t == 0 || t > n || n as u64 >= ring.modulus() {
        return Err(Error::BadDims(format!(
            "need 1 <= t <= n < l, got t={t} n={n} l={}",
            ring.modulus()
        )));
    }
    let xs: Vec<Scalar> = (1..=n as u64).map(|j| ring.elem(j)).collect();
    Ok(vandermonde_rows(&xs, t))
}

/// Vandermonde rows `(1, x, x^2, .., x^(t-1))` for arbitrary abscissae.
pub fn vandermonde_rows(xs: &[Scalar], t: usize) -> MatZl {
    let ring = xs[0].ring();
    let entries = xs
        .iter()
        .flat_map(|&x| (0..t as u64).map(move |k| x.pow(k)))
        .collect();
    MatZl {
        rows: xs.len(),
        cols: t,
        ring,
        entries,
    }
}
