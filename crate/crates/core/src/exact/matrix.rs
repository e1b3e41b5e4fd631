//! Sparse exact vectors and column-major sparse matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse vector over [`Rational`]; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.set(i, Rational::one());
        v
    }

    pub fn get(&self, i: usize) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, value);
        }
    }

    /// `self[i] += value`
    pub fn add_at(&mut self, i: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(slot) => {
                *slot += value;
                if slot.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, value.clone());
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (&i, v) in &other.entries {
            self.add_at(i, &(v * factor));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(&i, v)| (i, v * factor)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, v)| (i, v))
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .iter()
            .filter_map(|(i, v)| large.entries.get(&i).map(|w| v * w))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, q) in iter {
            v.add_at(i, &q);
        }
        v
    }
}

/// Column-major sparse matrix. Column `j` is the image of the `j`-th source
/// basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// Builds a matrix from its columns. Panics if an entry lies outside
    /// `nrows`.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some(i) = c.max_index() {
                assert!(i < nrows, "entry row {i} outside {nrows} rows");
            }
        }
        Self { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, q) in row.iter().enumerate() {
                m.set(i, j, q.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j].get(i)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.nrows);
        self.cols[j].set(i, value);
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, xj) in x.iter() {
            out.add_scaled(&self.cols[j], xj);
        }
        out
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "inner dimensions differ");
        SparseMatrix {
            nrows: self.nrows,
            cols: rhs.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.ncols(), self.nrows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                t.cols[i].set(j, v.clone());
            }
        }
        t
    }

    pub fn scaled(&self, factor: &Rational) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|c| c.scaled(factor)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows);
        assert_eq!(self.ncols(), other.ncols());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.add_scaled(b, &Rational::one());
                c
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn trace(&self) -> Rational {
        self.cols
            .iter()
            .enumerate()
            .map(|(j, c)| c.get(j))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == SparseMatrix::identity(self.nrows)
    }

    /// Row-major view, convenient for elimination.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }
}
