//! Exact Gauss-Jordan elimination on sparse rational systems.
//!
//! Pivots are chosen per column by the smallest combined numerator and
//! denominator bit length, ties broken by row sparsity and then row index,
//! so the reduction is deterministic.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::matrix::{SparseMatrix, SparseVec};
use super::rational::{bit_size, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inconsistent system: right-hand side {rhs} is not in the image")]
    Inconsistent { rhs: usize },
    #[error("coefficient matrix has rank {rank} < {needed}; solution is not unique")]
    RankDeficient { rank: usize, needed: usize },
}

/// Reduced row echelon form of `[A | B]`, reduced on the columns of `A` only.
#[derive(Debug, Clone)]
pub struct Elimination {
    ncols: usize,
    nrhs: usize,
    rows: Vec<SparseVec>,
    /// `(row, column)` of each pivot, in increasing column order.
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    /// Reduces `a` alone.
    pub fn of(a: &SparseMatrix) -> Self {
        Self::with_rhs(a, &[]).expect("no right-hand sides")
    }

    /// Reduces `a` together with right-hand sides `rhs` (each of length
    /// `a.nrows()`).
    pub fn with_rhs(a: &SparseMatrix, rhs: &[SparseVec]) -> Result<Self, SolveError> {
        let n = a.ncols();
        let mut rows = a.rows();
        if rows.len() != a.nrows() {
            rows.resize(a.nrows(), SparseVec::new());
        }
        for (j, b) in rhs.iter().enumerate() {
            if let Some(i) = b.max_index() {
                if i >= a.nrows() {
                    return Err(SolveError::DimensionMismatch {
                        expected: a.nrows(),
                        found: i + 1,
                    });
                }
            }
            for (i, v) in b.iter() {
                rows[i].set(n + j, v.clone());
            }
        }

        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row.iter() {
                if c < n {
                    col_rows[c].insert(r);
                }
            }
        }

        let mut pivoted = vec![false; rows.len()];
        let mut pivots = Vec::new();
        for c in 0..n {
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| !pivoted[r])
                .min_by_key(|&r| (bit_size(&rows[r].get(c)), rows[r].nnz(), r));
            let Some(p) = pivot else { continue };
            let inv = Rational::one() / rows[p].get(c);
            rows[p] = rows[p].scaled(&inv);
            pivoted[p] = true;
            pivots.push((p, c));

            let pivot_row = rows[p].clone();
            let pivot_cols: Vec<usize> = pivot_row.iter().map(|(k, _)| k).filter(|&k| k < n).collect();
            let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
            for r in targets {
                let factor = -rows[r].get(c);
                rows[r].add_scaled(&pivot_row, &factor);
                for &k in &pivot_cols {
                    if rows[r].get(k).is_zero() {
                        col_rows[k].remove(&r);
                    } else {
                        col_rows[k].insert(r);
                    }
                }
            }
        }

        Ok(Self {
            ncols: n,
            nrhs: rhs.len(),
            rows,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }

    /// Rows of the original matrix that were chosen as pivots; these form a
    /// maximal independent set of rows.
    pub fn pivot_rows(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(r, _)| r).collect()
    }

    /// One solution per right-hand side, free variables set to zero.
    pub fn solutions(&self) -> Result<Vec<SparseVec>, SolveError> {
        let pivot_rows: BTreeSet<usize> = self.pivots.iter().map(|&(r, _)| r).collect();
        for (r, row) in self.rows.iter().enumerate() {
            if pivot_rows.contains(&r) {
                continue;
            }
            if let Some((c, _)) = row.iter().find(|&(c, _)| c >= self.ncols) {
                return Err(SolveError::Inconsistent { rhs: c - self.ncols });
            }
        }
        let mut out = vec![SparseVec::new(); self.nrhs];
        for &(r, c) in &self.pivots {
            for (k, v) in self.rows[r].iter() {
                if k >= self.ncols {
                    out[k - self.ncols].set(c, v.clone());
                }
            }
        }
        Ok(out)
    }

    /// Like [`Self::solutions`] but requires full column rank, so the
    /// solutions are unique.
    pub fn unique_solutions(&self) -> Result<Vec<SparseVec>, SolveError> {
        if self.rank() < self.ncols {
            return Err(SolveError::RankDeficient {
                rank: self.rank(),
                needed: self.ncols,
            });
        }
        self.solutions()
    }

    /// Basis of the kernel of the coefficient matrix.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let pivot_cols: BTreeSet<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..self.ncols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = SparseVec::unit(free);
                for &(r, c) in &self.pivots {
                    v.set(c, -self.rows[r].get(free));
                }
                v
            })
            .collect()
    }
}

/// Solves `a x = b` for every column `b` of `rhs`.
pub fn solve_columns(a: &SparseMatrix, rhs: &[SparseVec]) -> Result<Vec<SparseVec>, SolveError> {
    Elimination::with_rhs(a, rhs)?.solutions()
}

pub fn rank(a: &SparseMatrix) -> usize {
    Elimination::of(a).rank()
}

pub fn nullspace(a: &SparseMatrix) -> Vec<SparseVec> {
    Elimination::of(a).nullspace()
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(a: &SparseMatrix) -> Result<SparseMatrix, SolveError> {
    if !a.is_square() {
        return Err(SolveError::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    let n = a.nrows();
    let rhs: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    let cols = Elimination::with_rhs(a, &rhs)?.unique_solutions()?;
    Ok(SparseMatrix::from_columns(n, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn solves_square_system() {
        let a = dense(&[&[2, 1], &[1, 3]]);
        let b: SparseVec = [(0, int(3)), (1, int(5))].into_iter().collect();
        let x = solve_columns(&a, &[b]).unwrap();
        assert_eq!(x[0].get(0), rat(4, 5));
        assert_eq!(x[0].get(1), rat(7, 5));
    }

    #[test]
    fn halves_exactly() {
        let a = SparseMatrix::identity(3).scaled(&int(2));
        let b: SparseVec = [(0, int(1)), (2, int(-3))].into_iter().collect();
        let x = solve_columns(&a, &[b]).unwrap();
        assert_eq!(x[0].get(0), rat(1, 2));
        assert_eq!(x[0].get(2), rat(-3, 2));
    }

    #[test]
    fn inconsistent_is_distinct_from_dimension_errors() {
        let a = dense(&[&[1, 1], &[2, 2]]);
        let b: SparseVec = [(0, int(1)), (1, int(3))].into_iter().collect();
        assert_eq!(solve_columns(&a, &[b]), Err(SolveError::Inconsistent { rhs: 0 }));
        let far = SparseVec::unit(7);
        assert!(matches!(
            solve_columns(&a, &[far]),
            Err(SolveError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 6]]);
        let e = Elimination::of(&a);
        assert_eq!(e.rank(), 1);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = dense(&[&[0, 1, 0], &[3, 0, 1], &[1, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inverse(&dense(&[&[1, 1], &[1, 1]])).is_err());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = SparseMatrix> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |xs| {
            let rows: Vec<Vec<Rational>> = xs.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            SparseMatrix::from_dense(&rows)
        })
    }

    proptest! {
        #[test]
        fn solve_recovers_preimage_of_injective(m in small_matrix(4), xs in proptest::collection::vec((-5i64..=5, 1i64..=4), 4)) {
            prop_assume!(rank(&m) == 4);
            let x: SparseVec = xs.iter().enumerate().map(|(i, &(n, d))| (i, rat(n, d))).collect();
            let b = m.mul_vec(&x);
            let solved = Elimination::with_rhs(&m, &[b]).unwrap().unique_solutions().unwrap();
            prop_assert_eq!(&solved[0], &x);
        }

        #[test]
        fn particular_solution_satisfies_system(m in small_matrix(3), xs in proptest::collection::vec(-4i64..=4, 3)) {
            let x: SparseVec = xs.iter().enumerate().map(|(i, &n)| (i, int(n))).collect();
            let b = m.mul_vec(&x);
            let solved = solve_columns(&m, std::slice::from_ref(&b)).unwrap();
            prop_assert_eq!(m.mul_vec(&solved[0]), b);
        }
    }
}
