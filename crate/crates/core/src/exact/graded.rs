//! Graded spaces with enumerated bases, graded vectors, degree-shifting
//! linear operators and bilinear pairings between complementary degrees.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::matrix::{SparseMatrix, SparseVec};
use super::rational::Rational;
use super::solve::{Elimination, SolveError};

/// A finite-dimensional graded vector space. Bases are ordered lists of
/// labels per degree; equality compares the name and per-degree dimensions.
#[derive(Clone)]
pub struct GradedSpace {
    name: String,
    blocks: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new(name: impl Into<String>, blocks: BTreeMap<i32, Vec<String>>) -> Arc<Self> {
        Arc::new(Self {
            name: name.into(),
            blocks: blocks.into_iter().filter(|(_, b)| !b.is_empty()).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self, k: i32) -> usize {
        self.blocks.get(&k).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// Degrees with a nonzero basis, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }

    pub fn basis(&self, k: i32) -> &[String] {
        self.blocks.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, k: i32, label: &str) -> Option<usize> {
        self.basis(k).iter().position(|l| l == label)
    }

    fn dims(&self) -> Vec<(i32, usize)> {
        self.blocks.iter().map(|(&k, b)| (k, b.len())).collect()
    }
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dims() == other.dims()
    }
}

impl Eq for GradedSpace {}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSpace({} {:?})", self.name, self.dims())
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i32),
    Mixed,
}

/// A vector in a [`GradedSpace`], keyed by `(degree, basis index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    space: Arc<GradedSpace>,
    terms: BTreeMap<(i32, usize), Rational>,
}

impl GradedVector {
    pub fn zero(space: Arc<GradedSpace>) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_vector(space: Arc<GradedSpace>, k: i32, i: usize) -> Self {
        let mut v = Self::zero(space);
        v.set(k, i, Rational::from_integer(1.into()));
        v
    }

    pub fn from_block(space: Arc<GradedSpace>, k: i32, block: &SparseVec) -> Self {
        let mut v = Self::zero(space);
        for (i, q) in block.iter() {
            v.set(k, i, q.clone());
        }
        v
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    /// Sets a coefficient. Panics if `(k, i)` is not a basis label.
    pub fn set(&mut self, k: i32, i: usize, value: Rational) {
        assert!(
            i < self.space.dim(k),
            "basis index {i} in degree {k} outside {}",
            self.space
        );
        if value.is_zero() {
            self.terms.remove(&(k, i));
        } else {
            self.terms.insert((k, i), value);
        }
    }

    pub fn get(&self, k: i32, i: usize) -> Rational {
        self.terms.get(&(k, i)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, usize, &Rational)> {
        self.terms.iter().map(|(&(k, i), q)| (k, i, q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn block(&self, k: i32) -> SparseVec {
        self.terms
            .range((k, 0)..=(k, usize::MAX))
            .map(|(&(_, i), q)| (i, q.clone()))
            .collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.terms.keys().map(|&(k, _)| k).collect();
        ds.dedup();
        ds
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self.degrees().as_slice() {
            [] => Homogeneity::Zero,
            [k] => Homogeneity::Degree(*k),
            _ => Homogeneity::Mixed,
        }
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector, OperatorError> {
        check_space(&self.space, &other.space)?;
        let mut out = self.clone();
        for (&(k, i), q) in &other.terms {
            let v = out.get(k, i) + q;
            out.set(k, i, v);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> GradedVector {
        let mut out = GradedVector::zero(self.space.clone());
        if factor.is_zero() {
            return out;
        }
        for (&(k, i), q) in &self.terms {
            out.set(k, i, q * factor);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("block in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: i32,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("supertrace needs an endomorphism of degree 0, got {source_space} -> {target_space} shifted by {shift}")]
    NotEndomorphism {
        source_space: String,
        target_space: String,
        shift: i32,
    },
    #[error("degree {degree}: {error}")]
    Solve { degree: i32, error: SolveError },
    #[error("pairing is degenerate in degree {degree}")]
    DegeneratePairing { degree: i32 },
}

fn check_space(expected: &GradedSpace, found: &GradedSpace) -> Result<(), OperatorError> {
    if expected == found {
        Ok(())
    } else {
        Err(OperatorError::SpaceMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// A linear map raising degree by `shift`. The block at source degree `k`
/// is a `dim target(k + shift) x dim source(k)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    shift: i32,
    blocks: BTreeMap<i32, SparseMatrix>,
}

impl LinearOperator {
    pub fn new(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        shift: i32,
        blocks: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, OperatorError> {
        let mut kept = BTreeMap::new();
        for (k, m) in blocks {
            let expected = (target.dim(k + shift), source.dim(k));
            let found = (m.nrows(), m.ncols());
            if expected != found {
                return Err(OperatorError::ShapeMismatch {
                    degree: k,
                    expected,
                    found,
                });
            }
            if m.nnz() > 0 {
                kept.insert(k, m);
            }
        }
        Ok(Self {
            source,
            target,
            shift,
            blocks: kept,
        })
    }

    /// Builds an operator column by column: `column(k, i)` is the image of
    /// the `i`-th basis vector of degree `k`, as a vector in target degree
    /// `k + shift`.
    pub fn from_columns(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        shift: i32,
        mut column: impl FnMut(i32, usize) -> SparseVec,
    ) -> Result<Self, OperatorError> {
        let mut blocks = BTreeMap::new();
        let degrees: Vec<i32> = source.degrees().collect();
        for k in degrees {
            let rows = target.dim(k + shift);
            let cols: Vec<SparseVec> = (0..source.dim(k)).map(|i| column(k, i)).collect();
            for c in &cols {
                if let Some(r) = c.max_index() {
                    if r >= rows {
                        return Err(OperatorError::ShapeMismatch {
                            degree: k,
                            expected: (rows, source.dim(k)),
                            found: (r + 1, source.dim(k)),
                        });
                    }
                }
            }
            blocks.insert(k, SparseMatrix::from_columns(rows, cols));
        }
        Self::new(source, target, shift, blocks)
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let blocks = space
            .degrees()
            .map(|k| (k, SparseMatrix::identity(space.dim(k))))
            .collect();
        Self::new(space.clone(), space, 0, blocks).expect("identity blocks are square")
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Block at source degree `k` (a zero matrix when nothing is stored).
    pub fn block(&self, k: i32) -> Cow<'_, SparseMatrix> {
        match self.blocks.get(&k) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(SparseMatrix::zeros(self.target.dim(k + self.shift), self.source.dim(k))),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> LinearOperator {
        let blocks = self.blocks.iter().map(|(&k, m)| (k, m.scaled(factor))).collect();
        LinearOperator::new(self.source.clone(), self.target.clone(), self.shift, blocks)
            .expect("scaling preserves shapes")
    }

    pub fn apply(&self, v: &GradedVector) -> Result<GradedVector, OperatorError> {
        check_space(&self.source, v.space())?;
        let mut out = GradedVector::zero(self.target.clone());
        for k in v.degrees() {
            let image = self.block(k).mul_vec(&v.block(k));
            for (i, q) in image.iter() {
                out.set(k + self.shift, i, q.clone());
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearOperator) -> Result<LinearOperator, OperatorError> {
        check_space(&self.source, &inner.target)?;
        let blocks = inner
            .source
            .degrees()
            .map(|k| (k, self.block(k + inner.shift).mul(&inner.block(k))))
            .collect();
        LinearOperator::new(
            inner.source.clone(),
            self.target.clone(),
            self.shift + inner.shift,
            blocks,
        )
    }

    fn check_endomorphism(&self) -> Result<(), OperatorError> {
        if self.shift != 0 || self.source != self.target {
            return Err(OperatorError::NotEndomorphism {
                source_space: self.source.to_string(),
                target_space: self.target.to_string(),
                shift: self.shift,
            });
        }
        Ok(())
    }

    pub fn trace(&self, k: i32) -> Result<Rational, OperatorError> {
        self.check_endomorphism()?;
        Ok(self.block(k).trace())
    }

    /// `Σ_k (-1)^k trace(block_k)`
    pub fn supertrace(&self) -> Result<Rational, OperatorError> {
        self.check_endomorphism()?;
        Ok(self
            .source
            .degrees()
            .map(|k| {
                let t = self.block(k).trace();
                if k.rem_euclid(2) == 0 {
                    t
                } else {
                    -t
                }
            })
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    pub fn is_identity(&self) -> bool {
        self.check_endomorphism().is_ok() && self.source.degrees().all(|k| self.block(k).is_identity())
    }

    /// Exact `x` with `self(x) = b`. If the operator is not injective, the
    /// returned preimage sets free coordinates to zero.
    pub fn solve(&self, b: &GradedVector) -> Result<GradedVector, OperatorError> {
        check_space(&self.target, b.space())?;
        let mut out = GradedVector::zero(self.source.clone());
        for tk in b.degrees() {
            let k = tk - self.shift;
            let a = self.block(k);
            let x = Elimination::with_rhs(&a, &[b.block(tk)])
                .and_then(|e| e.solutions())
                .map_err(|error| OperatorError::Solve { degree: tk, error })?;
            for (i, q) in x[0].iter() {
                out.set(k, i, q.clone());
            }
        }
        Ok(out)
    }

    /// The adjoint `A†: target -> source` characterized by
    /// `source_pairing(A† a, b) = target_pairing(a, A b)`.
    pub fn adjoint(
        &self,
        source_pairing: &BilinearPairing,
        target_pairing: &BilinearPairing,
    ) -> Result<LinearOperator, OperatorError> {
        check_space(&self.source, &source_pairing.left)?;
        check_space(&self.source, &source_pairing.right)?;
        check_space(&self.target, &target_pairing.left)?;
        check_space(&self.target, &target_pairing.right)?;
        let top_s = source_pairing.top;
        let top_t = target_pairing.top;
        let adj_shift = top_s - top_t + self.shift;

        let mut blocks = BTreeMap::new();
        let degrees: Vec<i32> = self.target.degrees().collect();
        for k in degrees {
            let out_deg = k + adj_shift;
            let out_dim = self.source.dim(out_deg);
            let in_dim = self.target.dim(k);
            if out_dim == 0 {
                continue;
            }
            // A maps source degree c into target degree top_t - k.
            let c = top_t - k - self.shift;
            let g_s = source_pairing.block(out_deg);
            if g_s.nrows() != g_s.ncols() {
                return Err(OperatorError::DegeneratePairing { degree: out_deg });
            }
            let g_t = target_pairing.block(k);
            let rhs_matrix = g_t.mul(&self.block(c)).transpose();
            let elim = Elimination::with_rhs(&g_s.transpose(), rhs_matrix.columns())
                .map_err(|error| OperatorError::Solve { degree: k, error })?;
            if elim.rank() < out_dim {
                return Err(OperatorError::DegeneratePairing { degree: out_deg });
            }
            let cols = elim
                .solutions()
                .map_err(|error| OperatorError::Solve { degree: k, error })?;
            debug_assert_eq!(cols.len(), in_dim);
            blocks.insert(k, SparseMatrix::from_columns(out_dim, cols));
        }
        LinearOperator::new(self.target.clone(), self.source.clone(), adj_shift, blocks)
    }
}

/// A bilinear pairing `left x right -> Q` that vanishes unless degrees sum
/// to `top`. The block at left degree `k` has entries
/// `<left_k[i], right_{top-k}[j]>`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearPairing {
    left: Arc<GradedSpace>,
    right: Arc<GradedSpace>,
    top: i32,
    blocks: BTreeMap<i32, SparseMatrix>,
}

impl BilinearPairing {
    pub fn new(
        left: Arc<GradedSpace>,
        right: Arc<GradedSpace>,
        top: i32,
        blocks: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, OperatorError> {
        for (&k, m) in &blocks {
            let expected = (left.dim(k), right.dim(top - k));
            let found = (m.nrows(), m.ncols());
            if expected != found {
                return Err(OperatorError::ShapeMismatch {
                    degree: k,
                    expected,
                    found,
                });
            }
        }
        Ok(Self {
            left,
            right,
            top,
            blocks,
        })
    }

    pub fn top(&self) -> i32 {
        self.top
    }

    pub fn block(&self, k: i32) -> Cow<'_, SparseMatrix> {
        match self.blocks.get(&k) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(SparseMatrix::zeros(self.left.dim(k), self.right.dim(self.top - k))),
        }
    }

    pub fn evaluate(&self, a: &GradedVector, b: &GradedVector) -> Result<Rational, OperatorError> {
        check_space(&self.left, a.space())?;
        check_space(&self.right, b.space())?;
        let mut total = Rational::zero();
        for k in a.degrees() {
            let gb = self.block(k).mul_vec(&b.block(self.top - k));
            total += a.block(k).dot(&gb);
        }
        Ok(total)
    }

    /// True when every block is square with full rank.
    pub fn is_nondegenerate(&self) -> bool {
        self.left.degrees().all(|k| {
            let b = self.block(k);
            b.is_square() && Elimination::of(&b).rank() == b.nrows()
        })
    }
}
