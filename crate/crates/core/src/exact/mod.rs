//! Exact arithmetic substrate: rationals, sparse matrices, graded spaces,
//! operators, pairings and elimination.

pub mod graded;
pub mod matrix;
pub mod rational;
pub mod solve;

pub use graded::{BilinearPairing, GradedSpace, GradedVector, Homogeneity, LinearOperator, OperatorError};
pub use matrix::{SparseMatrix, SparseVec};
pub use rational::{bit_size, format_rational, int, parse_rational, rat, sign, Rational};
pub use solve::{Elimination, SolveError};
