//! Exact integer linear algebra.

pub mod abelian;
pub mod chain;
pub mod matrix;
pub mod snf;

pub use abelian::AbelianGroup;
pub use chain::{ChainComplex, ChainError, ChainMap, Direction, HomologyBasis, InducedMap};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{diagonalize, invariant_factors, rank, Diagonalization, Track};
