//! Exact rational scalars and matrices: row reduction, kernels, images,
//! quotients and linear solves. Every rank in the crate is computed here.

mod matrix;
mod rational;
pub mod sparse;

pub use matrix::{quotient_map, RatMatrix, Rref};
pub use rational::Rational;
pub use sparse::{SparseQuotient, SparseVec};
