//! Exact arithmetic substrate: rationals, dense matrices, sparse
//! elimination and multivariate polynomials.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sparse;

pub use matrix::{RatMatrix, Rref};
pub use poly::{Monomial, MultiPoly, Symbol};
pub use rational::Rational;
pub use sparse::{SparseEliminator, SparseRow};
