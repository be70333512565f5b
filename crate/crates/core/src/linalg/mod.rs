//! Exact rational linear algebra and the two numerical kernels built on it.

pub mod expm;
pub mod matrix;
pub mod quadrature;
pub mod rational;

pub use expm::{expm, expm_exact, logm, logm_exact, Evaluated};
pub use matrix::{nullspace, rank, rref, FMatrix, Matrix, QMatrix};
pub use quadrature::QuadratureRule;
pub use rational::Rational;
