//! Exact scalars and dense exact linear algebra.

mod matrix;
mod qsqrt2;
mod rational;

pub use matrix::{solve_affine, AffineSolution, Field, InjectiveSolver, LinearSystem, Matrix, Rref};
pub use qsqrt2::QSqrt2;
pub use rational::Rational;
