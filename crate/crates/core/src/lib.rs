//! Exact verification kernel for Lax operator algebras of type G₂.
//!
//! The crate builds the 14-dimensional algebra G₂ in coordinates, truncated
//! Laurent jets of G₂-valued functions at Tyurin points, the admissibility
//! conditions those jets must satisfy, the genus-0 global realization with
//! its almost-graded structure, and the local 2-cocycle. All arithmetic is
//! over ℚ (or ℚ(√2) for the 7×7 matrix model) and every check is an exact
//! equality.

pub mod cocycle;
pub mod error;
pub mod exact;
pub mod g2;
pub mod jets;
pub mod random;
pub mod sphere;
pub mod tyurin;

pub use error::Error;
pub use exact::{Matrix, QSqrt2, Rational};
pub use g2::{G2Element, Mat3, Vec3};
pub use jets::{MatrixJet, ScalarJet};
pub use tyurin::TyurinDatum;
