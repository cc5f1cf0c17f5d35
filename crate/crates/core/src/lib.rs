//! Exact arithmetic for the six-vertex model with partial domain wall
//! boundary conditions (pDWBC) in the ferroelectric regime.
//!
//! The partition function of the model on an (n-m) x n lattice is computed by
//! three independent methods that must agree bit-for-bit as rationals:
//!
//! * direct configuration enumeration / transfer-matrix summation,
//! * a mixed Vandermonde/Hankel determinant built from derivatives of an
//!   exactly-rational generating function,
//! * products of discrete orthogonal-polynomial norms derived from exact
//!   moment tables.
//!
//! Everything transcendental is banished at the boundary: the model is
//! parameterized by rational exponentials T = e^t and G = e^gamma, after
//! which every weight, moment, norm and partition value is an exact rational.
//! High-precision floats enter only for asymptotic diagnostics (limit
//! residuals, Toda finite differences, polynomial zeros).

pub mod asymptotics;
pub mod error;
pub mod ik;
pub mod lattice;
pub mod orthopoly;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::params::ModelParams;
pub use scalar::{BigFloat, Polynomial, QuadExt, Rational, RationalFunction};
