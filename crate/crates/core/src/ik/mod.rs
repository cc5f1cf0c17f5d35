//! The determinant route to the partition function: the exact generating
//! function phi with its derivative ladder, the mixed Vandermonde/Hankel
//! determinant, the homogeneous formula, and the row-inhomogeneous formula
//! with its inductive limit lemma.

pub mod inhomogeneous;
pub mod phi;
pub mod tau;

pub use inhomogeneous::{
    f_factor, limit_lemma_check, row_weight_stack, row_weights, z_det_inhomogeneous,
    z_det_inhomogeneous_f, SpectralParams,
};
pub use phi::{phi_derivative_series, phi_derivatives, phi_rational_function, PhiBundle};
pub use tau::{tau, tau_from_bundle, z_det, z_det_from_bundle};
