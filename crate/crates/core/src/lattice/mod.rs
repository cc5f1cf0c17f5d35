//! Six-vertex configurations with partial domain wall boundary conditions:
//! enumeration, transfer summation, conservation laws, height functions,
//! the ground state, and the parameter-reduction transform.

pub mod config;
pub mod ground;
pub mod height;
pub mod params;
pub mod reduce;
pub mod transfer;

pub use config::{check_conservation, enumerate_configs, Configuration, MAX_ENUM_N};
pub use ground::{ground_state, ground_state_maximality, ground_state_weight};
pub use height::{height_function, verify_height_identities, HeightGrid};
pub use params::{ModelParams, Weights6};
pub use reduce::{reduce_parameters, reduce_parameters_float, verify_reduction, ReducedWeights};
pub use transfer::{partition_transfer, partition_transfer_by_row, MAX_TRANSFER_N};
