//! Independent checks of the exact computations.

pub mod coupling;
pub mod grid;
pub mod sim;

pub use coupling::{coupling_check, CouplingReport};
pub use grid::{grid_cross_check, GridReport};
pub use sim::{mc_estimate_stats, simulate_channel, McStats, SimConfig};
