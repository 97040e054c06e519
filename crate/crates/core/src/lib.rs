//! Capacity-region outer bounds for two-user layered erasure interference
//! channels with channel state known only at the receivers.
//!
//! Everything on the main path is exact rational arithmetic: fading
//! statistics live in [`channel`], the six weighted-bound families and their
//! critical weights in [`bounds`], polytope machinery in [`geometry`],
//! regime classification and regime-specific regions in [`regime`], and the
//! deterministic special case in [`deterministic`]. [`oracles`] holds the
//! independent checks (Monte Carlo, quantile coupling, grid membership) and
//! [`verify`] wires them into named verification suites.

pub mod bounds;
pub mod channel;
pub mod corpus;
pub mod deterministic;
mod error;
pub mod export;
pub mod geometry;
pub mod oracles;
pub mod rational;
pub mod regime;
pub mod spec_file;
pub mod verify;

pub use bounds::{BoundFamily, BoundRegistry, FamilyKind, User, Weight, WeightedBound};
pub use channel::{ChannelSpec, FadingPmf, LayerCoefficients, Link};
pub use error::{Error, Result};
pub use geometry::{HalfPlane, Point, RegionPolytope};
pub use rational::Rational;
