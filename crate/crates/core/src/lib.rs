//! HAPS-to-ground connectivity simulation for 3D aerial delivery corridors.
//!
//! The crate evaluates antenna gain, link budget and Ricean-fading outage on
//! every voxel of a discretized aerial highway, sweeps the outage over K
//! factor and transmit power, and traces the connectivity of a drone platoon
//! flying through a network of HAPS and terrestrial nodes.

// `!(x > 0.0)` is the NaN-rejecting form used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antenna;
pub mod cli;
pub mod coverage;
pub mod error;
pub mod fading;
pub mod fleet;
pub mod geometry;
pub mod linkbudget;
pub mod report;
pub mod scenario;

pub use error::{Error, Result, Violation};
