//! Spatial multi-LRU caching for wireless networks with overlapping coverage.
//!
//! The crate is split along the lines of the problem:
//!
//! - [`geometry`]: station point patterns (Poisson or randomly translated
//!   lattice), Boolean coverage discs, coverage-number distributions.
//! - [`traffic`]: Zipf catalogues and space-time request streams, both IRM
//!   and a shot-noise model with temporal locality.
//! - [`policies`]: LRU inventories and every cache-management policy
//!   (single-LRU, q-LRU, multi-LRU-One/All, q-multi-LRU-All, LFU, PBP, GFI),
//!   plus the popularity/coverage upper bound on the hit probability.
//! - [`analytics`]: Che-like approximations (characteristic time, CIA for
//!   multi-LRU-One, CSA for multi-LRU-All) and the two-cache formulas.
//! - [`engine`]: seeded replications, sweeps and confidence intervals.
//! - [`cli`]: the `multilru` command-line front end.

pub mod analytics;
pub mod cli;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod io;
pub mod policies;
pub mod traffic;

pub use error::{Error, Result};
