//! Spatial-temporal embodied carbon (STEC) models for computer hardware.
//!
//! The crate turns electricity-generation data into grid carbon intensity
//! per (spatial unit, time bucket) and feeds it through per-hardware
//! embodied-carbon models, so the embodied carbon of a CPU, memory or
//! storage product can be resolved to where and when it was manufactured
//! instead of a single global yearly figure.
//!
//! Pipeline, module by module:
//!
//! * [`grid`] ingests generation CSVs (canonical, ENTSO-E-like, OWID-like),
//!   emission-factor tables and the region/zone registry.
//! * [`intensity`] computes carbon intensity per bucket and aggregates it
//!   across hour/day/season/year with generation weighting.
//! * [`hardware`] holds the CPU/memory/storage models and the reverse
//!   calibrations that recover electricity terms from published yearly
//!   figures.
//! * [`stec`] binds hardware models to intensity series at a granularity
//!   cell (STEC-CD/CS/ZY/GY) and compares against the global-yearly
//!   baseline.
//!
//! All computations are pure functions over immutable inputs; datasets are
//! safe to share across threads once built.

pub mod error;
pub mod grid;
pub mod hardware;
pub mod intensity;
pub mod stec;

pub use error::{Error, Result};
