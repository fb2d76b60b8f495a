//! Gradual pattern mining over bitmap order matrices.
//!
//! A gradual pattern is a set of `(attribute, variation)` pairs read as
//! "the more X, the less Y". This crate provides one shared data model and
//! six miners on top of it:
//!
//! - [`graank::mine_graank`] — breadth-first level-wise search over binary
//!   order matrices,
//! - [`transactional::mine_paraminer`] — depth-first closed-pattern search
//!   over a transactional pair encoding,
//! - [`aco::mine_aco_graank`] and [`aco::mine_aco_paraminer`] — ant-colony
//!   variants of the two above, driven by pheromone matrices,
//! - [`evo::mine_ga`] and [`evo::mine_pso`] — genetic-algorithm and
//!   particle-swarm miners over a continuous pattern encoding,
//!
//! plus [`oracle::enumerate_frequent`], a brute-force reference that shares
//! no code with the bitmap kernel and is used to cross-check every miner.
//!
//! The crate is `no_std` (with `alloc`); IO, CSV parsing and the benchmark
//! harness live in the companion `gradmine` crate.

#![no_std]

extern crate alloc;

pub mod aco;
pub mod dataset;
pub mod evo;
pub mod graank;
pub mod oracle;
pub mod order;
pub mod pattern;
pub mod result;
pub mod track;
pub mod transactional;

pub use dataset::NumericDataset;
pub use order::OrderMatrix;
pub use pattern::{GradualItem, GradualPattern, SupportedPattern, Variation};
pub use result::MiningResult;
