//! Centrality measures and consensus dynamics for undirected networks.
//!
//! The crate covers four layers that build on each other:
//!
//! * [`graph`]: simple undirected graphs, generators, edge-list I/O.
//! * [`centrality`]: classic node scores (degree, betweenness, closeness,
//!   eigenvector) and cumulative-degree scores that grade local influence
//!   by neighborhood depth.
//! * [`consensus`]: averaging weight matrices (Vicsek, Metropolis, max
//!   degree, and a centrality-driven directed rule), iteration of the
//!   dynamics, activation schedules and convergence-rate estimation.
//! * [`compare`] and [`gas`]: harnesses that relate the two worlds, from
//!   error profiles of truncated scores to pressure coordination in a
//!   gas transport network.
//!
//! All randomized entry points take an explicit seed and produce
//! identical results for identical inputs on every platform.

// Validation spells `!(x > 0.0)` on purpose: the negation fails closed
// on NaN, which `x <= 0.0` would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod centrality;
pub mod cli;
pub mod compare;
pub mod consensus;
pub mod error;
pub mod gas;
pub mod graph;

pub use error::{Error, Result};
