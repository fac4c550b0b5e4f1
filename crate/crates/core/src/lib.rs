//! Toolkit for finding balanced clique subdivisions in graphs: sublinear
//! expander extraction, avoidance-robust short connections, adjuster
//! gadgets for exact-length parity-correct paths, dense/sparse assembly
//! pipelines, and independently checkable certificates.
//!
//! The library is organized bottom-up:
//!
//! - [`graph`]: immutable simple graphs and primitive queries
//! - [`expander`]: the sublinear expansion function and expander extraction
//! - [`connect`]: short connections avoiding forbidden sets, vertex
//!   expansions, ball growth, consecutive-shortest-path bookkeeping
//! - [`adjuster`]: gadgets realizing an arithmetic progression of path
//!   lengths, and exact-length connection built on them
//! - [`builder`]: the assembly pipelines producing subdivision certificates
//! - [`verify`]: certificate validation and brute-force ground truth
//! - [`harness`]: graph generators, the scaling benchmark, and small-graph
//!   enumeration

#![forbid(unsafe_code)]

pub mod adjuster;
pub mod builder;
pub mod connect;
pub mod expander;
pub mod graph;
pub mod harness;
pub mod verify;

pub use graph::{Graph, Path, Vertex};
