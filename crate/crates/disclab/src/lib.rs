//! Exact and constructive tools for multicolour subgraph discrepancy and
//! balanced vertex separations.
//!
//! The crate revolves around a single quantity: given an edge colouring of a
//! graph with r colours, how far must the best-represented colour inside a
//! spanning tree (or Hamilton cycle, or perfect matching) deviate from a
//! perfectly even split? Everything here either computes that deviation
//! exactly at desk scale, constructs families that pin its extremes, or
//! extracts the balanced vertex separations that certify it.

pub mod beta;
pub mod colouring;
pub mod connectivity;
pub mod discrepancy;
pub mod dual;
pub mod error;
pub mod experiment;
pub mod extremal;
pub mod generators;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod isoperimetry;
pub mod separation;
pub mod smallgraphs;
pub mod spectral;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::Graph;
