//! Total colourings that tell apart every pair of vertices at distance at
//! most `r` by their weights `c(v) + Σ_{e ∋ v} c(e)`.
//!
//! The crate provides the randomized greedy construction with palette
//! `2K + k + 1`, where `K = Δ^{r-1} + k` and `k = ⌈Δ^{r-4/3} ln²Δ⌉`, together
//! with the ordering checks it relies on, an independent verifier and an
//! exhaustive solver for tiny graphs.
//!
//! ```
//! use sumdist_core::{coloring, graph::Graph, verify};
//!
//! let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
//! let out = coloring::run_algorithm(&g, 2, 7, &Default::default()).unwrap();
//! let report = verify::verify(&g, &out.coloring, 2, (&out.params_used).into()).unwrap();
//! assert!(report.valid);
//! ```
#![no_std]

extern crate alloc;

pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod ordering;
pub mod total;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{DegreePartition, Graph};
pub use total::TotalColoring;
