//! Generators, text formats, batch experiments and the `sumdist` command line
//! on top of [`sumdist_core`].

pub mod cli;
pub mod error;
pub mod experiments;
pub mod formats;
pub mod generate;
pub mod report;

pub use error::{IoError, Result};
pub use generate::{generate_graph, GraphKind};
