use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Colours for every vertex and every edge, indexed like the graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TotalColoring {
    pub vertex: Vec<u64>,
    pub edge: Vec<u64>,
}

impl TotalColoring {
    pub fn new(vertex: Vec<u64>, edge: Vec<u64>) -> Self {
        TotalColoring { vertex, edge }
    }

    /// Constant colouring, mostly useful in tests.
    pub fn uniform(g: &Graph, color: u64) -> Self {
        TotalColoring {
            vertex: alloc::vec![color; g.vertex_count()],
            edge: alloc::vec![color; g.edge_count()],
        }
    }

    /// Largest colour on any element, zero for an empty graph.
    pub fn max_color(&self) -> u64 {
        self.vertex.iter().chain(&self.edge).copied().max().unwrap_or(0)
    }

    pub fn check_shape(&self, g: &Graph) -> Result<()> {
        let expected = (g.vertex_count(), g.edge_count());
        let found = (self.vertex.len(), self.edge.len());
        if expected == found {
            Ok(())
        } else {
            Err(Error::ShapeMismatch { expected, found })
        }
    }
}
