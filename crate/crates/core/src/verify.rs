//! Independent checks of a finished total colouring.
//!
//! Nothing here reads the construction's caches: weights are recomputed from
//! the raw colours and the graph alone.

use alloc::vec::Vec;

use crate::coloring::Params;
use crate::error::{Error, Result};
use crate::graph::{BallScanner, Graph, Vertex};
use crate::total::TotalColoring;

/// `c(v) + Σ_{e ∋ v} c(e)`.
pub fn vertex_weight(g: &Graph, c: &TotalColoring, v: Vertex) -> Result<u64> {
    g.check_vertex(v)?;
    c.check_shape(g)?;
    Ok(weight_unchecked(g, c, v))
}

fn weight_unchecked(g: &Graph, c: &TotalColoring, v: Vertex) -> u64 {
    c.vertex[v] + g.incident_edges(v).iter().map(|&e| c.edge[e]).sum::<u64>()
}

pub fn weights(g: &Graph, c: &TotalColoring) -> Result<Vec<u64>> {
    c.check_shape(g)?;
    Ok((0..g.vertex_count()).map(|v| weight_unchecked(g, c, v)).collect())
}

/// Every pair `u < v` at distance `1..=r` with equal weights, sorted.
pub fn find_conflicts(g: &Graph, c: &TotalColoring, r: u32) -> Result<Vec<(Vertex, Vertex)>> {
    if r < 1 {
        return Err(Error::RadiusTooSmall { r, min: 1 });
    }
    let w = weights(g, c)?;
    let mut scanner = BallScanner::new(g.vertex_count());
    let mut conflicts = Vec::new();
    for v in 0..g.vertex_count() {
        let start = conflicts.len();
        conflicts.extend(
            scanner.scan(g, v, r).iter().filter(|&&u| u > v && w[u] == w[v]).map(|&u| (v, u)),
        );
        conflicts[start..].sort_unstable();
    }
    Ok(conflicts)
}

/// Upper limits for vertex and edge colours; the lower limit is always 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaletteCaps {
    pub vertex: u64,
    pub edge: u64,
}

impl PaletteCaps {
    /// The same cap for vertices and edges, as in `ts_r`.
    pub fn uniform(colors: u64) -> Self {
        PaletteCaps { vertex: colors, edge: colors }
    }
}

impl From<&Params> for PaletteCaps {
    fn from(p: &Params) -> Self {
        PaletteCaps { vertex: p.vertex_cap(), edge: p.palette_cap() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaletteCheck {
    pub ok: bool,
    pub max_vertex_color: u64,
    pub max_edge_color: u64,
}

pub fn check_palette(c: &TotalColoring, caps: PaletteCaps) -> PaletteCheck {
    let in_range = |cap: u64| move |&x: &u64| (1..=cap).contains(&x);
    PaletteCheck {
        ok: c.vertex.iter().all(in_range(caps.vertex)) && c.edge.iter().all(in_range(caps.edge)),
        max_vertex_color: c.vertex.iter().copied().max().unwrap_or(0),
        max_edge_color: c.edge.iter().copied().max().unwrap_or(0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub conflicts: Vec<(Vertex, Vertex)>,
    pub palette_ok: bool,
    pub max_vertex_color: u64,
    pub max_edge_color: u64,
}

pub fn verify(g: &Graph, c: &TotalColoring, r: u32, caps: PaletteCaps) -> Result<VerifyReport> {
    let conflicts = find_conflicts(g, c, r)?;
    let palette = check_palette(c, caps);
    Ok(VerifyReport {
        valid: conflicts.is_empty() && palette.ok,
        conflicts,
        palette_ok: palette.ok,
        max_vertex_color: palette.max_vertex_color,
        max_edge_color: palette.max_edge_color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn weight_examples() {
        let g = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        let c = TotalColoring::new(vec![2, 1, 1], vec![3, 4]);
        assert_eq!(vertex_weight(&g, &c, 0).unwrap(), 9);
        let iso = Graph::new(1, &[]).unwrap();
        assert_eq!(vertex_weight(&iso, &TotalColoring::new(vec![5], vec![]), 0).unwrap(), 5);
        let g = p3();
        assert_eq!(vertex_weight(&g, &TotalColoring::uniform(&g, 1), 1).unwrap(), 3);
        assert!(matches!(vertex_weight(&g, &TotalColoring::uniform(&g, 1), 3), Err(_)));
    }

    #[test]
    fn conflicts_in_p3() {
        let g = p3();
        let c = TotalColoring::uniform(&g, 1);
        assert_eq!(find_conflicts(&g, &c, 2).unwrap(), vec![(0, 2)]);
        assert!(find_conflicts(&g, &c, 1).unwrap().is_empty());
        assert!(find_conflicts(&g, &c, 0).is_err());
    }

    #[test]
    fn k2_symmetric_conflict() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let c = TotalColoring::uniform(&g, 1);
        assert_eq!(find_conflicts(&g, &c, 1).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn palette_checks() {
        let g = p3();
        let p = Params::derive(2, 2).unwrap();
        let mut c = TotalColoring::uniform(&g, 1);
        assert!(check_palette(&c, (&p).into()).ok);
        c.vertex[0] = p.vertex_cap() + 1;
        let check = check_palette(&c, (&p).into());
        assert!(!check.ok);
        assert_eq!(check.max_vertex_color, 5);
        c.vertex[0] = 0;
        assert!(!check_palette(&c, (&p).into()).ok);
    }

    #[test]
    fn report_combines_flags() {
        let g = p3();
        let c = TotalColoring::new(vec![1, 1, 1], vec![1, 2]);
        let report = verify(&g, &c, 2, PaletteCaps::uniform(2)).unwrap();
        assert!(report.valid);
        let report = verify(&g, &c, 2, PaletteCaps::uniform(1)).unwrap();
        assert!(!report.valid && report.conflicts.is_empty() && !report.palette_ok);
        let short = TotalColoring::new(vec![1, 1], vec![1, 2]);
        assert!(matches!(verify(&g, &short, 2, PaletteCaps::uniform(2)), Err(Error::ShapeMismatch { .. })));
    }
}
