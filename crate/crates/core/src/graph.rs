//! Immutable simple graphs, r-hop balls and the small/big degree split.
//!
//! Vertices are the dense integers `0..n`. Edges keep the index they had in
//! the input list, so every per-edge array downstream is indexed the same way
//! regardless of how the graph was built.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// A simple undirected graph in compressed adjacency form.
///
/// Each adjacency list is sorted by neighbour index and carries the id of the
/// connecting edge alongside the neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
    incident: Vec<EdgeId>,
    max_degree: usize,
    neighbor_degree_sum: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge `i` of the result is `edge_list[i]`
    /// with its endpoints in ascending order.
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut degree = vec![0usize; n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { vertex: u });
            }
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u.min(v), u.max(v)));
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut slots: Vec<(Vertex, EdgeId)> = vec![(0, 0); offsets[n]];
        let mut fill = offsets[..n].to_vec();
        for (id, &(u, v)) in edges.iter().enumerate() {
            slots[fill[u]] = (v, id);
            fill[u] += 1;
            slots[fill[v]] = (u, id);
            fill[v] += 1;
        }
        for v in 0..n {
            let list = &mut slots[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::DuplicateEdge { u: v.min(w[0].0), v: v.max(w[0].0) });
            }
        }
        let (neighbors, incident): (Vec<_>, Vec<_>) = slots.into_iter().unzip();

        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let neighbor_degree_sum = (0..n)
            .map(|v| neighbors[offsets[v]..offsets[v + 1]].iter().map(|&u| degree[u]).sum())
            .collect();

        Ok(Graph { edges, offsets, neighbors, incident, max_degree, neighbor_degree_sum })
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e`, smaller index first.
    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids incident with `v`, parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.incident[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Δ, zero for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// D(v), the sum of the degrees of the neighbours of `v`.
    pub fn neighbor_degree_sum(&self, v: Vertex) -> usize {
        self.neighbor_degree_sum[v]
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let list = self.neighbors(u);
        list.binary_search(&v).ok().map(|i| self.incident_edges(u)[i])
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.vertex_count() })
        }
    }

    /// N^r(v): every vertex other than `v` within distance `r`, sorted.
    pub fn r_neighborhood(&self, v: Vertex, r: u32) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        if r < 1 {
            return Err(Error::RadiusTooSmall { r, min: 1 });
        }
        let mut ball = BallScanner::new(self.vertex_count()).scan(self, v, r).to_vec();
        ball.sort_unstable();
        Ok(ball)
    }
}

/// Reusable truncated breadth-first search.
///
/// Visited marks are epoch-stamped, so consecutive scans cost time
/// proportional to the ball they explore and never clear the whole array.
#[derive(Debug, Clone)]
pub struct BallScanner {
    mark: Vec<u32>,
    epoch: u32,
    ball: Vec<Vertex>,
}

impl BallScanner {
    pub fn new(n: usize) -> Self {
        BallScanner { mark: vec![0; n], epoch: 0, ball: Vec::new() }
    }

    /// Vertices at distance `1..=r` from `v`, in breadth-first order.
    pub fn scan(&mut self, g: &Graph, v: Vertex, r: u32) -> &[Vertex] {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.ball.clear();
        self.mark[v] = epoch;
        if r == 0 {
            return &self.ball;
        }
        for &u in g.neighbors(v) {
            self.mark[u] = epoch;
            self.ball.push(u);
        }
        let mut layer_start = 0;
        for _ in 1..r {
            let layer_end = self.ball.len();
            if layer_start == layer_end {
                break;
            }
            for i in layer_start..layer_end {
                let w = self.ball[i];
                for &u in g.neighbors(w) {
                    if self.mark[u] != epoch {
                        self.mark[u] = epoch;
                        self.ball.push(u);
                    }
                }
            }
            layer_start = layer_end;
        }
        &self.ball
    }
}

/// All r-hop balls of a graph stored back to back.
///
/// Memory is `Σ_v d^r(v)` indices. Entries are `u32`, which bounds the
/// graph at `u32::MAX` vertices.
#[derive(Debug, Clone)]
pub struct RNeighborhoods {
    radius: u32,
    offsets: Vec<usize>,
    members: Vec<u32>,
}

impl RNeighborhoods {
    pub fn compute(g: &Graph, r: u32) -> Result<Self> {
        if r < 1 {
            return Err(Error::RadiusTooSmall { r, min: 1 });
        }
        let n = g.vertex_count();
        if n > u32::MAX as usize {
            return Err(Error::ParameterOutOfRange("graph too large for cached balls"));
        }
        let mut scanner = BallScanner::new(n);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut members = Vec::new();
        offsets.push(0);
        for v in 0..n {
            let start = members.len();
            members.extend(scanner.scan(g, v, r).iter().map(|&u| u as u32));
            members[start..].sort_unstable();
            offsets.push(members.len());
        }
        Ok(RNeighborhoods { radius: r, offsets, members })
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Sorted N^r(v).
    pub fn ball(&self, v: Vertex) -> &[u32] {
        &self.members[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Σ_v d^r(v).
    pub fn total_size(&self) -> usize {
        self.members.len()
    }
}

/// Where r-hop balls come from: a precomputed table or a fresh scan per query.
#[derive(Debug, Clone)]
pub enum BallSource<'a> {
    Cached(&'a RNeighborhoods),
    Scan { scanner: BallScanner, radius: u32 },
}

impl<'a> BallSource<'a> {
    pub fn scan(g: &Graph, radius: u32) -> Self {
        BallSource::Scan { scanner: BallScanner::new(g.vertex_count()), radius }
    }

    pub fn radius(&self) -> u32 {
        match self {
            BallSource::Cached(balls) => balls.radius(),
            BallSource::Scan { radius, .. } => *radius,
        }
    }

    /// Calls `f` once for every member of N^r(v), in unspecified order.
    pub fn for_each(&mut self, g: &Graph, v: Vertex, mut f: impl FnMut(Vertex)) {
        match self {
            BallSource::Cached(balls) => balls.ball(v).iter().for_each(|&u| f(u as Vertex)),
            BallSource::Scan { scanner, radius } => {
                scanner.scan(g, v, *radius).iter().for_each(|&u| f(u))
            }
        }
    }
}

/// Small/big classification: `v` is small iff `d(v)^3 ≤ Δ^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePartition {
    big: Vec<bool>,
    small_neighbors: Vec<usize>,
    big_neighbors: Vec<usize>,
}

impl DegreePartition {
    pub fn new(g: &Graph) -> Self {
        let delta_sq = (g.max_degree() as u128).pow(2);
        let big: Vec<bool> =
            (0..g.vertex_count()).map(|v| (g.degree(v) as u128).pow(3) > delta_sq).collect();
        let big_neighbors: Vec<usize> = (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().filter(|&&u| big[u]).count())
            .collect();
        let small_neighbors =
            (0..g.vertex_count()).map(|v| g.degree(v) - big_neighbors[v]).collect();
        DegreePartition { big, small_neighbors, big_neighbors }
    }

    pub fn is_big(&self, v: Vertex) -> bool {
        self.big[v]
    }

    pub fn is_small(&self, v: Vertex) -> bool {
        !self.big[v]
    }

    /// s(v)
    pub fn small_neighbors(&self, v: Vertex) -> usize {
        self.small_neighbors[v]
    }

    /// b(v)
    pub fn big_neighbors(&self, v: Vertex) -> usize {
        self.big_neighbors[v]
    }
}

/// `(D(v)·Δ^{r-2}, d(v)·Δ^{r-1})`, the two upper bounds on `d^r(v)`.
/// Saturates at `u64::MAX`.
pub fn dr_upper_bounds(g: &Graph, v: Vertex, r: u32) -> Result<(u64, u64)> {
    g.check_vertex(v)?;
    if r < 2 {
        return Err(Error::RadiusTooSmall { r, min: 2 });
    }
    let delta = g.max_degree() as u64;
    let by_sum = (g.neighbor_degree_sum(v) as u64).saturating_mul(delta.saturating_pow(r - 2));
    let by_degree = (g.degree(v) as u64).saturating_mul(delta.saturating_pow(r - 1));
    Ok((by_sum, by_degree))
}
