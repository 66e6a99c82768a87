use alloc::vec;
use alloc::vec::Vec;

use super::params::Params;
use crate::error::{Error, Result};
use crate::graph::{DegreePartition, Graph, Vertex};

/// Admitted additive change to one edge colour while a vertex is processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaInterval {
    pub lo: i64,
    pub hi: i64,
}

impl DeltaInterval {
    pub fn width(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn clamp(&self, x: i64) -> i64 {
        x.clamp(self.lo, self.hi)
    }
}

/// Temporary colours, cached weights and fixed targets during a run.
///
/// A vertex is *processed* once its target weight is fixed. From then on its
/// slack `target - weight` must stay within `[0, K]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringState {
    vertex: Vec<i64>,
    edge: Vec<i64>,
    weight: Vec<i64>,
    target: Vec<Option<i64>>,
}

impl ColoringState {
    /// Vertex colours 1, edge colours `K + 1`, nothing processed.
    pub fn new(g: &Graph, p: &Params) -> Self {
        let edge_color = p.big_step as i64 + 1;
        ColoringState {
            vertex: vec![1; g.vertex_count()],
            edge: vec![edge_color; g.edge_count()],
            weight: (0..g.vertex_count()).map(|v| 1 + g.degree(v) as i64 * edge_color).collect(),
            target: vec![None; g.vertex_count()],
        }
    }

    pub fn vertex_color(&self, v: Vertex) -> i64 {
        self.vertex[v]
    }

    pub fn edge_color(&self, e: usize) -> i64 {
        self.edge[e]
    }

    /// Cached `c(v) + Σ c(e)` under the current colours.
    pub fn weight(&self, v: Vertex) -> i64 {
        self.weight[v]
    }

    pub fn target(&self, v: Vertex) -> Option<i64> {
        self.target[v]
    }

    pub fn is_processed(&self, v: Vertex) -> bool {
        self.target[v].is_some()
    }

    pub fn slack(&self, v: Vertex) -> Option<i64> {
        self.target[v].map(|t| t - self.weight[v])
    }

    /// Range the colour of edge `uv` may move by while `v` is processed.
    ///
    /// Forward edges (u not yet processed) may grow by up to `K` when v is
    /// small and u big, by up to `k` otherwise. Backward edges may move by
    /// `±K` (u big) or `±k` (u small), cut down to `[s - K, s]` where `s`
    /// is u's slack so that u's slack stays in `[0, K]`.
    pub fn edge_delta_interval(
        &self,
        p: &Params,
        part: &DegreePartition,
        v: Vertex,
        u: Vertex,
    ) -> DeltaInterval {
        let big = p.big_step as i64;
        let small = p.small_step as i64;
        match self.slack(u) {
            None => {
                let hi = if part.is_small(v) && part.is_big(u) { big } else { small };
                DeltaInterval { lo: 0, hi }
            }
            Some(s) => {
                let step = if part.is_big(u) { big } else { small };
                DeltaInterval { lo: (-step).max(s - big), hi: step.min(s) }
            }
        }
    }

    /// Every weight `v` can reach through admitted alterations: the
    /// Minkowski sum of the per-edge intervals, shifted by the current weight.
    pub fn feasible_sum_interval(
        &self,
        g: &Graph,
        p: &Params,
        part: &DegreePartition,
        v: Vertex,
    ) -> (i64, i64) {
        let w = self.weight[v];
        g.neighbors(v).iter().fold((w, w), |(lo, hi), &u| {
            let iv = self.edge_delta_interval(p, part, v, u);
            (lo + iv.lo, hi + iv.hi)
        })
    }

    /// Moves `v`'s weight to `target` and fixes it as `v`'s final weight.
    ///
    /// The required change is spread greedily over the incident edges,
    /// backward edges first and then forward edges, each in ascending
    /// neighbour order, saturating each edge before moving on. Returns the
    /// sum of the applied edge deltas.
    pub fn apply_target(
        &mut self,
        g: &Graph,
        p: &Params,
        part: &DegreePartition,
        v: Vertex,
        target: i64,
    ) -> Result<i64> {
        if self.is_processed(v) {
            return Err(Error::ParameterOutOfRange("vertex already processed"));
        }
        let (lo, hi) = self.feasible_sum_interval(g, p, part, v);
        if target < lo || target > hi {
            return Err(Error::InfeasibleTarget { vertex: v, target, lo, hi });
        }
        let mut remaining = target - self.weight[v];
        let mut applied = 0;
        for backward_pass in [true, false] {
            for (&u, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                if self.is_processed(u) != backward_pass || remaining == 0 {
                    continue;
                }
                let delta = self.edge_delta_interval(p, part, v, u).clamp(remaining);
                self.edge[e] += delta;
                self.weight[u] += delta;
                self.weight[v] += delta;
                remaining -= delta;
                applied += delta;
            }
        }
        debug_assert_eq!(remaining, 0);
        self.target[v] = Some(target);
        Ok(applied)
    }

    /// Checks weight-cache coherence, slack bounds and colour ranges over
    /// the whole graph.
    pub fn check_invariants(&self, g: &Graph, p: &Params) -> core::result::Result<(), &'static str> {
        let big = p.big_step as i64;
        let edge_cap = p.palette_cap() as i64;
        let vertex_cap = p.vertex_cap() as i64;
        if self.edge.iter().any(|&c| c < 1 || c > edge_cap) {
            return Err("edge colour outside [1, 2K+k+1]");
        }
        if self.vertex.iter().any(|&c| c < 1 || c > vertex_cap) {
            return Err("vertex colour outside [1, K+1]");
        }
        for v in 0..g.vertex_count() {
            let fresh: i64 =
                self.vertex[v] + g.incident_edges(v).iter().map(|&e| self.edge[e]).sum::<i64>();
            if fresh != self.weight[v] {
                return Err("cached weight differs from recomputed weight");
            }
            if let Some(s) = self.slack(v) {
                if s < 0 || s > big {
                    return Err("slack outside [0, K]");
                }
            }
        }
        Ok(())
    }

    /// Adds each vertex's slack to its colour so every weight hits its
    /// target. Unprocessed vertices keep their colour.
    pub fn finalize(mut self) -> (Vec<i64>, Vec<i64>) {
        for v in 0..self.vertex.len() {
            if let Some(s) = self.slack(v) {
                self.vertex[v] += s;
                self.weight[v] += s;
            }
        }
        (self.vertex, self.edge)
    }

    pub(crate) fn fix_isolated(&mut self, v: Vertex) {
        self.target[v] = Some(self.weight[v]);
    }
}

/// Smallest value of `[lo, hi]` not in `forbidden`. Reorders `forbidden`.
pub fn choose_target_in(lo: i64, hi: i64, forbidden: &mut [i64]) -> Option<i64> {
    forbidden.sort_unstable();
    let mut candidate = lo;
    for &f in forbidden.iter() {
        if f > candidate {
            break;
        }
        if f == candidate {
            candidate += 1;
        }
    }
    (candidate <= hi).then_some(candidate)
}

/// Smallest value of `feasible` not in `forbidden`.
pub fn choose_target(feasible: (i64, i64), forbidden: &[i64]) -> Option<i64> {
    let mut scratch = forbidden.to_vec();
    choose_target_in(feasible.0, feasible.1, &mut scratch)
}
