//! Seeded graph generators.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumdist_core::Graph;

use crate::error::{IoError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// `n` vertices in total: vertex 0 joined to the other `n - 1`.
    Star { n: usize },
    Gnp { n: usize, p: f64 },
    Regular { n: usize, d: usize },
}

impl GraphKind {
    pub fn vertex_count(&self) -> usize {
        match *self {
            GraphKind::Path { n }
            | GraphKind::Cycle { n }
            | GraphKind::Complete { n }
            | GraphKind::Star { n }
            | GraphKind::Gnp { n, .. }
            | GraphKind::Regular { n, .. } => n,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphKind::Path { n } => write!(f, "path(n={n})"),
            GraphKind::Cycle { n } => write!(f, "cycle(n={n})"),
            GraphKind::Complete { n } => write!(f, "complete(n={n})"),
            GraphKind::Star { n } => write!(f, "star(n={n})"),
            GraphKind::Gnp { n, p } => write!(f, "gnp(n={n},p={p})"),
            GraphKind::Regular { n, d } => write!(f, "regular(n={n},d={d})"),
        }
    }
}

/// Builds the graph described by `kind`. Only `gnp` and `regular` use `seed`.
pub fn generate_graph(kind: GraphKind, seed: u64) -> Result<Graph> {
    let edges = match kind {
        GraphKind::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
        GraphKind::Cycle { n } => {
            if n < 3 {
                return Err(IoError::InvalidArgs(format!("cycle needs n >= 3, got {n}")));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        GraphKind::Complete { n } => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        GraphKind::Star { n } => (1..n).map(|i| (0, i)).collect(),
        GraphKind::Gnp { n, p } => gnp_edges(n, p, seed)?,
        GraphKind::Regular { n, d } => regular_edges(n, d, seed)?,
    };
    Ok(Graph::new(kind.vertex_count(), &edges)?)
}

/// G(n, p) by geometric skipping over the pairs `(w, v)`, `w < v`, so the
/// cost is proportional to the number of edges drawn.
fn gnp_edges(n: usize, p: f64, seed: u64) -> Result<Vec<(usize, usize)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(IoError::InvalidArgs(format!("gnp needs 0 <= p <= 1, got {p}")));
    }
    let mut edges = Vec::new();
    if p == 0.0 || n < 2 {
        return Ok(edges);
    }
    if p == 1.0 {
        return Ok((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let x: f64 = rng.random();
        w += 1 + ((1.0 - x).ln() / log_q).floor() as i64;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Ok(edges)
}

/// Random `d`-regular graph from the pairing model. Stubs are paired one
/// pair at a time and a pair that would form a loop or a repeated edge is
/// redrawn; if no valid pair is left the pairing starts over.
fn regular_edges(n: usize, d: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if n > 0 && d >= n {
        return Err(IoError::InvalidArgs(format!("regular needs d < n, got n={n}, d={d}")));
    }
    if (n * d) % 2 == 1 {
        return Err(IoError::InvalidArgs(format!("regular needs n*d even, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const RESTARTS: usize = 1000;
    for _ in 0..RESTARTS {
        if let Some(mut edges) = try_pairing(n, d, &mut rng) {
            edges.sort_unstable();
            return Ok(edges);
        }
    }
    Err(IoError::InvalidArgs(format!(
        "no simple {d}-regular graph on {n} vertices found after {RESTARTS} pairings"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen = HashSet::with_capacity(n * d / 2);
    let mut edges = Vec::with_capacity(n * d / 2);
    while !stubs.is_empty() {
        let len = stubs.len();
        let mut placed = false;
        for _ in 0..64 {
            let (i, j) = (rng.random_range(0..len), rng.random_range(0..len));
            let (a, b) = (stubs[i].min(stubs[j]), stubs[i].max(stubs[j]));
            if a != b && !seen.contains(&(a, b)) {
                seen.insert((a, b));
                edges.push((a, b));
                let (hi, lo) = (i.max(j), i.min(j));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
        }
        if !placed && !has_valid_pair(&stubs, &seen) {
            return None;
        }
    }
    Some(edges)
}

fn has_valid_pair(stubs: &[usize], seen: &HashSet<(usize, usize)>) -> bool {
    let mut vs = stubs.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.iter().enumerate().any(|(i, &a)| vs[i + 1..].iter().any(|&b| !seen.contains(&(a, b))))
}
