//! Exhaustive search for `ts_r(G)` on very small graphs.
//!
//! Elements (vertices and edges) are coloured one at a time in a fixed order
//! where every vertex comes right after its last incident edge. A vertex's
//! weight is final the moment the vertex itself is coloured, so that is where
//! conflicts with already finished r-neighbours get pruned.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::total::TotalColoring;

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Element {
    Vertex(Vertex),
    Edge(usize),
}

fn element_order(g: &Graph) -> Vec<Element> {
    let n = g.vertex_count();
    // Edges grouped by the later endpoint in breadth-first order.
    let mut rank = vec![usize::MAX; n];
    let mut visit = Vec::with_capacity(n);
    for root in 0..n {
        if rank[root] != usize::MAX {
            continue;
        }
        rank[root] = visit.len();
        visit.push(root);
        let mut head = visit.len() - 1;
        while head < visit.len() {
            let v = visit[head];
            head += 1;
            for &u in g.neighbors(v) {
                if rank[u] == usize::MAX {
                    rank[u] = visit.len();
                    visit.push(u);
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(g.edge_count());
    for &v in &visit {
        for (&u, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
            if rank[u] < rank[v] {
                edges.push(e);
            }
        }
    }
    let mut last_edge = vec![None; n];
    for (i, &e) in edges.iter().enumerate() {
        let (a, b) = g.edge(e);
        last_edge[a] = Some(i);
        last_edge[b] = Some(i);
    }
    let mut order: Vec<Element> =
        (0..n).filter(|&v| last_edge[v].is_none()).map(Element::Vertex).collect();
    for (i, &e) in edges.iter().enumerate() {
        order.push(Element::Edge(e));
        let (a, b) = g.edge(e);
        for v in [a, b] {
            if last_edge[v] == Some(i) {
                order.push(Element::Vertex(v));
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<Element>,
    balls: Vec<Vec<Vertex>>,
    colors: u64,
    vertex: Vec<u64>,
    edge: Vec<u64>,
    partial: Vec<u64>,
    done: Vec<bool>,
    nodes: u64,
    node_cap: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool> {
        let Some(&element) = self.order.get(depth) else {
            return Ok(true);
        };
        for c in 1..=self.colors {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::SearchBudgetExceeded { nodes: self.node_cap });
            }
            match element {
                Element::Edge(e) => {
                    let (a, b) = self.g.edge(e);
                    self.edge[e] = c;
                    self.partial[a] += c;
                    self.partial[b] += c;
                    let found = self.run(depth + 1)?;
                    if found {
                        return Ok(true);
                    }
                    self.partial[a] -= c;
                    self.partial[b] -= c;
                }
                Element::Vertex(v) => {
                    let w = self.partial[v] + c;
                    let clash = self.balls[v]
                        .iter()
                        .any(|&u| self.done[u] && self.partial[u] + self.vertex[u] == w);
                    if clash {
                        continue;
                    }
                    self.vertex[v] = c;
                    self.done[v] = true;
                    if self.run(depth + 1)? {
                        return Ok(true);
                    }
                    self.done[v] = false;
                }
            }
        }
        Ok(false)
    }
}

/// A colouring with colours in `[1, colors]` and no r-neighbour conflicts,
/// or `None` if the search proves there is none.
///
/// Fails with [`Error::SearchBudgetExceeded`] after `node_cap` assignments;
/// that means *unknown*, not *impossible*.
pub fn is_colorable(
    g: &Graph,
    r: u32,
    colors: u64,
    node_cap: u64,
) -> Result<Option<TotalColoring>> {
    if colors == 0 {
        return Err(Error::ParameterOutOfRange("palette size must be at least 1"));
    }
    if r < 1 {
        return Err(Error::RadiusTooSmall { r, min: 1 });
    }
    let n = g.vertex_count();
    let balls = (0..n).map(|v| g.r_neighborhood(v, r)).collect::<Result<Vec<_>>>()?;
    let mut search = Search {
        g,
        order: element_order(g),
        balls,
        colors,
        vertex: vec![0; n],
        edge: vec![0; g.edge_count()],
        partial: vec![0; n],
        done: vec![false; n],
        nodes: 0,
        node_cap,
    };
    if search.run(0)? {
        Ok(Some(TotalColoring::new(search.vertex, search.edge)))
    } else {
        Ok(None)
    }
}

/// `ts_r(G)` if it is at most `max_colors`, with a witness.
pub fn min_strength(
    g: &Graph,
    r: u32,
    max_colors: u64,
    node_cap: u64,
) -> Result<Option<(u64, TotalColoring)>> {
    if max_colors == 0 {
        return Err(Error::ParameterOutOfRange("max_colors must be at least 1"));
    }
    for colors in 1..=max_colors {
        if let Some(c) = is_colorable(g, r, colors, node_cap)? {
            return Ok(Some((colors, c)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{find_conflicts, weights};

    fn k2() -> Graph {
        Graph::new(2, &[(0, 1)]).unwrap()
    }

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn vertices_follow_their_last_edge() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 2)]).unwrap();
        let order = element_order(&g);
        assert_eq!(order.len(), 9);
        for v in 0..5 {
            let at = order.iter().position(|&x| x == Element::Vertex(v)).unwrap();
            for &e in g.incident_edges(v) {
                let e_at = order.iter().position(|&x| x == Element::Edge(e)).unwrap();
                assert!(e_at < at);
            }
        }
        // isolated vertex 4 goes first
        assert_eq!(order[0], Element::Vertex(4));
    }

    #[test]
    fn k2_needs_two_colours() {
        assert_eq!(is_colorable(&k2(), 1, 1, DEFAULT_NODE_CAP).unwrap(), None);
        let c = is_colorable(&k2(), 1, 2, DEFAULT_NODE_CAP).unwrap().unwrap();
        assert_ne!(c.vertex[0], c.vertex[1]);
        assert_eq!(min_strength(&k2(), 1, 5, DEFAULT_NODE_CAP).unwrap().unwrap().0, 2);
    }

    #[test]
    fn p3_two_distance() {
        let g = p3();
        let c = is_colorable(&g, 2, 2, DEFAULT_NODE_CAP).unwrap().unwrap();
        assert!(find_conflicts(&g, &c, 2).unwrap().is_empty());
        // the witness quoted for P3: vertices 1, edges 1 and 2
        let w = weights(&g, &TotalColoring::new(vec![1, 1, 1], vec![1, 2])).unwrap();
        assert_eq!(w, vec![2, 4, 3]);
        assert_eq!(min_strength(&g, 2, 4, DEFAULT_NODE_CAP).unwrap().unwrap().0, 2);
    }

    #[test]
    fn single_vertex_needs_one() {
        let g = Graph::new(1, &[]).unwrap();
        for r in 1..4 {
            assert_eq!(min_strength(&g, r, 3, DEFAULT_NODE_CAP).unwrap().unwrap().0, 1);
        }
    }

    #[test]
    fn budget_is_reported_as_unknown() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        assert_eq!(
            is_colorable(&g, 3, 1, 5),
            Err(Error::SearchBudgetExceeded { nodes: 5 })
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(is_colorable(&k2(), 1, 0, 10).is_err());
        assert!(is_colorable(&k2(), 0, 2, 10).is_err());
        assert!(min_strength(&k2(), 1, 0, 10).is_err());
    }
}
