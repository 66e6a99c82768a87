//! Plain-text graph and colouring files.
//!
//! A graph file holds a header `n m` followed by `m` lines `u v`. A colouring
//! file holds a header `n m r K k`, then `n` lines `v colour` and `m` lines
//! `u v colour`. Blank lines and lines starting with `#` are skipped.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use sumdist_core::coloring::Params;
use sumdist_core::verify::PaletteCaps;
use sumdist_core::{Graph, TotalColoring};

use crate::error::{parse_err, Result};
#[cfg(test)]
use crate::error::IoError;

/// Numbered content lines, skipping blanks and comments.
struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(r: R) -> Self {
        Lines { inner: r.lines(), line: 0 }
    }

    fn next_fields(&mut self) -> Result<Option<(usize, Vec<String>)>> {
        for text in self.inner.by_ref() {
            self.line += 1;
            let text = text?;
            let t = text.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok(Some((self.line, t.split_whitespace().map(str::to_owned).collect())));
        }
        Ok(None)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<String>)> {
        self.next_fields()?.ok_or_else(|| parse_err(self.line + 1, format!("unexpected end of file, expected {what}")))
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.next_fields()? {
            None => Ok(()),
            Some((line, _)) => Err(parse_err(line, "unexpected extra line")),
        }
    }
}

fn numbers<const N: usize>(line: usize, fields: &[String], what: &str) -> Result<[u64; N]> {
    if fields.len() != N {
        return Err(parse_err(line, format!("expected {what}, found {} fields", fields.len())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| parse_err(line, format!("`{f}` is not a non-negative integer")))?;
    }
    Ok(out)
}

fn vertex(line: usize, x: u64, n: usize) -> Result<usize> {
    usize::try_from(x)
        .ok()
        .filter(|&v| v < n)
        .ok_or_else(|| parse_err(line, format!("vertex {x} out of range for n = {n}")))
}

pub fn read_graph<R: BufRead>(r: R) -> Result<Graph> {
    let mut lines = Lines::new(r);
    let (line, f) = lines.expect("header `n m`")?;
    let [n, m] = numbers(line, &f, "header `n m`")?;
    let n = usize::try_from(n).map_err(|_| parse_err(line, "n too large"))?;
    let mut edges = Vec::new();
    for i in 0..m {
        let (line, f) = lines.expect(&format!("edge {} of {m}", i + 1))?;
        let [u, v] = numbers(line, &f, "edge `u v`")?;
        let (u, v) = (vertex(line, u, n)?, vertex(line, v, n)?);
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    lines.expect_end()?;
    Ok(Graph::new(n, &edges)?)
}

pub fn write_graph<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", g.vertex_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    read_graph(BufReader::new(File::open(path)?))
}

pub fn write_graph_file(g: &Graph, path: &Path) -> Result<()> {
    write_graph(g, BufWriter::new(File::create(path)?))
}

/// The `n m r K k` header of a colouring file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringHeader {
    pub n: usize,
    pub m: usize,
    pub r: u32,
    pub big_step: u64,
    pub small_step: u64,
}

impl ColoringHeader {
    pub fn new(g: &Graph, p: &Params) -> Self {
        ColoringHeader {
            n: g.vertex_count(),
            m: g.edge_count(),
            r: p.r,
            big_step: p.big_step,
            small_step: p.small_step,
        }
    }

    /// Vertex colours up to `K + 1`, edge colours up to `2K + k + 1`.
    pub fn caps(&self) -> Option<PaletteCaps> {
        let edge = self.big_step.checked_mul(2)?.checked_add(self.small_step)?.checked_add(1)?;
        Some(PaletteCaps { vertex: self.big_step.checked_add(1)?, edge })
    }
}

pub fn write_coloring<W: Write>(g: &Graph, h: &ColoringHeader, c: &TotalColoring, mut w: W) -> Result<()> {
    c.check_shape(g)?;
    writeln!(w, "{} {} {} {} {}", h.n, h.m, h.r, h.big_step, h.small_step)?;
    for (v, col) in c.vertex.iter().enumerate() {
        writeln!(w, "{v} {col}")?;
    }
    for (&(u, v), col) in g.edges().iter().zip(&c.edge) {
        writeln!(w, "{u} {v} {col}")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a colouring of `g`. Lines may come in any order within their
/// section, but every vertex and edge must appear exactly once.
pub fn read_coloring<R: BufRead>(g: &Graph, r: R) -> Result<(ColoringHeader, TotalColoring)> {
    let mut lines = Lines::new(r);
    let (line, f) = lines.expect("header `n m r K k`")?;
    let [n, m, radius, big, small] = numbers(line, &f, "header `n m r K k`")?;
    if (n, m) != (g.vertex_count() as u64, g.edge_count() as u64) {
        return Err(parse_err(
            line,
            format!("header is for n = {n}, m = {m} but the graph has n = {}, m = {}", g.vertex_count(), g.edge_count()),
        ));
    }
    let radius = u32::try_from(radius).map_err(|_| parse_err(line, "r too large"))?;
    let header = ColoringHeader { n: n as usize, m: m as usize, r: radius, big_step: big, small_step: small };
    let positive = |line: usize, c: u64| {
        if c == 0 {
            Err(parse_err(line, "colours must be positive"))
        } else {
            Ok(c)
        }
    };

    let mut vertex_colors = vec![0u64; header.n];
    for i in 0..header.n {
        let (line, f) = lines.expect(&format!("vertex line {} of {}", i + 1, header.n))?;
        let [v, c] = numbers(line, &f, "vertex line `v colour`")?;
        let v = vertex(line, v, header.n)?;
        if vertex_colors[v] != 0 {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
        vertex_colors[v] = positive(line, c)?;
    }
    let mut edge_colors = vec![0u64; header.m];
    for i in 0..header.m {
        let (line, f) = lines.expect(&format!("edge line {} of {}", i + 1, header.m))?;
        let [u, v, c] = numbers(line, &f, "edge line `u v colour`")?;
        let (u, v) = (vertex(line, u, header.n)?, vertex(line, v, header.n)?);
        let e = g.edge_between(u, v).ok_or_else(|| parse_err(line, format!("({u}, {v}) is not an edge")))?;
        if edge_colors[e] != 0 {
            return Err(parse_err(line, format!("edge ({u}, {v}) listed twice")));
        }
        edge_colors[e] = positive(line, c)?;
    }
    lines.expect_end()?;
    Ok((header, TotalColoring::new(vertex_colors, edge_colors)))
}

pub fn read_coloring_file(g: &Graph, path: &Path) -> Result<(ColoringHeader, TotalColoring)> {
    read_coloring(g, BufReader::new(File::open(path)?))
}

pub fn write_coloring_file(g: &Graph, h: &ColoringHeader, c: &TotalColoring, path: &Path) -> Result<()> {
    write_coloring(g, h, c, BufWriter::new(File::create(path)?))
}
