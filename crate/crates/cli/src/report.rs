//! `key=value` run reports.

use std::collections::HashMap;
use std::fmt;
use std::time::Duration;

use sumdist_core::coloring::{theorem_bounds, RunOutput};
use sumdist_core::Graph;

use crate::error::{parse_err, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub r: u32,
    pub seed: u64,
    pub big_step: u64,
    pub small_step: u64,
    pub palette_cap: u64,
    pub bound_new: f64,
    pub bound_prior: u64,
    /// `Δ^{r-1}`
    pub conjecture: u64,
    pub max_color: u64,
    pub escalations: u32,
    pub resample_attempts: usize,
    pub lemma_satisfied: bool,
    pub lemma_violations: usize,
    /// Smallest surplus of options over backward `r`-neighbours.
    pub min_surplus: Option<i64>,
    pub wall_ms: f64,
    pub peak_rss_kib: Option<u64>,
}

impl RunReport {
    /// Bounds use the `Δ` the run worked with, which is at least 2.
    pub fn new(graph: impl Into<String>, g: &Graph, r: u32, seed: u64, out: &RunOutput, wall: Duration) -> Self {
        let p = &out.params_used;
        let (bound_new, bound_prior) = theorem_bounds(p.delta, r).unwrap_or((f64::NAN, 0));
        RunReport {
            graph: graph.into(),
            n: g.vertex_count(),
            m: g.edge_count(),
            max_degree: g.max_degree(),
            r,
            seed,
            big_step: p.big_step,
            small_step: p.small_step,
            palette_cap: p.palette_cap(),
            bound_new,
            bound_prior,
            conjecture: p.base(),
            max_color: out.max_color(),
            escalations: out.escalations,
            resample_attempts: out.resample_attempts,
            lemma_satisfied: out.lemma_satisfied,
            lemma_violations: out.lemma_violations,
            min_surplus: out.audit.tightest(),
            wall_ms: wall.as_secs_f64() * 1e3,
            peak_rss_kib: peak_rss_kib(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| parse_err(i + 1, "expected `key=value`"))?;
            fields.insert(k.trim(), (i + 1, v.trim()));
        }
        fn get<T: std::str::FromStr>(f: &HashMap<&str, (usize, &str)>, key: &str) -> Result<T> {
            let &(line, v) = f.get(key).ok_or_else(|| parse_err(0, format!("missing key `{key}`")))?;
            v.parse().map_err(|_| parse_err(line, format!("bad value for `{key}`: `{v}`")))
        }
        fn opt<T: std::str::FromStr>(f: &HashMap<&str, (usize, &str)>, key: &str) -> Result<Option<T>> {
            match f.get(key) {
                Some(&(_, "none")) | None => Ok(None),
                Some(_) => get(f, key).map(Some),
            }
        }
        Ok(RunReport {
            graph: get(&fields, "graph")?,
            n: get(&fields, "n")?,
            m: get(&fields, "m")?,
            max_degree: get(&fields, "max_degree")?,
            r: get(&fields, "r")?,
            seed: get(&fields, "seed")?,
            big_step: get(&fields, "K")?,
            small_step: get(&fields, "k")?,
            palette_cap: get(&fields, "palette_cap")?,
            bound_new: get(&fields, "bound_new")?,
            bound_prior: get(&fields, "bound_prior")?,
            conjecture: get(&fields, "conjecture")?,
            max_color: get(&fields, "max_color")?,
            escalations: get(&fields, "escalations")?,
            resample_attempts: get(&fields, "resample_attempts")?,
            lemma_satisfied: get(&fields, "lemma_satisfied")?,
            lemma_violations: get(&fields, "lemma_violations")?,
            min_surplus: opt(&fields, "min_surplus")?,
            wall_ms: get(&fields, "wall_ms")?,
            peak_rss_kib: opt(&fields, "peak_rss_kib")?,
        })
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn or_none<T: fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(|| "none".to_owned(), T::to_string)
        }
        writeln!(f, "graph={}", self.graph)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "max_degree={}", self.max_degree)?;
        writeln!(f, "r={}", self.r)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "K={}", self.big_step)?;
        writeln!(f, "k={}", self.small_step)?;
        writeln!(f, "palette_cap={}", self.palette_cap)?;
        writeln!(f, "bound_new={}", self.bound_new)?;
        writeln!(f, "bound_prior={}", self.bound_prior)?;
        writeln!(f, "conjecture={}", self.conjecture)?;
        writeln!(f, "max_color={}", self.max_color)?;
        writeln!(f, "escalations={}", self.escalations)?;
        writeln!(f, "resample_attempts={}", self.resample_attempts)?;
        writeln!(f, "lemma_satisfied={}", self.lemma_satisfied)?;
        writeln!(f, "lemma_violations={}", self.lemma_violations)?;
        writeln!(f, "min_surplus={}", or_none(&self.min_surplus))?;
        writeln!(f, "wall_ms={}", self.wall_ms)?;
        writeln!(f, "peak_rss_kib={}", or_none(&self.peak_rss_kib))
    }
}

/// Peak resident set size of this process, where the platform reports it.
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}
