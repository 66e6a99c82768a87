//! Batch runs behind `bench` and `lemma-stats`.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use sumdist_core::coloring::{run_algorithm, RunOptions};
use sumdist_core::graph::{BallSource, RNeighborhoods};
use sumdist_core::ordering::{
    binomial_upper_tail_estimate, chernoff_tail_bound, resample_best, tally_trials, EventTally,
    DEFAULT_MAX_ATTEMPTS,
};
use sumdist_core::verify::verify;
use sumdist_core::{DegreePartition, Graph};

use crate::error::{IoError, Result};
use crate::generate::{generate_graph, GraphKind};
use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Instance {
    pub kind: GraphKind,
    pub r: u32,
    /// Seeds both the generator and the run.
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: Instance,
    pub report: RunReport,
    pub valid: bool,
}

/// Generates, colours and verifies one instance.
pub fn run_instance(inst: &Instance, opts: &RunOptions) -> Result<BenchRow> {
    let g = generate_graph(inst.kind, inst.seed)?;
    let start = Instant::now();
    let out = run_algorithm(&g, inst.r, inst.seed, opts)?;
    let wall = start.elapsed();
    let valid = verify(&g, &out.coloring, inst.r, (&out.params_used).into())?.valid;
    let report = RunReport::new(inst.kind.to_string(), &g, inst.r, inst.seed, &out, wall);
    Ok(BenchRow { instance: *inst, report, valid })
}

/// Runs every instance, spreading whole instances over `threads` workers.
/// Results come back in input order whatever the thread count.
pub fn run_bench(instances: &[Instance], opts: &RunOptions, threads: usize) -> Vec<Result<BenchRow>> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<BenchRow>>>> = instances.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, instances.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = instances.get(i) else { break };
                *slots[i].lock().unwrap() = Some(run_instance(inst, opts));
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().unwrap().expect("every slot is filled")).collect()
}

pub fn summary_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<28} {:>2} {:>6} {:>5} {:>12} {:>12} {:>14} {:>12} {:>12} {:>8} {:>4} {:>5}",
        "graph", "r", "seed", "Δ", "max_color", "palette_cap", "bound_new", "bound_prior", "Δ^(r-1)", "ratio", "esc", "valid"
    );
    for row in rows {
        let rep = &row.report;
        let _ = writeln!(
            out,
            "{:<28} {:>2} {:>6} {:>5} {:>12} {:>12} {:>14.1} {:>12} {:>12} {:>8.3} {:>4} {:>5}",
            rep.graph,
            rep.r,
            rep.seed,
            rep.max_degree,
            rep.max_color,
            rep.palette_cap,
            rep.bound_new,
            rep.bound_prior,
            rep.conjecture,
            rep.max_color as f64 / rep.conjecture as f64,
            rep.escalations,
            row.valid,
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaStats {
    pub tally: EventTally,
    pub resample_runs: usize,
    /// Runs whose first ordering already satisfied every property.
    pub first_try: usize,
    /// Runs that never found a satisfying ordering within the budget.
    pub exhausted: usize,
    pub max_attempts_seen: usize,
}

/// Tallies property violations over `trials` orderings and counts how often
/// resampling succeeds at once over `resample_runs` seeds. Run `i` starts
/// from seed `seed + i·2^32` so its draws do not overlap the trials.
pub fn lemma_stats(g: &Graph, r: u32, trials: usize, resample_runs: usize, seed: u64) -> Result<LemmaStats> {
    if trials == 0 {
        return Err(IoError::InvalidArgs("trials must be positive".into()));
    }
    let part = DegreePartition::new(g);
    let balls = RNeighborhoods::compute(g, r)?;
    let mut source = BallSource::Cached(&balls);
    let tally = tally_trials(g, &part, &mut source, seed, 0, trials)?;
    let (mut first_try, mut exhausted, mut max_attempts_seen) = (0, 0, 0);
    for i in 0..resample_runs as u64 {
        let run_seed = seed.wrapping_add(i << 32);
        let outcome = resample_best(g, &part, &mut source, run_seed, DEFAULT_MAX_ATTEMPTS)?;
        first_try += (outcome.satisfied && outcome.attempts == 1) as usize;
        exhausted += !outcome.satisfied as usize;
        max_attempts_seen = max_attempts_seen.max(outcome.attempts);
    }
    Ok(LemmaStats { tally, resample_runs, first_try, exhausted, max_attempts_seen })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffRow {
    pub n: u64,
    pub p: f64,
    pub t: f64,
    pub bound: f64,
    pub estimate: f64,
    pub std_error: f64,
}

impl ChernoffRow {
    /// Estimate within three standard errors of the bound.
    pub fn holds(&self) -> bool {
        self.estimate <= self.bound + 3.0 * self.std_error
    }
}

/// Compares Monte-Carlo binomial tails with the Chernoff bound for
/// `n ∈ {100, 1000}`, `p ∈ {0.1, 0.5}`, `t ∈ {0.5√(np), np/10, np/3}`.
pub fn chernoff_grid(samples: u64, seed: u64) -> Result<Vec<ChernoffRow>> {
    let mut rows = Vec::new();
    for n in [100u64, 1000] {
        for p in [0.1, 0.5] {
            let mean = n as f64 * p;
            for t in [0.5 * mean.sqrt(), mean / 10.0, mean / 3.0] {
                let bound = chernoff_tail_bound(n, p, t)?;
                let est = binomial_upper_tail_estimate(n, p, t, samples, seed ^ (n << 8) ^ t.to_bits())?;
                rows.push(ChernoffRow { n, p, t, bound, estimate: est.frequency(), std_error: est.std_error() });
            }
        }
    }
    Ok(rows)
}
