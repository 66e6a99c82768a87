//! The greedy construction.
//!
//! All vertices start with colour 1 and all edges with colour `K + 1`.
//! Vertices are processed in the order of a random ordering; each one picks
//! the smallest weight it can reach through admitted edge alterations that no
//! already processed r-neighbour holds, and fixes it as its target. Earlier
//! vertices absorb the changes to their edges as slack in `[0, K]`, which is
//! paid back through their vertex colour at the very end.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{BallSource, DegreePartition, Graph, RNeighborhoods, Vertex};
use crate::ordering::{
    resample_best, BackwardStats, LemmaBounds, RandomOrdering, DEFAULT_MAX_ATTEMPTS,
};
use crate::total::TotalColoring;

mod params;
mod state;

pub use params::{theorem_bound_ceil, theorem_bounds, Params};
pub use state::{choose_target, choose_target_in, ColoringState, DeltaInterval};

pub const DEFAULT_ESCALATION_CAP: u32 = 10;

/// Which counting argument covers a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AvailabilityCase {
    /// Degree zero; its target is simply 1.
    Isolated,
    /// In I, big, and tracked.
    InitialBigTracked,
    Small,
    /// Big but not tracked.
    BigUntracked,
    /// In R, big, and tracked.
    RemainingBigTracked,
}

impl AvailabilityCase {
    pub const ALL: [AvailabilityCase; 5] = [
        AvailabilityCase::Isolated,
        AvailabilityCase::InitialBigTracked,
        AvailabilityCase::Small,
        AvailabilityCase::BigUntracked,
        AvailabilityCase::RemainingBigTracked,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AvailabilityCase::Isolated => "isolated",
            AvailabilityCase::InitialBigTracked => "initial-big-tracked",
            AvailabilityCase::Small => "small",
            AvailabilityCase::BigUntracked => "big-untracked",
            AvailabilityCase::RemainingBigTracked => "remaining-big-tracked",
        }
    }

    pub fn classify(
        g: &Graph,
        part: &DegreePartition,
        ord: &RandomOrdering,
        bounds: &LemmaBounds,
        v: Vertex,
    ) -> Self {
        if g.degree(v) == 0 {
            AvailabilityCase::Isolated
        } else if part.is_small(v) {
            AvailabilityCase::Small
        } else if !bounds.is_tracked(part.big_neighbors(v)) {
            AvailabilityCase::BigUntracked
        } else if ord.in_initial(v) {
            AvailabilityCase::InitialBigTracked
        } else {
            AvailabilityCase::RemainingBigTracked
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Availability {
    /// Number of reachable weights.
    pub options: i64,
    /// d^r_-(v)
    pub backward_r: usize,
    pub case: AvailabilityCase,
}

/// Options versus backward r-neighbours for `v`, which must not be
/// processed yet. Diagnostic only.
#[allow(clippy::too_many_arguments)]
pub fn availability_audit(
    state: &ColoringState,
    g: &Graph,
    p: &Params,
    part: &DegreePartition,
    ord: &RandomOrdering,
    stats: &BackwardStats,
    v: Vertex,
) -> Availability {
    let (lo, hi) = state.feasible_sum_interval(g, p, part, v);
    let bounds = LemmaBounds::new(g.max_degree(), p.r);
    Availability {
        options: hi - lo + 1,
        backward_r: stats.r_backward[v],
        case: AvailabilityCase::classify(g, part, ord, &bounds, v),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// Orderings drawn before settling for the one with fewest violations.
    pub max_attempts: usize,
    /// How many times `k` may be doubled after a vertex runs out of weights.
    pub escalation_cap: u32,
    /// Re-check slack bounds, weight caches and colour ranges after every
    /// vertex.
    pub check_invariants: bool,
    /// Precompute all r-hop balls instead of rescanning them.
    pub cache_balls: bool,
    /// Start from this `k` instead of `⌈Δ^{r-4/3} ln²Δ⌉`.
    pub initial_small_step: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            escalation_cap: DEFAULT_ESCALATION_CAP,
            check_invariants: false,
            cache_balls: false,
            initial_small_step: None,
        }
    }
}

/// Per-case telemetry: how many vertices fell in each case, and the smallest
/// surplus of options over backward r-neighbours seen in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AuditSummary {
    pub count: [usize; 5],
    pub min_surplus: [Option<i64>; 5],
}

impl AuditSummary {
    fn record(&mut self, case: AvailabilityCase, surplus: i64) {
        let i = case as usize;
        self.count[i] += 1;
        self.min_surplus[i] = Some(self.min_surplus[i].map_or(surplus, |m| m.min(surplus)));
    }

    /// Smallest surplus over all non-isolated vertices.
    pub fn tightest(&self) -> Option<i64> {
        self.min_surplus[1..].iter().flatten().copied().min()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub coloring: TotalColoring,
    /// Params of the final, successful pass.
    pub params_used: Params,
    pub escalations: u32,
    pub resample_attempts: usize,
    pub lemma_satisfied: bool,
    pub lemma_violations: usize,
    /// Audit of the final pass.
    pub audit: AuditSummary,
}

impl RunOutput {
    pub fn max_color(&self) -> u64 {
        self.coloring.max_color()
    }
}

/// Weights are at most `(Δ + 1)(2K + k + 1)` and are kept in `i64`.
fn require_weights_fit(g: &Graph, p: &Params) -> Result<()> {
    let largest = (g.max_degree() as u128 + 1) * p.palette_cap() as u128;
    if largest <= i64::MAX as u128 {
        Ok(())
    } else {
        Err(Error::ParamsTooLarge { delta: p.delta, r: p.r })
    }
}

/// Builds a total colouring in which all pairs of vertices at distance at
/// most `r` have distinct weights.
///
/// Graphs with `Δ < 2` are accepted: the steps are then those of `Δ = 2` and
/// the ordering check is skipped, since no vertex can be tracked.
pub fn run_algorithm(g: &Graph, r: u32, seed: u64, opts: &RunOptions) -> Result<RunOutput> {
    if r < 2 {
        return Err(Error::RadiusTooSmall { r, min: 2 });
    }
    let delta = g.max_degree().max(2);
    let mut params = match opts.initial_small_step {
        Some(k) => Params::with_small_step(delta, r, k)?,
        None => Params::derive(delta, r)?,
    };
    require_weights_fit(g, &params)?;
    let part = DegreePartition::new(g);
    let cached;
    let mut balls = if opts.cache_balls {
        cached = RNeighborhoods::compute(g, r)?;
        BallSource::Cached(&cached)
    } else {
        BallSource::scan(g, r)
    };

    let (ordering, attempts, satisfied, violations) = if g.max_degree() >= 2 {
        let o = resample_best(g, &part, &mut balls, seed, opts.max_attempts)?;
        (o.ordering, o.attempts, o.satisfied, o.report.violations.len())
    } else {
        (RandomOrdering::sample_unchecked(g, seed), 1, true, 0)
    };

    let bounds = LemmaBounds::new(g.max_degree(), r);
    let mut escalations = 0;
    let mut forbidden = Vec::new();
    loop {
        let mut state = ColoringState::new(g, &params);
        let mut audit = AuditSummary::default();
        let mut stuck = false;
        for &v in ordering.perm() {
            if g.degree(v) == 0 {
                state.fix_isolated(v);
                audit.record(AvailabilityCase::Isolated, 0);
                continue;
            }
            let (lo, hi) = state.feasible_sum_interval(g, &params, &part, v);
            forbidden.clear();
            balls.for_each(g, v, |u| {
                if let Some(t) = state.target(u) {
                    forbidden.push(t);
                }
            });
            let case = AvailabilityCase::classify(g, &part, &ordering, &bounds, v);
            audit.record(case, hi - lo + 1 - forbidden.len() as i64);
            let Some(target) = choose_target_in(lo, hi, &mut forbidden) else {
                stuck = true;
                break;
            };
            let before = state.weight(v);
            let applied = state.apply_target(g, &params, &part, v, target)?;
            if opts.check_invariants {
                if applied != target - before || state.slack(v) != Some(0) {
                    return Err(Error::InvariantViolated { vertex: v, what: "target not reached" });
                }
                state
                    .check_invariants(g, &params)
                    .map_err(|what| Error::InvariantViolated { vertex: v, what })?;
            }
        }
        if stuck {
            if escalations == opts.escalation_cap {
                return Err(Error::EscalationCapExceeded { escalations });
            }
            escalations += 1;
            params = params.escalated()?;
            require_weights_fit(g, &params)?;
            continue;
        }
        let (vertex, edge) = state.finalize();
        let coloring = TotalColoring::new(
            vertex.into_iter().map(|c| c as u64).collect(),
            edge.into_iter().map(|c| c as u64).collect(),
        );
        return Ok(RunOutput {
            coloring,
            params_used: params,
            escalations,
            resample_attempts: attempts,
            lemma_satisfied: satisfied,
            lemma_violations: violations,
            audit,
        });
    }
}
