//! Random vertex orderings and the three ordering properties F1-F3.
//!
//! Every vertex draws a uniform variate `x(v) ∈ [0, 1)`; sorting by it gives
//! the processing order. Vertices with `x(v) < ln Δ / Δ^{1/3}` form the
//! initial segment I, the rest form R. The construction needs the ordering to
//! satisfy, for every *tracked* vertex (one with `b(v) ≥ Δ^{1/3} ln Δ`):
//!
//! * F1: `d^r_I(v) ≤ 2 d(v) Δ^{r-4/3} ln Δ`;
//! * F2: if `v ∈ R`, `b_-(v) ≥ x(v) b(v) - sqrt(x(v) b(v)) ln Δ`;
//! * F3: if `v ∈ R`, `d^r_-(v) ≤ x(v) D(v) Δ^{r-2} + sqrt(x(v) D(v) Δ^{r-2}) ln Δ`.
//!
//! Such orderings exist with positive probability; here we simply draw fresh
//! orderings until one passes.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BallSource, DegreePartition, Graph, RNeighborhoods, Vertex};

pub mod chernoff;

pub use chernoff::{binomial_upper_tail_estimate, chernoff_tail_bound, TailEstimate};

pub const DEFAULT_MAX_ATTEMPTS: usize = 100;

/// `min(1, ln Δ / Δ^{1/3})`. For Δ below about 90 the raw ratio exceeds 1
/// and every vertex lands in I.
pub fn initial_threshold(delta: usize) -> f64 {
    let d = delta as f64;
    (libm::log(d) / libm::cbrt(d)).min(1.0)
}

fn require_nondegenerate(g: &Graph) -> Result<()> {
    if g.max_degree() < 2 {
        Err(Error::DegenerateGraph { max_degree: g.max_degree() })
    } else {
        Ok(())
    }
}

fn require_radius(r: u32) -> Result<()> {
    if r < 2 {
        Err(Error::RadiusTooSmall { r, min: 2 })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomOrdering {
    x: Vec<f64>,
    perm: Vec<Vertex>,
    pos: Vec<usize>,
    in_initial: Vec<bool>,
    threshold: f64,
}

impl RandomOrdering {
    /// Draws `x(v)` for every vertex from a ChaCha8 stream seeded with `seed`.
    pub fn sample(g: &Graph, seed: u64) -> Result<Self> {
        require_nondegenerate(g)?;
        Ok(Self::sample_unchecked(g, seed))
    }

    /// [`RandomOrdering::sample`] without the `Δ ≥ 2` requirement; for
    /// `Δ < 2` every vertex counts as initial.
    pub(crate) fn sample_unchecked(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = (0..g.vertex_count()).map(|_| rng.random::<f64>()).collect();
        Self::induced(g, x)
    }

    /// Builds the ordering induced by explicit variates. Ties are broken by
    /// vertex index.
    pub fn from_variates(g: &Graph, x: Vec<f64>) -> Result<Self> {
        require_nondegenerate(g)?;
        if x.len() != g.vertex_count() {
            return Err(Error::ParameterOutOfRange("one variate per vertex"));
        }
        if !x.iter().all(|&xv| (0.0..1.0).contains(&xv)) {
            return Err(Error::ParameterOutOfRange("variates must lie in [0, 1)"));
        }
        Ok(Self::induced(g, x))
    }

    fn induced(g: &Graph, x: Vec<f64>) -> Self {
        let mut perm: Vec<Vertex> = (0..x.len()).collect();
        perm.sort_unstable_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
        let mut pos = vec![0; x.len()];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let threshold = if g.max_degree() < 2 { 1.0 } else { initial_threshold(g.max_degree()) };
        let in_initial = x.iter().map(|&xv| xv < threshold).collect();
        RandomOrdering { x, perm, pos, in_initial, threshold }
    }

    pub fn variate(&self, v: Vertex) -> f64 {
        self.x[v]
    }

    /// v_1, ..., v_n.
    pub fn perm(&self) -> &[Vertex] {
        &self.perm
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn in_initial(&self, v: Vertex) -> bool {
        self.in_initial[v]
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

/// Per-vertex counts relative to an ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardStats {
    /// b_-(v): big neighbours preceding `v`.
    pub big_backward: Vec<usize>,
    /// d^r_-(v): r-neighbours preceding `v`.
    pub r_backward: Vec<usize>,
    /// d^r_I(v): r-neighbours in I.
    pub r_initial: Vec<usize>,
}

pub fn backward_stats(
    g: &Graph,
    ord: &RandomOrdering,
    part: &DegreePartition,
    r: u32,
) -> Result<BackwardStats> {
    require_radius(r)?;
    Ok(backward_stats_with(g, ord, part, &mut BallSource::scan(g, r)))
}

pub fn backward_stats_with(
    g: &Graph,
    ord: &RandomOrdering,
    part: &DegreePartition,
    balls: &mut BallSource<'_>,
) -> BackwardStats {
    let n = g.vertex_count();
    let mut stats = BackwardStats {
        big_backward: vec![0; n],
        r_backward: vec![0; n],
        r_initial: vec![0; n],
    };
    for v in 0..n {
        let here = ord.position(v);
        stats.big_backward[v] = g
            .neighbors(v)
            .iter()
            .filter(|&&u| part.is_big(u) && ord.position(u) < here)
            .count();
        let (mut before, mut initial) = (0, 0);
        balls.for_each(g, v, |u| {
            before += (ord.position(u) < here) as usize;
            initial += ord.in_initial(u) as usize;
        });
        stats.r_backward[v] = before;
        stats.r_initial[v] = initial;
    }
    stats
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaProperty {
    F1,
    F2,
    F3,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    /// Vertices with `b(v) ≥ Δ^{1/3} ln Δ`, ascending.
    pub tracked: Vec<Vertex>,
    pub violations: Vec<(Vertex, LemmaProperty)>,
}

impl LemmaReport {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, property: LemmaProperty) -> usize {
        self.violations.iter().filter(|(_, p)| *p == property).count()
    }
}

/// Right-hand sides of F1-F3 for fixed `(Δ, r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaBounds {
    ln_delta: f64,
    cbrt_delta: f64,
    /// Δ^{r-4/3}
    pow_f1: f64,
    /// Δ^{r-2}
    pow_f3: f64,
}

impl LemmaBounds {
    pub fn new(delta: usize, r: u32) -> Self {
        let d = delta as f64;
        LemmaBounds {
            ln_delta: libm::log(d),
            cbrt_delta: libm::cbrt(d),
            pow_f1: libm::pow(d, r as f64 - 4.0 / 3.0),
            pow_f3: libm::pow(d, r as f64 - 2.0),
        }
    }

    pub fn with_ln_delta(self, ln_delta: f64) -> Self {
        LemmaBounds { ln_delta, ..self }
    }

    /// Δ^{1/3} ln Δ
    pub fn tracking_threshold(&self) -> f64 {
        self.cbrt_delta * self.ln_delta
    }

    pub fn is_tracked(&self, big_neighbors: usize) -> bool {
        big_neighbors as f64 >= self.tracking_threshold()
    }

    pub fn f1(&self, degree: usize) -> f64 {
        2.0 * degree as f64 * self.pow_f1 * self.ln_delta
    }

    pub fn f2(&self, x: f64, big_neighbors: usize) -> f64 {
        let mean = x * big_neighbors as f64;
        mean - libm::sqrt(mean) * self.ln_delta
    }

    pub fn f3(&self, x: f64, neighbor_degree_sum: usize) -> f64 {
        let mean = x * neighbor_degree_sum as f64 * self.pow_f3;
        mean + libm::sqrt(mean) * self.ln_delta
    }
}

pub fn check_lemma_properties(
    g: &Graph,
    ord: &RandomOrdering,
    part: &DegreePartition,
    stats: &BackwardStats,
    r: u32,
) -> LemmaReport {
    let bounds = LemmaBounds::new(g.max_degree(), r);
    let mut report = LemmaReport::default();
    for v in 0..g.vertex_count() {
        if !bounds.is_tracked(part.big_neighbors(v)) {
            continue;
        }
        report.tracked.push(v);
        if stats.r_initial[v] as f64 > bounds.f1(g.degree(v)) {
            report.violations.push((v, LemmaProperty::F1));
        }
        if ord.in_initial(v) {
            continue;
        }
        let x = ord.variate(v);
        if (stats.big_backward[v] as f64) < bounds.f2(x, part.big_neighbors(v)) {
            report.violations.push((v, LemmaProperty::F2));
        }
        if stats.r_backward[v] as f64 > bounds.f3(x, g.neighbor_degree_sum(v)) {
            report.violations.push((v, LemmaProperty::F3));
        }
    }
    report
}

/// Result of drawing orderings with seeds `seed, seed + 1, ...`.
#[derive(Debug, Clone)]
pub struct ResampleOutcome {
    /// The first passing ordering, or the one with fewest violations.
    pub ordering: RandomOrdering,
    pub report: LemmaReport,
    pub attempts: usize,
    pub satisfied: bool,
}

/// Draws up to `max_attempts` orderings and keeps the first that satisfies
/// F1-F3, falling back to the one with fewest violations.
pub fn resample_best(
    g: &Graph,
    part: &DegreePartition,
    balls: &mut BallSource<'_>,
    seed: u64,
    max_attempts: usize,
) -> Result<ResampleOutcome> {
    if max_attempts == 0 {
        return Err(Error::ParameterOutOfRange("max_attempts must be at least 1"));
    }
    require_radius(balls.radius())?;
    let r = balls.radius();
    let mut best: Option<ResampleOutcome> = None;
    for attempt in 0..max_attempts {
        let ordering = RandomOrdering::sample(g, seed.wrapping_add(attempt as u64))?;
        let stats = backward_stats_with(g, &ordering, part, balls);
        let report = check_lemma_properties(g, &ordering, part, &stats, r);
        let satisfied = report.is_satisfied();
        let better = best
            .as_ref()
            .is_none_or(|b| report.violations.len() < b.report.violations.len());
        if better {
            best = Some(ResampleOutcome { ordering, report, attempts: attempt + 1, satisfied });
        }
        if satisfied {
            break;
        }
    }
    let mut best = best.expect("at least one attempt");
    if !best.satisfied {
        best.attempts = max_attempts;
    }
    Ok(best)
}

/// The first ordering (seeds `seed, seed + 1, ...`) satisfying F1-F3 and
/// the number of draws it took.
pub fn resample_until_good(
    g: &Graph,
    part: &DegreePartition,
    r: u32,
    seed: u64,
    max_attempts: usize,
) -> Result<(RandomOrdering, usize)> {
    require_radius(r)?;
    let outcome = resample_best(g, part, &mut BallSource::scan(g, r), seed, max_attempts)?;
    if outcome.satisfied {
        Ok((outcome.ordering, outcome.attempts))
    } else {
        Err(Error::ResampleBudgetExceeded {
            attempts: outcome.attempts,
            last: Box::new(outcome.report),
        })
    }
}

/// Violation counts of the events A1-A3 accumulated over sampled orderings.
///
/// Tallies from disjoint trial ranges can be merged in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EventTally {
    pub trials: usize,
    /// Σ over trials of the number of tracked vertices.
    pub tracked_samples: usize,
    pub violations: [usize; 3],
}

impl EventTally {
    pub fn record(&mut self, report: &LemmaReport) {
        self.trials += 1;
        self.tracked_samples += report.tracked.len();
        for &(_, p) in &report.violations {
            self.violations[p as usize] += 1;
        }
    }

    pub fn merge(mut self, other: EventTally) -> EventTally {
        self.trials += other.trials;
        self.tracked_samples += other.tracked_samples;
        for i in 0..3 {
            self.violations[i] += other.violations[i];
        }
        self
    }

    /// True when no tracked vertex was ever observed, so the frequencies
    /// carry no information.
    pub fn is_empty_sample(&self) -> bool {
        self.tracked_samples == 0
    }

    /// Per-event violation frequency among tracked-vertex samples; zero for
    /// an empty sample.
    pub fn frequencies(&self) -> [f64; 3] {
        if self.tracked_samples == 0 {
            return [0.0; 3];
        }
        self.violations.map(|c| c as f64 / self.tracked_samples as f64)
    }

    /// Tracked vertices per trial (constant across trials: tracking depends
    /// only on the graph).
    pub fn tracked_per_trial(&self) -> usize {
        self.tracked_samples.checked_div(self.trials).unwrap_or(0)
    }
}

/// Tallies trials `first..first + count`, trial `i` using seed `seed + i`.
pub fn tally_trials(
    g: &Graph,
    part: &DegreePartition,
    balls: &mut BallSource<'_>,
    seed: u64,
    first: usize,
    count: usize,
) -> Result<EventTally> {
    require_radius(balls.radius())?;
    let r = balls.radius();
    let mut tally = EventTally::default();
    for i in first..first + count {
        let ordering = RandomOrdering::sample(g, seed.wrapping_add(i as u64))?;
        let stats = backward_stats_with(g, &ordering, part, balls);
        tally.record(&check_lemma_properties(g, &ordering, part, &stats, r));
    }
    Ok(tally)
}

/// Monte-Carlo frequencies of the bad events over `trials` independent
/// orderings.
pub fn estimate_event_frequency(g: &Graph, r: u32, trials: usize, seed: u64) -> Result<EventTally> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    require_radius(r)?;
    require_nondegenerate(g)?;
    let part = DegreePartition::new(g);
    let balls = RNeighborhoods::compute(g, r)?;
    tally_trials(g, &part, &mut BallSource::Cached(&balls), seed, 0, trials)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    fn circulant(n: usize, half_degree: usize) -> Graph {
        let mut edges = Vec::new();
        for v in 0..n {
            for j in 1..=half_degree {
                edges.push((v, (v + j) % n));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = circulant(30, 3);
        let a = RandomOrdering::sample(&g, 7).unwrap();
        let b = RandomOrdering::sample(&g, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RandomOrdering::sample(&g, 8).unwrap());
    }

    #[test]
    fn permutation_is_inverse_of_positions() {
        let g = circulant(50, 2);
        let ord = RandomOrdering::sample(&g, 3).unwrap();
        for (i, &v) in ord.perm().iter().enumerate() {
            assert_eq!(ord.position(v), i);
        }
        for w in ord.perm().windows(2) {
            assert!(ord.variate(w[0]) <= ord.variate(w[1]));
        }
    }

    #[test]
    fn ties_break_by_index() {
        let g = p3();
        let ord = RandomOrdering::from_variates(&g, vec![0.5, 0.5, 0.1]).unwrap();
        assert_eq!(ord.perm(), &[2, 0, 1]);
    }

    #[test]
    fn degenerate_graphs_rejected() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(RandomOrdering::sample(&g, 0), Err(Error::DegenerateGraph { max_degree: 1 }));
    }

    #[test]
    fn initial_threshold_values() {
        // ln 100 / 100^{1/3}
        assert!((initial_threshold(100) - 0.992_153_840_219_332_8).abs() < 1e-12);
        // ln 50 / 50^{1/3} ≈ 1.062 is clamped
        assert_eq!(initial_threshold(50), 1.0);
        let g = star(100);
        let mut x = vec![0.995; 101];
        x[3] = 0.5;
        let ord = RandomOrdering::from_variates(&g, x).unwrap();
        assert!(ord.in_initial(3));
        assert!(!ord.in_initial(4));
        let g = star(50);
        let ord = RandomOrdering::sample(&g, 1).unwrap();
        assert!((0..51).all(|v| ord.in_initial(v)));
    }

    #[test]
    fn p3_backward_stats() {
        let g = p3();
        let part = DegreePartition::new(&g);
        assert!(part.is_big(1) && part.is_small(0) && part.is_small(2));
        // order (b, a, c)
        let ord = RandomOrdering::from_variates(&g, vec![0.5, 0.1, 0.9]).unwrap();
        let stats = backward_stats(&g, &ord, &part, 2).unwrap();
        assert_eq!(stats.big_backward, vec![1, 0, 1]);
        assert_eq!(stats.r_backward, vec![1, 0, 2]);
        // Δ = 2: threshold ln 2 / 2^{1/3} ≈ 0.55, so I = {a, b}.
        assert!((ord.threshold() - 0.550_151_281_794_824_3).abs() < 1e-12);
        assert_eq!(stats.r_initial, vec![1, 1, 2]);
        assert!(backward_stats(&g, &ord, &part, 1).is_err());
    }

    #[test]
    fn lemma_is_vacuous_without_tracked_vertices() {
        let g = star(8);
        let part = DegreePartition::new(&g);
        let ord = RandomOrdering::sample(&g, 0).unwrap();
        let stats = backward_stats(&g, &ord, &part, 2).unwrap();
        let report = check_lemma_properties(&g, &ord, &part, &stats, 2);
        assert!(report.tracked.is_empty());
        assert!(report.is_satisfied());
        let (_, attempts) = resample_until_good(&g, &part, 2, 11, 1).unwrap();
        assert_eq!(attempts, 1);
    }

    #[test]
    fn bound_formulas() {
        let b = LemmaBounds::new(55, 2).with_ln_delta(4.007);
        assert!((b.f2(0.25, 64) - (-0.028)).abs() < 1e-9);
        let b = LemmaBounds::new(100, 2);
        assert!((b.f1(50) - 9921.538_402_193_3).abs() < 1e-6);
        assert!(500.0 <= b.f1(50));
        // F3 at x = 0 reduces to 0.
        assert_eq!(b.f3(0.0, 1000), 0.0);
        // Δ = 64: threshold 4 · ln 64.
        let b = LemmaBounds::new(64, 2);
        assert!((b.tracking_threshold() - 16.635_532_333_438_68).abs() < 1e-9);
        assert!(b.is_tracked(17) && !b.is_tracked(16));
    }

    #[test]
    fn zero_attempts_is_an_error() {
        let g = star(8);
        let part = DegreePartition::new(&g);
        assert!(matches!(
            resample_until_good(&g, &part, 2, 0, 0),
            Err(Error::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn budget_error_carries_report() {
        // 200 disjoint 4-cycles. Δ = 2, every vertex is big and tracked, and a
        // vertex with x ≥ ln 2 / 2^{1/3} ≈ 0.55 violates F2 whenever both its
        // neighbours come later: about 3% per vertex, so essentially every
        // ordering of 800 vertices fails.
        let edges: Vec<_> = (0..200)
            .flat_map(|c| (0..4).map(move |i| (4 * c + i, 4 * c + (i + 1) % 4)))
            .collect();
        let g = Graph::new(800, &edges).unwrap();
        let part = DegreePartition::new(&g);
        let res = resample_until_good(&g, &part, 2, 0, 3);
        match res {
            Err(Error::ResampleBudgetExceeded { attempts, last }) => {
                assert_eq!(attempts, 3);
                assert!(!last.violations.is_empty());
                assert!(last.violations.iter().all(|(v, _)| last.tracked.contains(v)));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn star_event_frequencies_are_empty() {
        let g = star(8);
        let tally = estimate_event_frequency(&g, 2, 5, 0).unwrap();
        assert!(tally.is_empty_sample());
        assert_eq!(tally.frequencies(), [0.0; 3]);
        assert_eq!(tally.trials, 5);
        assert_eq!(estimate_event_frequency(&g, 2, 0, 0), Err(Error::NoTrials));
    }

    #[test]
    fn tallies_merge_across_splits() {
        let g = circulant(60, 4);
        let part = DegreePartition::new(&g);
        let balls = RNeighborhoods::compute(&g, 2).unwrap();
        let mut src = BallSource::Cached(&balls);
        let whole = tally_trials(&g, &part, &mut src, 9, 0, 6).unwrap();
        let a = tally_trials(&g, &part, &mut src, 9, 0, 2).unwrap();
        let b = tally_trials(&g, &part, &mut src, 9, 2, 4).unwrap();
        assert_eq!(a.merge(b), whole);
        assert_eq!(b.merge(a), whole);
    }
}
