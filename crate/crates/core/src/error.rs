use alloc::boxed::Box;
use core::fmt;

use crate::ordering::LemmaReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    LoopEdge { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    VertexOutOfRange { vertex: usize, n: usize },
    RadiusTooSmall { r: u32, min: u32 },
    /// The randomized construction needs `Δ ≥ 2` so that `ln Δ > 0`.
    DegenerateGraph { max_degree: usize },
    ParameterOutOfRange(&'static str),
    /// Step sizes or weights for this `(Δ, r)` overflow 64-bit integers.
    ParamsTooLarge { delta: usize, r: u32 },
    ResampleBudgetExceeded { attempts: usize, last: Box<LemmaReport> },
    NoTrials,
    InfeasibleTarget { vertex: usize, target: i64, lo: i64, hi: i64 },
    EscalationCapExceeded { escalations: u32 },
    /// An in-loop consistency check failed after processing `vertex`.
    InvariantViolated { vertex: usize, what: &'static str },
    SearchBudgetExceeded { nodes: u64 },
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LoopEdge { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge {{{u}, {v}}}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph with {n} vertices")
            }
            Error::RadiusTooSmall { r, min } => write!(f, "radius {r} is below the minimum {min}"),
            Error::DegenerateGraph { max_degree } => {
                write!(f, "maximum degree {max_degree} is below 2")
            }
            Error::ParameterOutOfRange(what) => write!(f, "parameter out of range: {what}"),
            Error::ParamsTooLarge { delta, r } => {
                write!(f, "step sizes for Δ = {delta}, r = {r} overflow 64-bit integers")
            }
            Error::ResampleBudgetExceeded { attempts, last } => write!(
                f,
                "no ordering satisfied F1-F3 within {attempts} attempts ({} violations in the last)",
                last.violations.len()
            ),
            Error::NoTrials => f.write_str("at least one trial is required"),
            Error::InfeasibleTarget { vertex, target, lo, hi } => write!(
                f,
                "target weight {target} for vertex {vertex} is outside the feasible range [{lo}, {hi}]"
            ),
            Error::EscalationCapExceeded { escalations } => {
                write!(f, "no conflict-free target after {escalations} step doublings")
            }
            Error::InvariantViolated { vertex, what } => {
                write!(f, "invariant violated after processing vertex {vertex}: {what}")
            }
            Error::SearchBudgetExceeded { nodes } => {
                write!(f, "exact search gave up after {nodes} nodes (result unknown)")
            }
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "colouring covers {} vertices and {} edges, graph has {} and {}",
                found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

impl core::error::Error for Error {}
