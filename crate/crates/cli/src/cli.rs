//! The `sumdist` command line.
//!
//! Exit codes: 0 success or valid colouring, 1 invalid colouring, 2 usage or
//! input error, 3 internal or budget error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use sumdist_core::coloring::{run_algorithm, RunOptions, DEFAULT_ESCALATION_CAP};
use sumdist_core::exact::{min_strength, DEFAULT_NODE_CAP};
use sumdist_core::ordering::DEFAULT_MAX_ATTEMPTS;
use sumdist_core::verify::{verify, weights};

use crate::error::IoError;
use crate::experiments::{chernoff_grid, lemma_stats, run_bench, summary_table, Instance};
use crate::formats::{read_coloring_file, read_graph_file, write_coloring, write_graph, ColoringHeader};
use crate::generate::{generate_graph, GraphKind};
use crate::report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sumdist", version, about = "Total colourings whose vertex weights differ within distance r")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Distance within which weights must differ [default: 2; verify reads it from the file]
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// Check the construction's invariants after every step
    #[arg(long, global = true)]
    pub assert: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_ESCALATION_CAP)]
    pub escalation_cap: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph file
    Gen {
        #[command(flatten)]
        family: Family,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Colour a graph file and write the colouring and a run report
    Color {
        graph: PathBuf,
        /// Colouring file [default: stdout, with the report on stderr]
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Precompute all r-neighbourhoods instead of scanning on demand
        #[arg(long)]
        cache_balls: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
    },
    /// Check a colouring file against a graph file
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Smallest palette with no conflicts, by exhaustive search
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_colors: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Ordering property frequencies and Chernoff comparisons
    LemmaStats {
        graph: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        resample_runs: usize,
        #[arg(long, default_value_t = 20_000)]
        chernoff_samples: u64,
    },
    /// Colour a family of generated graphs and tabulate the palettes
    Bench {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        radii: Vec<u32>,
        /// Replicates per graph; replicate i uses seed + i
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Also print each instance's report
        #[arg(long)]
        reports: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Path,
    Cycle,
    Complete,
    Star,
    Gnp,
    Regular,
}

#[derive(Debug, Args)]
pub struct Family {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub d: Option<usize>,
}

impl Kind {
    fn build(self, n: usize, p: Option<f64>, d: Option<usize>) -> Result<GraphKind, IoError> {
        let need = |what: &str| IoError::InvalidArgs(format!("--kind {self:?} needs --{what}").to_lowercase());
        Ok(match self {
            Kind::Path => GraphKind::Path { n },
            Kind::Cycle => GraphKind::Cycle { n },
            Kind::Complete => GraphKind::Complete { n },
            Kind::Star => GraphKind::Star { n },
            Kind::Gnp => GraphKind::Gnp { n, p: p.ok_or_else(|| need("p"))? },
            Kind::Regular => GraphKind::Regular { n, d: d.ok_or_else(|| need("d"))? },
        })
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<IoError>() {
        Some(IoError::InvalidArgs(_) | IoError::Parse { .. }) => EXIT_USAGE,
        Some(IoError::Io(_)) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn options(cli: &Cli) -> RunOptions {
    RunOptions { check_invariants: cli.assert, escalation_cap: cli.escalation_cap, ..RunOptions::default() }
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_graph(path: &Path) -> anyhow::Result<sumdist_core::Graph> {
    read_graph_file(path).with_context(|| format!("reading {}", path.display()))
}

fn execute(cli: &Cli) -> anyhow::Result<i32> {
    let r = cli.r.unwrap_or(2);
    match &cli.command {
        Command::Gen { family, output: out } => {
            let kind = family.kind.build(family.n, family.p, family.d)?;
            let g = generate_graph(kind, cli.seed)?;
            write_graph(&g, output(out.as_deref())?)?;
        }
        Command::Color { graph, output: out, report, cache_balls, max_attempts } => {
            let g = load_graph(graph)?;
            let opts = RunOptions { cache_balls: *cache_balls, max_attempts: *max_attempts, ..options(cli) };
            let start = Instant::now();
            let run = run_algorithm(&g, r, cli.seed, &opts).map_err(IoError::from)?;
            let rep = RunReport::new(graph.display().to_string(), &g, r, cli.seed, &run, start.elapsed());
            write_coloring(&g, &ColoringHeader::new(&g, &run.params_used), &run.coloring, output(out.as_deref())?)?;
            if let Some(path) = report {
                std::fs::write(path, rep.to_string()).with_context(|| format!("writing {}", path.display()))?;
            }
            if out.is_some() {
                print!("{rep}");
            } else {
                eprint!("{rep}");
            }
        }
        Command::Verify { graph, coloring } => {
            let g = load_graph(graph)?;
            let (header, c) =
                read_coloring_file(&g, coloring).with_context(|| format!("reading {}", coloring.display()))?;
            let caps = header
                .caps()
                .ok_or_else(|| IoError::InvalidArgs("palette caps in the header overflow".into()))?;
            let radius = cli.r.unwrap_or(header.r);
            let rep = verify(&g, &c, radius, caps).map_err(IoError::from)?;
            let w = weights(&g, &c).map_err(IoError::from)?;
            let mut out = io::stdout().lock();
            writeln!(out, "valid={}", rep.valid)?;
            writeln!(out, "r={radius}")?;
            writeln!(out, "palette_ok={}", rep.palette_ok)?;
            writeln!(out, "vertex_cap={}", caps.vertex)?;
            writeln!(out, "edge_cap={}", caps.edge)?;
            writeln!(out, "max_vertex_color={}", rep.max_vertex_color)?;
            writeln!(out, "max_edge_color={}", rep.max_edge_color)?;
            writeln!(out, "conflicts={}", rep.conflicts.len())?;
            for &(u, v) in &rep.conflicts {
                writeln!(out, "conflict {u} {v} weight={}", w[u])?;
            }
            for (v, &col) in c.vertex.iter().enumerate().filter(|&(_, &col)| col > caps.vertex) {
                writeln!(out, "palette_breach vertex {v} color={col}")?;
            }
            for (e, &col) in c.edge.iter().enumerate().filter(|&(_, &col)| col > caps.edge) {
                let (u, v) = g.edge(e);
                writeln!(out, "palette_breach edge {u} {v} color={col}")?;
            }
            return Ok(if rep.valid { EXIT_OK } else { EXIT_INVALID });
        }
        Command::Exact { graph, max_colors, node_cap } => {
            let g = load_graph(graph)?;
            match min_strength(&g, r, *max_colors, *node_cap) {
                Ok(Some((ts, _))) => println!("{ts}"),
                Ok(None) => println!(">{max_colors}"),
                Err(e @ sumdist_core::Error::SearchBudgetExceeded { .. }) => {
                    println!("unknown");
                    return Err(IoError::from(e).into());
                }
                Err(e) => return Err(IoError::from(e).into()),
            }
        }
        Command::LemmaStats { graph, trials, resample_runs, chernoff_samples } => {
            let g = load_graph(graph)?;
            let stats = lemma_stats(&g, r, *trials, *resample_runs, cli.seed)?;
            let freq = stats.tally.frequencies();
            let mut out = io::stdout().lock();
            writeln!(out, "trials={}", stats.tally.trials)?;
            writeln!(out, "tracked_per_trial={}", stats.tally.tracked_per_trial())?;
            for (i, name) in ["f1", "f2", "f3"].iter().enumerate() {
                writeln!(out, "{name}_violations={}", stats.tally.violations[i])?;
                writeln!(out, "{name}_frequency={}", freq[i])?;
            }
            writeln!(out, "resample_runs={}", stats.resample_runs)?;
            writeln!(out, "resample_first_try={}", stats.first_try)?;
            writeln!(out, "resample_exhausted={}", stats.exhausted)?;
            writeln!(out, "resample_max_attempts={}", stats.max_attempts_seen)?;
            if *chernoff_samples > 0 {
                writeln!(out)?;
                writeln!(out, "{:>5} {:>4} {:>9} {:>12} {:>12} {:>10} {:>5}", "n", "p", "t", "bound", "estimate", "se", "ok")?;
                for row in chernoff_grid(*chernoff_samples, cli.seed)? {
                    writeln!(
                        out,
                        "{:>5} {:>4} {:>9.4} {:>12.6e} {:>12.6e} {:>10.3e} {:>5}",
                        row.n,
                        row.p,
                        row.t,
                        row.bound,
                        row.estimate,
                        row.std_error,
                        row.holds()
                    )?;
                }
            }
        }
        Command::Bench { kind, n, p, d, radii, seeds, threads, reports } => {
            let mut instances = Vec::new();
            for &nn in n {
                let shapes: Vec<GraphKind> = match kind {
                    Kind::Gnp if p.is_empty() => return Err(IoError::InvalidArgs("--kind gnp needs --p".into()).into()),
                    Kind::Gnp => p.iter().map(|&pp| kind.build(nn, Some(pp), None)).collect::<Result<_, _>>()?,
                    Kind::Regular if d.is_empty() => {
                        return Err(IoError::InvalidArgs("--kind regular needs --d".into()).into())
                    }
                    Kind::Regular => d.iter().map(|&dd| kind.build(nn, None, Some(dd))).collect::<Result<_, _>>()?,
                    _ => vec![kind.build(nn, None, None)?],
                };
                for shape in shapes {
                    for &rr in radii {
                        for i in 0..*seeds {
                            instances.push(Instance { kind: shape, r: rr, seed: cli.seed.wrapping_add(i) });
                        }
                    }
                }
            }
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |t| t.get()));
            let mut rows = Vec::new();
            let mut out = io::stdout().lock();
            for res in run_bench(&instances, &options(cli), threads) {
                let row = res?;
                if *reports {
                    writeln!(out, "{}", row.report)?;
                }
                rows.push(row);
            }
            write!(out, "{}", summary_table(&rows))?;
            if rows.iter().any(|row| !row.valid) {
                return Ok(EXIT_INVALID);
            }
        }
    }
    Ok(EXIT_OK)
}
