//! Command-line front end: seeded, reproducible, machine-readable runs of
//! every operation in the library. JSON goes to stdout (schema 1, stable
//! field order; identical invocations are byte-identical apart from
//! `runtime_ms`), diagnostics to stderr. Exit codes: 0 success, 2 input
//! error, 3 scale-guard error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tempograph::bridges::{bridges_greedy, bridges_oracle};
use tempograph::error::Error;
use tempograph::estimators::{estimate_md_td, estimate_path_count, EstimateReport};
use tempograph::extend_try::extend_try_experiment;
use tempograph::formulas::{self, citations, expected_paths, star_md, PathCountQuery};
use tempograph::graph::{Label, TimeEdge, Vertex};
use tempograph::sampling::{
    make_clique, make_path, make_star, sample_labeling, BaseGraph, SampleSpec,
};
use tempograph::{io, DEFAULT_SEED};

const SCHEMA: u32 = 1;
const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "tempograph",
    version,
    about = "Temporal-graph journeys, distances, and seeded experiments"
)]
struct Cli {
    /// RNG master seed; falls back on $TEMPOGRAPH_SEED, then on a fixed
    /// built-in constant, so every invocation reproduces.
    #[arg(long, global = true, env = "TEMPOGRAPH_SEED")]
    seed: Option<u64>,

    /// Worker-thread cap for the estimators (default: available parallelism).
    /// Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format; csv exists only for tabular outputs (bridges table,
    /// all-pairs distance matrix).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Clique,
    Star,
    Path,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Clique => "clique",
            Family::Star => "star",
            Family::Path => "path",
        }
    }

    /// Base graph on `n` vertices: star center is vertex 0, path vertices
    /// are in line order.
    fn base(self, n: usize) -> Result<BaseGraph, Error> {
        match self {
            Family::Clique => {
                if n < 1 {
                    return Err(Error::invalid_input("clique needs n >= 1"));
                }
                Ok(make_clique(n))
            }
            Family::Star => {
                if n < 2 {
                    return Err(Error::invalid_input("star needs n >= 2 vertices"));
                }
                Ok(make_star(n - 1))
            }
            Family::Path => {
                if n < 2 {
                    return Err(Error::invalid_input("path needs n >= 2 vertices"));
                }
                Ok(make_path(n - 1))
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample one uniform labeling of a graph family and write it in the
    /// tgraph text format (stdout, or --out plus a JSON summary).
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Largest assignable label; defaults to n for cliques (normalized).
        #[arg(long)]
        a: Option<Label>,
        /// Slow-journey arrival time; defaults to a/2.
        #[arg(long)]
        nprime: Option<f64>,
        #[arg(long, default_value_t = 0)]
        sample_index: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temporal distances in a tgraph file: one pair (--source and --target)
    /// or the whole matrix (neither).
    Distance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        source: Option<Vertex>,
        #[arg(long)]
        target: Option<Vertex>,
    },
    /// Expected number of length-k journeys in the uniform random temporal
    /// clique: closed form, large-a approximation, and optionally a Monte
    /// Carlo estimate next to them.
    PathCount {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Estimate the maximum expected temporal distance of a family.
    Md {
        #[command(flatten)]
        est: EstimateArgs,
    },
    /// Estimate the temporal diameter of a family.
    Td {
        #[command(flatten)]
        est: EstimateArgs,
    },
    /// Run the extend-try experiment on sampled normalized cliques.
    ExtendTry {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Permit c1 or r at or below 1 (outside the analyzed regime; the
        /// success bound is then only indicative).
        #[arg(long)]
        allow_small_params: bool,
    },
    /// Solve the bridges problem and print the assignment, the feasibility
    /// oracle's optimum, and the closed form.
    Bridges {
        #[arg(long)]
        n: u64,
    },
    /// Enumerate every closed form with its citation string.
    Formulas {
        #[arg(long)]
        list: bool,
    },
}

#[derive(clap::Args)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Largest assignable label; defaults to n for cliques (normalized).
    #[arg(long)]
    a: Option<Label>,
    /// Slow-journey arrival time; defaults to a/2.
    #[arg(long)]
    nprime: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
}

impl EstimateArgs {
    fn resolve(&self) -> Result<(BaseGraph, Label, f64), Error> {
        let base = self.family.base(self.n)?;
        let a = match (self.a, self.family) {
            (Some(a), _) => a,
            (None, Family::Clique) => self.n as Label,
            (None, _) => {
                return Err(Error::invalid_input(
                    "--a is required for this family (only cliques default to a = n)",
                ))
            }
        };
        let nprime = self.nprime.unwrap_or(a as f64 / 2.0);
        Ok((base, a, nprime))
    }
}

/// Common wrapper: stable leading fields, payload in the middle,
/// `runtime_ms` always last so reproducibility checks can strip it.
#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    tool_version: &'static str,
    citation: &'static str,
    #[serde(flatten)]
    payload: T,
    runtime_ms: u128,
}

fn emit<T: Serialize>(citation: &'static str, payload: T, started: Instant) {
    let envelope = Envelope {
        schema: SCHEMA,
        tool_version: TOOL_VERSION,
        citation,
        payload,
        runtime_ms: started.elapsed().as_millis(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&envelope).expect("report serializes")
    );
}

#[derive(Serialize)]
struct GeneratePayload {
    family: &'static str,
    n: usize,
    a: Label,
    nprime: f64,
    seed: u64,
    sample_index: u64,
    num_edges: usize,
    out: String,
}

#[derive(Serialize)]
struct PairPayload {
    source: Vertex,
    target: Vertex,
    delta_prime: Option<Label>,
    delta: f64,
    witness: Option<Vec<TimeEdge>>,
}

#[derive(Serialize)]
struct MatrixRow {
    source: Vertex,
    target: Vertex,
    delta_prime: Option<Label>,
    delta: f64,
}

#[derive(Serialize)]
struct MatrixPayload {
    n: usize,
    nprime: f64,
    pairs: Vec<MatrixRow>,
}

#[derive(Serialize)]
struct PathCountPayload {
    n: u64,
    k: u64,
    a: u64,
    formula: f64,
    large_a_approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate_stderr: Option<f64>,
}

#[derive(Serialize)]
struct EstimatePayload {
    family: &'static str,
    n: usize,
    a: Label,
    nprime: f64,
    #[serde(flatten)]
    report: EstimateReport,
    /// Closed-form star value printed next to star-family estimates.
    #[serde(skip_serializing_if = "Option::is_none")]
    star_md_closed_form: Option<f64>,
}

#[derive(Serialize)]
struct BridgesPayload {
    n: u64,
    max_cost: u64,
    oracle: u64,
    opt_formula: u64,
    contents: Vec<u64>,
    costs: Vec<u64>,
}

#[derive(Serialize)]
struct FormulasPayload {
    formulas: Vec<formulas::FormulaEntry>,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (e.g. `tempograph ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);

    let run = || -> Result<(), Error> {
        let started = Instant::now();
        match &cli.command {
            Command::Generate {
                family,
                n,
                a,
                nprime,
                sample_index,
                out,
            } => {
                let base = family.base(*n)?;
                let a = match (a, family) {
                    (Some(a), _) => *a,
                    (None, Family::Clique) => *n as Label,
                    (None, _) => {
                        return Err(Error::invalid_input(
                            "--a is required for this family (only cliques default to a = n)",
                        ))
                    }
                };
                let nprime = nprime.unwrap_or(a as f64 / 2.0);
                require_json(cli.format)?;
                let spec =
                    SampleSpec::uniform(base, a, nprime, seed).with_sample_index(*sample_index);
                let graph = sample_labeling(&spec)?;
                match out {
                    None => print!("{}", io::write_string(&graph)),
                    Some(path) => {
                        io::save(&graph, path)?;
                        emit(
                            citations::SAMPLING,
                            GeneratePayload {
                                family: family.name(),
                                n: *n,
                                a,
                                nprime,
                                seed,
                                sample_index: *sample_index,
                                num_edges: graph.num_edges(),
                                out: path.display().to_string(),
                            },
                            started,
                        );
                    }
                }
            }
            Command::Distance {
                input,
                source,
                target,
            } => {
                let graph = io::load(input)?;
                match (source, target) {
                    (Some(s), Some(t)) => {
                        require_json(cli.format)?;
                        let report = graph.foremost_journey(*s, *t)?;
                        emit(
                            citations::FOREMOST,
                            PairPayload {
                                source: *s,
                                target: *t,
                                delta_prime: report.delta_prime,
                                delta: report.delta,
                                witness: report.witness.map(|j| j.time_edges),
                            },
                            started,
                        );
                    }
                    (None, None) => {
                        let all = graph.all_pairs_distances();
                        let rows: Vec<MatrixRow> = all
                            .iter()
                            .enumerate()
                            .flat_map(|(s, row)| {
                                row.iter().enumerate().map(move |(t, r)| MatrixRow {
                                    source: s,
                                    target: t,
                                    delta_prime: r.delta_prime,
                                    delta: r.delta,
                                })
                            })
                            .collect();
                        match cli.format {
                            Format::Json => emit(
                                citations::FOREMOST,
                                MatrixPayload {
                                    n: graph.num_vertices(),
                                    nprime: graph.slow_arrival(),
                                    pairs: rows,
                                },
                                started,
                            ),
                            Format::Csv => {
                                println!("source,target,delta_prime,delta");
                                for r in rows {
                                    let dp =
                                        r.delta_prime.map(|d| d.to_string()).unwrap_or_default();
                                    println!("{},{},{},{}", r.source, r.target, dp, r.delta);
                                }
                            }
                        }
                    }
                    _ => {
                        return Err(Error::invalid_input(
                            "give both --source and --target, or neither for the full matrix",
                        ))
                    }
                }
            }
            Command::PathCount { n, k, a, samples } => {
                require_json(cli.format)?;
                let value = expected_paths(&PathCountQuery {
                    n: *n,
                    k: *k,
                    a: *a,
                })?;
                let mut payload = PathCountPayload {
                    n: *n,
                    k: *k,
                    a: *a,
                    formula: value.value,
                    large_a_approx: value.large_a_approx,
                    samples: None,
                    seed: None,
                    estimate_mean: None,
                    estimate_stderr: None,
                };
                if let Some(samples) = samples {
                    let est =
                        estimate_path_count(*n as usize, *k as usize, *a as Label, *samples, seed)?;
                    payload.samples = Some(*samples);
                    payload.seed = Some(seed);
                    payload.estimate_mean = Some(est.mean);
                    payload.estimate_stderr = Some(est.stderr);
                }
                emit(citations::PATH_COUNT, payload, started);
            }
            Command::Md { est } | Command::Td { est } => {
                require_json(cli.format)?;
                let (base, a, nprime) = est.resolve()?;
                let (md, td) = estimate_md_td(&base, a, nprime, est.samples, seed)?;
                let want_md = matches!(cli.command, Command::Md { .. });
                let report = if want_md { md } else { td };
                let closed_form = match est.family {
                    Family::Star => star_md(a as u64, nprime).ok().map(|s| s.value),
                    _ => None,
                };
                emit(
                    if want_md {
                        citations::MD
                    } else {
                        citations::TD
                    },
                    EstimatePayload {
                        family: est.family.name(),
                        n: est.n,
                        a,
                        nprime,
                        report,
                        star_md_closed_form: closed_form,
                    },
                    started,
                );
            }
            Command::ExtendTry {
                n,
                c1,
                r,
                trials,
                allow_small_params,
            } => {
                require_json(cli.format)?;
                let params = formulas::extend_try_params(*n, *c1, *r)?;
                if params.small_params_warning && !allow_small_params {
                    return Err(Error::invalid_input(
                        "c1 and r at or below 1 are outside the analyzed regime; \
                         pass --allow-small-params to run anyway",
                    ));
                }
                let report = extend_try_experiment(*n, *c1, *r, *trials, seed)?;
                emit(citations::EXTEND_TRY_BOUND, report, started);
            }
            Command::Bridges { n } => {
                let solution = bridges_greedy(*n)?;
                match cli.format {
                    Format::Json => emit(
                        citations::BRIDGES,
                        BridgesPayload {
                            n: *n,
                            max_cost: solution.max_cost,
                            oracle: bridges_oracle(*n),
                            opt_formula: solution.opt_formula,
                            contents: solution.contents,
                            costs: solution.costs,
                        },
                        started,
                    ),
                    Format::Csv => {
                        println!("bridge,content,cost");
                        for (i, (content, cost)) in
                            solution.contents.iter().zip(&solution.costs).enumerate()
                        {
                            println!("{},{},{}", i + 1, content, cost);
                        }
                    }
                }
            }
            Command::Formulas { .. } => {
                require_json(cli.format)?;
                emit(
                    citations::CATALOG,
                    FormulasPayload {
                        formulas: formulas::catalog(),
                    },
                    started,
                );
            }
        }
        Ok(())
    };

    let result = match cli.threads {
        None => run(),
        Some(t) => {
            if t == 0 {
                eprintln!("error: --threads must be >= 1");
                return ExitCode::from(2);
            }
            match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                Ok(pool) => pool.install(run),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ScaleGuard(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn require_json(format: Format) -> Result<(), Error> {
    if format == Format::Csv {
        return Err(Error::invalid_input(
            "csv output exists only for tabular results (bridges, distance matrix)",
        ));
    }
    Ok(())
}
