//! `spturan`: spectral Turán computations for gem-free graphs.
//!
//! Exit status is 0 on success or a passing/unjudged verdict, 2 on a
//! failing or indistinguishable verdict and 1 on usage or runtime errors.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spectral_turan::canon::canonical_form;
use spectral_turan::certify::{certify_theorem, CertifyOptions, Mode};
use spectral_turan::enumerate::{count_ffree, enumerate_ffree, enumerate_graphs, extremal_scan_with_margin, EnumOptions, DEFAULT_GUARD};
use spectral_turan::forbidden::{classify_neighborhood, find_embedding};
use spectral_turan::record::{ExtremalRecord, Method, Verdict};
use spectral_turan::report::{json_table, text_table};
use spectral_turan::search::{local_search, SearchConfig};
use spectral_turan::spectral::bounds::{check_lemma22, Lemma22Options};
use spectral_turan::spectral::identity::{edge_bound_at_extremal, walk_identity_residual};
use spectral_turan::spectral::{perron, rho_exact_family, DEFAULT_MARGIN, DEFAULT_TOL};
use spectral_turan::store::{RecordFilter, RecordStore};
use spectral_turan::{build_family, graph6, FamilySpec};

#[derive(Parser)]
#[command(name = "spturan", version, about = "Spectral Turán computations for gem-free graphs with m edges")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance for eigenvector solves.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Gap below which spectral radii count as indistinguishable.
    #[arg(long, global = true, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family (`snk:13,2`, `snkt:14,2,2`, `fan:5`, ...) and print its graph6.
    Build { family: FamilySpec },
    /// Spectral radius and Perron vector summary.
    Rho {
        /// graph6 strings or family specs; graph6 lines on stdin if empty.
        graphs: Vec<String>,
    },
    /// Test graphs for a forbidden subgraph.
    Free {
        graphs: Vec<String>,
        /// `gem` or a graph6/family pattern.
        #[arg(long, default_value = "gem")]
        pattern: String,
    },
    /// List every F-free graph with m edges as graph6, in canonical-form order.
    Enum {
        m: usize,
        /// Pattern to exclude; `none` lists all graphs.
        #[arg(long, default_value = "gem")]
        pattern: String,
        /// Print only the number of classes.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Rank F-free graphs with m edges by spectral radius.
    Scan {
        m: usize,
        #[arg(long, default_value = "gem")]
        pattern: String,
        #[arg(long, default_value_t = 3)]
        top: usize,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Seeded hill climbing over connected F-free graphs with m edges.
    Search {
        m: usize,
        #[arg(long, default_value = "gem")]
        pattern: String,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
        /// Graphs (graph6 or family) that may not be reported.
        #[arg(long = "exclude")]
        excluded: Vec<String>,
        /// Exclude the book `S_{(m+3)/2,2}` (odd m).
        #[arg(long)]
        exclude_book: bool,
        #[arg(long)]
        serial: bool,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Check the predicted maximizer and runner-up for gem-free graphs with m edges.
    Certify {
        m: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Local-search restarts in pool mode.
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 3)]
        top: usize,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Runner-up bound and dominance over pendant books for odd m (or an inclusive range `a..b`).
    CheckLemma22 {
        m: String,
        #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
        t: Vec<usize>,
        /// Allow even m and m < 23.
        #[arg(long)]
        probe: bool,
    },
    /// Two-step walk identity at every vertex and the edge bound at the extremal vertex.
    IdentityCheck { graphs: Vec<String> },
    /// Read records from a store.
    Query {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        m_min: Option<usize>,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        method: Option<Method>,
        #[arg(long)]
        verdict: Option<Verdict>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        forbidden: Option<String>,
    },
}

#[derive(Args)]
struct EnumArgs {
    /// Include disconnected graphs.
    #[arg(long)]
    all: bool,
    /// Largest m enumerated without complaint.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    #[arg(long)]
    serial: bool,
}

impl EnumArgs {
    fn options(&self) -> EnumOptions {
        EnumOptions {
            connected_only: !self.all,
            guard: self.guard,
            parallel: !self.serial,
            ..EnumOptions::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Pool,
}

fn emit_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn store_records(path: &Option<PathBuf>, records: &[ExtremalRecord]) -> Result<()> {
    if let Some(path) = path {
        let n = RecordStore::open(path).upsert(records)?;
        log::info!("stored {n} records in {}", path.display());
    }
    Ok(())
}

fn print_records(cli: &Cli, records: &[ExtremalRecord]) {
    if cli.json {
        println!("{}", json_table(records));
    } else {
        print!("{}", text_table(records));
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let tol = cli.tol;
    match &cli.command {
        Command::Build { family } => {
            let g = build_family(family)?;
            let text = graph6::encode(&g);
            if cli.json {
                emit_json(&json!({
                    "family": family.to_string(),
                    "graph6": text,
                    "order": g.order(),
                    "size": g.size(),
                }))?;
            } else {
                println!("{text}");
            }
        }
        Command::Rho { graphs } => {
            let mut rows = Vec::new();
            for inp in input::collect(graphs)? {
                let p = perron(&inp.graph, tol)?;
                let exact = inp.family.as_ref().and_then(|f| rho_exact_family(f).ok());
                rows.push(json!({
                    "graph": inp.label,
                    "rho": p.rho,
                    "exact": exact,
                    "residual": p.residual,
                    "iterations": p.iterations,
                    "extremal_vertex": p.extremal_vertex(),
                    "x": p.x,
                }));
                if !cli.json {
                    let exact = exact.map(|e| format!("  exact {e:.15}")).unwrap_or_default();
                    println!("{}  rho {:.15}{exact}  residual {:.2e}", inp.label, p.rho, p.residual);
                }
            }
            if cli.json {
                emit_json(&rows)?;
            }
        }
        Command::Free { graphs, pattern } => {
            let f = input::pattern(pattern)?;
            let mut rows = Vec::new();
            for inp in input::collect(graphs)? {
                let witness = find_embedding(&inp.graph, &f);
                if !cli.json {
                    match &witness {
                        Some(w) => println!("{}  contains {}  at {w:?}", inp.label, f.name()),
                        None => println!("{}  {}-free", inp.label, f.name()),
                    }
                }
                rows.push(json!({ "graph": inp.label, "free": witness.is_none(), "witness": witness }));
            }
            if cli.json {
                emit_json(&rows)?;
            }
        }
        Command::Enum { m, pattern, count, enumeration } => {
            let opts = enumeration.options();
            let f = (pattern != "none").then(|| input::pattern(pattern)).transpose()?;
            if *count {
                let n = count_ffree(*m, f.as_ref(), &opts)?;
                if cli.json {
                    emit_json(&json!({ "m": m, "count": n }))?;
                } else {
                    println!("{n}");
                }
                return Ok(0);
            }
            let graphs = match &f {
                Some(f) => enumerate_ffree(*m, f, &opts)?,
                None => enumerate_graphs(*m, &opts)?,
            };
            let texts: Vec<String> = graphs.iter().map(graph6::encode).collect();
            if cli.json {
                emit_json(&texts)?;
            } else {
                let mut out = std::io::stdout().lock();
                for t in texts {
                    writeln!(out, "{t}")?;
                }
            }
        }
        Command::Scan { m, pattern, top, enumeration, store } => {
            let f = input::pattern(pattern)?;
            let records = extremal_scan_with_margin(*m, &f, *top, &enumeration.options(), cli.margin)?;
            store_records(store, &records)?;
            print_records(cli, &records);
        }
        Command::Search { m, pattern, restarts, max_steps, excluded, exclude_book, serial, store } => {
            let mut forms = Vec::new();
            for e in excluded {
                forms.push(canonical_form(&input::parse(e)?.graph));
            }
            if *exclude_book {
                forms.push(canonical_form(&build_family(&FamilySpec::book_for_size(*m)?)?));
            }
            let cfg = SearchConfig {
                excluded: forms,
                restarts: *restarts,
                max_steps: *max_steps,
                seed: cli.seed,
                margin: cli.margin,
                tol,
                parallel: !serial,
                ..SearchConfig::new(*m, input::pattern(pattern)?)
            };
            let log = local_search(&cfg)?;
            store_records(store, std::slice::from_ref(&log.best))?;
            if cli.json {
                emit_json(&log)?;
            } else {
                for r in &log.restarts {
                    println!("restart {:>3}  rho {:.12}  steps {:>7}  accepted {:>4}  {}", r.index, r.rho, r.steps, r.accepted, r.graph6);
                }
                println!("best {} rho {:.15} (restart {}, {:.2?})", log.best.graph6, log.best.rho, log.best_restart, log.wall_time);
            }
        }
        Command::Certify { m, mode, restarts, top, enumeration, store } => {
            let opts = CertifyOptions {
                margin: cli.margin,
                tol,
                seed: cli.seed,
                restarts: *restarts,
                enumeration: enumeration.options(),
                top_k: *top,
            };
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Pool => Mode::Pool,
            };
            let c = certify_theorem(*m, mode, &opts)?;
            store_records(store, &c.records)?;
            if cli.json {
                emit_json(&c)?;
            } else {
                print!("{}", text_table(&c.records));
                for check in &c.checks {
                    let expected = check.expected.as_deref().unwrap_or("no prediction");
                    println!("rank {}: expected {expected}, {}", check.rank, check.verdict);
                }
                let label = c.label.map(|l| format!(" ({l})")).unwrap_or_default();
                println!("verdict: {}{label}, {} classes ranked", c.verdict, c.candidates);
            }
            return Ok(c.verdict.exit_code() as u8);
        }
        Command::CheckLemma22 { m, t, probe } => {
            let (lo, hi) = match m.split_once("..") {
                Some((a, b)) => (a.parse()?, b.parse()?),
                None => {
                    let m = m.parse()?;
                    (m, m)
                }
            };
            if lo > hi {
                bail!("empty range {lo}..{hi}");
            }
            let opts = Lemma22Options { margin: cli.margin, probe: *probe };
            let step = if lo == hi { 1 } else { 2 };
            let first = if lo == hi || *probe || lo % 2 == 1 { lo } else { lo + 1 };
            let mut reports = Vec::new();
            for m in (first..=hi).step_by(step) {
                reports.push(check_lemma22(m, t, opts)?);
            }
            let pass = reports.iter().all(|r| r.pass());
            if cli.json {
                emit_json(&reports)?;
            } else {
                for r in &reports {
                    let status = if r.pass() { "pass" } else { "FAIL" };
                    println!("m={:<5} rho2 {:.12}  bound {:.12}  least margin {:.3e}  {status}", r.m, r.rho_runner_up, r.lower_bound, r.min_margin());
                }
            }
            return Ok(if pass { 0 } else { 2 });
        }
        Command::IdentityCheck { graphs } => {
            let mut rows = Vec::new();
            for inp in input::collect(graphs)? {
                let p = perron(&inp.graph, tol)?;
                let worst = (0..inp.graph.order())
                    .map(|u| walk_identity_residual(&inp.graph, u, &p))
                    .fold(0.0, f64::max);
                let bound = edge_bound_at_extremal(&inp.graph, &p);
                let classes: Vec<String> = classify_neighborhood(&inp.graph, bound.hub)
                    .components
                    .iter()
                    .map(|c| format!("{:?}", c.class))
                    .collect();
                if !cli.json {
                    println!(
                        "{}  worst residual {worst:.2e}  hub {}  e(W) {}  bound {:.6}  holds {}",
                        inp.label,
                        bound.hub,
                        bound.edges_outside,
                        bound.weighted_bound,
                        bound.holds(1e-9)
                    );
                }
                rows.push(json!({
                    "graph": inp.label,
                    "max_residual": worst,
                    "edge_bound": bound,
                    "components": classes,
                }));
            }
            if cli.json {
                emit_json(&rows)?;
            }
        }
        Command::Query { store, m_min, m_max, method, verdict, rank, forbidden } => {
            let m = match (m_min, m_max) {
                (None, None) => None,
                (a, b) => Some(a.unwrap_or(0)..=b.unwrap_or(usize::MAX)),
            };
            let filter = RecordFilter {
                m,
                forbidden: forbidden.clone(),
                method: *method,
                verdict: *verdict,
                rank: *rank,
            };
            let records = RecordStore::open(store).query(&filter)?;
            if cli.json {
                emit_json(&records)?;
            } else {
                print!("{}", text_table(&records));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
