use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use co2plex_cli::bench::{self, BenchmarkRecord};
use co2plex_cli::config::{parse_seconds, Overrides, RunConfig};
use co2plex_core::co2plex::unit_weights;
use co2plex_core::graph::write_dimacs_col;
use co2plex_core::lab::{run_check, Check, LabConfig};
use co2plex_core::solver::{solve_max_co2plex, AlgorithmChoice, SolveStatus};
use co2plex_core::{Element, Rational, UtterGraph};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "co2plex", version, about = "Maximum weighted co-2-plex solver and polyhedral lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
struct SolverFlags {
    /// n2, n2-2plex, e or e-utter
    #[arg(long)]
    alg: Option<AlgorithmChoice>,
    /// Seconds
    #[arg(long, value_parser = parse_seconds)]
    time_limit: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cut_rounds: Option<usize>,
    #[arg(long)]
    threshold: Option<f64>,
    /// key = value file; defaults to $CO2PLEX_CONFIG
    #[arg(long)]
    config: Option<PathBuf>,
    /// Skip peeling and decomposition
    #[arg(long)]
    no_preprocess: bool,
    /// Add exact star cuts to the natural formulations
    #[arg(long)]
    star_cuts: bool,
}

impl SolverFlags {
    fn resolve(&self) -> Result<RunConfig> {
        RunConfig::resolve(
            self.config.as_deref(),
            &Overrides {
                alg: self.alg,
                time_limit: self.time_limit,
                seed: self.seed,
                cut_rounds: self.cut_rounds,
                threshold: self.threshold,
                no_preprocess: self.no_preprocess,
                star_cuts: self.star_cuts,
            },
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance
    Solve {
        instance: PathBuf,
        /// Vertex weights, whitespace separated (integers or p/q)
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Write a JSON record here
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Generate G(n, p) instances and a manifest
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Run algorithms over a manifest and report CSV plus a summary table
    Bench {
        manifest: PathBuf,
        /// Comma-separated algorithms
        #[arg(long, value_delimiter = ',', default_value = "n2,n2-2plex,e,e-utter")]
        algs: Vec<AlgorithmChoice>,
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
        /// Summary JSON; defaults to the CSV path with a .summary.json suffix
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Recompute the summary from the written CSV and compare
        #[arg(long)]
        audit: bool,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Run a named property suite, or `all`
    Lab {
        check: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON verdicts here as well
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the utter graph in DIMACS form
    Utter { instance: PathBuf, out: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            instance,
            weights,
            json,
            flags,
        } => solve(&instance, weights.as_deref(), json.as_deref(), &flags),
        Command::Gen {
            n,
            p,
            count,
            seed,
            outdir,
        } => {
            let m = bench::generate(n, p, count, seed, &outdir)?;
            println!("wrote {} instances and manifest.json to {}", m.instances.len(), outdir.display());
            Ok(0)
        }
        Command::Bench {
            manifest,
            algs,
            out,
            summary,
            audit,
            flags,
        } => run_bench(&manifest, &algs, &out, summary, audit, &flags),
        Command::Lab {
            check,
            n_max,
            count,
            seed,
            json,
        } => lab(&check, LabConfig { n_max, count, seed }, json.as_deref()),
        Command::Utter { instance, out } => {
            let g = bench::read_instance(&instance)?;
            let u = UtterGraph::build(&g);
            let mut comments = vec![format!("utter graph of {}", instance.display())];
            for node in 0..u.graph().n() {
                comments.push(match u.element(node) {
                    Element::Vertex(v) => format!("node {} = vertex {}", node + 1, v + 1),
                    Element::Edge(e) => {
                        let (a, b) = g.edge(e);
                        format!("node {} = edge {} {}", node + 1, a + 1, b + 1)
                    }
                });
            }
            std::fs::write(&out, write_dimacs_col(u.graph(), &comments))
                .with_context(|| format!("writing {}", out.display()))?;
            println!("u(G): {} nodes, {} edges", u.graph().n(), u.graph().m());
            Ok(0)
        }
    }
}

fn read_weights(path: &Path, n: usize) -> Result<Vec<Rational>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let w: Vec<Rational> = text
        .split_whitespace()
        .map(|t| t.parse::<Rational>().with_context(|| format!("invalid weight {t:?}")))
        .collect::<Result<_>>()?;
    if w.len() != n {
        bail!("{} weights for {n} vertices", w.len());
    }
    Ok(w)
}

#[derive(Serialize)]
struct SolveReport<'a> {
    schema: &'static str,
    instance: String,
    algorithm: &'static str,
    value: String,
    certificate: Vec<usize>,
    stats: &'a co2plex_core::solver::SolveStats,
    config: &'a RunConfig,
    config_hash: String,
    gap_convention: &'static str,
}

fn solve(instance: &Path, weights: Option<&Path>, json: Option<&Path>, flags: &SolverFlags) -> Result<u8> {
    let cfg = flags.resolve()?;
    let g = bench::read_instance(instance)?;
    let w = match weights {
        Some(p) => read_weights(p, g.n())?,
        None => unit_weights(g.n()),
    };
    let r = solve_max_co2plex(&g, &w, cfg.alg, &cfg.solver_config())?;
    let certificate: Vec<usize> = r.co2plex.vertices.iter().map(|v| v + 1).collect();
    let s = &r.stats;
    println!("value {}", r.value);
    println!(
        "certificate {}",
        certificate.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    );
    println!("status {}", s.status.name());
    println!(
        "nodes {} cuts {} root_lp {:.6} bound {:.6} gap {:.6} root_gap {:.6} wall_time {:.4}",
        s.nodes, s.cuts, s.root_lp_value, s.best_bound, s.gap, s.root_gap, s.wall_time
    );
    if let Some(p) = json {
        let report = SolveReport {
            schema: "co2plex-solve/1",
            instance: instance.display().to_string(),
            algorithm: cfg.alg.name(),
            value: r.value.to_string(),
            certificate,
            stats: s,
            config: &cfg,
            config_hash: cfg.hash(),
            gap_convention: bench::GAP_CONVENTION,
        };
        std::fs::write(p, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if s.status == SolveStatus::TimeLimit { 2 } else { 0 })
}

fn run_bench(
    manifest: &Path,
    algs: &[AlgorithmChoice],
    out: &Path,
    summary: Option<PathBuf>,
    audit: bool,
    flags: &SolverFlags,
) -> Result<u8> {
    let cfg = flags.resolve()?;
    let instances = bench::load_manifest(manifest)?;
    let mut missing = Vec::new();
    let records: Vec<BenchmarkRecord> = bench::run_bench(&instances, algs, &cfg, &mut missing);
    for m in &missing {
        eprintln!("missing instance: {m}");
    }
    let file = std::fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
    bench::write_csv(&records, file)?;
    let s = bench::summarize(&records);
    let summary_path = summary.unwrap_or_else(|| out.with_extension("summary.json"));
    std::fs::write(&summary_path, serde_json::to_string_pretty(&s)? + "\n")
        .with_context(|| format!("writing {}", summary_path.display()))?;
    print!("{}", bench::render_table(&s));
    println!("{} rows written to {} (config {})", records.len(), out.display(), cfg.hash());
    if audit {
        let claimed: bench::Summary = serde_json::from_str(&std::fs::read_to_string(&summary_path)?)?;
        bench::audit(out, &claimed).context("audit failed")?;
        println!("audit ok");
    }
    Ok(0)
}

fn lab(check: &str, config: LabConfig, json: Option<&Path>) -> Result<u8> {
    let checks: Vec<Check> = if check == "all" {
        Check::ALL.to_vec()
    } else {
        vec![check.parse()?]
    };
    let mut reports = Vec::new();
    for c in checks {
        let r = run_check(c, &config)?;
        println!("{}", serde_json::to_string(&r)?);
        reports.push(r);
    }
    if let Some(p) = json {
        std::fs::write(p, serde_json::to_string_pretty(&reports)? + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
}
