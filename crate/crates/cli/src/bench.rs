//! Instance manifests, benchmark records, the summary table and its audit.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use co2plex_core::co2plex::unit_weights;
use co2plex_core::graph::{generate_er, parse_dimacs_col, parse_metis, write_dimacs_col, GENERATOR_NAME};
use co2plex_core::solver::{solve_max_co2plex, AlgorithmChoice, SolveStatus};
use co2plex_core::Graph;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const BENCH_SCHEMA: &str = "co2plex-bench/1";
pub const MANIFEST_SCHEMA: &str = "co2plex-manifest/1";
pub const SUMMARY_SCHEMA: &str = "co2plex-summary/1";
pub const GAP_CONVENTION: &str = "gap = (best_bound - incumbent) / max(1, |incumbent|); root_gap uses the root LP value after cuts; nodes count the root";

pub const CSV_COLUMNS: [&str; 16] = [
    "schema",
    "instance",
    "n",
    "m",
    "density",
    "algorithm",
    "status",
    "value",
    "bound",
    "gap",
    "root_gap",
    "nodes",
    "cuts",
    "wall_time",
    "seed",
    "config_hash",
];

/// Reads an instance, DIMACS `.col` unless the extension says METIS.
pub fn read_instance(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let metis = matches!(path.extension().and_then(|e| e.to_str()), Some("graph" | "metis"));
    let g = if metis {
        parse_metis(&text)
    } else {
        parse_dimacs_col(&text)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

pub fn density(g: &Graph) -> f64 {
    if g.n() < 2 {
        0.0
    } else {
        2.0 * g.m() as f64 / (g.n() as f64 * (g.n() as f64 - 1.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Relative to the manifest directory.
    pub path: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub generator: String,
    pub n: usize,
    pub p: f64,
    pub count: usize,
    pub seed: u64,
    pub instances: Vec<ManifestEntry>,
}

pub fn instance_name(n: usize, p: f64, seed: u64) -> String {
    format!("er_n{n}_p{p}_s{seed}")
}

/// Writes `count` Erdős–Rényi instances and `manifest.json` into `outdir`.
pub fn generate(n: usize, p: f64, count: usize, seed: u64, outdir: &Path) -> Result<Manifest> {
    if !(0.0..=1.0).contains(&p) {
        bail!("edge probability must lie in [0, 1]");
    }
    std::fs::create_dir_all(outdir).with_context(|| format!("creating {}", outdir.display()))?;
    let mut instances = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let s = seed + i;
        let name = instance_name(n, p, s);
        let g = generate_er(n, p, s);
        let comments = vec![format!("G(n={n}, p={p}) seed {s} generator {GENERATOR_NAME}")];
        let file = format!("{name}.col");
        std::fs::write(outdir.join(&file), write_dimacs_col(&g, &comments))
            .with_context(|| format!("writing {}", outdir.join(&file).display()))?;
        instances.push(ManifestEntry { name, path: file, seed: s });
    }
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA.to_string(),
        generator: GENERATOR_NAME.to_string(),
        n,
        p,
        count,
        seed,
        instances,
    };
    let json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(outdir.join("manifest.json"), json + "\n")?;
    Ok(manifest)
}

/// Instance names and paths from a JSON manifest or a list of paths, one
/// per line.
pub fn load_manifest(path: &Path) -> Result<Vec<(String, PathBuf)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    if text.trim_start().starts_with('{') {
        let m: Manifest = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if m.schema != MANIFEST_SCHEMA {
            bail!("unsupported manifest schema {:?}", m.schema);
        }
        return Ok(m.instances.into_iter().map(|e| (e.name, dir.join(e.path))).collect());
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let p = dir.join(l);
            let name = p.file_stem().map_or(l.to_string(), |s| s.to_string_lossy().into_owned());
            (name, p)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub schema: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub algorithm: String,
    pub status: String,
    pub value: Option<String>,
    pub bound: Option<f64>,
    pub gap: Option<f64>,
    pub root_gap: Option<f64>,
    pub nodes: Option<u64>,
    pub cuts: Option<u64>,
    pub wall_time: Option<f64>,
    pub seed: u64,
    pub config_hash: String,
}

impl BenchmarkRecord {
    fn error(instance: &str, g: Option<&Graph>, alg: AlgorithmChoice, cfg: &RunConfig) -> Self {
        BenchmarkRecord {
            schema: BENCH_SCHEMA.to_string(),
            instance: instance.to_string(),
            n: g.map_or(0, Graph::n),
            m: g.map_or(0, Graph::m),
            density: g.map_or(0.0, density),
            algorithm: alg.name().to_string(),
            status: "error".to_string(),
            value: None,
            bound: None,
            gap: None,
            root_gap: None,
            nodes: None,
            cuts: None,
            wall_time: None,
            seed: cfg.seed,
            config_hash: cfg.hash(),
        }
    }
}

/// Solves one (instance, algorithm) cell with unit weights.
pub fn run_cell(instance: &str, g: &Graph, alg: AlgorithmChoice, cfg: &RunConfig) -> BenchmarkRecord {
    let mut rec = BenchmarkRecord::error(instance, Some(g), alg, cfg);
    let Ok(r) = solve_max_co2plex(g, &unit_weights(g.n()), alg, &cfg.solver_config()) else {
        return rec;
    };
    rec.status = r.stats.status.name().to_string();
    rec.value = Some(r.value.to_string());
    rec.bound = Some(r.stats.best_bound);
    rec.gap = Some(r.stats.gap);
    rec.root_gap = Some(r.stats.root_gap);
    rec.nodes = Some(r.stats.nodes);
    rec.cuts = Some(r.stats.cuts);
    rec.wall_time = Some(r.stats.wall_time);
    rec
}

/// One row per (instance, algorithm), instances in manifest order.
/// Unreadable instances yield `error` rows and a note in `missing`.
pub fn run_bench(
    instances: &[(String, PathBuf)],
    algs: &[AlgorithmChoice],
    cfg: &RunConfig,
    missing: &mut Vec<String>,
) -> Vec<BenchmarkRecord> {
    let mut out = Vec::with_capacity(instances.len() * algs.len());
    for (name, path) in instances {
        let g = match read_instance(path) {
            Ok(g) => Some(g),
            Err(e) => {
                missing.push(format!("{}: {e:#}", path.display()));
                None
            }
        };
        for &alg in algs {
            let mut c = cfg.clone();
            c.alg = alg;
            out.push(match &g {
                Some(g) => run_cell(name, g, alg, &c),
                None => BenchmarkRecord::error(name, None, alg, &c),
            });
        }
    }
    out
}

pub fn write_csv<W: Write>(records: &[BenchmarkRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads records back, checking the header and every row against the schema.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<BenchmarkRecord>> {
    let mut rd = csv::Reader::from_reader(r);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        bail!("unexpected CSV header {header:?}");
    }
    let mut out = Vec::new();
    for (i, row) in rd.deserialize().enumerate() {
        let rec: BenchmarkRecord = row.with_context(|| format!("CSV row {}", i + 2))?;
        validate(&rec).with_context(|| format!("CSV row {}", i + 2))?;
        out.push(rec);
    }
    Ok(out)
}

fn validate(r: &BenchmarkRecord) -> Result<()> {
    if r.schema != BENCH_SCHEMA {
        bail!("schema {:?}", r.schema);
    }
    if r.algorithm.parse::<AlgorithmChoice>().is_err() {
        bail!("algorithm {:?}", r.algorithm);
    }
    let expected = if r.n < 2 {
        0.0
    } else {
        2.0 * r.m as f64 / (r.n as f64 * (r.n as f64 - 1.0))
    };
    if (r.density - expected).abs() > 1e-9 {
        bail!("density {} for n={} m={}", r.density, r.n, r.m);
    }
    match r.status.as_str() {
        "error" => {}
        "optimal" | "time_limit" => {
            let complete = r.value.is_some()
                && r.bound.is_some()
                && r.root_gap.is_some()
                && r.nodes.is_some()
                && r.cuts.is_some()
                && r.wall_time.is_some();
            if !complete {
                bail!("missing metric for a solved row");
            }
            let gap = r.gap.context("missing gap")?;
            if gap < 0.0 || (r.status == "optimal" && gap != 0.0) {
                bail!("gap {gap} with status {}", r.status);
            }
        }
        s => bail!("status {s:?}"),
    }
    if r.config_hash.len() != 16 || !r.config_hash.chars().all(|c| c.is_ascii_hexdigit()) {
        bail!("config hash {:?}", r.config_hash);
    }
    Ok(())
}

/// One summary row: means over rows without error; the gap mean is over
/// unsolved rows and absent when every row was solved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub instances: usize,
    pub errors: usize,
    pub solved_pct: f64,
    pub mean_cpu: f64,
    pub mean_nodes: f64,
    pub mean_cuts: f64,
    pub mean_gap: Option<f64>,
    pub mean_root_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub gap_convention: String,
    pub rows: Vec<SummaryRow>,
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

pub fn summarize(records: &[BenchmarkRecord]) -> Summary {
    let mut by_alg: BTreeMap<usize, Vec<&BenchmarkRecord>> = BTreeMap::new();
    for r in records {
        let key = AlgorithmChoice::ALL
            .iter()
            .position(|a| a.name() == r.algorithm)
            .unwrap_or(usize::MAX);
        by_alg.entry(key).or_default().push(r);
    }
    let rows = by_alg
        .into_values()
        .map(|rs| {
            let ok: Vec<&&BenchmarkRecord> = rs.iter().filter(|r| r.status != "error").collect();
            let solved = ok.iter().filter(|r| r.status == SolveStatus::Optimal.name()).count();
            let gaps: Vec<f64> = ok
                .iter()
                .filter(|r| r.status == SolveStatus::TimeLimit.name())
                .filter_map(|r| r.gap)
                .collect();
            let col = |f: fn(&BenchmarkRecord) -> Option<f64>| -> Vec<f64> { ok.iter().filter_map(|r| f(r)).collect() };
            SummaryRow {
                algorithm: rs[0].algorithm.clone(),
                instances: rs.len(),
                errors: rs.len() - ok.len(),
                solved_pct: 100.0 * solved as f64 / rs.len() as f64,
                mean_cpu: mean(&col(|r| r.wall_time)),
                mean_nodes: mean(&col(|r| r.nodes.map(|v| v as f64))),
                mean_cuts: mean(&col(|r| r.cuts.map(|v| v as f64))),
                mean_gap: (!gaps.is_empty()).then(|| mean(&gaps)),
                mean_root_gap: mean(&col(|r| r.root_gap)),
            }
        })
        .collect();
    Summary {
        schema: SUMMARY_SCHEMA.to_string(),
        gap_convention: GAP_CONVENTION.to_string(),
        rows,
    }
}

fn pct(x: Option<f64>) -> String {
    x.map_or("-".to_string(), |v| format!("{:.2}", 100.0 * v))
}

/// Fixed-width table; gap columns in percent, `-` for a closed gap.
pub fn render_table(s: &Summary) -> String {
    let mut out = format!(
        "{:<10} {:>5} {:>9} {:>10} {:>10} {:>10} {:>8} {:>10}\n",
        "algorithm", "inst", "%solved", "cpu(s)", "nodes", "cuts", "gap%", "rootgap%"
    );
    for r in &s.rows {
        let root = (r.mean_root_gap > 0.0).then_some(r.mean_root_gap);
        out.push_str(&format!(
            "{:<10} {:>5} {:>9.1} {:>10.4} {:>10.1} {:>10.1} {:>8} {:>10}\n",
            r.algorithm,
            r.instances,
            r.solved_pct,
            r.mean_cpu,
            r.mean_nodes,
            r.mean_cuts,
            pct(r.mean_gap),
            pct(root)
        ));
    }
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Recomputes the summary from the CSV and compares it with `claimed`.
pub fn audit(csv_path: &Path, claimed: &Summary) -> Result<()> {
    let file = std::fs::File::open(csv_path).with_context(|| format!("opening {}", csv_path.display()))?;
    let recomputed = summarize(&read_csv(file)?);
    if recomputed.rows.len() != claimed.rows.len() {
        bail!("summary has {} rows, CSV gives {}", claimed.rows.len(), recomputed.rows.len());
    }
    for (a, b) in recomputed.rows.iter().zip(&claimed.rows) {
        let same = a.algorithm == b.algorithm
            && a.instances == b.instances
            && a.errors == b.errors
            && close(a.solved_pct, b.solved_pct)
            && close(a.mean_cpu, b.mean_cpu)
            && close(a.mean_nodes, b.mean_nodes)
            && close(a.mean_cuts, b.mean_cuts)
            && close(a.mean_root_gap, b.mean_root_gap)
            && match (a.mean_gap, b.mean_gap) {
                (None, None) => true,
                (Some(x), Some(y)) => close(x, y),
                _ => false,
            };
        if !same {
            bail!("summary row for {} does not match the CSV: {a:?} vs {b:?}", b.algorithm);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(alg: &str, status: &str, gap: f64, nodes: u64) -> BenchmarkRecord {
        BenchmarkRecord {
            schema: BENCH_SCHEMA.to_string(),
            instance: "x".into(),
            n: 4,
            m: 3,
            density: 0.5,
            algorithm: alg.into(),
            status: status.into(),
            value: Some("2".into()),
            bound: Some(2.0),
            gap: Some(gap),
            root_gap: Some(0.5),
            nodes: Some(nodes),
            cuts: Some(0),
            wall_time: Some(0.1),
            seed: 0,
            config_hash: "0123456789abcdef".into(),
        }
    }

    #[test]
    fn summary_means_and_dash() {
        let rs = vec![
            record("n2", "optimal", 0.0, 1),
            record("n2", "time_limit", 0.25, 3),
            record("e", "optimal", 0.0, 5),
        ];
        let s = summarize(&rs);
        assert_eq!(s.rows[0].algorithm, "n2");
        assert_eq!(s.rows[0].solved_pct, 50.0);
        assert_eq!(s.rows[0].mean_nodes, 2.0);
        assert_eq!(s.rows[0].mean_gap, Some(0.25));
        assert_eq!(s.rows[1].mean_gap, None);
        let table = render_table(&s);
        assert!(table.lines().nth(2).unwrap().contains(" - "));
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let rs = vec![record("n2", "optimal", 0.0, 1), record("e-utter", "time_limit", 0.1, 2)];
        let mut buf = Vec::new();
        write_csv(&rs, &mut buf).unwrap();
        assert_eq!(read_csv(&buf[..]).unwrap(), rs);
        let mut bad = rs.clone();
        bad[0].gap = Some(0.5);
        let mut buf = Vec::new();
        write_csv(&bad, &mut buf).unwrap();
        assert!(read_csv(&buf[..]).is_err());
    }

    #[test]
    fn density_formula() {
        assert_eq!(density(&Graph::complete(5)), 1.0);
        assert_eq!(density(&Graph::empty(1)), 0.0);
        assert_eq!(density(&Graph::path(3)), 2.0 / 3.0);
    }
}
