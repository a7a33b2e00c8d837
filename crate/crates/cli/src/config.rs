//! Run configuration: defaults, a `key = value` file and command-line overrides.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use co2plex_core::solver::{AlgorithmChoice, SolverConfig};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "CO2PLEX_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub alg: AlgorithmChoice,
    /// Seconds.
    pub time_limit: Option<f64>,
    pub seed: u64,
    pub cut_rounds: usize,
    pub threshold: f64,
    pub preprocess: bool,
    pub star_cuts: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SolverConfig::default();
        RunConfig {
            alg: AlgorithmChoice::N2,
            time_limit: None,
            seed: s.seed,
            cut_rounds: s.cut_rounds,
            threshold: s.threshold,
            preprocess: s.preprocess,
            star_cuts: s.star_cuts,
        }
    }
}

/// Values given on the command line; `None` keeps the file or default value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub alg: Option<AlgorithmChoice>,
    pub time_limit: Option<f64>,
    pub seed: Option<u64>,
    pub cut_rounds: Option<usize>,
    pub threshold: Option<f64>,
    pub no_preprocess: bool,
    pub star_cuts: bool,
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('-', "_").as_str() {
            "alg" | "algorithm" => self.alg = value.parse()?,
            "time_limit" => {
                self.time_limit = match value {
                    "none" | "" => None,
                    v => Some(parse_seconds(v)?),
                }
            }
            "seed" => self.seed = value.parse().context("seed")?,
            "cut_rounds" => self.cut_rounds = value.parse().context("cut_rounds")?,
            "threshold" => self.threshold = value.parse().context("threshold")?,
            "preprocess" => self.preprocess = value.parse().context("preprocess")?,
            "star_cuts" => self.star_cuts = value.parse().context("star_cuts")?,
            other => bail!("unknown key {other:?}"),
        }
        Ok(())
    }

    /// Applies a `key = value` text; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value", i + 1);
            };
            self.set(k.trim(), v.trim()).with_context(|| format!("line {}", i + 1))?;
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(a) = o.alg {
            self.alg = a;
        }
        if let Some(t) = o.time_limit {
            self.time_limit = Some(t);
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(c) = o.cut_rounds {
            self.cut_rounds = c;
        }
        if let Some(t) = o.threshold {
            self.threshold = t;
        }
        if o.no_preprocess {
            self.preprocess = false;
        }
        if o.star_cuts {
            self.star_cuts = true;
        }
    }

    /// Defaults, then the config file (explicit path or the environment
    /// variable), then the flags.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let path: Option<PathBuf> = file
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        if let Some(p) = path {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading config {}", p.display()))?;
            cfg.apply_text(&text).with_context(|| format!("config {}", p.display()))?;
        }
        cfg.apply(overrides);
        Ok(cfg)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            cut_rounds: self.cut_rounds,
            threshold: self.threshold,
            seed: self.seed,
            preprocess: self.preprocess,
            star_cuts: self.star_cuts,
            ..SolverConfig::default()
        }
    }

    /// Every setting except the algorithm, in a fixed textual form.
    pub fn canonical(&self) -> String {
        let tl = self.time_limit.map_or("none".to_string(), |t| t.to_string());
        format!(
            "time_limit={tl};seed={};cut_rounds={};threshold={};preprocess={};star_cuts={}",
            self.seed, self.cut_rounds, self.threshold, self.preprocess, self.star_cuts
        )
    }

    /// First 16 hex digits of the SHA-256 of [`RunConfig::canonical`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn parse_seconds(v: &str) -> Result<f64> {
    let t: f64 = v.parse().with_context(|| format!("invalid time limit {v:?}"))?;
    if !(t >= 0.0 && t.is_finite()) {
        bail!("time limit must be a non-negative number of seconds");
    }
    Ok(t)
}
