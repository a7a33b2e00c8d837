//! Branch and cut, GRASP, preprocessing and the four end-to-end algorithms.

pub mod bnc;
pub mod grasp;
pub mod preprocess;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use bnc::{branch_and_cut, gap, BncConfig, BncOutcome, Separator, StarSeparator, TwoPlexSeparator, UtterCliqueSeparator};
pub use grasp::{grasp_co2plex, DEFAULT_ALPHA};
pub use preprocess::{decompose, preprocess_peel, Subinstance};

use crate::co2plex::Co2Plex;
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::numeric::{rat, Rational};
use crate::polyhedra::{build_e, build_nk, LinearSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmChoice {
    N2,
    N2TwoPlex,
    E,
    EUtterClique,
}

impl AlgorithmChoice {
    pub const ALL: [AlgorithmChoice; 4] = [
        AlgorithmChoice::N2,
        AlgorithmChoice::N2TwoPlex,
        AlgorithmChoice::E,
        AlgorithmChoice::EUtterClique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmChoice::N2 => "n2",
            AlgorithmChoice::N2TwoPlex => "n2-2plex",
            AlgorithmChoice::E => "e",
            AlgorithmChoice::EUtterClique => "e-utter",
        }
    }

    pub fn is_extended(self) -> bool {
        matches!(self, AlgorithmChoice::E | AlgorithmChoice::EUtterClique)
    }

    /// The starting formulation of this algorithm.
    pub fn formulation(self, g: &Graph) -> Result<LinearSystem> {
        if self.is_extended() {
            Ok(build_e(g))
        } else {
            build_nk(g, 2)
        }
    }
}

impl fmt::Display for AlgorithmChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmChoice::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    #[default]
    Optimal,
    TimeLimit,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::TimeLimit => "time_limit",
        }
    }
}

/// Counters and bounds of one solve. Gaps use `max(1, |incumbent|)` as
/// denominator and the root counts as a node.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub cuts: u64,
    /// Root LP value before any cut.
    pub root_lp_initial: f64,
    /// Root LP value after the last cut round.
    pub root_lp_value: f64,
    pub incumbent_value: f64,
    pub best_bound: f64,
    pub gap: f64,
    pub root_gap: f64,
    pub wall_time: f64,
    pub status: SolveStatus,
    /// Branch-and-cut runs behind these numbers.
    pub subproblems: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub time_limit: Option<Duration>,
    pub cut_rounds: usize,
    pub threshold: f64,
    pub int_tol: f64,
    pub seed: u64,
    pub grasp_alpha: f64,
    /// Peel and decompose in the unit-weight case.
    pub preprocess: bool,
    /// Adds exact star separation to the natural formulations.
    pub star_cuts: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: None,
            cut_rounds: 5,
            threshold: 1e-6,
            int_tol: 1e-6,
            seed: 0,
            grasp_alpha: DEFAULT_ALPHA,
            preprocess: true,
            star_cuts: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: Rational,
    pub co2plex: Co2Plex,
    pub stats: SolveStats,
}

struct Separators<'a> {
    two: Option<TwoPlexSeparator<'a>>,
    utter: Option<UtterCliqueSeparator<'a>>,
    star: Option<StarSeparator<'a>>,
}

impl<'a> Separators<'a> {
    fn new(g: &'a Graph, alg: AlgorithmChoice, star_cuts: bool) -> Self {
        Separators {
            two: (alg == AlgorithmChoice::N2TwoPlex).then_some(TwoPlexSeparator { graph: g }),
            utter: (alg == AlgorithmChoice::EUtterClique).then(|| UtterCliqueSeparator::new(g)),
            star: (star_cuts && !alg.is_extended()).then_some(StarSeparator { graph: g }),
        }
    }

    fn list(&self) -> Vec<&dyn Separator> {
        let mut out: Vec<&dyn Separator> = Vec::new();
        if let Some(s) = &self.two {
            out.push(s);
        }
        if let Some(s) = &self.utter {
            out.push(s);
        }
        if let Some(s) = &self.star {
            out.push(s);
        }
        out
    }
}

/// Runs one algorithm on `g` with optional forced vertices and cutoff.
pub fn solve_formulation(
    g: &Graph,
    weights: &[Rational],
    algorithm: AlgorithmChoice,
    forced: &[usize],
    bnc: &BncConfig,
    star_cuts: bool,
) -> Result<BncOutcome> {
    let mut system = algorithm.formulation(g)?;
    for &v in forced {
        system.lower[v] = Rational::one();
    }
    let mut objective = weights.to_vec();
    objective.resize(system.dim(), Rational::zero());
    let seps = Separators::new(g, algorithm, star_cuts);
    branch_and_cut(&system, &objective, &seps.list(), bnc)
}

fn is_unit(weights: &[Rational]) -> bool {
    weights.iter().all(|w| w.is_one())
}

fn bnc_config(config: &SolverConfig, time_limit: Option<Duration>, cutoff: Rational, integer: bool) -> BncConfig {
    BncConfig {
        cut_rounds: config.cut_rounds,
        threshold: config.threshold,
        int_tol: config.int_tol,
        time_limit,
        cutoff: Some(cutoff),
        integer_objective: integer,
    }
}

fn chosen(point: &[Rational], map: &[usize]) -> Vec<usize> {
    map.iter()
        .enumerate()
        .filter(|&(j, _)| point[j].is_one())
        .map(|(_, &v)| v)
        .collect()
}

/// Maximum weight co-2-plex of `g`. With unit weights the GRASP solution
/// seeds a peel and a decomposition into forced subproblems; otherwise the
/// whole instance is solved with the GRASP value as cutoff.
pub fn solve_max_co2plex(
    g: &Graph,
    weights: &[Rational],
    algorithm: AlgorithmChoice,
    config: &SolverConfig,
) -> Result<SolveResult> {
    if weights.len() != g.n() {
        return precondition("one weight per vertex expected");
    }
    let start = Instant::now();
    let deadline = config.time_limit.map(|t| start + t);
    let remaining = || deadline.map(|d| d.saturating_duration_since(Instant::now()));
    let integer = weights.iter().all(|w| w.is_integer());
    let heuristic = grasp_co2plex(g, weights, config.grasp_alpha, config.seed)?;
    let mut value = heuristic.weight(weights).max(Rational::zero());
    let mut best = if heuristic.weight(weights) >= Rational::zero() {
        heuristic.vertices.clone()
    } else {
        Vec::new()
    };

    let mut stats = SolveStats::default();
    let mut root_lp_initial = f64::NEG_INFINITY;
    let mut root_lp_value = f64::NEG_INFINITY;
    let mut best_bound = f64::NEG_INFINITY;
    let mut sub_gap = 0.0f64;
    let mut timed_out = false;
    let mut absorb = |stats: &mut SolveStats, s: &SolveStats| {
        stats.nodes += s.nodes;
        stats.cuts += s.cuts;
        stats.subproblems += s.subproblems;
        root_lp_initial = root_lp_initial.max(s.root_lp_initial);
        root_lp_value = root_lp_value.max(s.root_lp_value);
        best_bound = best_bound.max(s.best_bound);
        sub_gap = sub_gap.max(s.gap);
        timed_out |= s.status == SolveStatus::TimeLimit;
    };

    if config.preprocess && is_unit(weights) {
        let w = preprocess_peel(g, best.len(), 2);
        for sub in decompose(g, &w)? {
            if sub.graph.n() <= best.len() {
                continue;
            }
            let cfg = bnc_config(config, remaining(), rat(best.len() as i64), true);
            let out = solve_formulation(&sub.graph, &vec![rat(1); sub.graph.n()], algorithm, &[sub.forced], &cfg, config.star_cuts)?;
            absorb(&mut stats, &out.stats);
            if let Some((v, point)) = out.solution {
                best = chosen(&point, &sub.map);
                value = v;
            }
        }
    } else {
        let cfg = bnc_config(config, remaining(), value.clone(), integer);
        let out = solve_formulation(g, weights, algorithm, &[], &cfg, config.star_cuts)?;
        absorb(&mut stats, &out.stats);
        if let Some((v, point)) = out.solution {
            best = chosen(&point, &(0..g.n()).collect::<Vec<_>>());
            value = v;
        }
    }

    let incumbent = value.to_f64().unwrap_or(0.0);
    stats.incumbent_value = incumbent;
    stats.root_lp_initial = root_lp_initial.max(incumbent);
    stats.root_lp_value = root_lp_value.max(incumbent);
    stats.best_bound = best_bound.max(incumbent);
    stats.status = if timed_out { SolveStatus::TimeLimit } else { SolveStatus::Optimal };
    stats.gap = if timed_out { sub_gap.max(gap(stats.best_bound, incumbent)) } else { 0.0 };
    stats.root_gap = gap(stats.root_lp_value, incumbent);
    stats.wall_time = start.elapsed().as_secs_f64();
    let co2plex = Co2Plex::new(g, &best)?;
    Ok(SolveResult { value, co2plex, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::co2plex::{brute_force_max_co2plex, unit_weights};
    use crate::graph::generate_er;

    #[test]
    fn cycle_five() {
        let g = Graph::cycle(5);
        for alg in AlgorithmChoice::ALL {
            let r = solve_max_co2plex(&g, &unit_weights(5), alg, &SolverConfig::default()).unwrap();
            assert_eq!(r.value, rat(3));
            assert_eq!(r.co2plex.len(), 3);
            assert_eq!(r.stats.gap, 0.0);
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in AlgorithmChoice::ALL {
            assert_eq!(alg.name().parse::<AlgorithmChoice>().unwrap(), alg);
        }
        assert!("cplex".parse::<AlgorithmChoice>().is_err());
    }

    #[test]
    fn preprocessing_keeps_the_optimum() {
        for seed in 0..15 {
            let n = 8 + seed as usize % 5;
            let g = generate_er(n, [0.3, 0.5, 0.7][seed as usize % 3], seed);
            let w = unit_weights(n);
            let (opt, _) = brute_force_max_co2plex(&g, &w).unwrap();
            for preprocess in [true, false] {
                let cfg = SolverConfig { preprocess, seed, ..SolverConfig::default() };
                for alg in AlgorithmChoice::ALL {
                    let r = solve_max_co2plex(&g, &w, alg, &cfg).unwrap();
                    assert_eq!(r.value, opt, "seed {seed} {alg} preprocess {preprocess}");
                    assert_eq!(r.co2plex.weight(&w), opt);
                }
            }
        }
    }

    #[test]
    fn weighted_instances_match_oracle() {
        for seed in 0..10 {
            let g = generate_er(9, 0.5, seed + 100);
            let w: Vec<Rational> = (0..9).map(|i| crate::numeric::ratio(1 + ((i * 5 + seed as i64) % 7), 3)).collect();
            let (opt, _) = brute_force_max_co2plex(&g, &w).unwrap();
            for alg in [AlgorithmChoice::N2, AlgorithmChoice::E] {
                let r = solve_max_co2plex(&g, &w, alg, &SolverConfig::default()).unwrap();
                assert_eq!(r.value, opt, "seed {seed} {alg}");
                assert_eq!(r.co2plex.weight(&w), opt);
            }
        }
    }

    #[test]
    fn deterministic_stats() {
        let g = generate_er(12, 0.4, 5);
        let cfg = SolverConfig::default();
        let a = solve_max_co2plex(&g, &unit_weights(12), AlgorithmChoice::E, &cfg).unwrap().stats;
        let b = solve_max_co2plex(&g, &unit_weights(12), AlgorithmChoice::E, &cfg).unwrap().stats;
        assert_eq!((a.nodes, a.cuts, a.root_lp_value), (b.nodes, b.cuts, b.root_lp_value));
    }
}
