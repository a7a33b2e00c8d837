//! Best-bound branch-and-cut over the dense dual simplex.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use super::{SolveStats, SolveStatus};
use crate::error::Result;
use crate::graph::Graph;
use crate::lp::{dense_row, simplex_for, Basis, LpStatus};
use crate::numeric::Rational;
use crate::polyhedra::LinearSystem;
use crate::separation::{
    separate_2plex_greedy, separate_star_exact, separate_utterclique_greedy, Cut,
};
use crate::utter::UtterGraph;

/// Produces cuts violated by an LP point over the system's full space.
pub trait Separator {
    fn name(&self) -> &'static str;
    fn separate(&self, point: &[f64], threshold: f64) -> Vec<Cut<f64>>;
}

pub struct TwoPlexSeparator<'a> {
    pub graph: &'a Graph,
}

impl Separator for TwoPlexSeparator<'_> {
    fn name(&self) -> &'static str {
        "twoplex"
    }

    fn separate(&self, point: &[f64], threshold: f64) -> Vec<Cut<f64>> {
        separate_2plex_greedy(self.graph, &point[..self.graph.n()], &threshold)
            .into_iter()
            .collect()
    }
}

pub struct UtterCliqueSeparator<'a> {
    pub graph: &'a Graph,
    pub utter: UtterGraph,
}

impl<'a> UtterCliqueSeparator<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        UtterCliqueSeparator {
            graph,
            utter: UtterGraph::build(graph),
        }
    }
}

impl Separator for UtterCliqueSeparator<'_> {
    fn name(&self) -> &'static str {
        "utterclique"
    }

    fn separate(&self, point: &[f64], threshold: f64) -> Vec<Cut<f64>> {
        let (x, y) = point.split_at(self.graph.n());
        separate_utterclique_greedy(self.graph, &self.utter, x, y, &threshold)
            .into_iter()
            .collect()
    }
}

/// Exact star separation on the natural variables.
pub struct StarSeparator<'a> {
    pub graph: &'a Graph,
}

impl Separator for StarSeparator<'_> {
    fn name(&self) -> &'static str {
        "star"
    }

    fn separate(&self, point: &[f64], threshold: f64) -> Vec<Cut<f64>> {
        separate_star_exact(self.graph, &point[..self.graph.n()], &threshold)
    }
}

#[derive(Clone, Debug)]
pub struct BncConfig {
    pub cut_rounds: usize,
    pub threshold: f64,
    pub int_tol: f64,
    pub time_limit: Option<Duration>,
    /// Only solutions strictly better than this value are sought.
    pub cutoff: Option<Rational>,
    /// Integer points have integer objective value, so bounds round down.
    pub integer_objective: bool,
}

impl Default for BncConfig {
    fn default() -> Self {
        BncConfig {
            cut_rounds: 5,
            threshold: 1e-6,
            int_tol: 1e-6,
            time_limit: None,
            cutoff: None,
            integer_objective: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BncOutcome {
    /// Best solution found that beats the cutoff, with its exact value.
    pub solution: Option<(Rational, Vec<Rational>)>,
    pub stats: SolveStats,
}

struct Node {
    id: u64,
    bound: f64,
    fixings: Vec<(usize, f64, f64)>,
    basis: Option<Basis>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then(other.id.cmp(&self.id))
    }
}

pub fn branch_and_cut(
    system: &LinearSystem,
    objective: &[Rational],
    separators: &[&dyn Separator],
    config: &BncConfig,
) -> Result<BncOutcome> {
    let start = Instant::now();
    let deadline = config.time_limit.map(|t| start + t);
    let d = system.dim();
    let mut lp = simplex_for::<f64>(system, objective)?;
    for r in &system.rows {
        lp.add_row(dense_row(r), r.rhs.to_f64().unwrap_or(f64::INFINITY));
    }
    let base: Vec<(f64, f64)> = (0..d).map(|j| lp.bounds(j)).collect();

    let mut stats = SolveStats::default();
    let mut pool: HashSet<String> = HashSet::new();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let target = |best: &Option<(Rational, Vec<Rational>)>| -> Option<f64> {
        best.as_ref()
            .map(|(v, _)| v)
            .or(config.cutoff.as_ref())
            .and_then(|v| v.to_f64())
    };
    let dominated = |bound: f64, target: Option<f64>| -> bool {
        let Some(t) = target else { return false };
        if config.integer_objective {
            (bound + 1e-6).floor() <= t + 1e-9
        } else {
            bound <= t + 1e-9 * t.abs().max(1.0)
        }
    };

    let mut heap = BinaryHeap::new();
    heap.push(Node {
        id: 0,
        bound: f64::INFINITY,
        fixings: Vec::new(),
        basis: None,
    });
    let mut next_id = 1u64;
    let mut timed_out = false;

    while let Some(node) = heap.pop() {
        if dominated(node.bound, target(&best)) {
            continue;
        }
        if deadline.is_some_and(|dl| Instant::now() >= dl) {
            timed_out = true;
            heap.push(node);
            break;
        }
        stats.nodes += 1;
        for (j, &(lo, up)) in base.iter().enumerate() {
            lp.set_bounds(j, lo, up);
        }
        for &(j, lo, up) in &node.fixings {
            lp.set_bounds(j, lo, up);
        }
        if let Some(b) = &node.basis {
            lp.load_basis(b);
        }
        let mut sol = lp.solve()?;
        let is_root = node.id == 0;
        if is_root {
            stats.root_lp_initial = if sol.status == LpStatus::Optimal { sol.objective } else { f64::NEG_INFINITY };
        }
        let mut rounds = 0;
        let mut branch_var = None;
        let mut integral = false;
        while sol.status == LpStatus::Optimal {
            if dominated(sol.objective, target(&best)) {
                break;
            }
            branch_var = most_fractional(system, &sol.x, config.int_tol);
            if branch_var.is_none() {
                integral = true;
                break;
            }
            if rounds >= config.cut_rounds || separators.is_empty() {
                break;
            }
            let mut added = 0;
            for sep in separators {
                for cut in sep.separate(&sol.x, config.threshold) {
                    if pool.insert(cut.inequality.label.clone()) {
                        lp.add_row(dense_row(&cut.inequality), cut.inequality.rhs.to_f64().unwrap_or(f64::INFINITY));
                        added += 1;
                    }
                }
            }
            if added == 0 {
                break;
            }
            stats.cuts += added;
            rounds += 1;
            sol = lp.solve()?;
        }
        if is_root {
            stats.root_lp_value = if sol.status == LpStatus::Optimal { sol.objective } else { f64::NEG_INFINITY };
        }
        if sol.status != LpStatus::Optimal || dominated(sol.objective, target(&best)) {
            continue;
        }
        if integral {
            let point: Vec<Rational> = sol.x.iter().map(|v| Rational::from_integer((v.round() as i64).into())).collect();
            if system.is_feasible(&point) {
                let value: Rational = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
                let beats = match (&best, &config.cutoff) {
                    (Some((v, _)), _) => value > *v,
                    (None, Some(c)) => value > *c,
                    (None, None) => true,
                };
                if beats {
                    best = Some((value, point));
                }
                continue;
            }
            branch_var = most_distant(system, &sol.x);
        }
        let Some(j) = branch_var else { continue };
        let v = sol.x[j];
        let basis = lp.basis();
        let (lo, up) = node
            .fixings
            .iter()
            .rev()
            .find(|f| f.0 == j)
            .map(|f| (f.1, f.2))
            .unwrap_or(base[j]);
        for (clo, cup) in [(lo, v.floor()), (v.ceil(), up)] {
            if clo > cup {
                continue;
            }
            let mut fixings = node.fixings.clone();
            fixings.push((j, clo, cup));
            heap.push(Node {
                id: next_id,
                bound: sol.objective,
                fixings,
                basis: Some(basis.clone()),
            });
            next_id += 1;
        }
    }

    let incumbent = best
        .as_ref()
        .map(|(v, _)| v)
        .or(config.cutoff.as_ref())
        .and_then(|v| v.to_f64())
        .unwrap_or(0.0);
    let trivial: f64 = base
        .iter()
        .zip(objective)
        .map(|(&(lo, up), c)| {
            let c = c.to_f64().unwrap_or(0.0);
            (c * lo).max(c * up)
        })
        .sum();
    if stats.nodes == 0 {
        stats.root_lp_initial = trivial;
        stats.root_lp_value = trivial;
    }
    let best_bound = if timed_out {
        heap.iter().map(|n| n.bound.min(trivial)).fold(incumbent, f64::max)
    } else {
        incumbent
    };
    stats.status = if timed_out { SolveStatus::TimeLimit } else { SolveStatus::Optimal };
    stats.incumbent_value = incumbent;
    stats.best_bound = best_bound.max(incumbent);
    stats.gap = gap(stats.best_bound, incumbent);
    if !stats.root_lp_value.is_finite() {
        stats.root_lp_value = incumbent;
    }
    if !stats.root_lp_initial.is_finite() {
        stats.root_lp_initial = incumbent;
    }
    stats.root_gap = gap(stats.root_lp_value, incumbent);
    stats.wall_time = start.elapsed().as_secs_f64();
    stats.subproblems = 1;
    Ok(BncOutcome { solution: best, stats })
}

/// `(bound − incumbent) / max(1, |incumbent|)`, never negative.
pub fn gap(bound: f64, incumbent: f64) -> f64 {
    ((bound - incumbent) / incumbent.abs().max(1.0)).max(0.0)
}

fn most_fractional(system: &LinearSystem, x: &[f64], tol: f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &v) in x.iter().enumerate() {
        if !system.integer[j] {
            continue;
        }
        let f = (v - v.floor()).min(v.ceil() - v);
        if f <= tol {
            continue;
        }
        if best.is_none_or(|(_, b)| f > b + 1e-12) {
            best = Some((j, f));
        }
    }
    best.map(|(j, _)| j)
}

fn most_distant(system: &LinearSystem, x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &v) in x.iter().enumerate() {
        if system.integer[j] {
            let f = (v - v.floor()).min(v.ceil() - v);
            if best.is_none_or(|(_, b)| f > b) {
                best = Some((j, f));
            }
        }
    }
    best.filter(|&(_, f)| f > 0.0).map(|(j, _)| j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::co2plex::{brute_force_max_co2plex, unit_weights};
    use crate::graph::generate_er;
    use crate::numeric::rat;
    use crate::polyhedra::{build_e, build_nk};

    fn objective(sys: &LinearSystem, w: &[Rational]) -> Vec<Rational> {
        let mut c = w.to_vec();
        c.resize(sys.dim(), Rational::zero());
        c
    }

    #[test]
    fn star_n2_optimum() {
        let g = Graph::star(3);
        let sys = build_nk(&g, 2).unwrap();
        let out = branch_and_cut(&sys, &objective(&sys, &unit_weights(4)), &[], &BncConfig::default()).unwrap();
        assert_eq!(out.solution.unwrap().0, rat(3));
        assert_eq!(out.stats.status, SolveStatus::Optimal);
        assert!(out.stats.nodes >= 1);
        assert_eq!(out.stats.gap, 0.0);
    }

    #[test]
    fn random_graphs_match_oracle() {
        for seed in 0..12 {
            let g = generate_er(9, 0.5, seed);
            let w = unit_weights(g.n());
            let (opt, _) = brute_force_max_co2plex(&g, &w).unwrap();
            let n2 = build_nk(&g, 2).unwrap();
            let e = build_e(&g);
            let two = TwoPlexSeparator { graph: &g };
            let ut = UtterCliqueSeparator::new(&g);
            let cfg = BncConfig {
                integer_objective: true,
                ..BncConfig::default()
            };
            for (sys, seps) in [
                (&n2, vec![]),
                (&n2, vec![&two as &dyn Separator]),
                (&e, vec![]),
                (&e, vec![&ut as &dyn Separator]),
            ] {
                let out = branch_and_cut(sys, &objective(sys, &w), &seps, &cfg).unwrap();
                assert_eq!(out.solution.unwrap().0, opt, "seed {seed}");
            }
        }
    }

    #[test]
    fn cutoff_hides_worse_solutions() {
        let g = Graph::cycle(5);
        let sys = build_nk(&g, 2).unwrap();
        let cfg = BncConfig {
            cutoff: Some(rat(3)),
            integer_objective: true,
            ..BncConfig::default()
        };
        let out = branch_and_cut(&sys, &objective(&sys, &unit_weights(5)), &[], &cfg).unwrap();
        assert!(out.solution.is_none());
        assert_eq!(out.stats.best_bound, 3.0);
    }

    #[test]
    fn zero_time_limit_reports_a_valid_gap() {
        let g = generate_er(12, 0.3, 1);
        let sys = build_nk(&g, 2).unwrap();
        let cfg = BncConfig {
            time_limit: Some(Duration::ZERO),
            ..BncConfig::default()
        };
        let out = branch_and_cut(&sys, &objective(&sys, &unit_weights(12)), &[], &cfg).unwrap();
        assert_eq!(out.stats.status, SolveStatus::TimeLimit);
        assert!(out.stats.gap >= 0.0);
    }
}
