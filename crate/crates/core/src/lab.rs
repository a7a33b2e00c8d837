//! Named property suites run against brute-force oracles, with JSON verdicts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::co2plex::{count_stable_sets, enumerate_2plexes, enumerate_co2plexes, is_maximal_2plex};
use crate::error::{Error, Result};
use crate::graph::{
    generate_er, has_true_twins, is_contraction_perfect_bruteforce_with_cap, is_hole, is_perfect_bruteforce_with_cap,
    is_tree, random_chordal, random_connected, random_tree, rng_from_seed, Graph,
};
use crate::numeric::{rat, Rational};
use crate::polyhedra::{
    build_chordal_extended, build_t, build_utter_clique_system_with_cap, c4_witness, certify_c4_witness,
    enumerate_vertices, generalized_star_inequality, hole_inequality, is_integer_polytope, lift_facet,
    star_facet_conditions, two_plex_inequality, FacetChecker, LinearInequality, RationalPoint,
};
use crate::utter::UtterGraph;

pub const LAB_SCHEMA: &str = "co2plex-lab/1";

/// Utter-clique and perfectness caps for the integrality suite; u(G) of a
/// 7-vertex graph has up to 28 nodes.
pub const LAB_UTTER_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Bijection,
    TreePolytope,
    CharacIntegrality,
    ChordalExtended,
    C4Witness,
    ContractionPerfect,
    HoleRank,
    Facet2Plex,
    FacetStar,
    Lift,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Bijection,
        Check::TreePolytope,
        Check::CharacIntegrality,
        Check::ChordalExtended,
        Check::C4Witness,
        Check::ContractionPerfect,
        Check::HoleRank,
        Check::Facet2Plex,
        Check::FacetStar,
        Check::Lift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Bijection => "bijection",
            Check::TreePolytope => "tree-polytope",
            Check::CharacIntegrality => "charac-integrality",
            Check::ChordalExtended => "chordal-extended",
            Check::C4Witness => "c4-witness",
            Check::ContractionPerfect => "contraction-perfect",
            Check::HoleRank => "hole-rank",
            Check::Facet2Plex => "facet-2plex",
            Check::FacetStar => "facet-star",
            Check::Lift => "lift",
        }
    }

    /// Default `(n_max, count)`.
    pub fn defaults(self) -> (usize, usize) {
        match self {
            Check::Bijection => (7, 500),
            Check::TreePolytope => (8, 50),
            Check::CharacIntegrality => (8, 50),
            Check::ChordalExtended => (7, 50),
            Check::C4Witness => (4, 1),
            Check::ContractionPerfect => (7, 100),
            Check::HoleRank => (12, 0),
            Check::Facet2Plex => (8, 50),
            Check::FacetStar => (9, 30),
            Check::Lift => (7, 30),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LabConfig {
    pub n_max: Option<usize>,
    pub count: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabReport {
    pub schema: &'static str,
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    pub n_max: usize,
    pub count: usize,
    pub seed: u64,
    pub wall_time: f64,
}

const MAX_LISTED_FAILURES: usize = 20;

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }
}

fn describe(g: &Graph) -> String {
    format!("n={} edges={:?}", g.n(), g.edges())
}

pub fn run_check(check: Check, config: &LabConfig) -> Result<LabReport> {
    let (dn, dc) = check.defaults();
    let n_max = config.n_max.unwrap_or(dn);
    let count = config.count.unwrap_or(dc);
    let mut rng = rng_from_seed(config.seed);
    let start = Instant::now();
    let mut t = Tally::new();
    match check {
        Check::Bijection => bijection(&mut t, n_max, count, config.seed)?,
        Check::TreePolytope => tree_polytope(&mut t, n_max, count, &mut rng)?,
        Check::CharacIntegrality => charac_integrality(&mut t, n_max, count, &mut rng)?,
        Check::ChordalExtended => chordal_extended(&mut t, n_max, count, &mut rng)?,
        Check::C4Witness => c4(&mut t)?,
        Check::ContractionPerfect => contraction_perfect(&mut t, n_max, count, config.seed)?,
        Check::HoleRank => hole_rank(&mut t, n_max)?,
        Check::Facet2Plex => facet_2plex(&mut t, n_max, count, config.seed)?,
        Check::FacetStar => facet_star(&mut t, n_max, count, config.seed)?,
        Check::Lift => lift(&mut t, n_max, count, &mut rng)?,
    }
    Ok(LabReport {
        schema: LAB_SCHEMA,
        check: check.name().to_string(),
        passed: t.failed == 0 && t.cases > 0,
        cases: t.cases,
        failures: t.failures,
        n_max,
        count,
        seed: config.seed,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn random_graph(rng: &mut ChaCha8Rng, n_lo: usize, n_max: usize) -> Graph {
    let n = rng.gen_range(n_lo..=n_max.max(n_lo));
    let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
    generate_er(n, p, rng.gen())
}

fn bijection_case(t: &mut Tally, g: &Graph) -> Result<()> {
    let ours = enumerate_co2plexes(g)?.len() as u128;
    let theirs = count_stable_sets(UtterGraph::build(g).graph());
    t.record(ours == theirs, || format!("{}: {ours} co-2-plexes, {theirs} stable sets", describe(g)));
    Ok(())
}

/// Exhaustive over edge subsets for n ≤ 5, random samples above.
fn bijection(t: &mut Tally, n_max: usize, count: usize, seed: u64) -> Result<()> {
    for n in 0..=n_max.min(5) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]);
            bijection_case(t, &Graph::from_edges(n, edges)?)?;
        }
    }
    if n_max >= 6 {
        let mut rng = rng_from_seed(seed);
        for _ in 0..count {
            let g = random_graph(&mut rng, 6, n_max);
            bijection_case(t, &g)?;
        }
    }
    Ok(())
}

fn incidence_points(g: &Graph, extended: bool) -> Result<Vec<RationalPoint>> {
    let mut pts: Vec<RationalPoint> = enumerate_co2plexes(g)?
        .into_iter()
        .map(|c| {
            let v = if extended {
                c.extended_incidence(g)
            } else {
                c.natural_incidence(g.n())
            };
            v.into_iter().map(|q| rat(q as i64)).collect()
        })
        .collect();
    pts.sort();
    Ok(pts)
}

fn sorted_vertices(sys: &crate::polyhedra::LinearSystem) -> Result<Vec<RationalPoint>> {
    let mut v = enumerate_vertices(sys)?;
    v.sort();
    Ok(v)
}

fn tree_polytope(t: &mut Tally, n_max: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..count {
        let n = rng.gen_range(1..=n_max.max(1));
        let g = random_tree(n, rng);
        let ok = sorted_vertices(&build_t(&g)?)? == incidence_points(&g, false)?;
        t.record(ok, || format!("{}: vertices of T(G) differ from incidence vectors", describe(&g)));
    }
    Ok(())
}

/// Connected, without true twins, neither a tree nor a hole of length
/// divisible by 3.
fn is_charac_candidate(g: &Graph) -> bool {
    crate::graph::is_connected(g) && !is_tree(g) && !has_true_twins(g) && is_hole(g).is_none_or(|p| p % 3 != 0)
}

fn charac_integrality(t: &mut Tally, n_max: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut found = 0;
    let mut attempts = 0usize;
    while found < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            t.record(false, || "too few candidate graphs".to_string());
            break;
        }
        let n = rng.gen_range(3..=n_max.max(3));
        let p = rng.gen_range(0.2..0.7);
        let g = random_connected(n, p, rng);
        if !is_charac_candidate(&g) {
            continue;
        }
        found += 1;
        let integral = is_integer_polytope(&build_t(&g)?)?;
        t.record(!integral, || format!("{}: T(G) is integral", describe(&g)));
    }
    Ok(())
}

fn chordal_extended(t: &mut Tally, n_max: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..count {
        let n = rng.gen_range(1..=n_max.max(1));
        let q = rng.gen_range(0.2..0.8);
        let g = random_chordal(n, q, rng);
        let ok = sorted_vertices(&build_chordal_extended(&g)?)? == incidence_points(&g, true)?;
        t.record(ok, || format!("{}: extended vertices differ from incidence vectors", describe(&g)));
    }
    Ok(())
}

fn c4(t: &mut Tally) -> Result<()> {
    let (_, p) = c4_witness();
    let fractional = p.iter().any(|q| !q.is_integer());
    let extreme = certify_c4_witness()?;
    t.record(fractional && extreme, || "C4 half point is not a fractional vertex".to_string());
    Ok(())
}

fn contraction_perfect(t: &mut Tally, n_max: usize, count: usize, seed: u64) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    for _ in 0..count {
        let g = random_graph(&mut rng, 1, n_max);
        let integral = is_integer_polytope(&build_utter_clique_system_with_cap(&g, LAB_UTTER_CAP)?)?;
        let cp = is_contraction_perfect_bruteforce_with_cap(&g, LAB_UTTER_CAP)?;
        let up = is_perfect_bruteforce_with_cap(UtterGraph::build(&g).graph(), LAB_UTTER_CAP)?;
        t.record(integral == cp && cp == up, || {
            format!("{}: integral {integral}, contraction perfect {cp}, u(G) perfect {up}", describe(&g))
        });
    }
    Ok(())
}

fn hole_rank(t: &mut Tally, n_max: usize) -> Result<()> {
    for n in 5..=n_max {
        let g = Graph::cycle(n);
        let all: Vec<usize> = (0..n).collect();
        let facet = FacetChecker::new(&g, crate::polyhedra::natural(&g))?.is_facet(&hole_inequality(&g, &all)?)?;
        t.record(facet == (n % 3 != 0), || format!("C{n}: facet {facet}"));
    }
    Ok(())
}

fn facet_2plex(t: &mut Tally, n_max: usize, count: usize, seed: u64) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    for _ in 0..count {
        let g = random_graph(&mut rng, 3, n_max);
        let checker = FacetChecker::new(&g, crate::polyhedra::natural(&g))?;
        for k in enumerate_2plexes(&g)?.into_iter().filter(|k| k.len() >= 3) {
            let facet = checker.is_facet(&two_plex_inequality(&g, &k)?)?;
            let maximal = is_maximal_2plex(&g, &k);
            t.record(facet == maximal, || format!("{}: K={k:?} facet {facet} maximal {maximal}", describe(&g)));
        }
    }
    Ok(())
}

fn subsets_up_to(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << items.len()) {
        if mask.count_ones() as usize <= k {
            out.push((0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect());
        }
    }
    out
}

fn facet_star(t: &mut Tally, n_max: usize, count: usize, seed: u64) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    for _ in 0..count {
        let g = random_graph(&mut rng, 3, n_max);
        let checker = FacetChecker::new(&g, crate::polyhedra::natural(&g))?;
        for w in 0..g.n() {
            for s in subsets_up_to(&g.neighbor_vec(w), 4) {
                let facet = checker.is_facet(&generalized_star_inequality(&g, w, &s)?)?;
                let predicted = star_facet_conditions(&g, w, &s)?;
                t.record(facet == predicted, || {
                    format!("{}: w={w} W={s:?} facet {facet} conditions {predicted}", describe(&g))
                });
            }
        }
    }
    Ok(())
}

/// Certified facets with positive support, drawn from the 2-plex and
/// generalized star families.
fn facet_candidates(g: &Graph, checker: &FacetChecker) -> Result<Vec<LinearInequality>> {
    let mut cands = Vec::new();
    for k in enumerate_2plexes(g)?.into_iter().filter(|k| k.len() >= 3) {
        cands.push(two_plex_inequality(g, &k)?);
    }
    for w in 0..g.n() {
        for s in subsets_up_to(&g.neighbor_vec(w), 3).into_iter().filter(|s| s.len() >= 2) {
            cands.push(generalized_star_inequality(g, w, &s)?);
        }
    }
    let mut out = Vec::new();
    for c in cands {
        if c.coeffs.iter().all(|(_, a)| *a > Rational::from_integer(0.into())) && checker.is_facet(&c)? {
            out.push(c);
        }
    }
    Ok(out)
}

fn lift(t: &mut Tally, n_max: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut done = 0;
    let mut attempts = 0;
    while done < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            t.record(false, || "too few liftable facets".to_string());
            break;
        }
        let g = random_graph(rng, 3, n_max.saturating_sub(1).max(3));
        let checker = FacetChecker::new(&g, crate::polyhedra::natural(&g))?;
        let cands = facet_candidates(&g, &checker)?;
        if cands.is_empty() {
            continue;
        }
        let ineq = &cands[rng.gen_range(0..cands.len())];
        let (gp, lifted) = lift_facet(&g, ineq, &ineq.support())?;
        let checker = FacetChecker::new(&gp, crate::polyhedra::natural(&gp))?;
        let ok = checker.is_valid(&lifted)? && checker.is_facet(&lifted)?;
        t.record(ok, || format!("{}: lifting {} loses facetness", describe(&g), ineq.label));
        done += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(check: Check, n_max: usize, count: usize) -> LabReport {
        run_check(
            check,
            &LabConfig {
                n_max: Some(n_max),
                count: Some(count),
                seed: 7,
            },
        )
        .unwrap()
    }

    #[test]
    fn small_runs_pass() {
        for (check, n, c) in [
            (Check::Bijection, 6, 20),
            (Check::TreePolytope, 6, 5),
            (Check::CharacIntegrality, 6, 5),
            (Check::ChordalExtended, 5, 5),
            (Check::C4Witness, 4, 1),
            (Check::ContractionPerfect, 5, 10),
            (Check::HoleRank, 9, 0),
            (Check::Facet2Plex, 6, 5),
            (Check::FacetStar, 6, 5),
            (Check::Lift, 6, 5),
        ] {
            let r = quick(check, n, c);
            assert!(r.passed, "{check}: {:?}", r.failures);
        }
    }

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn report_serializes_with_schema() {
        let r = quick(Check::HoleRank, 6, 0);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema"], LAB_SCHEMA);
        assert_eq!(json["cases"], 2);
    }
}
