use co2plex_core::co2plex::{brute_force_max_co2plex, is_co2plex, unit_weights};
use co2plex_core::graph::{generate_er, rng_from_seed};
use co2plex_core::numeric::ratio;
use co2plex_core::polyhedra::{build_e, build_nk};
use co2plex_core::solver::{branch_and_cut, solve_max_co2plex, AlgorithmChoice, BncConfig, SolveStatus, SolverConfig};
use co2plex_core::{Graph, Rational};
use proptest::prelude::*;
use rand::Rng;
use std::time::Duration;

#[test]
fn weighted_rational_instances_match_the_oracle() {
    let mut rng = rng_from_seed(42);
    for i in 0..20 {
        let n = rng.gen_range(4..=12);
        let g = generate_er(n, [0.3, 0.5, 0.7][i % 3], rng.gen());
        let w: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(1..=20), rng.gen_range(1..=6))).collect();
        let (opt, _) = brute_force_max_co2plex(&g, &w).unwrap();
        for alg in [AlgorithmChoice::N2, AlgorithmChoice::E] {
            let r = solve_max_co2plex(&g, &w, alg, &SolverConfig::default()).unwrap();
            assert_eq!(r.value, opt, "instance {i} {alg}");
            assert_eq!(r.co2plex.weight(&w), opt);
        }
    }
}

#[test]
fn star_cut_flag_keeps_optimum() {
    for seed in 0..10 {
        let g = generate_er(10, 0.4, seed);
        let (opt, _) = brute_force_max_co2plex(&g, &unit_weights(10)).unwrap();
        let cfg = SolverConfig { star_cuts: true, preprocess: false, ..SolverConfig::default() };
        for alg in [AlgorithmChoice::N2, AlgorithmChoice::N2TwoPlex] {
            assert_eq!(solve_max_co2plex(&g, &unit_weights(10), alg, &cfg).unwrap().value, opt);
        }
    }
}

#[test]
fn root_relaxation_of_e_never_exceeds_n2() {
    for seed in 0..30 {
        let g = generate_er(11, 0.5, seed);
        let w = unit_weights(g.n());
        let root = |sys: &co2plex_core::polyhedra::LinearSystem| {
            let mut c = w.clone();
            c.resize(sys.dim(), ratio(0, 1));
            let cfg = BncConfig { cut_rounds: 0, ..BncConfig::default() };
            branch_and_cut(sys, &c, &[], &cfg).unwrap().stats.root_lp_initial
        };
        assert!(root(&build_e(&g)) <= root(&build_nk(&g, 2).unwrap()) + 1e-6);
    }
}

#[test]
fn time_limit_reports_status_and_nonnegative_gap() {
    let g = generate_er(40, 0.5, 3);
    let cfg = SolverConfig { time_limit: Some(Duration::from_millis(1)), ..SolverConfig::default() };
    let r = solve_max_co2plex(&g, &unit_weights(40), AlgorithmChoice::N2, &cfg).unwrap();
    assert!(is_co2plex(&g, &r.co2plex.vertices));
    assert!(r.stats.gap >= 0.0);
    if r.stats.status == SolveStatus::TimeLimit {
        assert!(r.stats.best_bound >= r.stats.incumbent_value);
    }
}

#[test]
fn examples_from_small_graphs() {
    let cfg = SolverConfig::default();
    let star = Graph::star(3);
    let r = solve_max_co2plex(&star, &unit_weights(4), AlgorithmChoice::N2, &cfg).unwrap();
    assert_eq!(r.co2plex.vertices, vec![1, 2, 3]);
    let k5 = Graph::complete(5);
    assert_eq!(solve_max_co2plex(&k5, &unit_weights(5), AlgorithmChoice::EUtterClique, &cfg).unwrap().co2plex.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_is_deterministic_and_feasible(seed in 0u64..5000, n in 2usize..11, p in 0.1f64..0.9) {
        let g = generate_er(n, p, seed);
        let cfg = SolverConfig { seed, ..SolverConfig::default() };
        let a = solve_max_co2plex(&g, &unit_weights(n), AlgorithmChoice::EUtterClique, &cfg).unwrap();
        let b = solve_max_co2plex(&g, &unit_weights(n), AlgorithmChoice::EUtterClique, &cfg).unwrap();
        prop_assert!(is_co2plex(&g, &a.co2plex.vertices));
        prop_assert_eq!(a.stats.nodes, b.stats.nodes);
        prop_assert_eq!(a.stats.cuts, b.stats.cuts);
        prop_assert_eq!(a.value, b.value);
    }
}
