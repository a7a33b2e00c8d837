//! Cut generation: exact star separation, greedy 2-plex separation and
//! greedy utter-clique separation on u(G).

use std::cmp::Ordering;

use crate::co2plex::is_2plex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::Scalar;
use crate::polyhedra::{star_inequality, two_plex_inequality, utter_clique_inequality, LinearInequality};
use crate::polyhedra::STAR_DEGREE_CAP;
use crate::utter::{phi_inverse, UtterClique, UtterGraph};

pub const DEFAULT_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    Star,
    TwoPlex,
    UtterClique,
}

#[derive(Clone, Debug)]
pub struct Cut<T> {
    pub inequality: LinearInequality,
    pub violation: T,
    pub kind: CutKind,
}

impl<T: Scalar> Cut<T> {
    fn at(inequality: LinearInequality, point: &[T], kind: CutKind) -> Self {
        let violation = inequality.violation_scalar(point);
        Cut {
            inequality,
            violation,
            kind,
        }
    }
}

fn by_violation<T: Scalar>(a: &Cut<T>, b: &Cut<T>) -> Ordering {
    b.violation
        .partial_cmp(&a.violation)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.inequality.label.cmp(&b.inequality.label))
}

/// For each `w`, the most violated star inequality at `w`, with
/// `W = {v ∈ N(w) : x_w + x_v > 1}`. Sorted by decreasing violation.
pub fn separate_star_exact<T: Scalar>(g: &Graph, x: &[T], threshold: &T) -> Vec<Cut<T>> {
    let mut cuts = Vec::new();
    for w in 0..g.n() {
        let subset: Vec<usize> = g
            .neighbors(w)
            .filter(|&v| (x[w].clone() + x[v].clone() - T::one()).is_pos())
            .collect();
        if subset.is_empty() {
            continue;
        }
        let ineq = star_inequality(g, w, &subset).expect("subset of the neighborhood");
        let cut = Cut::at(ineq, x, CutKind::Star);
        if cut.violation > *threshold && cut.violation.is_pos() {
            cuts.push(cut);
        }
    }
    cuts.sort_by(by_violation);
    cuts
}

/// Most violated star inequality over every `w` and non-empty `W ⊆ N(w)`,
/// if any is violated.
pub fn separate_star_bruteforce<T: Scalar>(g: &Graph, x: &[T]) -> Result<Option<Cut<T>>> {
    if g.max_degree() > STAR_DEGREE_CAP {
        return Err(Error::TooLarge {
            what: "degree for star enumeration",
            size: g.max_degree(),
            cap: STAR_DEGREE_CAP,
        });
    }
    let mut best: Option<Cut<T>> = None;
    for w in 0..g.n() {
        let nbrs = g.neighbor_vec(w);
        for mask in 1u32..(1u32 << nbrs.len()) {
            let subset: Vec<usize> = (0..nbrs.len()).filter(|i| mask >> i & 1 == 1).map(|i| nbrs[i]).collect();
            let cut = Cut::at(star_inequality(g, w, &subset)?, x, CutKind::Star);
            if !cut.violation.is_pos() {
                continue;
            }
            if best.as_ref().is_none_or(|b| cut.violation > b.violation) {
                best = Some(cut);
            }
        }
    }
    Ok(best)
}

/// Indices sorted by decreasing weight, ties by ascending index.
fn decreasing<T: Scalar>(weights: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].partial_cmp(&weights[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    order
}

/// Greedy clique following decreasing weight.
fn greedy_clique<T: Scalar>(g: &Graph, weights: &[T]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for v in decreasing(weights) {
        if clique.iter().all(|&c| g.has_edge(c, v)) {
            clique.push(v);
        }
    }
    clique
}

/// Greedy clique by decreasing `x`, then extension to a 2-plex through
/// the remaining vertices by decreasing degree in `G[V ∖ C]`.
pub fn separate_2plex_greedy<T: Scalar>(g: &Graph, x: &[T], threshold: &T) -> Option<Cut<T>> {
    if g.n() == 0 {
        return None;
    }
    let mut k = greedy_clique(g, x);
    let mut in_k = vec![false; g.n()];
    for &v in &k {
        in_k[v] = true;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_k[v]).collect();
    let deg: Vec<usize> = rest
        .iter()
        .map(|&v| g.neighbors(v).filter(|&u| !in_k[u]).count())
        .collect();
    let mut order: Vec<usize> = (0..rest.len()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(rest[a].cmp(&rest[b])));
    for i in order {
        k.push(rest[i]);
        if !is_2plex(g, &k) {
            k.pop();
        }
    }
    k.sort_unstable();
    let cut = Cut::at(two_plex_inequality(g, &k).expect("greedy set is a 2-plex"), x, CutKind::TwoPlex);
    (cut.violation > *threshold && cut.violation.is_pos()).then_some(cut)
}

/// Maps `(x, y)` to `(z, y)`, runs the greedy clique on u(G) with those
/// weights, extends it to a maximal clique (vertex nodes first, then edge
/// nodes, each by index) and emits its row when violated.
pub fn separate_utterclique_greedy<T: Scalar>(
    g: &Graph,
    u: &UtterGraph,
    x: &[T],
    y: &[T],
    threshold: &T,
) -> Option<Cut<T>> {
    let ug = u.graph();
    if ug.n() == 0 {
        return None;
    }
    let (z, y) = phi_inverse(g, x, y);
    let weights: Vec<T> = z.into_iter().chain(y.iter().cloned()).collect();
    let mut clique = greedy_clique(ug, &weights);
    for v in 0..ug.n() {
        if !clique.contains(&v) && clique.iter().all(|&c| ug.has_edge(c, v)) {
            clique.push(v);
        }
    }
    let (w, f) = u.split(&clique);
    let ineq = utter_clique_inequality(g, &UtterClique { w, f });
    let point: Vec<T> = x.iter().cloned().chain(y).collect();
    let cut = Cut::at(ineq, &point, CutKind::UtterClique);
    (cut.violation > *threshold && cut.violation.is_pos()).then_some(cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::co2plex::enumerate_co2plexes;
    use crate::graph::generate_er;
    use crate::numeric::{rat, ratio, Rational};
    use crate::polyhedra::is_valid_inequality;
    use proptest::prelude::*;

    fn zero() -> Rational {
        rat(0)
    }

    #[test]
    fn star_examples() {
        let g = Graph::star(3);
        let cuts = separate_star_exact(&g, &[ratio(1, 2), rat(1), rat(1), rat(0)], &zero());
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].inequality.label, "star_w0_W{1,2}");
        assert_eq!(cuts[0].violation, ratio(1, 2));

        let t = ratio(2, 3);
        let cuts = separate_star_exact(&g, &[t.clone(), t.clone(), t.clone(), t], &zero());
        assert_eq!(cuts[0].inequality.label, "star_w0_W{1,2,3}");
        assert_eq!(cuts[0].violation, ratio(1, 3));

        let ones = vec![rat(1); 4];
        let exact = separate_star_exact(&g, &ones, &zero());
        let brute = separate_star_bruteforce(&g, &ones).unwrap().unwrap();
        assert_eq!(exact[0].inequality.label, "star_w0_W{1,2,3}");
        assert_eq!(brute.inequality.label, exact[0].inequality.label);
        assert_eq!(brute.violation, rat(2));
        assert!(separate_star_bruteforce(&g, &vec![rat(0); 4]).unwrap().is_none());
    }

    #[test]
    fn co2plexes_are_never_cut() {
        let g = generate_er(7, 0.5, 3);
        let u = UtterGraph::build(&g);
        for c in enumerate_co2plexes(&g).unwrap() {
            let ext: Vec<Rational> = c.extended_incidence(&g).into_iter().map(|v| rat(v as i64)).collect();
            let (x, y) = ext.split_at(g.n());
            assert!(separate_star_exact(&g, x, &zero()).is_empty());
            assert!(separate_2plex_greedy(&g, x, &zero()).is_none());
            assert!(separate_utterclique_greedy(&g, &u, x, y, &zero()).is_none());
        }
    }

    #[test]
    fn two_plex_examples() {
        let k4 = Graph::complete(4);
        let cut = separate_2plex_greedy(&k4, &[1.0; 4], &DEFAULT_THRESHOLD).unwrap();
        assert_eq!(cut.inequality.label, "twoplex_K{0,1,2,3}");
        assert_eq!(cut.violation, 2.0);
        assert!(separate_2plex_greedy(&Graph::empty(3), &[1.0; 3], &DEFAULT_THRESHOLD).is_none());
        let t = ratio(2, 3);
        assert!(separate_2plex_greedy(&Graph::star(3), &[t.clone(), t.clone(), t.clone(), t], &zero()).is_none());
    }

    #[test]
    fn utter_clique_single_edge() {
        let g = Graph::path(2);
        let u = UtterGraph::build(&g);
        let cut = separate_utterclique_greedy(&g, &u, &[1.0, 1.0], &[0.0], &DEFAULT_THRESHOLD).unwrap();
        assert_eq!(cut.inequality.label, "utterclique_W{0,1}_F{0}");
        assert_eq!(cut.violation, 1.0);
    }

    #[test]
    fn utter_clique_c4_witness_if_found_is_valid() {
        let (g, p) = crate::polyhedra::c4_witness();
        let u = UtterGraph::build(&g);
        let (x, y) = p.split_at(4);
        if let Some(cut) = separate_utterclique_greedy(&g, &u, x, y, &zero()) {
            assert!(cut.violation > zero());
            assert!(is_valid_inequality(&g, &cut.inequality).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn exact_star_matches_bruteforce(seed in 0u64..10_000, n in 1usize..10, p in 0.1f64..0.9,
                                         raw in proptest::collection::vec(0u8..=6, 10)) {
            let g = generate_er(n, p, seed);
            let x: Vec<Rational> = raw[..n].iter().map(|&v| ratio(v as i64, 6)).collect();
            let exact = separate_star_exact(&g, &x, &zero());
            let brute = separate_star_bruteforce(&g, &x).unwrap();
            match brute {
                None => prop_assert!(exact.is_empty()),
                Some(b) => prop_assert_eq!(&exact[0].violation, &b.violation),
            }
            for c in &exact {
                prop_assert!(c.violation > zero());
            }
        }

        #[test]
        fn emitted_cuts_are_valid(seed in 0u64..10_000, n in 2usize..8, p in 0.2f64..0.8,
                                  raw in proptest::collection::vec(0u8..=4, 40)) {
            let g = generate_er(n, p, seed);
            let u = UtterGraph::build(&g);
            let x: Vec<Rational> = raw[..n].iter().map(|&v| ratio(v as i64, 4)).collect();
            let y: Vec<Rational> = raw[n..n + g.m()].iter().map(|&v| ratio(v as i64, 8)).collect();
            let mut cuts = separate_star_exact(&g, &x, &zero());
            cuts.extend(separate_2plex_greedy(&g, &x, &zero()));
            cuts.extend(separate_utterclique_greedy(&g, &u, &x, &y, &zero()));
            for c in cuts {
                prop_assert!(c.violation > zero());
                prop_assert!(is_valid_inequality(&g, &c.inequality).unwrap());
            }
        }
    }
}
