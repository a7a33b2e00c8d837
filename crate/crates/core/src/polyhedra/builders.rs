//! Formulation builders and the named inequality families.

use num_traits::{One, Signed, Zero};

use super::system::{set_label, LinearInequality, LinearSystem, Space};
use crate::co2plex::{alpha2_induced, enumerate_2plexes, is_2plex, is_maximal_2plex};
use crate::error::{precondition, Error, Result};
use crate::graph::{is_chordal, is_hole, maximal_cliques, Graph};
use crate::numeric::{rat, Rational};
use crate::utter::{enumerate_maximal_utter_cliques_with_cap, UtterClique, DEFAULT_UTTER_CLIQUE_CAP};

/// Degree cap for explicit star families.
pub const STAR_DEGREE_CAP: usize = 16;

pub fn natural(g: &Graph) -> Space {
    Space::Natural { n: g.n() }
}

pub fn extended(g: &Graph) -> Space {
    Space::Extended { n: g.n(), m: g.m() }
}

/// `x(N(u)) + (|N(u)| − k + 1) x_u ≤ |N(u)|` for every `u` with
/// `|N(u)| ≥ k`, plus the unit box.
pub fn build_nk(g: &Graph, k: usize) -> Result<LinearSystem> {
    if k == 0 {
        return precondition("k must be at least 1");
    }
    let space = natural(g);
    let mut sys = LinearSystem::unit_box(space);
    for u in 0..g.n() {
        let deg = g.degree(u);
        if deg < k {
            continue;
        }
        let terms = g
            .neighbors(u)
            .map(|v| (v, 1))
            .chain([(u, (deg - k + 1) as i64)]);
        sys.rows.push(LinearInequality::from_ints(space, terms, deg as i64, format!("nk{k}_u{u}")));
    }
    Ok(sys)
}

fn delta_row(g: &Graph, space: Space, v: usize) -> LinearInequality {
    let terms = g
        .incident_edges(v)
        .map(|e| (space.y(e), 1))
        .chain([(v, -1)]);
    LinearInequality::from_ints(space, terms, 0, format!("delta_v{v}"))
}

fn edge_row(g: &Graph, space: Space, e: usize) -> LinearInequality {
    let (u, v) = g.edge(e);
    LinearInequality::from_ints(
        space,
        [(u, 1), (v, 1), (space.y(e), -1)],
        1,
        format!("edge_e{e}_{{{u},{v}}}"),
    )
}

/// Delta rows `y(δ(v)) ≤ x_v`, edge rows `x_u + x_v − y_uv ≤ 1`, all
/// variables in `[0, 1]` and integer.
pub fn build_e(g: &Graph) -> LinearSystem {
    let space = extended(g);
    let mut sys = LinearSystem::unit_box(space);
    for v in 0..g.n() {
        sys.rows.push(delta_row(g, space, v));
    }
    for e in 0..g.m() {
        sys.rows.push(edge_row(g, space, e));
    }
    sys
}

/// Extended box: `0 ≤ x ≤ 1`, `y ≥ 0` without upper bound.
fn extended_base(g: &Graph) -> LinearSystem {
    let mut sys = LinearSystem::unit_box(extended(g));
    for e in 0..g.m() {
        sys.upper[g.n() + e] = None;
    }
    sys
}

/// [`build_clique_extended`] restricted to chordal graphs.
pub fn build_chordal_extended(g: &Graph) -> Result<LinearSystem> {
    if !is_chordal(g).is_chordal() {
        return precondition("graph is not chordal");
    }
    Ok(build_clique_extended(g))
}

/// `x(K) − y(E(K)) ≤ 1` per maximal clique `K`, delta rows, `y ≥ 0`,
/// for any graph.
pub fn build_clique_extended(g: &Graph) -> LinearSystem {
    let space = extended(g);
    let mut sys = extended_base(g);
    for k in maximal_cliques(g) {
        let terms = k
            .iter()
            .map(|&v| (v, 1))
            .chain(g.induced_edges(&k).into_iter().map(|e| (space.y(e), -1)));
        sys.rows.push(LinearInequality::from_ints(space, terms, 1, format!("clique_K{}", set_label(&k))));
    }
    for v in 0..g.n() {
        sys.rows.push(delta_row(g, space, v));
    }
    sys
}

/// `x(W) + y(F ∩ E(V∖W)) − y(E(W)) ≤ 1`.
pub fn utter_clique_inequality(g: &Graph, c: &UtterClique) -> LinearInequality {
    let space = extended(g);
    let inside = |v: usize| c.w.binary_search(&v).is_ok();
    let mut terms: Vec<(usize, i64)> = c.w.iter().map(|&v| (v, 1)).collect();
    for &e in &c.f {
        let (a, b) = g.edge(e);
        match (inside(a), inside(b)) {
            (false, false) => terms.push((space.y(e), 1)),
            (true, true) => terms.push((space.y(e), -1)),
            _ => {}
        }
    }
    LinearInequality::from_ints(
        space,
        terms,
        1,
        format!("utterclique_W{}_F{}", set_label(&c.w), set_label(&c.f)),
    )
}

pub fn build_utter_clique_system(g: &Graph) -> Result<LinearSystem> {
    build_utter_clique_system_with_cap(g, DEFAULT_UTTER_CLIQUE_CAP)
}

/// One row per maximal utter clique, delta rows, `y ≥ 0`, `0 ≤ x ≤ 1`.
pub fn build_utter_clique_system_with_cap(g: &Graph, cap: usize) -> Result<LinearSystem> {
    let space = extended(g);
    let mut sys = extended_base(g);
    for c in enumerate_maximal_utter_cliques_with_cap(g, cap)? {
        sys.rows.push(utter_clique_inequality(g, &c));
    }
    for v in 0..g.n() {
        sys.rows.push(delta_row(g, space, v));
    }
    Ok(sys)
}

fn checked_neighborhood_subset(g: &Graph, w: usize, subset: &[usize]) -> Result<Vec<usize>> {
    if w >= g.n() {
        return precondition(format!("vertex {w} out of range"));
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() != subset.len() {
        return precondition("W must be a non-empty set without repetitions");
    }
    if let Some(v) = s.iter().find(|&&v| v >= g.n() || !g.has_edge(w, v)) {
        return precondition(format!("{v} is not a neighbor of {w}"));
    }
    Ok(s)
}

/// Star inequality `x(W) + (|W| − 1) x_w ≤ |W|` for non-empty `W ⊆ N(w)`.
pub fn star_inequality(g: &Graph, w: usize, subset: &[usize]) -> Result<LinearInequality> {
    let s = checked_neighborhood_subset(g, w, subset)?;
    let k = s.len() as i64;
    let terms = s.iter().map(|&v| (v, 1)).chain([(w, k - 1)]);
    Ok(LinearInequality::from_ints(natural(g), terms, k, format!("star_w{w}_W{}", set_label(&s))))
}

/// `x(W) + (α₂(G[W]) − 1) x_w ≤ α₂(G[W])` for non-empty `W ⊆ N(w)`.
pub fn generalized_star_inequality(g: &Graph, w: usize, subset: &[usize]) -> Result<LinearInequality> {
    let s = checked_neighborhood_subset(g, w, subset)?;
    let a = alpha2_induced(g, &s)? as i64;
    let terms = s.iter().map(|&v| (v, 1)).chain([(w, a - 1)]);
    Ok(LinearInequality::from_ints(natural(g), terms, a, format!("gstar_w{w}_W{}", set_label(&s))))
}

/// Conditions i) and ii) for the generalized star inequality at `(w, W)`.
/// A singleton `W` yields `x_u ≤ 1`, always a facet, and returns true.
pub fn star_facet_conditions(g: &Graph, w: usize, subset: &[usize]) -> Result<bool> {
    let s = checked_neighborhood_subset(g, w, subset)?;
    if s.len() == 1 {
        return Ok(true);
    }
    let complete_outsider = (0..g.n())
        .filter(|&u| u != w && s.binary_search(&u).is_err())
        .any(|u| s.iter().all(|&v| g.has_edge(u, v)));
    if complete_outsider {
        return Ok(false);
    }
    let base = alpha2_induced(g, &s)?;
    for v in g.neighbors(w) {
        if s.binary_search(&v).is_ok() {
            continue;
        }
        let mut bigger = s.clone();
        bigger.push(v);
        if alpha2_induced(g, &bigger)? != base + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every star inequality with `W ⊆ N(w)` non-empty, plus the unit box.
pub fn build_t(g: &Graph) -> Result<LinearSystem> {
    let deg = g.max_degree();
    if deg > STAR_DEGREE_CAP {
        return Err(Error::TooLarge {
            what: "explicit star system (max degree)",
            size: deg,
            cap: STAR_DEGREE_CAP,
        });
    }
    let mut sys = LinearSystem::unit_box(natural(g));
    for w in 0..g.n() {
        let nbrs = g.neighbor_vec(w);
        for mask in 1u32..(1 << nbrs.len()) {
            let s: Vec<usize> = (0..nbrs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| nbrs[i]).collect();
            sys.rows.push(star_inequality(g, w, &s)?);
        }
    }
    Ok(sys)
}

/// `x(K) ≤ 2` for a 2-plex `K`.
pub fn two_plex_inequality(g: &Graph, k: &[usize]) -> Result<LinearInequality> {
    let mut s = k.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != k.len() || !is_2plex(g, &s) {
        return precondition(format!("{k:?} is not a 2-plex"));
    }
    Ok(LinearInequality::from_ints(
        natural(g),
        s.iter().map(|&v| (v, 1)),
        2,
        format!("twoplex_K{}", set_label(&s)),
    ))
}

/// `x(H) ≤ ⌊2|H|/3⌋` for a vertex set inducing a hole.
pub fn hole_inequality(g: &Graph, h: &[usize]) -> Result<LinearInequality> {
    let mut s = h.to_vec();
    s.sort_unstable();
    s.dedup();
    let (sub, _) = g.induced_subgraph(&s)?;
    if s.len() != h.len() || is_hole(&sub).is_none() {
        return precondition("vertex set does not induce a hole");
    }
    Ok(LinearInequality::from_ints(
        natural(g),
        s.iter().map(|&v| (v, 1)),
        (2 * s.len() / 3) as i64,
        format!("hole_H{}", set_label(&s)),
    ))
}

/// The 2-plex system: `x(K) ≤ 2` for every maximal 2-plex with `|K| ≥ 3`
/// (the others are implied by the box), plus the unit box.
pub fn build_2plex_system(g: &Graph) -> Result<LinearSystem> {
    let mut sys = LinearSystem::unit_box(natural(g));
    for k in enumerate_2plexes(g)? {
        if k.len() >= 3 && is_maximal_2plex(g, &k) {
            sys.rows.push(two_plex_inequality(g, &k)?);
        }
    }
    Ok(sys)
}

/// Lifts a natural-space inequality of `G` to `G' = G + w`, with `w`
/// adjacent exactly to the support of the inequality:
/// `a·x + (α − max_{v∈H} a_v) x_w ≤ α`. Returns `G'` and the lifted row;
/// `w` gets identifier `n`.
pub fn lift_facet(g: &Graph, ineq: &LinearInequality, nbrs: &[usize]) -> Result<(Graph, LinearInequality)> {
    if ineq.space != natural(g) {
        return precondition("lifting needs a natural-space inequality of the given graph");
    }
    let support = ineq.support();
    let mut s = nbrs.to_vec();
    s.sort_unstable();
    s.dedup();
    if s != support {
        return precondition("the new vertex must be adjacent exactly to the support");
    }
    let max = ineq
        .coeffs
        .iter()
        .map(|(_, c)| c.clone())
        .max()
        .ok_or_else(|| Error::Precondition("empty support".into()))?;
    if !max.is_positive() {
        return precondition("lifting needs a positive coefficient on the support");
    }
    let gp = g.with_new_vertex(&s)?;
    let w = g.n();
    let space = natural(&gp);
    let coef = &ineq.rhs - max;
    let terms = ineq.coeffs.iter().cloned().chain([(w, coef)]);
    let lifted = LinearInequality::new(space, terms, ineq.rhs.clone(), format!("lift_w{w}_{}", ineq.label));
    Ok((gp, lifted))
}

/// `x_v ≤ 1` and `−x_v ≤ 0` as inequalities.
pub fn trivial_inequalities(space: Space, v: usize) -> [LinearInequality; 2] {
    [
        LinearInequality::new(space, [(v, Rational::one())], Rational::one(), format!("ub_x{v}")),
        LinearInequality::new(space, [(v, -Rational::one())], Rational::zero(), format!("lb_x{v}")),
    ]
}

/// `x(V) ≤ r` over a natural space.
pub fn rank_inequality(space: Space, vertices: &[usize], r: i64, label: &str) -> LinearInequality {
    LinearInequality::new(space, vertices.iter().map(|&v| (v, rat(1))), rat(r), label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nk_examples() {
        let star = Graph::star(3);
        let n2 = build_nk(&star, 2).unwrap();
        assert_eq!(n2.rows.len(), 1);
        assert_eq!(n2.rows[0].coeffs, vec![(0, rat(2)), (1, rat(1)), (2, rat(1)), (3, rat(1))]);
        assert_eq!(n2.rows[0].rhs, rat(3));
        assert!(build_nk(&Graph::path(2), 2).unwrap().rows.is_empty());
        let n1 = build_nk(&Graph::path(3), 1).unwrap();
        assert_eq!(n1.rows.len(), 3);
        assert_eq!(n1.rows[1].coeff(1), rat(2));
    }

    #[test]
    fn e_single_edge() {
        let sys = build_e(&Graph::path(2));
        let text: Vec<String> = sys.rows.iter().map(|r| r.to_string()).collect();
        assert_eq!(
            text,
            vec!["delta_v0: -x0 + y0 <= 0", "delta_v1: -x1 + y0 <= 0", "edge_e0_{0,1}: x0 + x1 - y0 <= 1"]
        );
    }

    #[test]
    fn chordal_examples() {
        let k3 = build_chordal_extended(&Graph::complete(3)).unwrap();
        assert_eq!(k3.rows[0].to_string(), "clique_K{0,1,2}: x0 + x1 + x2 - y0 - y1 - y2 <= 1");
        assert!(build_chordal_extended(&Graph::cycle(4)).is_err());
        // Tree: clique rows coincide with edge rows.
        let t = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let ch = build_chordal_extended(&t).unwrap();
        let e = build_e(&t);
        let lhs: Vec<_> = ch.rows.iter().map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();
        for r in &e.rows {
            assert!(lhs.contains(&(r.coeffs.clone(), r.rhs.clone())));
        }
        assert_eq!(ch.rows.len(), e.rows.len());
        assert!(ch.upper[5..].iter().all(Option::is_none));
    }

    #[test]
    fn utter_system_matches_chordal_rows() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let a = build_chordal_extended(&g).unwrap();
        let b = build_utter_clique_system(&g).unwrap();
        let key = |s: &LinearSystem| {
            let mut v: Vec<_> = s.rows.iter().map(|r| (r.coeffs.clone(), r.rhs.clone())).collect();
            v.sort();
            v
        };
        assert_eq!(key(&a), key(&b));
        let single = build_utter_clique_system(&Graph::path(2)).unwrap();
        assert_eq!(single.rows[0].to_string(), "utterclique_W{0,1}_F{0}: x0 + x1 - y0 <= 1");
    }

    #[test]
    fn star_examples() {
        let star = Graph::star(3);
        let s = star_inequality(&star, 0, &[1, 2, 3]).unwrap();
        assert_eq!(s.to_string(), "star_w0_W{1,2,3}: 2 x0 + x1 + x2 + x3 <= 3");
        let single = star_inequality(&star, 0, &[2]).unwrap();
        assert_eq!(single.coeffs, vec![(2, rat(1))]);
        assert_eq!(single.rhs, rat(1));
        assert!(star_inequality(&star, 1, &[2]).is_err());
        assert_eq!(build_t(&star).unwrap().rows.len(), 7 + 3);
    }

    #[test]
    fn hole_and_two_plex() {
        let c5 = Graph::cycle(5);
        assert_eq!(hole_inequality(&c5, &[0, 1, 2, 3, 4]).unwrap().rhs, rat(3));
        assert_eq!(hole_inequality(&Graph::cycle(6), &[0, 1, 2, 3, 4, 5]).unwrap().rhs, rat(4));
        assert!(hole_inequality(&Graph::path(5), &[0, 1, 2, 3, 4]).is_err());
        let k4 = Graph::complete(4);
        assert_eq!(two_plex_inequality(&k4, &[0, 1, 2, 3]).unwrap().rhs, rat(2));
        assert!(two_plex_inequality(&Graph::empty(3), &[0, 1, 2]).is_err());
    }

    #[test]
    fn facet_conditions_examples() {
        // Star plus a vertex complete to the leaves.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)]).unwrap();
        assert!(!star_facet_conditions(&g, 0, &[1, 2, 3]).unwrap());
        let star = Graph::star(3);
        assert!(star_facet_conditions(&star, 0, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn lifting_examples() {
        let g = Graph::empty(2);
        let ineq = rank_inequality(natural(&g), &[0, 1], 2, "pair");
        let (gp, lifted) = lift_facet(&g, &ineq, &[0, 1]).unwrap();
        assert_eq!(gp, Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap());
        assert_eq!(lifted.coeffs, vec![(0, rat(1)), (1, rat(1)), (2, rat(1))]);
        let g = Graph::empty(1);
        let [ub, lb] = trivial_inequalities(natural(&g), 0);
        let (_, l) = lift_facet(&g, &ub, &[0]).unwrap();
        assert_eq!(l.coeffs, vec![(0, rat(1))]);
        assert!(lift_facet(&g, &lb, &[0]).is_err());
        assert!(lift_facet(&Graph::empty(2), &ub.clone().with_label("x"), &[0]).is_err());
    }
}
