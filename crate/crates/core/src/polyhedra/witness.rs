//! Explicit fractional points and the extended-formulation membership test.

use num_traits::{One, Zero};

use super::builders::{build_clique_extended, build_t};
use super::system::{LinearInequality, LinearSystem, Space};
use super::vertices::{is_extreme_point, RationalPoint};
use crate::error::{precondition, Result};
use crate::graph::{is_hole, Graph};
use crate::lp::{DenseSimplex, LpBackend, LpStatus};
use crate::numeric::{ratio, Rational};

/// Hole `v0 … v(p−1)` with `p ≡ 0 (mod 3)` plus a pendant `u` attached to
/// `v0`: returns `x_u = 1`, `x_vi = 1` for `i ≡ 0 (mod 3)`, `i > 0`, and `½`
/// on the remaining hole vertices. The hole is walked from the attachment
/// towards its smaller neighbour.
pub fn characpolytope_witness(g: &Graph) -> Result<RationalPoint> {
    let (u, order) = pendant_hole(g)?;
    let half = ratio(1, 2);
    let mut x = vec![Rational::zero(); g.n()];
    x[u] = Rational::one();
    for (i, &v) in order.iter().enumerate() {
        x[v] = if i > 0 && i % 3 == 0 { Rational::one() } else { half.clone() };
    }
    Ok(x)
}

/// The point lies in `T(G)` and is one of its vertices.
pub fn certify_characpolytope_witness(g: &Graph, x: &[Rational]) -> Result<bool> {
    is_extreme_point(&build_t(g)?, x)
}

fn pendant_hole(g: &Graph) -> Result<(usize, Vec<usize>)> {
    for u in (0..g.n()).filter(|&u| g.degree(u) == 1) {
        let rest: Vec<usize> = (0..g.n()).filter(|&v| v != u).collect();
        let (h, _) = g.induced_subgraph(&rest)?;
        let Some(p) = is_hole(&h) else { continue };
        if p % 3 != 0 {
            return precondition(format!("hole length {p} is not a multiple of 3"));
        }
        let a = g.neighbor_vec(u)[0];
        let mut order = vec![a];
        let mut prev = a;
        let mut cur = *g.neighbor_vec(a).iter().filter(|&&v| v != u).min().expect("hole vertex");
        while cur != a {
            order.push(cur);
            let next = g.neighbors(cur).find(|&v| v != prev && v != u).expect("hole vertex");
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(order.len(), p);
        return Ok((u, order));
    }
    precondition("graph is not a hole plus a pendant vertex")
}

/// The 4-cycle `0-1-2-3-0` with `x = ½` everywhere, `y` of edge `{2,3}`
/// equal to `½` and the other `y` zero.
pub fn c4_witness() -> (Graph, RationalPoint) {
    let g = Graph::cycle(4);
    let half = ratio(1, 2);
    let mut p = vec![half.clone(); 4];
    p.extend(vec![Rational::zero(); g.m()]);
    let e = g.edge_id(2, 3).expect("cycle edge");
    p[4 + e] = half;
    (g, p)
}

/// Whether the C₄ point is a vertex of the maximal-clique extended system.
pub fn certify_c4_witness() -> Result<bool> {
    let (g, p) = c4_witness();
    is_extreme_point(&build_clique_extended(&g), &p)
}

/// Whether some `y` puts `(x, y)` in the LP relaxation of the extended
/// edge formulation, solved exactly.
pub fn membership_via_extension(g: &Graph, x: &[Rational]) -> Result<bool> {
    if x.len() != g.n() {
        return precondition("point dimension does not match the graph");
    }
    if x.iter().any(|v| *v < Rational::zero() || *v > Rational::one()) {
        return Ok(false);
    }
    let space = Space::Natural { n: g.m() };
    let mut sys = LinearSystem::unit_box(space);
    for v in 0..g.n() {
        let terms: Vec<(usize, Rational)> = g.incident_edges(v).map(|e| (e, Rational::one())).collect();
        sys.push(LinearInequality::new(space, terms, x[v].clone(), format!("delta_v{v}")))?;
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let rhs = Rational::one() - &x[a] - &x[b];
        sys.push(LinearInequality::new(space, [(e, -Rational::one())], rhs, format!("edge_e{e}")))?;
    }
    let sol = DenseSimplex::<Rational>::new().solve(&sys, &vec![Rational::zero(); g.m()], &[])?;
    Ok(sol.status == LpStatus::Optimal)
}
