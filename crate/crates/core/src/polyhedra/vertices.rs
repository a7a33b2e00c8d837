//! Exact vertex enumeration.
//!
//! [`enumerate_vertices`] runs the double description method on the
//! homogenised cone `{(x, t) : a·x ≤ b·t, t ≥ 0}` in `i128` arithmetic.
//! [`enumerate_vertices_by_bases`] is the slow textbook procedure (every
//! square subsystem of tight rows) and serves as a cross-check.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::system::LinearSystem;
use crate::bitset::BitSet;
use crate::error::{precondition, Error, Result};
use crate::numeric::{
    combine, dot_i128, integer_row, is_integral, normalize, rank_rational, solve_rational, IncrementalRank, Rational,
};

pub type RationalPoint = Vec<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCaps {
    pub max_vars: usize,
    pub max_rows: usize,
    /// Bound on intermediate rays held by the double description method.
    pub max_rays: usize,
}

impl Default for VertexCaps {
    fn default() -> Self {
        VertexCaps {
            max_vars: 40,
            max_rows: 4096,
            max_rays: 500_000,
        }
    }
}

/// Caps for [`enumerate_vertices_by_bases`].
pub const BASIS_ENUMERATION_CAPS: VertexCaps = VertexCaps {
    max_vars: 12,
    max_rows: 40,
    max_rays: usize::MAX,
};

pub fn enumerate_vertices(system: &LinearSystem) -> Result<Vec<RationalPoint>> {
    enumerate_vertices_with_caps(system, VertexCaps::default())
}

/// Vertices sorted lexicographically. Empty when the system is infeasible;
/// an error when it is unbounded.
pub fn enumerate_vertices_with_caps(system: &LinearSystem, caps: VertexCaps) -> Result<Vec<RationalPoint>> {
    let d = system.dim();
    check_caps(system, caps)?;
    let Some(rows) = homogenized_rows(system)? else {
        return Ok(Vec::new());
    };
    let dd = d + 1;

    let mut rank = IncrementalRank::new();
    let mut basis_rows = Vec::new();
    for (i, h) in rows.iter().enumerate() {
        if rank.insert(h)? {
            basis_rows.push(i);
            if basis_rows.len() == dd {
                break;
            }
        }
    }
    if basis_rows.len() < dd {
        return precondition("polyhedron contains a line");
    }

    let hb: Vec<Vec<Rational>> = basis_rows
        .iter()
        .map(|&i| rows[i].iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let mut rays: Vec<Vec<i128>> = Vec::with_capacity(dd);
    let mut zeros: Vec<BitSet> = Vec::with_capacity(dd);
    for k in 0..dd {
        let e: Vec<Rational> = (0..dd).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect();
        let r = solve_rational(&hb, &e).ok_or_else(|| Error::Precondition("singular initial basis".into()))?;
        rays.push(integer_row(&r)?);
        zeros.push(BitSet::from_indices(
            rows.len(),
            basis_rows.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &row)| row),
        ));
    }

    let in_basis = BitSet::from_indices(rows.len(), basis_rows.iter().copied());
    for (k, h) in rows.iter().enumerate() {
        if in_basis.contains(k) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot_i128(h, r)).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for i in 0..rays.len() {
                if vals[i] == 0 {
                    zeros[i].insert(k);
                }
            }
            continue;
        }

        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].intersection(&zeros[q]);
                if common.count() + 2 < dd {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !common.is_subset(&zeros[r]));
                if !adjacent {
                    continue;
                }
                let ray = combine(vals[p], &rays[q], vals[q], &rays[p])?;
                let mut z = common;
                z.insert(k);
                new_rays.push(ray);
                new_zeros.push(z);
            }
        }

        let mut kept_rays = Vec::with_capacity(rays.len() + new_rays.len());
        let mut kept_zeros = Vec::with_capacity(rays.len() + new_rays.len());
        for (i, (r, mut z)) in rays.into_iter().zip(zeros).enumerate() {
            if vals[i] >= 0 {
                if vals[i] == 0 {
                    z.insert(k);
                }
                kept_rays.push(r);
                kept_zeros.push(z);
            }
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        if kept_rays.len() > caps.max_rays {
            return Err(Error::TooLarge {
                what: "intermediate rays",
                size: kept_rays.len(),
                cap: caps.max_rays,
            });
        }
        rays = kept_rays;
        zeros = kept_zeros;
    }

    let mut out = BTreeSet::new();
    let mut recession = false;
    for r in &rays {
        let t = r[d];
        if t == 0 {
            recession = true;
            continue;
        }
        let den = num_bigint::BigInt::from(t);
        out.insert(
            r[..d]
                .iter()
                .map(|&v| Rational::new(v.into(), den.clone()))
                .collect::<Vec<_>>(),
        );
    }
    if recession && !out.is_empty() {
        return precondition("polyhedron is unbounded");
    }
    Ok(out.into_iter().collect())
}

/// Rows `h` with `h·(x, t) ≥ 0`: `t ≥ 0` and the lower bounds first, then
/// the structural rows, then the upper bounds; duplicates removed. `None`
/// if a row reads `0 ≤ negative`.
fn homogenized_rows(system: &LinearSystem) -> Result<Option<Vec<Vec<i128>>>> {
    let d = system.dim();
    let mut t_row = vec![0i128; d + 1];
    t_row[d] = 1;
    let mut out = vec![t_row];
    let mut seen: HashSet<Vec<i128>> = out.iter().cloned().collect();
    let all = system.rows_with_bounds();
    let (structural, bounds) = all.split_at(system.rows.len());
    let (lower, upper): (Vec<_>, Vec<_>) = bounds.iter().partition(|r| r.label.starts_with("lb_"));
    for r in lower.into_iter().chain(structural).chain(upper) {
        let (a, b) = r.integer_form()?;
        if a.iter().all(|&v| v == 0) {
            if b < 0 {
                return Ok(None);
            }
            continue;
        }
        let mut h: Vec<i128> = a.iter().map(|v| -v).collect();
        h.push(b);
        normalize(&mut h);
        if seen.insert(h.clone()) {
            out.push(h);
        }
    }
    Ok(Some(out))
}

fn check_caps(system: &LinearSystem, caps: VertexCaps) -> Result<()> {
    if system.dim() > caps.max_vars {
        return Err(Error::TooLarge {
            what: "variables",
            size: system.dim(),
            cap: caps.max_vars,
        });
    }
    let rows = system.rows_with_bounds().len();
    if rows > caps.max_rows {
        return Err(Error::TooLarge {
            what: "rows",
            size: rows,
            cap: caps.max_rows,
        });
    }
    Ok(())
}

/// Every square subsystem of `rows + bounds` is solved; feasible unique
/// solutions are collected. Small systems only.
pub fn enumerate_vertices_by_bases(system: &LinearSystem) -> Result<Vec<RationalPoint>> {
    check_caps(system, BASIS_ENUMERATION_CAPS)?;
    let d = system.dim();
    let rows = system.rows_with_bounds();
    let mut out = BTreeSet::new();
    let mut pick: Vec<usize> = (0..d).collect();
    if d == 0 {
        if system.is_feasible(&[]) {
            out.insert(Vec::new());
        }
        return Ok(out.into_iter().collect());
    }
    if rows.len() < d {
        return Ok(Vec::new());
    }
    loop {
        let m: Vec<Vec<Rational>> = pick.iter().map(|&i| rows[i].dense()).collect();
        let rhs: Vec<Rational> = pick.iter().map(|&i| rows[i].rhs.clone()).collect();
        if let Some(x) = solve_rational(&m, &rhs) {
            if system.is_feasible(&x) {
                out.insert(x);
            }
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out.into_iter().collect());
            }
            i -= 1;
            if pick[i] < rows.len() - d + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..d {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

pub fn is_integer_polytope(system: &LinearSystem) -> Result<bool> {
    Ok(enumerate_vertices(system)?.iter().all(|v| v.iter().all(is_integral)))
}

/// Feasible, and the rows (bounds included) tight at `p` have full rank.
pub fn is_extreme_point(system: &LinearSystem, p: &[Rational]) -> Result<bool> {
    if p.len() != system.dim() {
        return precondition("point dimension does not match the system");
    }
    if !system.is_feasible(p) {
        return Ok(false);
    }
    let tight: Vec<Vec<Rational>> = system
        .rows_with_bounds()
        .iter()
        .filter(|r| r.is_tight(p))
        .map(|r| r.dense())
        .collect();
    Ok(rank_rational(&tight)? == system.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::co2plex::enumerate_co2plexes;
    use crate::graph::{random_tree, rng_from_seed, Graph};
    use crate::numeric::{rat, ratio};
    use crate::polyhedra::builders::{build_chordal_extended, build_e, build_nk, build_t};
    use crate::polyhedra::system::{LinearInequality, Space};

    fn incidence(g: &Graph, extended: bool) -> Vec<RationalPoint> {
        let mut v: Vec<RationalPoint> = enumerate_co2plexes(g)
            .unwrap()
            .iter()
            .map(|c| {
                let p = if extended { c.extended_incidence(g) } else { c.natural_incidence(g.n()) };
                p.into_iter().map(|x| rat(x as i64)).collect()
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn unit_square_and_triangle() {
        let mut sys = LinearSystem::unit_box(Space::Natural { n: 2 });
        assert_eq!(enumerate_vertices(&sys).unwrap().len(), 4);
        sys.push(LinearInequality::from_ints(sys.space, [(0, 1), (1, 1)], 1, "s")).unwrap();
        let v = enumerate_vertices(&sys).unwrap();
        assert_eq!(v, vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        assert_eq!(v, enumerate_vertices_by_bases(&sys).unwrap());
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut sys = LinearSystem::unit_box(Space::Natural { n: 2 });
        sys.push(LinearInequality::from_ints(sys.space, [(0, -1), (1, -1)], -3, "far")).unwrap();
        assert!(enumerate_vertices(&sys).unwrap().is_empty());
        let mut open = LinearSystem::unit_box(Space::Natural { n: 1 });
        open.upper[0] = None;
        assert!(enumerate_vertices(&open).is_err());
    }

    #[test]
    fn odd_cycle_edge_relaxation_has_half_point() {
        let g = Graph::cycle(3);
        let sys = build_nk(&g, 1).unwrap();
        let v = enumerate_vertices(&sys).unwrap();
        assert_eq!(v, enumerate_vertices_by_bases(&sys).unwrap());
        assert!(!is_integer_polytope(&sys).unwrap());
    }

    #[test]
    fn star_tree_polytope_is_the_co2plex_polytope() {
        let g = Graph::star(3);
        let sys = build_t(&g).unwrap();
        let v = enumerate_vertices(&sys).unwrap();
        assert_eq!(v, incidence(&g, false));
        assert_eq!(v, enumerate_vertices_by_bases(&sys).unwrap());
    }

    #[test]
    fn random_trees_match_oracle() {
        let mut rng = rng_from_seed(7);
        for n in 2..=8 {
            let g = random_tree(n, &mut rng);
            assert_eq!(enumerate_vertices(&build_t(&g).unwrap()).unwrap(), incidence(&g, false));
        }
    }

    #[test]
    fn e_relaxation_of_triangle_matches_bases() {
        let g = Graph::cycle(3);
        let sys = build_e(&g);
        assert_eq!(enumerate_vertices(&sys).unwrap(), enumerate_vertices_by_bases(&sys).unwrap());
        let chordal = build_chordal_extended(&g).unwrap();
        assert_eq!(enumerate_vertices(&chordal).unwrap(), incidence(&g, true));
    }

    #[test]
    fn cycles_in_tree_system() {
        assert!(is_integer_polytope(&build_t(&Graph::cycle(6)).unwrap()).unwrap());
        assert!(!is_integer_polytope(&build_t(&Graph::cycle(5)).unwrap()).unwrap());
    }

    #[test]
    fn extreme_point_checks() {
        let g = Graph::cycle(3);
        let sys = build_nk(&g, 1).unwrap();
        assert!(is_extreme_point(&sys, &[ratio(1, 2), ratio(1, 2), ratio(1, 2)]).unwrap());
        assert!(is_extreme_point(&sys, &[rat(1), rat(0), rat(0)]).unwrap());
        assert!(!is_extreme_point(&sys, &[ratio(1, 4), rat(0), rat(0)]).unwrap());
        assert!(!is_extreme_point(&sys, &[rat(1), rat(1), rat(0)]).unwrap());
        assert!(is_extreme_point(&sys, &[rat(1)]).is_err());
    }
}
