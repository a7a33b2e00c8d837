//! Structural predicates: connectivity, trees, holes, twins, and brute-force
//! perfectness for small graphs.

use std::collections::VecDeque;

use super::Graph;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default vertex cap for the exhaustive odd hole / antihole search.
pub const DEFAULT_PERFECTNESS_CAP: usize = 14;

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || bounded_distance_set(g, 0, g.n()).len() == g.n()
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.m() == g.n() - 1 && is_connected(g)
}

/// Length of the cycle when `g` itself is a single induced cycle of length ≥ 4.
pub fn is_hole(g: &Graph) -> Option<usize> {
    let n = g.n();
    (n >= 4 && g.m() == n && (0..n).all(|v| g.degree(v) == 2) && is_connected(g)).then_some(n)
}

/// Pairs `u < v` with `N[u] = N[v]` (hence adjacent).
pub fn true_twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, v) in g.edges().iter().copied() {
        let mut nu = g.adjacency(u).clone();
        nu.insert(u);
        let mut nv = g.adjacency(v).clone();
        nv.insert(v);
        if nu == nv {
            out.push((u, v));
        }
    }
    out
}

pub fn has_true_twins(g: &Graph) -> bool {
    !true_twin_pairs(g).is_empty()
}

/// Pairs `u < v`, non-adjacent, with `N(u) = N(v)`.
pub fn false_twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) && g.adjacency(u) == g.adjacency(v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Vertices within distance `d` of `v`, including `v`, sorted.
pub fn bounded_distance_set(g: &Graph, v: usize, d: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(a) = queue.pop_front() {
        if dist[a] == d {
            continue;
        }
        for b in g.neighbors(a) {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    (0..g.n()).filter(|&u| dist[u] != usize::MAX).collect()
}

/// Searches for an induced odd cycle of length ≥ 5 by extending induced
/// paths from their smallest vertex.
fn has_odd_hole(g: &Graph) -> bool {
    let n = g.n();
    for s in 0..n {
        let mut blocked = BitSet::new(n);
        for u in 0..=s {
            blocked.insert(u);
        }
        for v1 in g.neighbors(s).filter(|&v| v > s).collect::<Vec<_>>() {
            if extend_odd(g, s, v1, 1, &blocked) {
                return true;
            }
        }
    }
    false
}

/// `last` ends an induced path `s … last` with `k` vertices after `s`;
/// `blocked` holds the closed neighborhoods of the interior vertices.
fn extend_odd(g: &Graph, s: usize, last: usize, k: usize, blocked: &BitSet) -> bool {
    let mut next_blocked = blocked.clone();
    next_blocked.insert(last);
    next_blocked.union_with(g.adjacency(last));
    for w in g.neighbors(last) {
        if blocked.contains(w) {
            continue;
        }
        if g.has_edge(w, s) {
            let len = k + 2;
            if len >= 5 && len % 2 == 1 {
                return true;
            }
            continue;
        }
        if extend_odd(g, s, w, k + 1, &next_blocked) {
            return true;
        }
    }
    false
}

pub fn is_perfect_bruteforce(g: &Graph) -> Result<bool> {
    is_perfect_bruteforce_with_cap(g, DEFAULT_PERFECTNESS_CAP)
}

/// No induced odd hole in `g` nor in its complement.
pub fn is_perfect_bruteforce_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    if g.n() > cap {
        return Err(Error::TooLarge {
            what: "perfectness check",
            size: g.n(),
            cap,
        });
    }
    Ok(!has_odd_hole(g) && !has_odd_hole(&g.complement()))
}

pub fn is_contraction_perfect_bruteforce(g: &Graph) -> Result<bool> {
    is_contraction_perfect_bruteforce_with_cap(g, DEFAULT_PERFECTNESS_CAP)
}

/// Perfect, and perfect after contracting any single edge.
pub fn is_contraction_perfect_bruteforce_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    if !is_perfect_bruteforce_with_cap(g, cap)? {
        return Ok(false);
    }
    for e in 0..g.m() {
        if !is_perfect_bruteforce_with_cap(&g.contract_edges(&[e])?, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_er, random_tree, rng_from_seed};

    /// Exhaustive odd-hole oracle over vertex subsets.
    fn odd_hole_bruteforce(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|s| {
            let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            vs.len() >= 5 && vs.len() % 2 == 1 && {
                let (h, _) = g.induced_subgraph(&vs).unwrap();
                is_hole(&h).is_some()
            }
        })
    }

    #[test]
    fn tree_hole_twins() {
        let star = Graph::star(3);
        assert!(is_tree(&star));
        assert_eq!(false_twin_pairs(&star), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(is_hole(&Graph::cycle(6)), Some(6));
        assert_eq!(is_hole(&Graph::cycle(3)), None);
        assert_eq!(true_twin_pairs(&Graph::complete(3)).len(), 3);
    }

    #[test]
    fn false_twins_become_true_twins() {
        for seed in 0..40 {
            let g = generate_er(7, 0.3, seed);
            for (u, v) in false_twin_pairs(&g) {
                let h = g.with_edge(u, v).unwrap();
                assert!(!false_twin_pairs(&h).contains(&(u, v)));
                assert!(true_twin_pairs(&h).contains(&(u, v)));
            }
        }
    }

    #[test]
    fn perfectness_examples() {
        assert!(!is_perfect_bruteforce(&Graph::cycle(5)).unwrap());
        assert!(!is_perfect_bruteforce(&Graph::cycle(7).complement()).unwrap());
        assert!(is_perfect_bruteforce(&Graph::cycle(6)).unwrap());
        assert!(is_contraction_perfect_bruteforce(&Graph::cycle(4)).unwrap());
        // C6 / e = C5
        assert!(!is_contraction_perfect_bruteforce(&Graph::cycle(6)).unwrap());
        let mut rng = rng_from_seed(3);
        for n in 1..=14 {
            assert!(is_contraction_perfect_bruteforce(&random_tree(n, &mut rng)).unwrap());
        }
        assert!(matches!(
            is_perfect_bruteforce(&Graph::empty(15)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn odd_hole_search_matches_bruteforce() {
        for seed in 0..120 {
            let g = generate_er(5 + (seed % 5) as usize, 0.3 + (seed % 4) as f64 * 0.1, seed);
            assert_eq!(has_odd_hole(&g), odd_hole_bruteforce(&g), "seed {seed}");
            let comp = g.complement();
            assert_eq!(
                is_perfect_bruteforce(&g).unwrap(),
                is_perfect_bruteforce(&comp).unwrap()
            );
        }
    }

    #[test]
    fn distance_sets() {
        let p5 = Graph::path(5);
        assert_eq!(bounded_distance_set(&p5, 0, 2), vec![0, 1, 2]);
        assert_eq!(bounded_distance_set(&p5, 3, 0), vec![3]);
        assert_eq!(bounded_distance_set(&p5, 2, 5), vec![0, 1, 2, 3, 4]);
    }
}
