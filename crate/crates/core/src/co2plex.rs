//! Co-2-plex semantics and the exhaustive oracles used as ground truth.

use num_traits::{Signed, Zero};

use crate::bitset::BitSet;
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::numeric::{rat, Rational};

/// Vertex cap of the branch-and-bound oracles.
pub const DEFAULT_ORACLE_CAP: usize = 30;
/// Vertex cap of the explicit enumerations.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::TooLarge { what, size, cap })
    } else {
        Ok(())
    }
}

/// Every vertex of `s` has at most one neighbor in `s`.
pub fn is_co2plex(g: &Graph, s: &[usize]) -> bool {
    let mut inside = BitSet::new(g.n());
    for &v in s {
        if v >= g.n() {
            return false;
        }
        inside.insert(v);
    }
    s.iter().all(|&v| g.adjacency(v).intersection_count(&inside) <= 1)
}

/// Every vertex of `k` is non-adjacent to at most one other vertex of `k`.
pub fn is_2plex(g: &Graph, k: &[usize]) -> bool {
    let mut inside = BitSet::new(g.n());
    for &v in k {
        if v >= g.n() {
            return false;
        }
        inside.insert(v);
    }
    let size = inside.count();
    k.iter()
        .all(|&v| g.adjacency(v).intersection_count(&inside) + 2 >= size)
}

pub fn is_maximal_2plex(g: &Graph, k: &[usize]) -> bool {
    is_2plex(g, k)
        && (0..g.n()).all(|v| {
            k.contains(&v) || {
                let mut bigger = k.to_vec();
                bigger.push(v);
                !is_2plex(g, &bigger)
            }
        })
}

/// A co-2-plex with its vertex-edge representation `(W, F)`: `W` the
/// isolated vertices of G[S], `F` the edge ids of G[S].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Co2Plex {
    pub vertices: Vec<usize>,
    pub isolated: Vec<usize>,
    pub matching: Vec<usize>,
}

impl Co2Plex {
    pub fn new(g: &Graph, s: &[usize]) -> Result<Co2Plex> {
        let mut vertices = s.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != s.len() || !is_co2plex(g, &vertices) {
            return precondition(format!("{s:?} is not a co-2-plex"));
        }
        let matching = g.induced_edges(&vertices);
        let isolated = vertices
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).all(|u| vertices.binary_search(&u).is_err()))
            .collect();
        Ok(Co2Plex {
            vertices,
            isolated,
            matching,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, weights: &[Rational]) -> Rational {
        self.vertices.iter().map(|&v| weights[v].clone()).sum()
    }

    /// χ^S over V.
    pub fn natural_incidence(&self, n: usize) -> Vec<i128> {
        let mut x = vec![0; n];
        for &v in &self.vertices {
            x[v] = 1;
        }
        x
    }

    /// (χ^S, ζ^{E(S)}) over V then E.
    pub fn extended_incidence(&self, g: &Graph) -> Vec<i128> {
        let mut x = self.natural_incidence(g.n());
        x.resize(g.n() + g.m(), 0);
        for &e in &self.matching {
            x[g.n() + e] = 1;
        }
        x
    }
}

pub fn unit_weights(n: usize) -> Vec<Rational> {
    vec![rat(1); n]
}

/// All co-2-plexes, including the empty set, sorted by vertex list.
pub fn enumerate_co2plexes(g: &Graph) -> Result<Vec<Co2Plex>> {
    check_cap("co-2-plex enumeration", g.n(), DEFAULT_ENUMERATION_CAP)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; g.n()];
    enumerate_rec(g, 0, &mut chosen, &mut deg, &mut out);
    out.sort();
    Ok(out
        .into_iter()
        .map(|s| Co2Plex::new(g, &s).expect("enumerated sets are co-2-plexes"))
        .collect())
}

fn can_add(g: &Graph, v: usize, chosen: &[usize], deg: &[usize]) -> bool {
    let mut inner = 0;
    for &u in chosen {
        if g.has_edge(u, v) {
            inner += 1;
            if inner > 1 || deg[u] > 0 {
                return false;
            }
        }
    }
    true
}

fn add(g: &Graph, v: usize, chosen: &mut Vec<usize>, deg: &mut [usize]) {
    for &u in chosen.iter() {
        if g.has_edge(u, v) {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    chosen.push(v);
}

fn remove_last(g: &Graph, chosen: &mut Vec<usize>, deg: &mut [usize]) {
    let v = chosen.pop().expect("non-empty");
    for &u in chosen.iter() {
        if g.has_edge(u, v) {
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
}

fn enumerate_rec(
    g: &Graph,
    v: usize,
    chosen: &mut Vec<usize>,
    deg: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    if v == g.n() {
        out.push(chosen.clone());
        return;
    }
    if can_add(g, v, chosen, deg) {
        add(g, v, chosen, deg);
        enumerate_rec(g, v + 1, chosen, deg, out);
        remove_last(g, chosen, deg);
    }
    enumerate_rec(g, v + 1, chosen, deg, out);
}

/// Maximum weight co-2-plex by include-first branch and bound over the
/// positive-weight vertices in index order; among optima the
/// lexicographically smallest vertex list is returned.
pub fn brute_force_max_co2plex(g: &Graph, weights: &[Rational]) -> Result<(Rational, Co2Plex)> {
    brute_force_max_co2plex_with_cap(g, weights, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_max_co2plex_with_cap(
    g: &Graph,
    weights: &[Rational],
    cap: usize,
) -> Result<(Rational, Co2Plex)> {
    check_cap("co-2-plex oracle", g.n(), cap)?;
    if weights.len() != g.n() {
        return precondition("weight vector length differs from vertex count");
    }
    let cand: Vec<usize> = (0..g.n()).filter(|&v| weights[v].is_positive()).collect();
    let mut suffix = vec![Rational::zero(); cand.len() + 1];
    for i in (0..cand.len()).rev() {
        suffix[i] = &suffix[i + 1] + &weights[cand[i]];
    }
    let mut search = Search {
        g,
        weights,
        cand: &cand,
        suffix: &suffix,
        best: Rational::zero(),
        best_set: Vec::new(),
        chosen: Vec::new(),
        deg: vec![0; g.n()],
    };
    search.run(0, Rational::zero());
    let set = Co2Plex::new(g, &search.best_set)?;
    Ok((search.best, set))
}

struct Search<'a> {
    g: &'a Graph,
    weights: &'a [Rational],
    cand: &'a [usize],
    suffix: &'a [Rational],
    best: Rational,
    best_set: Vec<usize>,
    chosen: Vec<usize>,
    deg: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, value: Rational) {
        if value > self.best {
            self.best = value.clone();
            self.best_set = self.chosen.clone();
        }
        if i == self.cand.len() || &value + &self.suffix[i] <= self.best {
            return;
        }
        let v = self.cand[i];
        if can_add(self.g, v, &self.chosen, &self.deg) {
            add(self.g, v, &mut self.chosen, &mut self.deg);
            self.run(i + 1, &value + &self.weights[v]);
            remove_last(self.g, &mut self.chosen, &mut self.deg);
        }
        self.run(i + 1, value);
    }
}

/// Maximum weight stable set, same search scheme as the co-2-plex oracle.
pub fn brute_force_max_stable_set(g: &Graph, weights: &[Rational]) -> Result<(Rational, Vec<usize>)> {
    check_cap("stable set oracle", g.n(), DEFAULT_ORACLE_CAP)?;
    if weights.len() != g.n() {
        return precondition("weight vector length differs from vertex count");
    }
    let cand: Vec<usize> = (0..g.n()).filter(|&v| weights[v].is_positive()).collect();
    let mut best = (Rational::zero(), Vec::new());
    let mut chosen = Vec::new();
    stable_rec(g, weights, &cand, 0, Rational::zero(), &mut chosen, &mut best);
    Ok(best)
}

fn stable_rec(
    g: &Graph,
    weights: &[Rational],
    cand: &[usize],
    i: usize,
    value: Rational,
    chosen: &mut Vec<usize>,
    best: &mut (Rational, Vec<usize>),
) {
    if value > best.0 {
        *best = (value.clone(), chosen.clone());
    }
    if i == cand.len() {
        return;
    }
    let rest: Rational = cand[i..].iter().map(|&v| weights[v].clone()).sum();
    if &value + rest <= best.0 {
        return;
    }
    let v = cand[i];
    if chosen.iter().all(|&u| !g.has_edge(u, v)) {
        chosen.push(v);
        stable_rec(g, weights, cand, i + 1, &value + &weights[v], chosen, best);
        chosen.pop();
    }
    stable_rec(g, weights, cand, i + 1, value, chosen, best);
}

/// Number of stable sets (the empty set included).
pub fn count_stable_sets(g: &Graph) -> u128 {
    fn rec(g: &Graph, p: &BitSet) -> u128 {
        let pick = p
            .iter()
            .max_by_key(|&v| (g.adjacency(v).intersection_count(p), std::cmp::Reverse(v)));
        match pick {
            None => 1,
            Some(v) if g.adjacency(v).intersection_count(p) == 0 => 1u128 << p.count(),
            Some(v) => {
                let mut without = p.clone();
                without.remove(v);
                let mut with = without.clone();
                with.difference_with(g.adjacency(v));
                rec(g, &without) + rec(g, &with)
            }
        }
    }
    rec(g, &BitSet::full(g.n()))
}

/// α₂(G): the largest co-2-plex size.
pub fn alpha2(g: &Graph) -> Result<usize> {
    let (_, s) = brute_force_max_co2plex(g, &unit_weights(g.n()))?;
    Ok(s.len())
}

/// α₂(G[W]).
pub fn alpha2_induced(g: &Graph, w: &[usize]) -> Result<usize> {
    let (h, _) = g.induced_subgraph(w)?;
    alpha2(&h)
}

/// All 2-plexes (co-2-plexes of the complement), the empty set included.
pub fn enumerate_2plexes(g: &Graph) -> Result<Vec<Vec<usize>>> {
    Ok(enumerate_co2plexes(&g.complement())?
        .into_iter()
        .map(|c| c.vertices)
        .collect())
}
