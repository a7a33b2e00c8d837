//! The utter graph u(G) on V ∪ E, the co-2-plex / stable set bijection,
//! the variable change φ and maximal utter cliques.

use crate::bitset::BitSet;
use crate::error::{precondition, Error, Result};
use crate::graph::{is_chordal, maximal_cliques, maximal_cliques_bits, Element, Graph};
use crate::numeric::Scalar;

/// Default node cap of u(G) for generic maximal utter clique enumeration.
pub const DEFAULT_UTTER_CLIQUE_CAP: usize = 20;

/// u(G): nodes `0..n` are the vertices of G, nodes `n..n+m` its edges in id
/// order.
#[derive(Clone, Debug)]
pub struct UtterGraph {
    graph: Graph,
    base_n: usize,
    base_edges: Vec<(usize, usize)>,
}

impl UtterGraph {
    pub fn build(g: &Graph) -> UtterGraph {
        let n = g.n();
        let m = g.m();
        // N[a] ∪ N[b] per edge ab.
        let reach: Vec<BitSet> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let mut s = g.adjacency(a).clone();
                s.union_with(g.adjacency(b));
                s.insert(a);
                s.insert(b);
                s
            })
            .collect();
        let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
        for (e, r) in reach.iter().enumerate() {
            for w in r.iter() {
                edges.push((w, n + e));
            }
            for f in e + 1..m {
                let (c, d) = g.edge(f);
                if r.contains(c) || r.contains(d) {
                    edges.push((n + e, n + f));
                }
            }
        }
        UtterGraph {
            graph: Graph::from_edges(n + m, edges).expect("utter edges are valid"),
            base_n: n,
            base_edges: g.edges().to_vec(),
        }
    }

    /// u(G) as a plain graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn base_m(&self) -> usize {
        self.base_edges.len()
    }

    pub fn element(&self, node: usize) -> Element {
        if node < self.base_n {
            Element::Vertex(node)
        } else {
            Element::Edge(node - self.base_n)
        }
    }

    pub fn node(&self, el: Element) -> usize {
        match el {
            Element::Vertex(v) => v,
            Element::Edge(e) => self.base_n + e,
        }
    }

    /// Splits a node set into base vertices and base edge ids.
    pub fn split(&self, nodes: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut w: Vec<usize> = nodes.iter().copied().filter(|&v| v < self.base_n).collect();
        let mut f: Vec<usize> = nodes
            .iter()
            .filter(|&&v| v >= self.base_n)
            .map(|&v| v - self.base_n)
            .collect();
        w.sort_unstable();
        f.sort_unstable();
        (w, f)
    }

    pub fn is_stable(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| {
            a < self.graph.n() && nodes[i + 1..].iter().all(|&b| a != b && !self.graph.has_edge(a, b))
        })
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes.iter().enumerate().all(|(i, &a)| {
            a < self.graph.n() && nodes[i + 1..].iter().all(|&b| a != b && self.graph.has_edge(a, b))
        })
    }

    /// Maps a stable set `W ∪ F` of u(G) to the co-2-plex `W ∪ V(F)`.
    pub fn stable_to_co2plex(&self, nodes: &[usize]) -> Result<Vec<usize>> {
        if !self.is_stable(nodes) {
            return precondition("node set is not a stable set of the utter graph");
        }
        let (mut s, f) = self.split(nodes);
        for e in f {
            let (a, b) = self.base_edges[e];
            s.push(a);
            s.push(b);
        }
        s.sort_unstable();
        Ok(s)
    }
}

pub fn build_utter(g: &Graph) -> UtterGraph {
    UtterGraph::build(g)
}

/// Maps a co-2-plex `S` to the stable set `W ∪ F` of u(G), where `W` are
/// the isolated vertices of G[S] and `F` its edges.
pub fn co2plex_to_stable(g: &Graph, s: &[usize]) -> Result<Vec<usize>> {
    let mut inside = BitSet::new(g.n());
    for &v in s {
        if v >= g.n() || inside.contains(v) {
            return precondition(format!("invalid vertex list entry {v}"));
        }
        inside.insert(v);
    }
    let mut out = Vec::with_capacity(s.len());
    for &v in s {
        let inner: Vec<(usize, usize)> = g
            .incidence(v)
            .iter()
            .copied()
            .filter(|&(u, _)| inside.contains(u))
            .collect();
        match inner.as_slice() {
            [] => out.push(v),
            [(u, e)] => {
                if v < *u {
                    out.push(g.n() + e)
                }
            }
            _ => return precondition(format!("vertex {v} has two neighbors in the set")),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `x_u = z_u + y(δ(u))`, `y` unchanged.
pub fn phi<T: Scalar>(g: &Graph, z: &[T], y: &[T]) -> (Vec<T>, Vec<T>) {
    let x = (0..g.n())
        .map(|u| g.incident_edges(u).fold(z[u].clone(), |acc, e| acc + y[e].clone()))
        .collect();
    (x, y.to_vec())
}

/// `z_u = x_u − y(δ(u))`, `y` unchanged.
pub fn phi_inverse<T: Scalar>(g: &Graph, x: &[T], y: &[T]) -> (Vec<T>, Vec<T>) {
    let z = (0..g.n())
        .map(|u| g.incident_edges(u).fold(x[u].clone(), |acc, e| acc - y[e].clone()))
        .collect();
    (z, y.to_vec())
}

/// `[W, F]`: vertex set and edge id set whose union is a clique of u(G).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UtterClique {
    pub w: Vec<usize>,
    pub f: Vec<usize>,
}

pub fn is_utter_clique(g: &Graph, w: &[usize], f: &[usize]) -> bool {
    if w.iter().any(|&v| v >= g.n()) || f.iter().any(|&e| e >= g.m()) {
        return false;
    }
    let u = UtterGraph::build(g);
    let nodes: Vec<usize> = w.iter().copied().chain(f.iter().map(|&e| g.n() + e)).collect();
    u.is_clique(&nodes)
}

pub fn enumerate_maximal_utter_cliques(g: &Graph) -> Result<Vec<UtterClique>> {
    enumerate_maximal_utter_cliques_with_cap(g, DEFAULT_UTTER_CLIQUE_CAP)
}

/// Maximal cliques of u(G) as `[W, F]` pairs, sorted. Chordal graphs use
/// `[K, E(K) ∪ δ(K)]` over the maximal cliques `K` of G; other graphs run
/// clique enumeration on u(G) when it has at most `cap` nodes.
pub fn enumerate_maximal_utter_cliques_with_cap(g: &Graph, cap: usize) -> Result<Vec<UtterClique>> {
    if is_chordal(g).is_chordal() {
        let mut out: Vec<UtterClique> = maximal_cliques(g)
            .into_iter()
            .map(|k| {
                let mut f = g.induced_edges(&k);
                f.extend(g.cut_edges(&k));
                f.sort_unstable();
                UtterClique { w: k, f }
            })
            .collect();
        out.sort();
        return Ok(out);
    }
    let size = g.n() + g.m();
    if size > cap {
        return Err(Error::TooLarge {
            what: "maximal utter clique enumeration",
            size,
            cap,
        });
    }
    Ok(maximal_utter_cliques_generic(g))
}

pub(crate) fn maximal_utter_cliques_generic(g: &Graph) -> Vec<UtterClique> {
    let u = UtterGraph::build(g);
    let adj: Vec<BitSet> = (0..u.graph.n()).map(|v| u.graph.adjacency(v).clone()).collect();
    let mut out: Vec<UtterClique> = maximal_cliques_bits(&adj)
        .into_iter()
        .map(|c| {
            let (w, f) = u.split(&c);
            UtterClique { w, f }
        })
        .collect();
    out.sort();
    out
}
