//! Simple undirected graphs with stable vertex and edge identifiers.
//!
//! Vertices are `0..n`. Edges get identifiers `0..m` in lexicographic order
//! of `(min endpoint, max endpoint)`, so the `y` variables of the extended
//! formulations index consistently across modules.

mod chordal;
mod cliques;
mod generate;
mod io;
mod structure;

pub use chordal::{find_hole, is_chordal, ChordalCertificate};
pub use cliques::{maximal_cliques, maximal_cliques_bits};
pub use generate::{
    generate_er, random_chordal, random_connected, random_tree, rng_from_seed, GENERATOR_NAME,
};
pub use io::{parse_dimacs_col, parse_metis, write_dimacs_col};
pub use structure::{
    bounded_distance_set, false_twin_pairs, has_true_twins, is_connected,
    is_contraction_perfect_bruteforce, is_contraction_perfect_bruteforce_with_cap, is_hole,
    is_perfect_bruteforce, is_perfect_bruteforce_with_cap, is_tree, true_twin_pairs,
    DEFAULT_PERFECTNESS_CAP,
};

use crate::bitset::BitSet;
use crate::error::{precondition, Error, Result};

/// An element of `V(G) ∪ E(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Sorted `(neighbor, edge id)` per vertex.
    incidence: Vec<Vec<(usize, usize)>>,
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
            adj: vec![BitSet::new(n); n],
        }
    }

    /// Builds a graph from an edge list. Duplicates (in either orientation)
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return precondition(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return precondition(format!("self-loop at vertex {u}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut incidence = vec![Vec::new(); n];
        let mut adj = vec![BitSet::new(n); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            incidence[u].push((v, id));
            incidence[v].push((u, id));
            adj[u].insert(v);
            adj[v].insert(u);
        }
        for inc in &mut incidence {
            inc.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            incidence,
            adj,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let inc = &self.incidence[u];
        inc.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| inc[i].1)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(|&(w, _)| w)
    }

    pub fn neighbor_vec(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).collect()
    }

    /// Edge ids of `δ(v)`.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(|&(_, e)| e)
    }

    /// `(neighbor, edge id)` pairs, sorted by neighbor.
    pub fn incidence(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    #[inline]
    pub fn adjacency(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn density(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            2.0 * self.m() as f64 / (self.n as f64 * (self.n as f64 - 1.0))
        }
    }

    /// Edge ids of `E(W)`.
    pub fn induced_edges(&self, w: &[usize]) -> Vec<usize> {
        let mut inside = BitSet::new(self.n);
        for &v in w {
            inside.insert(v);
        }
        let mut out: Vec<usize> = w
            .iter()
            .flat_map(|&u| {
                self.incidence[u]
                    .iter()
                    .filter(move |&&(v, _)| u < v)
                    .map(|&(v, e)| (v, e))
            })
            .filter(|&(v, _)| inside.contains(v))
            .map(|(_, e)| e)
            .collect();
        out.sort_unstable();
        out
    }

    /// Edge ids of `δ(W)`: edges with exactly one endpoint in `W`.
    pub fn cut_edges(&self, w: &[usize]) -> Vec<usize> {
        let mut inside = BitSet::new(self.n);
        for &v in w {
            inside.insert(v);
        }
        let mut out: Vec<usize> = w
            .iter()
            .flat_map(|&u| self.incidence[u].iter())
            .filter(|&&(v, _)| !inside.contains(v))
            .map(|&(_, e)| e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::from_edges(self.n, edges).expect("valid")
    }

    /// `G[W]` with vertices renumbered in the order of `w`; the returned map
    /// sends new identifiers to old ones.
    pub fn induced_subgraph(&self, w: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in w.iter().enumerate() {
            if v >= self.n {
                return precondition(format!("vertex {v} out of range for n = {}", self.n));
            }
            if index[v] != usize::MAX {
                return precondition(format!("vertex {v} listed twice"));
            }
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Ok((Graph::from_edges(w.len(), edges)?, w.to_vec()))
    }

    /// `G/F`: merges vertices along the components of `(V(F), F)`. Merged
    /// vertices take the identifier order of their smallest member.
    pub fn contract_edges(&self, f: &[usize]) -> Result<Graph> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &e in f {
            if e >= self.m() {
                return precondition(format!("edge id {e} out of range"));
            }
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut new_of = vec![0; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            new_of[v] = label[r];
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .filter(|&(a, b)| a != b)
            .collect();
        Graph::from_edges(next, edges)
    }

    /// Adds one vertex adjacent to `nbrs`; it gets identifier `n`.
    pub fn with_new_vertex(&self, nbrs: &[usize]) -> Result<Graph> {
        let w = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(nbrs.iter().map(|&v| (v, w)));
        Graph::from_edges(self.n + 1, edges)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Adjacency by contraction. Vertex `w` and edge `uv` are adjacent by
    /// contraction iff `uw ∈ E` or `vw ∈ E`; two disjoint edges iff some edge
    /// joins their endpoint pairs. Edge pairs sharing a vertex are rejected.
    pub fn adjacent_by_contraction(&self, a: Element, b: Element) -> Result<bool> {
        match (a, b) {
            (Element::Vertex(u), Element::Vertex(v)) => {
                self.check_vertex(u)?;
                self.check_vertex(v)?;
                precondition("adjacency by contraction needs at least one edge")
            }
            (Element::Vertex(w), Element::Edge(e)) | (Element::Edge(e), Element::Vertex(w)) => {
                self.check_vertex(w)?;
                let (u, v) = self.checked_edge(e)?;
                Ok(self.has_edge(u, w) || self.has_edge(v, w))
            }
            (Element::Edge(e), Element::Edge(f)) => {
                let (a, b) = self.checked_edge(e)?;
                let (c, d) = self.checked_edge(f)?;
                if a == c || a == d || b == c || b == d {
                    return precondition(
                        "edges sharing a vertex are adjacent, not adjacent by contraction",
                    );
                }
                Ok(self.has_edge(a, c)
                    || self.has_edge(a, d)
                    || self.has_edge(b, c)
                    || self.has_edge(b, d))
            }
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            precondition(format!("vertex {v} out of range"))
        }
    }

    fn checked_edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges
            .get(e)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("edge id {e} out of range")))
    }
}
