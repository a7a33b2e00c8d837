//! Degree peeling and the distance-2 decomposition for the cardinality problem.

use crate::error::Result;
use crate::graph::{bounded_distance_set, Graph};

/// Repeatedly drops vertices whose degree in `G[W]` reaches `|W| − b + k`.
/// Returns the surviving vertices in increasing order.
pub fn preprocess_peel(g: &Graph, b: usize, k: usize) -> Vec<usize> {
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut size = g.n();
    loop {
        let threshold = (size + k).saturating_sub(b);
        let Some(v) = (0..g.n()).find(|&v| alive[v] && deg[v] >= threshold) else {
            break;
        };
        alive[v] = false;
        size -= 1;
        for u in g.neighbors(v) {
            deg[u] -= 1;
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

/// One piece of the decomposition.
#[derive(Clone, Debug)]
pub struct Subinstance {
    pub graph: Graph,
    /// Local index of the vertex fixed to 1.
    pub forced: usize,
    /// Local index to original vertex.
    pub map: Vec<usize>,
}

/// For `W = {v_1 < v_2 < …}`, piece `i` is `G[{v_i, …} ∩ D]` where `D` is
/// the ball of radius two around `v_i` in the complement of `G[W]`, with
/// `v_i` forced. Together with any co-2-plex of size two, the best forced
/// solution over all pieces is a maximum co-2-plex of `G[W]`.
pub fn decompose(g: &Graph, w: &[usize]) -> Result<Vec<Subinstance>> {
    let mut w = w.to_vec();
    w.sort_unstable();
    w.dedup();
    let (gw, map) = g.induced_subgraph(&w)?;
    let comp = gw.complement();
    let mut out = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let local: Vec<usize> = bounded_distance_set(&comp, i, 2).into_iter().filter(|&j| j >= i).collect();
        let (graph, sub) = gw.induced_subgraph(&local)?;
        out.push(Subinstance {
            graph,
            forced: 0,
            map: sub.into_iter().map(|j| map[j]).collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::co2plex::{brute_force_max_co2plex, enumerate_co2plexes, unit_weights};
    use crate::graph::generate_er;

    #[test]
    fn peel_examples() {
        assert_eq!(preprocess_peel(&Graph::empty(4), 1, 2), vec![0, 1, 2, 3]);
        assert_eq!(preprocess_peel(&Graph::complete(5), 2, 2), vec![0, 1, 2, 3, 4]);
        for n in 3..7 {
            assert_eq!(preprocess_peel(&Graph::star(n), n, 2), (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn decompose_examples() {
        let subs = decompose(&Graph::empty(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(subs[0].map, vec![0, 1, 2, 3]);
        let subs = decompose(&Graph::complete(5), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().enumerate().all(|(i, s)| s.map == vec![i] && s.forced == 0));
    }

    fn forced_max(s: &Subinstance) -> usize {
        enumerate_co2plexes(&s.graph)
            .unwrap()
            .into_iter()
            .filter(|c| c.vertices.contains(&s.forced))
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn pipeline_matches_oracle() {
        for seed in 0..40 {
            let n = 6 + (seed as usize % 8);
            let g = generate_er(n, [0.3, 0.5, 0.7][seed as usize % 3], seed);
            let (opt, _) = brute_force_max_co2plex(&g, &unit_weights(n)).unwrap();
            let b = 2.min(n);
            let w = preprocess_peel(&g, b, 2);
            let best = decompose(&g, &w).unwrap().iter().map(forced_max).max().unwrap_or(0).max(b);
            assert_eq!(crate::numeric::rat(best as i64), opt, "seed {seed}");
        }
    }
}
