//! Seeded random graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

/// Recorded in benchmark manifests next to the seed.
pub const GENERATOR_NAME: &str = "ChaCha8Rng";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`: pairs are visited in lexicographic order and each
/// becomes an edge independently with probability `p`.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Uniform random recursive tree: vertex `i` attaches to a uniform earlier
/// vertex, then labels are shuffled.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[i], labels[rng.gen_range(0..i)]))
        .collect();
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Connected graph: a random tree plus every other pair with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Connected chordal graph built by repeatedly adding a simplicial vertex:
/// the newcomer is joined to a random clique grown around a random existing
/// vertex, each further neighbor kept with probability `q`.
pub fn random_chordal<R: Rng>(n: usize, q: f64, rng: &mut R) -> Graph {
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut cand: Vec<usize> = (0..v).filter(|&u| adj[anchor][u]).collect();
        cand.shuffle(rng);
        for u in cand {
            if clique.iter().all(|&c| adj[c][u]) && rng.gen_bool(q.clamp(0.0, 1.0)) {
                clique.push(u);
            }
        }
        for &u in &clique {
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((u, v));
        }
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (labels[u], labels[v])))
        .expect("generated edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_chordal, is_connected, is_tree};

    #[test]
    fn er_extremes_and_determinism() {
        assert_eq!(generate_er(5, 0.0, 7).m(), 0);
        assert_eq!(generate_er(5, 1.0, 7), Graph::complete(5));
        assert_eq!(generate_er(20, 0.4, 3), generate_er(20, 0.4, 3));
    }

    #[test]
    fn er_mean_density() {
        let runs = 200;
        let mean: f64 = (0..runs)
            .map(|s| generate_er(82, 0.3, s).density())
            .sum::<f64>()
            / runs as f64;
        assert!((mean - 0.3).abs() <= 0.02, "mean density {mean}");
    }

    #[test]
    fn structured_generators() {
        let mut rng = rng_from_seed(11);
        for n in 1..12 {
            assert!(is_tree(&random_tree(n, &mut rng)));
            let c = random_chordal(n, 0.6, &mut rng);
            assert!(is_chordal(&c).is_chordal());
            assert!(is_connected(&c));
            assert!(is_connected(&random_connected(n, 0.2, &mut rng)));
        }
    }
}
