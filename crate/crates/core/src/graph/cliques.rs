use super::Graph;
use crate::bitset::BitSet;

/// Inclusion-wise maximal cliques, each sorted, listed in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let adj: Vec<BitSet> = (0..g.n()).map(|v| g.adjacency(v).clone()).collect();
    maximal_cliques_bits(&adj)
}

/// Bron–Kerbosch with Tomita pivoting over bit-set adjacency rows. The pivot
/// maximizes `|P ∩ N(u)|`, ties to the lowest index, so runs are reproducible.
pub fn maximal_cliques_bits(adj: &[BitSet]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut r = Vec::new();
    expand(adj, &mut r, BitSet::full(n), BitSet::new(n), &mut out);
    out.sort();
    out
}

fn expand(adj: &[BitSet], r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by(|&a, &b| {
            p.intersection_count(&adj[a])
                .cmp(&p.intersection_count(&adj[b]))
                .then(b.cmp(&a))
        })
        .expect("p is non-empty");
    let mut cand = p.clone();
    cand.difference_with(&adj[pivot]);
    for v in cand.iter().collect::<Vec<_>>() {
        r.push(v);
        expand(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_er, is_chordal, random_chordal, rng_from_seed};

    fn brute_force(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let is_clique = |s: u32| {
            (0..n).all(|u| {
                s >> u & 1 == 0 || (u + 1..n).all(|v| s >> v & 1 == 0 || g.has_edge(u, v))
            })
        };
        let mut out = Vec::new();
        for s in 1u32..(1 << n) {
            if is_clique(s) && (0..n).all(|v| s >> v & 1 == 1 || !is_clique(s | 1 << v)) {
                out.push((0..n).filter(|&v| s >> v & 1 == 1).collect::<Vec<_>>());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn examples() {
        assert_eq!(maximal_cliques(&Graph::complete(4)), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            maximal_cliques(&Graph::cycle(4)),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(maximal_cliques(&Graph::empty(2)), vec![vec![0], vec![1]]);
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..60 {
            let g = generate_er(9, 0.2 + (seed % 7) as f64 * 0.1, seed);
            assert_eq!(maximal_cliques(&g), brute_force(&g), "seed {seed}");
        }
    }

    #[test]
    fn chordal_clique_count_and_edge_cover() {
        let mut rng = rng_from_seed(5);
        for _ in 0..40 {
            let g = random_chordal(12, 0.5, &mut rng);
            assert!(is_chordal(&g).is_chordal());
            let cl = maximal_cliques(&g);
            assert!(cl.len() <= g.n());
            assert_eq!(cl, brute_force(&g));
            for &(u, v) in g.edges() {
                assert!(cl.iter().any(|c| c.contains(&u) && c.contains(&v)));
            }
        }
    }
}
