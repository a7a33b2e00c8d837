use std::collections::VecDeque;

use super::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordalCertificate {
    /// Perfect elimination ordering: every vertex's later neighbors form a clique.
    Chordal { elimination_order: Vec<usize> },
    /// An induced cycle of length at least four, in cyclic order.
    Hole(Vec<usize>),
}

impl ChordalCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalCertificate::Chordal { .. })
    }
}

/// Maximum cardinality search, then a perfect-elimination check; a failed
/// check is backed by an explicit hole.
pub fn is_chordal(g: &Graph) -> ChordalCertificate {
    let order = mcs_elimination_order(g);
    if is_perfect_elimination_order(g, &order) {
        ChordalCertificate::Chordal {
            elimination_order: order,
        }
    } else {
        ChordalCertificate::Hole(find_hole(g).expect("a graph without a PEO has a hole"))
    }
}

fn mcs_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("vertices remain");
        done[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        match later.iter().min_by_key(|&&u| pos[u]) {
            None => true,
            Some(&p) => later.iter().all(|&u| u == p || g.has_edge(p, u)),
        }
    })
}

/// Finds an induced cycle of length ≥ 4, if any. For a vertex `v` with
/// non-adjacent neighbors `x`, `y`, a shortest `x`–`y` path avoiding the rest
/// of `N[v]` closes a chordless cycle through `v`.
pub fn find_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    for v in 0..n {
        let nbrs = g.neighbor_vec(v);
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                let blocked = |u: usize| u == v || (u != x && u != y && g.has_edge(u, v));
                let mut prev = vec![usize::MAX; n];
                prev[x] = x;
                let mut queue = VecDeque::from([x]);
                while let Some(a) = queue.pop_front() {
                    if a == y {
                        break;
                    }
                    for b in g.neighbors(a) {
                        if prev[b] == usize::MAX && !blocked(b) {
                            prev[b] = a;
                            queue.push_back(b);
                        }
                    }
                }
                if prev[y] != usize::MAX {
                    let mut path = vec![y];
                    let mut c = y;
                    while c != x {
                        c = prev[c];
                        path.push(c);
                    }
                    path.push(v);
                    path.reverse();
                    return Some(path);
                }
            }
        }
    }
    None
}
