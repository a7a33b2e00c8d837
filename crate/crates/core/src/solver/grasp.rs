//! GRASP construction plus one local search pass.

use num_traits::Zero;
use rand::Rng;

use crate::co2plex::Co2Plex;
use crate::error::{precondition, Result};
use crate::graph::{rng_from_seed, Graph};
use crate::numeric::{rat, Rational};

/// Membership and in-set degrees of a growing co-2-plex.
struct State<'a> {
    g: &'a Graph,
    inside: Vec<bool>,
    deg: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph) -> Self {
        State {
            g,
            inside: vec![false; g.n()],
            deg: vec![0; g.n()],
        }
    }

    fn addable(&self, v: usize) -> bool {
        !self.inside[v] && self.deg[v] <= 1 && self.g.neighbors(v).all(|u| !self.inside[u] || self.deg[u] == 0)
    }

    fn add(&mut self, v: usize) {
        self.inside[v] = true;
        for u in self.g.neighbors(v) {
            self.deg[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.inside[v] = false;
        for u in self.g.neighbors(v) {
            self.deg[u] -= 1;
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&v| self.inside[v]).collect()
    }
}

pub const DEFAULT_ALPHA: f64 = 0.7;

/// Randomised greedy construction with a restricted candidate list of
/// addable positive-weight vertices scoring at least
/// `min + alpha (max − min)`, followed by one pass of improving 1-in/1-out
/// and 2-in/1-out swaps and a greedy completion.
pub fn grasp_co2plex(g: &Graph, weights: &[Rational], alpha: f64, seed: u64) -> Result<Co2Plex> {
    if !(0.0..=1.0).contains(&alpha) {
        return precondition("alpha must lie in [0, 1]");
    }
    if weights.len() != g.n() {
        return precondition("one weight per vertex expected");
    }
    let mut rng = rng_from_seed(seed);
    let mut s = State::new(g);
    let alpha_q = Rational::new(((alpha * 1e6).round() as i64).into(), 1_000_000.into());
    loop {
        let cands: Vec<usize> = (0..g.n()).filter(|&v| weights[v] > Rational::zero() && s.addable(v)).collect();
        if cands.is_empty() {
            break;
        }
        let max = cands.iter().map(|&v| &weights[v]).max().expect("non-empty").clone();
        let min = cands.iter().map(|&v| &weights[v]).min().expect("non-empty").clone();
        let cut = &min + &alpha_q * (&max - &min);
        let rcl: Vec<usize> = cands.into_iter().filter(|&v| weights[v] >= cut).collect();
        let v = rcl[rng.gen_range(0..rcl.len())];
        s.add(v);
    }
    local_search(&mut s, weights);
    complete(&mut s, weights);
    Co2Plex::new(g, &s.members())
}

fn complete(s: &mut State<'_>, weights: &[Rational]) {
    let mut order: Vec<usize> = (0..s.g.n()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    for v in order {
        if weights[v] > Rational::zero() && s.addable(v) {
            s.add(v);
        }
    }
}

fn local_search(s: &mut State<'_>, weights: &[Rational]) {
    let n = s.g.n();
    for u in 0..n {
        if !s.inside[u] {
            continue;
        }
        s.remove(u);
        let mut best: Option<(Rational, Vec<usize>)> = None;
        let cands: Vec<usize> = (0..n).filter(|&v| v != u && s.addable(v) && weights[v] > rat(0)).collect();
        for &v in &cands {
            if weights[v] > weights[u] && best.as_ref().is_none_or(|(w, _)| weights[v] > *w) {
                best = Some((weights[v].clone(), vec![v]));
            }
        }
        for (i, &a) in cands.iter().enumerate() {
            s.add(a);
            for &b in &cands[i + 1..] {
                if s.addable(b) {
                    let w = &weights[a] + &weights[b];
                    if w > weights[u] && best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                        best = Some((w, vec![a, b]));
                    }
                }
            }
            s.remove(a);
        }
        match best {
            Some((_, vs)) => vs.into_iter().for_each(|v| s.add(v)),
            None => s.add(u),
        }
    }
}
