//! Fixed benchmark fixtures.

use co2plex_core::graph::generate_er;
use co2plex_core::Graph;

/// Named `G(n, p)` instances with fixed seeds.
pub fn er_fixtures(sizes: &[usize], p: f64) -> Vec<(String, Graph)> {
    sizes
        .iter()
        .map(|&n| (format!("er_n{n}_p{p}"), generate_er(n, p, 1000 + n as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        let a = er_fixtures(&[10, 12], 0.5);
        let b = er_fixtures(&[10, 12], 0.5);
        assert_eq!(a, b);
        assert_eq!(a[1].1.n(), 12);
    }
}
