//! Synthetic fixtures.

use rand::Rng as _;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::seeding::rng_from_seed;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be in [0, 1], got {p}")))
    }
}

/// Star with core `0` and edges `0 -> i` for `i = 1..=n_leaves`.
pub fn gen_star(n_leaves: usize, p: f64) -> Result<WeightedGraph> {
    if n_leaves == 0 {
        return Err(Error::invalid("star needs at least one leaf"));
    }
    check_probability("p", p)?;
    WeightedGraph::from_edges(n_leaves + 1, (1..=n_leaves).map(|i| (0, i, p)).collect())
}

/// Erdős–Rényi style directed graph: each ordered pair `(u, v)`, `u != v`,
/// is an edge with probability `edge_prob`, weighted `p`.
pub fn gen_random(n: usize, edge_prob: f64, p: f64, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("random graph needs at least one node"));
    }
    check_probability("edge_prob", edge_prob)?;
    check_probability("p", p)?;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(edge_prob) {
                edges.push((u, v, p));
            }
        }
    }
    WeightedGraph::from_edges(n, edges)
}

/// Complete directed graph with uniform probability `p`.
pub fn gen_clique(n: usize, p: f64) -> Result<WeightedGraph> {
    gen_random(n, 1.0, p, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_shapes() {
        let g = gen_star(10, 0.5).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (11, 10));
        assert!(g.edges().all(|(u, _, p)| u == 0 && p == 0.5));

        let g = gen_star(1, 1.0).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));

        let g = gen_star(3, 0.0).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (4, 3));
        assert!(g.edges().all(|(_, _, p)| p == 0.0));

        assert!(gen_star(0, 0.5).is_err());
        assert!(gen_star(3, 1.5).is_err());
    }

    #[test]
    fn random_extremes_and_determinism() {
        let g = gen_random(5, 1.0, 0.3, 9).unwrap();
        assert_eq!(g.edge_count(), 20);
        assert!(g.edges().all(|(_, _, p)| p == 0.3));
        assert_eq!(gen_random(5, 0.0, 0.3, 9).unwrap().edge_count(), 0);
        assert_eq!(
            gen_random(12, 0.4, 0.2, 5).unwrap(),
            gen_random(12, 0.4, 0.2, 5).unwrap()
        );
        assert_eq!(gen_clique(5, 0.3).unwrap(), g);
    }
}
