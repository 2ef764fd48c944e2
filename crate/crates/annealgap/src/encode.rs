//! Maps a weighted graph to the Ising problem Hamiltonian whose ground
//! state is the maximum weighted independent set.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rng::stream;

/// Ising encoding of an MWIS instance: uniform coupling `j` on every edge
/// and per-vertex biases `h_i = deg(i) * j - 2 * w_i`.
///
/// Spin convention: sigma_z eigenvalue +1 means the vertex is selected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingProblem {
    pub n: usize,
    pub coupling: f64,
    pub edges: Vec<(usize, usize)>,
    pub h: Vec<f64>,
}

/// Encode an MWIS instance with uniform coupling `coupling` on all edges.
///
/// Requires `coupling >= max_i w_i`, which guarantees the penalty condition
/// on every edge, so independence violations always cost energy.
pub fn encode_mwis(g: &WeightedGraph, coupling: f64) -> Result<IsingProblem> {
    let w_max = g.weights.iter().cloned().fold(0.0f64, f64::max);
    if !(coupling >= w_max) {
        return Err(Error::Encoding(format!(
            "coupling {coupling} below maximum weight {w_max}; ground state would not encode the optimum"
        )));
    }
    let deg = g.degrees();
    let h = (0..g.n)
        .map(|i| deg[i] as f64 * coupling - 2.0 * g.weights[i])
        .collect();
    Ok(IsingProblem {
        n: g.n,
        coupling,
        edges: g.edges.clone(),
        h,
    })
}

/// Draw the per-instance coupling constant, uniform on `[1, 2]`.
pub fn draw_coupling(seed: u64) -> f64 {
    1.0 + stream(seed).random::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1), (0, 2), (1, 2)], vec![0.5, 0.7, 0.9]).unwrap()
    }

    #[test]
    fn triangle_biases() {
        let p = encode_mwis(&triangle(), 1.5).unwrap();
        assert_eq!(p.h, vec![2.0, 1.6, 1.2]);
        assert_eq!(p.coupling, 1.5);
    }

    #[test]
    fn isolated_vertex_bias_is_minus_two_w() {
        let g = WeightedGraph::new(1, vec![], vec![0.6]).unwrap();
        let p = encode_mwis(&g, 1.7).unwrap();
        assert_eq!(p.h, vec![-1.2]);
    }

    #[test]
    fn rejects_coupling_below_weights() {
        let err = encode_mwis(&triangle(), 0.8);
        assert!(matches!(err, Err(Error::Encoding(_))));
    }

    #[test]
    fn coupling_range_and_determinism() {
        for seed in 0..1000 {
            let j = draw_coupling(seed);
            assert!((1.0..=2.0).contains(&j));
        }
        assert_eq!(draw_coupling(42), draw_coupling(42));
    }

    #[test]
    fn coupling_mean_matches_uniform() {
        let n = 10_000u64;
        let mean = (0..n).map(draw_coupling).sum::<f64>() / n as f64;
        // sd of U[1,2] is 1/sqrt(12)
        let se = 1.0 / 12f64.sqrt() / (n as f64).sqrt();
        assert!((mean - 1.5).abs() < 3.0 * se, "mean {mean} off 1.5");
    }
}
