//! Random weighted-graph generation: Erdős–Rényi and Barabási–Albert
//! ensembles with i.i.d. uniform vertex weights, deterministic in the seed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream;

/// Largest vertex count the exhaustive machinery downstream accepts.
pub const MAX_VERTICES: usize = 24;

/// An undirected graph with real vertex weights; the problem instance.
///
/// Edges are stored as sorted `(i, j)` pairs with `i < j`, no duplicates,
/// no self-loops. Weights lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<f64>,
}

impl WeightedGraph {
    /// Build from parts, checking the structural invariants.
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("vertex count must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "n={n} exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        if weights.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} weights, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::Parameter(format!("weight {w} outside [0, 1]")));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::Parameter(format!("self-loop at vertex {}", e.0)));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 >= n {
                return Err(Error::Parameter(format!(
                    "edge ({}, {}) endpoint out of range for n={n}",
                    e.0, e.1
                )));
            }
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.len() != before {
            return Err(Error::Parameter("duplicate edge".into()));
        }
        Ok(Self { n, edges, weights })
    }

    /// Per-vertex degree.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Random-graph ensemble and its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GraphModel {
    /// Erdős–Rényi G(n, p): each vertex pair is an edge independently
    /// with probability `p`.
    Er { p: f64 },
    /// Barabási–Albert: each new vertex attaches `m` edges preferentially
    /// to high-degree vertices.
    Ba { m: usize },
}

impl GraphModel {
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            GraphModel::Er { p } => {
                if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                    return Err(Error::Parameter(format!("edge probability p={p} outside [0, 1]")));
                }
            }
            GraphModel::Ba { m } => {
                if m < 1 || m >= n {
                    return Err(Error::Parameter(format!(
                        "BA parameter m={m} must satisfy 1 <= m < n={n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Short tag used in file formats and ids.
    pub fn tag(&self) -> &'static str {
        match self {
            GraphModel::Er { .. } => "er",
            GraphModel::Ba { .. } => "ba",
        }
    }

    /// Numeric parameter value (p or m) for tabular output.
    pub fn param(&self) -> f64 {
        match *self {
            GraphModel::Er { p } => p,
            GraphModel::Ba { m } => m as f64,
        }
    }
}

/// Generate a graph from the given model, deterministically in `seed`.
pub fn generate(model: GraphModel, n: usize, seed: u64) -> Result<WeightedGraph> {
    match model {
        GraphModel::Er { p } => generate_er(n, p, seed),
        GraphModel::Ba { m } => generate_ba(n, m, seed),
    }
}

/// Erdős–Rényi G(n, p) with uniform `[0, 1]` vertex weights.
///
/// Each of the `n(n-1)/2` unordered pairs is an edge independently with
/// probability `p`. Weights are drawn after the topology, in vertex order,
/// from the same stream.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    GraphModel::Er { p }.validate(n)?;
    if n == 0 {
        return Err(Error::Parameter("vertex count must be at least 1".into()));
    }
    let mut rng = stream(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    let weights = (0..n).map(|_| rng.random::<f64>()).collect();
    WeightedGraph::new(n, edges, weights)
}

/// Barabási–Albert preferential attachment with uniform `[0, 1]` weights.
///
/// Starts from `m` isolated vertices; the first added vertex connects to
/// all of them, and each later vertex connects to `m` distinct existing
/// vertices sampled proportionally to current degree via a repeated-vertex
/// urn. Total edge count is exactly `m * (n - m)`.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    GraphModel::Ba { m }.validate(n)?;
    let mut rng = stream(seed);
    let mut edges = Vec::with_capacity(m * (n - m));
    // urn holds one entry per edge endpoint, so degree-proportional
    // sampling is a uniform draw
    let mut urn: Vec<usize> = Vec::with_capacity(2 * m * (n - m));
    let mut targets: Vec<usize> = (0..m).collect();
    for v in m..n {
        for &t in &targets {
            edges.push((t, v));
            urn.push(t);
            urn.push(v);
        }
        if v + 1 < n {
            targets.clear();
            while targets.len() < m {
                let pick = urn[rng.random_range(0..urn.len())];
                if !targets.contains(&pick) {
                    targets.push(pick);
                }
            }
        }
    }
    let weights = (0..n).map(|_| rng.random::<f64>()).collect();
    WeightedGraph::new(n, edges, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extreme_probabilities() {
        let empty = generate_er(5, 0.0, 7).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let complete = generate_er(5, 1.0, 7).unwrap();
        assert_eq!(complete.edge_count(), 10);
    }

    #[test]
    fn er_rejects_bad_parameters() {
        assert!(generate_er(0, 0.5, 1).is_err());
        assert!(generate_er(5, -0.1, 1).is_err());
        assert!(generate_er(5, 1.5, 1).is_err());
    }

    #[test]
    fn er_is_deterministic() {
        let a = generate_er(10, 0.4, 123).unwrap();
        let b = generate_er(10, 0.4, 123).unwrap();
        assert_eq!(a, b);
        let c = generate_er(10, 0.4, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn er_edge_count_matches_binomial_mean() {
        // Binomial(45, 0.4): mean 18, sd sqrt(10.8); 10k seeds gives
        // a standard error of the mean of ~0.033.
        let n_seeds = 10_000u64;
        let total: usize = (0..n_seeds)
            .map(|s| generate_er(10, 0.4, s).unwrap().edge_count())
            .sum();
        let mean = total as f64 / n_seeds as f64;
        let se = (45.0f64 * 0.4 * 0.6).sqrt() / (n_seeds as f64).sqrt();
        assert!(
            (mean - 18.0).abs() < 3.0 * se,
            "mean edge count {mean} too far from 18 (3se = {})",
            3.0 * se
        );
    }

    #[test]
    fn ba_edge_count_is_exact() {
        for seed in 0..200 {
            let g = generate_ba(10, 3, seed).unwrap();
            assert_eq!(g.edge_count(), 3 * (10 - 3));
        }
    }

    #[test]
    fn ba_star_on_four_vertices() {
        let g = generate_ba(4, 3, 99).unwrap();
        assert_eq!(g.edge_count(), 3);
        // single added vertex connects to all three seed vertices
        assert_eq!(g.edges, vec![(0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn ba_rejects_m_not_below_n() {
        assert!(generate_ba(4, 4, 0).is_err());
        assert!(generate_ba(4, 0, 0).is_err());
    }

    #[test]
    fn ba_max_degree_exceeds_er_at_equal_mean_degree() {
        // BA(10, 3) has 21 edges, mean degree 4.2; ER matches that with
        // p = 4.2/9. Hubs should make the BA max degree larger on average.
        let seeds = 2_000u64;
        let p_eq = 4.2 / 9.0;
        let mut ba_sum = 0usize;
        let mut er_sum = 0usize;
        for s in 0..seeds {
            ba_sum += generate_ba(10, 3, s).unwrap().degrees().into_iter().max().unwrap();
            er_sum += generate_er(10, p_eq, s).unwrap().degrees().into_iter().max().unwrap();
        }
        assert!(
            ba_sum > er_sum,
            "BA mean max degree {} not above ER {}",
            ba_sum as f64 / seeds as f64,
            er_sum as f64 / seeds as f64
        );
    }

    #[test]
    fn generated_graphs_satisfy_invariants() {
        for seed in 0..300 {
            let n = 3 + (seed as usize % 10);
            let g = generate_er(n, 0.5, seed).unwrap();
            check_invariants(&g);
            let m = 1 + (seed as usize % (n - 1));
            let g = generate_ba(n, m, seed).unwrap();
            check_invariants(&g);
        }
    }

    fn check_invariants(g: &WeightedGraph) {
        assert_eq!(g.weights.len(), g.n);
        assert!(g.weights.iter().all(|w| (0.0..=1.0).contains(w)));
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in &g.edges {
            assert!(i < j && j < g.n);
            assert!(seen.insert((i, j)), "duplicate edge ({i}, {j})");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn er_generation_upholds_graph_invariants(
                n in 1usize..=16,
                p in 0.0f64..=1.0,
                seed in any::<u64>(),
            ) {
                let g = generate_er(n, p, seed).unwrap();
                check_invariants(&g);
                prop_assert_eq!(g.clone(), generate_er(n, p, seed).unwrap());
            }

            #[test]
            fn ba_generation_upholds_graph_invariants_and_edge_count(
                n in 2usize..=16,
                m_frac in 0.0f64..1.0,
                seed in any::<u64>(),
            ) {
                let m = 1 + (m_frac * (n - 1) as f64) as usize;
                let m = m.min(n - 1);
                let g = generate_ba(n, m, seed).unwrap();
                check_invariants(&g);
                prop_assert_eq!(g.edge_count(), m * (n - m));
                prop_assert_eq!(g, generate_ba(n, m, seed).unwrap());
            }
        }
    }
}
