// temporary: BA seed-graph convention hypothesis test (igraph-style growth
// from a single vertex, attaching min(m, existing) distinct targets)
use annealgap::encode::{draw_coupling, encode_mwis};
use annealgap::graph::WeightedGraph;
use annealgap::hamiltonian::{build_terms, AnnealSpec, Catalyst};
use annealgap::rng::{derive_seed, stream};
use annealgap::spectrum::{min_gap, sweep};
use rand::Rng;
use rayon::prelude::*;

fn generate_ba_growing(n: usize, m: usize, seed: u64) -> WeightedGraph {
    let mut rng = stream(seed);
    let mut edges = Vec::new();
    let mut urn: Vec<usize> = Vec::new();
    for v in 1..n {
        let k = m.min(v);
        let mut targets: Vec<usize> = Vec::new();
        if v <= m {
            targets = (0..v).collect(); // attach to everything available
        } else {
            while targets.len() < k {
                let pick = urn[rng.random_range(0..urn.len())];
                if !targets.contains(&pick) {
                    targets.push(pick);
                }
            }
        }
        for &t in &targets {
            edges.push((t, v));
            urn.push(t);
            urn.push(v);
        }
    }
    let weights = (0..n).map(|_| rng.random::<f64>()).collect();
    WeightedGraph::new(n, edges, weights).unwrap()
}

fn main() {
    for m in [3usize, 5, 6] {
        let improved: usize = (0..100u64).into_par_iter().map(|idx| {
            let seed = derive_seed(31337, idx);
            let g = generate_ba_growing(10, m, seed);
            let j = draw_coupling(derive_seed(seed, 0xc001));
            let p = encode_mwis(&g, j).unwrap();
            let gap_for = |catalyst: Catalyst| -> f64 {
                let spec = AnnealSpec::new(catalyst).with_grid_points(201);
                let t = build_terms(&p, &spec).unwrap();
                let curve = sweep(&t, &spec).unwrap();
                min_gap(&curve, &t, &spec).unwrap().delta
            };
            (gap_for(Catalyst::Xx { j_c: -1.0 }) > gap_for(Catalyst::None)) as usize
        }).sum();
        let edges = generate_ba_growing(10, m, 1).edge_count();
        println!("growing-BA m={m} (example edge count {edges}): improved {improved}/100");
    }
}
