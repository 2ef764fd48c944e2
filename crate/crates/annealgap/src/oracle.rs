//! Exhaustive classical references: brute-force MWIS solving and full
//! enumeration of the diagonal problem energies. Used to validate the
//! encoding and the endpoint spectra, independently of the operator code.

use crate::error::{Error, Result};
use crate::graph::{WeightedGraph, MAX_VERTICES};
use crate::encode::IsingProblem;

/// Weight tolerance below which two independent sets count as tied.
pub const WEIGHT_TIE_TOL: f64 = 1e-9;

/// Result of exhaustive MWIS enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct MwisSolution {
    /// Selected vertices, ascending.
    pub selected: Vec<usize>,
    pub total_weight: f64,
    /// False when another independent set lies within `WEIGHT_TIE_TOL`
    /// of the maximum weight.
    pub unique: bool,
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration over 2^{n} states refused (max n = {MAX_VERTICES})"
        )));
    }
    Ok(())
}

/// Bitmasks with both endpoints of each edge set.
fn edge_masks(edges: &[(usize, usize)]) -> Vec<u32> {
    edges.iter().map(|&(i, j)| (1u32 << i) | (1u32 << j)).collect()
}

/// Solve MWIS by enumerating all vertex subsets.
pub fn solve_mwis_exhaustive(g: &WeightedGraph) -> Result<MwisSolution> {
    check_capacity(g.n)?;
    let masks = edge_masks(&g.edges);
    let mut best_mask = 0u32;
    let mut best_w = f64::NEG_INFINITY;
    let mut runner_up = f64::NEG_INFINITY;
    for b in 0..(1u32 << g.n) {
        if masks.iter().any(|&m| b & m == m) {
            continue; // both endpoints of some edge selected
        }
        let w: f64 = (0..g.n).filter(|&i| b >> i & 1 == 1).map(|i| g.weights[i]).sum();
        if w > best_w {
            runner_up = best_w;
            best_w = w;
            best_mask = b;
        } else if w > runner_up {
            runner_up = w;
        }
    }
    Ok(MwisSolution {
        selected: (0..g.n).filter(|&i| best_mask >> i & 1 == 1).collect(),
        total_weight: best_w,
        unique: best_w - runner_up > WEIGHT_TIE_TOL,
    })
}

/// Classical energy of one spin configuration, straight from the coupling
/// and bias definition. Bit i of `config` set means spin i is up (+1).
pub fn classical_energy(p: &IsingProblem, config: u32) -> f64 {
    let z = |i: usize| if config >> i & 1 == 1 { 1.0 } else { -1.0 };
    let pair: f64 = p.edges.iter().map(|&(i, j)| z(i) * z(j)).sum();
    let field: f64 = (0..p.n).map(|i| p.h[i] * z(i)).sum();
    p.coupling * pair + field
}

/// All `2^n` classical energies, ascending.
pub fn classical_spectrum(p: &IsingProblem) -> Result<Vec<f64>> {
    check_capacity(p.n)?;
    let mut energies: Vec<f64> = (0..(1u32 << p.n)).map(|b| classical_energy(p, b)).collect();
    energies.sort_by(|a, b| a.total_cmp(b));
    Ok(energies)
}

/// Configuration minimizing the classical energy, with the vertices it selects.
pub fn classical_ground_config(p: &IsingProblem) -> Result<(u32, Vec<usize>)> {
    check_capacity(p.n)?;
    let best = (0..(1u32 << p.n))
        .min_by(|&a, &b| classical_energy(p, a).total_cmp(&classical_energy(p, b)))
        .expect("non-empty state space");
    Ok((best, (0..p.n).filter(|&i| best >> i & 1 == 1).collect()))
}
