//! The annealing Hamiltonian `H(s) = (1-s) H_D + s H_P + s(1-s) H_C` as a
//! sparse set of terms on the `2^n` computational basis.
//!
//! `H_D` is a sum of local X fields with coefficient -1, `H_P` the diagonal
//! Ising problem operator, and `H_C` an XX term on every problem edge with
//! strength `j_c`. The term lists are built once per instance and carry no
//! `s` dependence; the schedule weights are applied at product time.

use nalgebra::DMatrix;

use crate::eigen::EigMethod;
use crate::encode::IsingProblem;
use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;

/// Largest vertex count accepted for dense materialization (dim 4096).
pub const MAX_DENSE_VERTICES: usize = 12;

/// Catalyst term shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Catalyst {
    /// Plain annealing, no catalyst term.
    None,
    /// XX flips on every problem edge with strength `j_c`
    /// (negative is stoquastic, positive is not).
    Xx { j_c: f64 },
}

impl Catalyst {
    pub fn strength(&self) -> f64 {
        match *self {
            Catalyst::None => 0.0,
            Catalyst::Xx { j_c } => j_c,
        }
    }
}

/// Anneal configuration: catalyst, s-grid resolution and refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSpec {
    pub catalyst: Catalyst,
    /// Uniform grid size over `[0, 1]`, endpoints included.
    pub grid_points: usize,
    /// Width (in s units) below which the minimum bracket stops shrinking.
    pub refine_tolerance: f64,
    pub solver: EigMethod,
}

impl AnnealSpec {
    pub fn new(catalyst: Catalyst) -> Self {
        Self {
            catalyst,
            grid_points: 501,
            refine_tolerance: 1e-6,
            solver: EigMethod::Auto,
        }
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn with_refine_tolerance(mut self, tol: f64) -> Self {
        self.refine_tolerance = tol;
        self
    }

    pub fn with_solver(mut self, solver: EigMethod) -> Self {
        self.solver = solver;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::Parameter(format!(
                "grid_points = {} must be at least 3",
                self.grid_points
            )));
        }
        let spacing = 1.0 / (self.grid_points - 1) as f64;
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance < spacing) {
            return Err(Error::Parameter(format!(
                "refine_tolerance = {} must lie in (0, grid spacing = {spacing})",
                self.refine_tolerance
            )));
        }
        Ok(())
    }
}

/// Sparse term representation of the annealing Hamiltonian.
///
/// `diagonal[b]` holds the full problem energy of basis state `b` (bit i of
/// `b` set means spin i up). Single-bit flips carry coefficient -1 on every
/// vertex; double-bit flips carry `catalyst_strength` on every problem edge.
#[derive(Debug, Clone)]
pub struct OperatorTerms {
    n: usize,
    diagonal: Vec<f64>,
    xx_masks: Vec<usize>,
    catalyst_strength: f64,
    diag_abs_max: f64,
}

/// Assemble the operator terms for one encoded instance.
pub fn build_terms(p: &IsingProblem, spec: &AnnealSpec) -> Result<OperatorTerms> {
    spec.validate()?;
    if p.n > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "n = {} exceeds term storage cap {MAX_VERTICES}",
            p.n
        )));
    }
    let dim = 1usize << p.n;
    let mut diagonal = vec![0.0f64; dim];
    for (b, d) in diagonal.iter_mut().enumerate() {
        let z = |i: usize| if b >> i & 1 == 1 { 1.0 } else { -1.0 };
        let pair: f64 = p.edges.iter().map(|&(i, j)| z(i) * z(j)).sum();
        let field: f64 = p.h.iter().enumerate().map(|(i, &h)| h * z(i)).sum();
        *d = p.coupling * pair + field;
    }
    let diag_abs_max = diagonal.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    Ok(OperatorTerms {
        n: p.n,
        diagonal,
        xx_masks: p.edges.iter().map(|&(i, j)| (1usize << i) | (1usize << j)).collect(),
        catalyst_strength: spec.catalyst.strength(),
        diag_abs_max,
    })
}

impl OperatorTerms {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn catalyst_strength(&self) -> f64 {
        self.catalyst_strength
    }

    /// Upper bound on the spectral radius of `H(s)`, via Gershgorin disks.
    /// Cheap scale estimate for solver tolerances.
    pub fn spectral_bound(&self, s: f64) -> f64 {
        s * self.diag_abs_max
            + (1.0 - s) * self.n as f64
            + s * (1.0 - s) * self.catalyst_strength.abs() * self.xx_masks.len() as f64
    }

    /// `H(s) v`, allocated.
    pub fn apply(&self, s: f64, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(s, v, &mut out)?;
        Ok(out)
    }

    /// `H(s) v` into a caller-provided buffer.
    pub fn apply_into(&self, s: f64, v: &[f64], out: &mut [f64]) -> Result<()> {
        if v.len() != self.dim() || out.len() != self.dim() {
            return Err(Error::Parameter(format!(
                "state vector length {} does not match dimension {}",
                v.len(),
                self.dim()
            )));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Parameter(format!("anneal parameter s = {s} outside [0, 1]")));
        }
        self.apply_raw(s, v, out);
        Ok(())
    }

    /// Hot path; lengths already validated.
    pub(crate) fn apply_raw(&self, s: f64, v: &[f64], out: &mut [f64]) {
        for ((o, &d), &x) in out.iter_mut().zip(&self.diagonal).zip(v) {
            *o = s * d * x;
        }
        let cx = -(1.0 - s);
        for i in 0..self.n {
            add_flip(v, out, 1 << i, cx);
        }
        let cc = s * (1.0 - s) * self.catalyst_strength;
        if cc != 0.0 {
            for &mask in &self.xx_masks {
                add_double_flip(v, out, mask, cc);
            }
        }
    }

    /// Shift every diagonal entry; lets tests check offset invariance.
    #[cfg(test)]
    pub(crate) fn shift_diagonal(&mut self, c: f64) {
        for d in &mut self.diagonal {
            *d += c;
        }
        self.diag_abs_max = self.diagonal.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    }

    /// Dense symmetric matrix equal to the operator realized by `apply`.
    pub fn materialize_dense(&self, s: f64) -> Result<DMatrix<f64>> {
        if self.n > MAX_DENSE_VERTICES {
            return Err(Error::Capacity(format!(
                "dense materialization refused for n = {} (max {MAX_DENSE_VERTICES})",
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Parameter(format!("anneal parameter s = {s} outside [0, 1]")));
        }
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            m[(b, b)] = s * self.diagonal[b];
            for i in 0..self.n {
                m[(b, b ^ (1 << i))] += -(1.0 - s);
            }
            let cc = s * (1.0 - s) * self.catalyst_strength;
            for &mask in &self.xx_masks {
                m[(b, b ^ mask)] += cc;
            }
        }
        Ok(m)
    }
}

/// out[b] += c * v[b ^ bit] for a single-bit mask, block-wise so the
/// compiler can drop bounds checks.
fn add_flip(v: &[f64], out: &mut [f64], bit: usize, c: f64) {
    for (vc, oc) in v.chunks_exact(2 * bit).zip(out.chunks_exact_mut(2 * bit)) {
        let (vl, vr) = vc.split_at(bit);
        let (ol, or) = oc.split_at_mut(bit);
        for k in 0..bit {
            ol[k] += c * vr[k];
            or[k] += c * vl[k];
        }
    }
}

/// out[b] += c * v[b ^ mask] for a two-bit mask.
fn add_double_flip(v: &[f64], out: &mut [f64], mask: usize, c: f64) {
    let hi = 1usize << (usize::BITS - 1 - mask.leading_zeros());
    let lo = mask ^ hi;
    debug_assert!(lo != 0 && lo < hi);
    for (vc, oc) in v.chunks_exact(2 * hi).zip(out.chunks_exact_mut(2 * hi)) {
        let (vl, vr) = vc.split_at(hi);
        let (ol, or) = oc.split_at_mut(hi);
        for (((vlc, vrc), olc), orc) in vl
            .chunks_exact(2 * lo)
            .zip(vr.chunks_exact(2 * lo))
            .zip(ol.chunks_exact_mut(2 * lo))
            .zip(or.chunks_exact_mut(2 * lo))
        {
            let (vll, vlh) = vlc.split_at(lo);
            let (vrl, vrh) = vrc.split_at(lo);
            let (oll, olh) = olc.split_at_mut(lo);
            let (orl, orh) = orc.split_at_mut(lo);
            for k in 0..lo {
                oll[k] += c * vrh[k];
                olh[k] += c * vrl[k];
                orl[k] += c * vlh[k];
                orh[k] += c * vll[k];
            }
        }
    }
}
