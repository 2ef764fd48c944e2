//! Two lowest energy levels of the annealing Hamiltonian across the
//! schedule, and the location of the minimum gap.

use crate::eigen::{
    dense_lowest_two, krylov_lowest_two, lobpcg_lowest_two, EigMethod, KrylovTol,
    AUTO_DENSE_MAX_VERTICES,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{AnnealSpec, OperatorTerms};

/// Gaps below this are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Fixed stream key for cold-started solver calls; keeps every evaluation
/// reproducible without threading seeds through the public API.
const SOLVER_SEED: u64 = 0x6a70_65c7;

/// Lowest two energy levels on an ascending s-grid over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapCurve {
    pub s_values: Vec<f64>,
    pub e0: Vec<f64>,
    pub e1: Vec<f64>,
}

impl GapCurve {
    pub fn len(&self) -> usize {
        self.s_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_values.is_empty()
    }

    pub fn gap(&self, k: usize) -> f64 {
        self.e1[k] - self.e0[k]
    }

    /// Grid index with the smallest gap (first on ties).
    pub fn min_index(&self) -> usize {
        (0..self.len())
            .min_by(|&a, &b| self.gap(a).total_cmp(&self.gap(b)))
            .expect("non-empty curve")
    }
}

/// Minimum gap and where the schedule attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapResult {
    pub delta: f64,
    pub s_star: f64,
    /// Set when `delta` is below the degeneracy tolerance.
    pub degenerate: bool,
}

/// Stateful gap evaluator; reuses the previous Ritz block as a warm start
/// when evaluations land near each other, as they do along a sweep.
pub(crate) struct GapEvaluator<'a> {
    terms: &'a OperatorTerms,
    method: EigMethod,
    tol: KrylovTol,
    warm: Option<Vec<Vec<f64>>>,
}

impl<'a> GapEvaluator<'a> {
    pub(crate) fn new(terms: &'a OperatorTerms, method: EigMethod) -> Self {
        let method = match method {
            EigMethod::Auto => {
                if terms.n() <= AUTO_DENSE_MAX_VERTICES {
                    EigMethod::Dense
                } else {
                    EigMethod::Krylov
                }
            }
            m => m,
        };
        Self {
            terms,
            method,
            tol: KrylovTol::strict(),
            warm: None,
        }
    }

    /// Krylov with the looser tracking tolerance, warm-started between
    /// calls; used to walk the grid, where only bracket selection matters.
    pub(crate) fn new_tracking(terms: &'a OperatorTerms) -> Self {
        Self {
            terms,
            method: EigMethod::Krylov,
            tol: KrylovTol::tracking(),
            warm: None,
        }
    }

    pub(crate) fn eval(&mut self, s: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Parameter(format!("anneal parameter s = {s} outside [0, 1]")));
        }
        // endpoint spectra are exact: the driver at s=0, the diagonal at s=1
        if s == 0.0 {
            let n = self.terms.n() as f64;
            return Ok((-n, -n + 2.0));
        }
        if s == 1.0 {
            return Ok(two_smallest(self.terms.diagonal()));
        }
        match self.method {
            EigMethod::Dense => {
                let m = self.terms.materialize_dense(s)?;
                Ok(dense_lowest_two(&m))
            }
            _ => {
                let terms = self.terms;
                // block iteration first; the restarted Krylov solver is the
                // deterministic fallback on a stall
                let operator_diag: Vec<f64> =
                    terms.diagonal().iter().map(|d| s * d).collect();
                let sol = lobpcg_lowest_two(
                    |v, out| terms.apply_raw(s, v, out),
                    terms.dim(),
                    terms.spectral_bound(s),
                    Some(&operator_diag),
                    self.tol,
                    self.warm.as_deref(),
                    SOLVER_SEED,
                )
                .or_else(|_| {
                    krylov_lowest_two(
                        |v, out| terms.apply_raw(s, v, out),
                        terms.dim(),
                        terms.spectral_bound(s),
                        self.tol,
                        self.warm.as_deref(),
                        SOLVER_SEED,
                    )
                })
                .map_err(|detail| Error::Numerical {
                    s,
                    instance_id: None,
                    detail,
                })?;
                self.warm = Some(sol.block);
                Ok((sol.e0, sol.e1))
            }
        }
    }
}

fn two_smallest(values: &[f64]) -> (f64, f64) {
    let mut m0 = f64::INFINITY;
    let mut m1 = f64::INFINITY;
    for &v in values {
        if v < m0 {
            m1 = m0;
            m0 = v;
        } else if v < m1 {
            m1 = v;
        }
    }
    (m0, m1)
}

/// Two lowest eigenvalues of `H(s)` for a single anneal parameter.
///
/// `Auto` solves densely up to n = 9 and by Krylov iteration above.
pub fn lowest_two(terms: &OperatorTerms, s: f64) -> Result<(f64, f64)> {
    lowest_two_with(terms, s, EigMethod::Auto)
}

/// `lowest_two` with an explicit solver choice.
pub fn lowest_two_with(terms: &OperatorTerms, s: f64, method: EigMethod) -> Result<(f64, f64)> {
    GapEvaluator::new(terms, method).eval(s)
}

/// Evaluate the two lowest levels on the uniform grid from the spec.
///
/// Grid points are `s_k = k / (grid_points - 1)`, so both endpoints are
/// included exactly. With the Auto or Krylov solver the sweep tracks the
/// low eigenspace from point to point, which keeps per-point work small.
pub fn sweep(terms: &OperatorTerms, spec: &AnnealSpec) -> Result<GapCurve> {
    spec.validate()?;
    let g = spec.grid_points;
    let mut evaluator = match spec.solver {
        EigMethod::Dense => GapEvaluator::new(terms, EigMethod::Dense),
        _ => GapEvaluator::new_tracking(terms),
    };
    let mut s_values = Vec::with_capacity(g);
    let mut e0 = Vec::with_capacity(g);
    let mut e1 = Vec::with_capacity(g);
    for k in 0..g {
        let s = k as f64 / (g - 1) as f64;
        let (a, b) = evaluator.eval(s)?;
        s_values.push(s);
        e0.push(a);
        e1.push(b);
    }
    Ok(GapCurve { s_values, e0, e1 })
}

/// Locate the minimum gap: coarse grid minimum, then golden-section
/// refinement inside the bracketing interval.
///
/// The curve must come from `sweep` on the same terms and spec. The
/// refined value never exceeds the grid minimum, and the search stops
/// once the bracket is shorter than `spec.refine_tolerance`.
pub fn min_gap(curve: &GapCurve, terms: &OperatorTerms, spec: &AnnealSpec) -> Result<GapResult> {
    if curve.is_empty() {
        return Err(Error::Parameter("empty gap curve".into()));
    }
    // The curve picks the bracket; the reported minimum only ever comes
    // from full-accuracy evaluations, starting with the grid argmin itself.
    let k = curve.min_index();
    let grid_s = curve.s_values[k];
    // refinement walks a tight bracket, so the warm-chained iterative
    // path wins well below the single-shot dense cutoff
    let method = match spec.solver {
        EigMethod::Auto if terms.n() > 6 => EigMethod::Krylov,
        m => m,
    };
    let mut evaluator = GapEvaluator::new(terms, method);
    let (e0k, e1k) = evaluator.eval(grid_s)?;
    let grid_delta = e1k - e0k;
    if grid_delta < DEGENERACY_TOL {
        return Ok(GapResult {
            delta: grid_delta.max(0.0),
            s_star: grid_s,
            degenerate: true,
        });
    }

    let lo = if k == 0 { 0 } else { k - 1 };
    let hi = (k + 1).min(curve.len() - 1);
    let mut best_s = grid_s;
    let mut best_g = grid_delta;
    let mut a = curve.s_values[lo];
    let mut b = curve.s_values[hi];
    if b > a {
        // golden-section: needs only continuity and a bracketed minimum
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let track = |evaluator: &mut GapEvaluator, s: f64, best_s: &mut f64, best_g: &mut f64| -> Result<f64> {
            let (e0, e1) = evaluator.eval(s)?;
            let g = e1 - e0;
            if g < *best_g {
                *best_g = g;
                *best_s = s;
            }
            Ok(g)
        };
        let mut f1 = track(&mut evaluator, x1, &mut best_s, &mut best_g)?;
        let mut f2 = track(&mut evaluator, x2, &mut best_s, &mut best_g)?;
        while b - a > spec.refine_tolerance {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = track(&mut evaluator, x1, &mut best_s, &mut best_g)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = track(&mut evaluator, x2, &mut best_s, &mut best_g)?;
            }
        }
    }

    Ok(GapResult {
        delta: best_g.max(0.0),
        s_star: best_s,
        degenerate: best_g < DEGENERACY_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_mwis;
    use crate::eigen::dense_spectrum;
    use crate::graph::{generate_er, WeightedGraph};
    use crate::hamiltonian::{build_terms, AnnealSpec, Catalyst};

    fn single_qubit(w: f64, catalyst: Catalyst) -> OperatorTerms {
        let g = WeightedGraph::new(1, vec![], vec![w]).unwrap();
        let p = encode_mwis(&g, 1.0).unwrap();
        build_terms(&p, &AnnealSpec::new(catalyst)).unwrap()
    }

    fn qubit_gap(w: f64, s: f64) -> f64 {
        2.0 * ((1.0 - s).powi(2) + (2.0 * w * s).powi(2)).sqrt()
    }

    #[test]
    fn driver_levels_at_s_zero() {
        let g = generate_er(6, 0.5, 2).unwrap();
        let p = encode_mwis(&g, 1.5).unwrap();
        let t = build_terms(&p, &AnnealSpec::new(Catalyst::Xx { j_c: -1.0 })).unwrap();
        let (e0, e1) = lowest_two(&t, 0.0).unwrap();
        assert_eq!((e0, e1), (-6.0, -4.0));
        // the materialized endpoint operator agrees
        let m = t.materialize_dense(0.0).unwrap();
        let (d0, d1) = dense_lowest_two(&m);
        assert!((d0 - -6.0).abs() < 1e-10 && (d1 - -4.0).abs() < 1e-10);
    }

    #[test]
    fn classical_levels_at_s_one() {
        let g = WeightedGraph::new(3, vec![(0, 1), (0, 2), (1, 2)], vec![0.5, 0.7, 0.9]).unwrap();
        let p = encode_mwis(&g, 1.5).unwrap();
        let t = build_terms(&p, &AnnealSpec::new(Catalyst::None)).unwrap();
        let (e0, e1) = lowest_two(&t, 1.0).unwrap();
        assert!((e0 - -3.9).abs() < 1e-12);
        assert!((e1 - -3.1).abs() < 1e-12);
        let m = t.materialize_dense(1.0).unwrap();
        let (d0, d1) = dense_lowest_two(&m);
        assert!((d0 - -3.9).abs() < 1e-10 && (d1 - -3.1).abs() < 1e-10);
    }

    #[test]
    fn single_qubit_matches_closed_form_both_solvers() {
        let t = single_qubit(0.6, Catalyst::None);
        for method in [EigMethod::Dense, EigMethod::Krylov] {
            for k in 0..=20 {
                let s = k as f64 / 20.0;
                let (e0, e1) = lowest_two_with(&t, s, method).unwrap();
                let expect = (qubit_gap(0.6, s) / 2.0).abs();
                assert!((e0 - -expect).abs() < 1e-9, "{method:?} s={s}");
                assert!((e1 - expect).abs() < 1e-9, "{method:?} s={s}");
            }
        }
    }

    #[test]
    fn sweep_grid_and_closed_form() {
        let t = single_qubit(0.6, Catalyst::None);
        let spec = AnnealSpec::new(Catalyst::None);
        let curve = sweep(&t, &spec).unwrap();
        assert_eq!(curve.len(), 501);
        assert_eq!(curve.s_values[0], 0.0);
        assert_eq!(*curve.s_values.last().unwrap(), 1.0);
        for k in 0..curve.len() {
            let expect = qubit_gap(0.6, curve.s_values[k]);
            assert!((curve.gap(k) - expect).abs() < 1e-9, "s = {}", curve.s_values[k]);
        }
    }

    #[test]
    fn sweep_endpoints_ignore_catalyst() {
        let g = generate_er(5, 0.6, 9).unwrap();
        let p = encode_mwis(&g, 1.5).unwrap();
        let spec_free = AnnealSpec::new(Catalyst::None).with_grid_points(21);
        let spec_cat = AnnealSpec::new(Catalyst::Xx { j_c: -1.0 }).with_grid_points(21);
        let free = sweep(&build_terms(&p, &spec_free).unwrap(), &spec_free).unwrap();
        let cat = sweep(&build_terms(&p, &spec_cat).unwrap(), &spec_cat).unwrap();
        assert_eq!(free.e0[0], cat.e0[0]);
        assert_eq!(free.e1[0], cat.e1[0]);
        assert_eq!(free.e0[20], cat.e0[20]); // s = 1 is the last point
        assert_eq!(free.e1[20], cat.e1[20]);
    }

    #[test]
    fn min_gap_single_qubit_reference_values() {
        let t = single_qubit(0.6, Catalyst::None);
        let spec = AnnealSpec::new(Catalyst::None);
        let curve = sweep(&t, &spec).unwrap();
        let r = min_gap(&curve, &t, &spec).unwrap();
        assert!((r.delta - 1.53644).abs() < 1e-4, "delta {}", r.delta);
        assert!((r.s_star - 0.40984).abs() < 1e-4, "s* {}", r.s_star);
        assert!(!r.degenerate);

        let t = single_qubit(0.5, Catalyst::None);
        let curve = sweep(&t, &spec).unwrap();
        let r = min_gap(&curve, &t, &spec).unwrap();
        assert!((r.delta - std::f64::consts::SQRT_2).abs() < 1e-4);
        assert!((r.s_star - 0.5).abs() < 1e-4);
    }

    #[test]
    fn zero_weight_qubit_is_degenerate_at_the_end() {
        let t = single_qubit(0.0, Catalyst::None);
        let spec = AnnealSpec::new(Catalyst::None);
        let curve = sweep(&t, &spec).unwrap();
        let r = min_gap(&curve, &t, &spec).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.s_star, 1.0);
        assert!(r.delta.abs() < 1e-12);
    }

    #[test]
    fn refinement_never_exceeds_grid_minimum() {
        for seed in 0..8u64 {
            let g = generate_er(6, 0.5, seed).unwrap();
            let p = encode_mwis(&g, 1.3).unwrap();
            for catalyst in [Catalyst::None, Catalyst::Xx { j_c: -1.0 }] {
                let spec = AnnealSpec::new(catalyst).with_grid_points(101).with_refine_tolerance(1e-7);
                let t = build_terms(&p, &spec).unwrap();
                let curve = sweep(&t, &spec).unwrap();
                let grid_min = curve.gap(curve.min_index());
                let r = min_gap(&curve, &t, &spec).unwrap();
                assert!(r.delta <= grid_min + 1e-12, "seed {seed}");
                assert!(r.delta >= 0.0);
            }
        }
    }

    #[test]
    fn offset_shift_leaves_gap_invariant() {
        let g = generate_er(6, 0.5, 4).unwrap();
        let p = encode_mwis(&g, 1.4).unwrap();
        let spec = AnnealSpec::new(Catalyst::Xx { j_c: -1.0 });
        let t = build_terms(&p, &spec).unwrap();
        let mut shifted = t.clone();
        shifted.shift_diagonal(3.7);
        for s in [0.2, 0.5, 0.8] {
            let (a0, a1) = lowest_two_with(&t, s, EigMethod::Dense).unwrap();
            let (b0, b1) = lowest_two_with(&shifted, s, EigMethod::Dense).unwrap();
            assert!((b0 - (a0 + s * 3.7)).abs() < 1e-10);
            assert!(((b1 - b0) - (a1 - a0)).abs() < 1e-12);
        }
    }

    #[test]
    fn krylov_matches_dense_on_random_instances() {
        for seed in 0..10u64 {
            let n = 5 + (seed as usize % 4);
            let g = generate_er(n, 0.5, seed).unwrap();
            let p = encode_mwis(&g, 1.6).unwrap();
            let t = build_terms(&p, &AnnealSpec::new(Catalyst::Xx { j_c: -1.0 })).unwrap();
            let s = 0.1 + 0.8 * (seed as f64 / 10.0);
            let (d0, d1) = lowest_two_with(&t, s, EigMethod::Dense).unwrap();
            let (k0, k1) = lowest_two_with(&t, s, EigMethod::Krylov).unwrap();
            assert!((d0 - k0).abs() < 1e-9, "seed {seed}");
            assert!((d1 - k1).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn stoquastic_interior_gap_is_positive() {
        for seed in 0..5u64 {
            let g = generate_er(6, 0.5, seed).unwrap();
            let p = encode_mwis(&g, 1.5).unwrap();
            let spec = AnnealSpec::new(Catalyst::None).with_grid_points(51);
            let t = build_terms(&p, &spec).unwrap();
            let curve = sweep(&t, &spec).unwrap();
            for k in 1..curve.len() - 1 {
                assert!(curve.gap(k) > 1e-12, "seed {seed}, s = {}", curve.s_values[k]);
            }
        }
    }

    #[test]
    fn full_spectrum_at_s_one_is_the_diagonal() {
        let g = generate_er(5, 0.4, 21).unwrap();
        let p = encode_mwis(&g, 1.2).unwrap();
        let t = build_terms(&p, &AnnealSpec::new(Catalyst::Xx { j_c: -1.0 })).unwrap();
        let m = t.materialize_dense(1.0).unwrap();
        let spec = dense_spectrum(&m);
        let mut diag: Vec<f64> = t.diagonal().to_vec();
        diag.sort_by(|a, b| a.total_cmp(b));
        for (a, b) in spec.iter().zip(&diag) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
