//! Batch experiments: paired minimum-gap computation with and without the
//! catalyst on identical instances, and the derived statistics (improved
//! fraction, geometric-mean improvement, decade box summaries, scaling
//! series) with bootstrap confidence intervals.

use rayon::prelude::*;

use crate::encode::{draw_coupling, encode_mwis};
use crate::error::{Error, Result};
use crate::graph::{generate, GraphModel, WeightedGraph};
use crate::hamiltonian::{build_terms, AnnealSpec, Catalyst};
use crate::rng::derive_seed;
use crate::spectrum::{min_gap, sweep, GapResult, DEGENERACY_TOL};
use crate::stats::{bootstrap_ci, decade_bins, geometric_mean, DecadeBin};

/// Stream salt separating the coupling draw from the graph draw.
const COUPLING_SALT: u64 = 0xc001;

/// Gap threshold marking the potentially hard instances in the scaling
/// analysis.
pub const HARD_GAP_THRESHOLD: f64 = 1e-1;
/// Gap threshold for the much harder instances whose population share is
/// tracked across problem sizes.
pub const TINY_GAP_THRESHOLD: f64 = 1e-3;

/// The two anneal configurations compared on every instance. Both arms
/// share the grid and refinement settings; only the catalyst differs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealPair {
    pub baseline: AnnealSpec,
    pub catalyzed: AnnealSpec,
}

impl AnnealPair {
    /// Catalyst-free baseline against an XX catalyst of strength `j_c`.
    pub fn xx(j_c: f64) -> Self {
        Self {
            baseline: AnnealSpec::new(Catalyst::None),
            catalyzed: AnnealSpec::new(Catalyst::Xx { j_c }),
        }
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.baseline = self.baseline.with_grid_points(grid_points);
        self.catalyzed = self.catalyzed.with_grid_points(grid_points);
        self
    }

    pub fn with_solver(mut self, solver: crate::eigen::EigMethod) -> Self {
        self.baseline = self.baseline.with_solver(solver);
        self.catalyzed = self.catalyzed.with_solver(solver);
        self
    }
}

/// Paired gap outcome for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub instance_id: String,
    pub model: GraphModel,
    pub n: usize,
    pub seed: u64,
    pub coupling: f64,
    /// Catalyst-free minimum gap and its location.
    pub delta: f64,
    pub s_star: f64,
    pub degenerate: bool,
    /// Catalyzed minimum gap and its location.
    pub delta_c: f64,
    pub s_star_c: f64,
    pub degenerate_c: bool,
    /// Classical ground state was degenerate; excluded from statistics.
    pub rejected: bool,
    /// Numerical failure captured without aborting the batch.
    pub error: Option<String>,
}

impl ComparisonRecord {
    /// Gap improvement ratio, when defined.
    pub fn ratio(&self) -> Option<f64> {
        if self.usable() {
            Some(self.delta_c / self.delta)
        } else {
            None
        }
    }

    /// Enters statistics: not rejected, no error, both gaps positive.
    pub fn usable(&self) -> bool {
        self.rejected == false
            && self.error.is_none()
            && self.delta > 0.0
            && self.delta_c > 0.0
            && self.delta.is_finite()
            && self.delta_c.is_finite()
    }
}

/// Graph and coupling for instance `index` of a batch. Shared by the batch
/// runner and the instance-file generator so both describe one ensemble.
pub fn instance_parts(
    model: GraphModel,
    n: usize,
    master_seed: u64,
    index: u64,
) -> Result<(WeightedGraph, f64, u64)> {
    let seed = derive_seed(master_seed, index);
    let graph = generate(model, n, seed)?;
    let coupling = draw_coupling(derive_seed(seed, COUPLING_SALT));
    Ok((graph, coupling, seed))
}

/// Stable instance id within a batch.
pub fn instance_id(model: GraphModel, n: usize, index: u64) -> String {
    format!("{}-n{}-{:06}", model.tag(), n, index)
}

/// Generate, encode and compare one instance under both anneal arms.
///
/// The classical ground state is checked first; a degenerate one marks the
/// record rejected and skips the sweeps. Numerical errors are recorded on
/// the record rather than returned, so batches keep going.
pub fn run_instance(
    model: GraphModel,
    n: usize,
    master_seed: u64,
    index: u64,
    pair: &AnnealPair,
) -> Result<ComparisonRecord> {
    let (graph, coupling, seed) = instance_parts(model, n, master_seed, index)?;
    let id = instance_id(model, n, index);
    let problem = encode_mwis(&graph, coupling)?;
    let baseline = build_terms(&problem, &pair.baseline)?;
    let catalyzed = build_terms(&problem, &pair.catalyzed)?;

    let mut record = ComparisonRecord {
        instance_id: id.clone(),
        model,
        n,
        seed,
        coupling,
        delta: f64::NAN,
        s_star: f64::NAN,
        degenerate: true,
        delta_c: f64::NAN,
        s_star_c: f64::NAN,
        degenerate_c: true,
        rejected: false,
        error: None,
    };

    // degenerate classical ground state: gap ratio undefined, reject
    let mut d = baseline.diagonal().to_vec();
    d.sort_by(|a, b| a.total_cmp(b));
    if d[1] - d[0] < DEGENERACY_TOL {
        record.rejected = true;
        return Ok(record);
    }

    let arm = |spec: &AnnealSpec,
               terms: &crate::hamiltonian::OperatorTerms|
     -> std::result::Result<GapResult, Error> {
        let curve = sweep(terms, spec)?;
        min_gap(&curve, terms, spec)
    };
    match (arm(&pair.baseline, &baseline), arm(&pair.catalyzed, &catalyzed)) {
        (Ok(free), Ok(cat)) => {
            record.delta = free.delta;
            record.s_star = free.s_star;
            record.degenerate = free.degenerate;
            record.delta_c = cat.delta;
            record.s_star_c = cat.s_star;
            record.degenerate_c = cat.degenerate;
        }
        (r1, r2) => {
            let err = r1.err().or(r2.err()).expect("at least one arm failed");
            record.error = Some(err.with_instance(&id).to_string());
        }
    }
    Ok(record)
}

/// Run a whole batch in parallel with per-instance seeds; output order
/// follows the index order regardless of scheduling.
pub fn run_batch(
    model: GraphModel,
    n: usize,
    count: usize,
    master_seed: u64,
    pair: &AnnealPair,
) -> Result<Vec<ComparisonRecord>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| run_instance(model, n, master_seed, i, pair))
        .collect()
}

/// Batch-level statistics derived from the comparison records.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchStats {
    /// Records inside the hard filter (gap below the threshold).
    pub count: usize,
    /// Usable records before the hard filter.
    pub total: usize,
    pub rejected: usize,
    /// Share of filtered records with a strictly larger catalyzed gap.
    pub fraction_improved: f64,
    pub fraction_ci: (f64, f64),
    /// exp of the mean log gap ratio over the filtered records.
    pub geo_mean_improvement: f64,
    pub geo_mean_ci: (f64, f64),
    /// Ratio distribution per decade of the uncatalyzed gap, over all
    /// usable records.
    pub decade_bins: Vec<DecadeBin>,
}

/// Options for `summarize`; defaults follow the batch analyses this crate
/// reproduces (hard filter at 1e-1, 1000 resamples, 95% intervals).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummarizeOpts {
    pub hard_threshold: f64,
    pub bootstrap_resamples: usize,
    pub ci_level: f64,
    pub bootstrap_seed: u64,
}

impl Default for SummarizeOpts {
    fn default() -> Self {
        Self {
            hard_threshold: HARD_GAP_THRESHOLD,
            bootstrap_resamples: 1000,
            ci_level: 0.95,
            bootstrap_seed: 0,
        }
    }
}

/// Summarize a batch of records.
pub fn summarize(records: &[ComparisonRecord], opts: &SummarizeOpts) -> Result<BatchStats> {
    let rejected = records.iter().filter(|r| r.rejected).count();
    let pairs: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.usable())
        .map(|r| (r.delta, r.delta_c))
        .collect();
    summarize_pairs(&pairs, rejected, opts)
}

/// Core of `summarize` on bare `(delta, delta_c)` pairs; lets results files
/// feed the same statistics without rebuilding full records.
pub fn summarize_pairs(
    pairs: &[(f64, f64)],
    rejected: usize,
    opts: &SummarizeOpts,
) -> Result<BatchStats> {
    let filtered: Vec<(f64, f64)> = pairs
        .iter()
        .cloned()
        .filter(|&(delta, _)| delta < opts.hard_threshold)
        .collect();
    if filtered.is_empty() {
        return Err(Error::Statistics(format!(
            "no usable records below the hard threshold {}",
            opts.hard_threshold
        )));
    }

    let improved = |subset: &[usize]| {
        subset.iter().filter(|&&i| filtered[i].1 > filtered[i].0).count() as f64
            / subset.len() as f64
    };
    let geo = |subset: &[usize]| {
        geometric_mean(subset.iter().map(|&i| filtered[i].1 / filtered[i].0))
    };
    let all: Vec<usize> = (0..filtered.len()).collect();
    let fraction_improved = improved(&all);
    let geo_mean_improvement = geo(&all);
    let fraction_ci = bootstrap_ci(
        filtered.len(),
        opts.bootstrap_resamples,
        opts.ci_level,
        opts.bootstrap_seed,
        improved,
    );
    let geo_mean_ci = bootstrap_ci(
        filtered.len(),
        opts.bootstrap_resamples,
        opts.ci_level,
        opts.bootstrap_seed.wrapping_add(1),
        geo,
    );

    Ok(BatchStats {
        count: filtered.len(),
        total: pairs.len(),
        rejected,
        fraction_improved,
        fraction_ci,
        geo_mean_improvement,
        geo_mean_ci,
        decade_bins: decade_bins(pairs.iter().map(|&(d, dc)| (d, dc / d))),
    })
}

/// One point of the scaling analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingPoint {
    pub model: GraphModel,
    pub n: usize,
    pub stats: BatchStats,
    /// Share of usable instances with a gap below `TINY_GAP_THRESHOLD`.
    pub tiny_gap_share: f64,
    pub tiny_gap_ci: (f64, f64),
}

/// Sweep a list of `(model, n)` settings, computing per-point statistics
/// over `instances_per_point` fresh instances each.
pub fn scaling_sweep(
    settings: &[(GraphModel, usize)],
    instances_per_point: usize,
    master_seed: u64,
    pair: &AnnealPair,
    opts: &SummarizeOpts,
) -> Result<Vec<ScalingPoint>> {
    settings
        .iter()
        .enumerate()
        .map(|(k, &(model, n))| {
            let point_seed = derive_seed(master_seed, 0xa000 + k as u64);
            let records = run_batch(model, n, instances_per_point, point_seed, pair)?;
            let stats = summarize(&records, opts)?;
            let usable: Vec<&ComparisonRecord> = records.iter().filter(|r| r.usable()).collect();
            let tiny: Vec<usize> = (0..usable.len()).collect();
            let tiny_stat = |subset: &[usize]| {
                subset
                    .iter()
                    .filter(|&&i| usable[i].delta < TINY_GAP_THRESHOLD)
                    .count() as f64
                    / subset.len() as f64
            };
            let tiny_gap_share = tiny_stat(&tiny);
            let tiny_gap_ci = bootstrap_ci(
                usable.len(),
                opts.bootstrap_resamples,
                opts.ci_level,
                opts.bootstrap_seed.wrapping_add(2),
                tiny_stat,
            );
            Ok(ScalingPoint {
                model,
                n,
                stats,
                tiny_gap_share,
                tiny_gap_ci,
            })
        })
        .collect()
}

/// Adiabatic run-time proxy `1 / delta^2`; undefined for degenerate gaps.
pub fn anneal_time_estimate(delta: f64) -> Option<f64> {
    if delta < DEGENERACY_TOL || !delta.is_finite() {
        None
    } else {
        Some(1.0 / (delta * delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake_record(delta: f64, delta_c: f64) -> ComparisonRecord {
        ComparisonRecord {
            instance_id: "x".into(),
            model: GraphModel::Er { p: 0.5 },
            n: 6,
            seed: 0,
            coupling: 1.5,
            delta,
            s_star: 0.5,
            degenerate: false,
            delta_c,
            s_star_c: 0.5,
            degenerate_c: false,
            rejected: false,
            error: None,
        }
    }

    #[test]
    fn run_instance_is_deterministic() {
        let pair = AnnealPair::xx(-1.0).with_grid_points(51);
        let model = GraphModel::Er { p: 0.5 };
        let a = run_instance(model, 6, 42, 3, &pair).unwrap();
        let b = run_instance(model, 6, 42, 3, &pair).unwrap();
        assert_eq!(a, b);
        let c = run_instance(model, 6, 42, 4, &pair).unwrap();
        assert_ne!(a.seed, c.seed);
    }

    #[test]
    fn zero_strength_catalyst_changes_nothing() {
        let pair = AnnealPair::xx(0.0).with_grid_points(101);
        let r = run_instance(GraphModel::Er { p: 0.6 }, 6, 7, 0, &pair).unwrap();
        assert!(r.usable());
        assert!((r.delta_c - r.delta).abs() < 1e-10, "{} vs {}", r.delta_c, r.delta);
    }

    #[test]
    fn batch_keeps_index_order_and_matches_single_runs() {
        let pair = AnnealPair::xx(-1.0).with_grid_points(41);
        let model = GraphModel::Ba { m: 2 };
        let batch = run_batch(model, 6, 6, 11, &pair).unwrap();
        for (i, r) in batch.iter().enumerate() {
            let single = run_instance(model, 6, 11, i as u64, &pair).unwrap();
            assert_eq!(*r, single);
        }
    }

    #[test]
    fn summarize_no_improvement_case() {
        let records: Vec<ComparisonRecord> =
            (0..10).map(|_| fake_record(1e-3, 1e-3)).collect();
        let stats = summarize(&records, &SummarizeOpts::default()).unwrap();
        assert_eq!(stats.fraction_improved, 0.0); // strict inequality
        assert!((stats.geo_mean_improvement - 1.0).abs() < 1e-12);
    }

    #[test]
    fn summarize_two_record_arithmetic() {
        let records = vec![fake_record(1e-4, 1e-3), fake_record(1e-2, 5e-3)];
        let stats = summarize(&records, &SummarizeOpts::default()).unwrap();
        assert_eq!(stats.fraction_improved, 0.5);
        assert!((stats.geo_mean_improvement - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(stats.count, 2);
    }

    #[test]
    fn summarize_rejects_empty_filter() {
        let records = vec![fake_record(0.5, 0.6)];
        let err = summarize(&records, &SummarizeOpts::default());
        assert!(matches!(err, Err(Error::Statistics(_))));
    }

    #[test]
    fn statistics_ignore_record_order() {
        let mut records: Vec<ComparisonRecord> = (0..40)
            .map(|i| fake_record(10f64.powf(-1.0 - (i % 7) as f64 * 0.5), 1e-3 * (1 + i % 5) as f64))
            .collect();
        let a = summarize(&records, &SummarizeOpts::default()).unwrap();
        records.reverse();
        records.rotate_left(13);
        let b = summarize(&records, &SummarizeOpts::default()).unwrap();
        assert_eq!(a.fraction_improved, b.fraction_improved);
        assert_eq!(a.geo_mean_improvement, b.geo_mean_improvement);
        assert_eq!(a.decade_bins, b.decade_bins);
    }

    #[test]
    fn bootstrap_interval_brackets_point_estimates() {
        let records: Vec<ComparisonRecord> = (0..60)
            .map(|i| fake_record(1e-2, if i % 3 == 0 { 5e-3 } else { 3e-2 }))
            .collect();
        let stats = summarize(&records, &SummarizeOpts::default()).unwrap();
        assert!(stats.fraction_ci.0 <= stats.fraction_improved);
        assert!(stats.fraction_improved <= stats.fraction_ci.1);
        assert!(stats.geo_mean_ci.0 <= stats.geo_mean_improvement);
        assert!(stats.geo_mean_improvement <= stats.geo_mean_ci.1);
    }

    #[test]
    fn rejected_records_do_not_enter_statistics() {
        let mut rejected = fake_record(1e-5, 1e-2);
        rejected.rejected = true;
        rejected.delta = f64::NAN;
        rejected.delta_c = f64::NAN;
        let records = vec![fake_record(1e-2, 2e-2), rejected];
        let stats = summarize(&records, &SummarizeOpts::default()).unwrap();
        assert_eq!(stats.count, 1);
        assert_eq!(stats.rejected, 1);
        assert_eq!(stats.fraction_improved, 1.0);
    }

    #[test]
    fn anneal_time_scaling() {
        assert_eq!(anneal_time_estimate(1.0), Some(1.0));
        assert_eq!(anneal_time_estimate(1e-3), Some(1e6));
        let t1 = anneal_time_estimate(0.5).unwrap();
        let t2 = anneal_time_estimate(0.25).unwrap();
        assert!((t2 / t1 - 4.0).abs() < 1e-12);
        assert_eq!(anneal_time_estimate(0.0), None);
    }
}
