//! Implementations behind the command-line subcommands. The binary itself
//! only parses flags and maps errors to exit codes; everything here is
//! callable (and tested) as a library.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::encode::encode_mwis;
use crate::error::{Error, Result};
use crate::experiments::{instance_id, instance_parts, summarize_pairs, SummarizeOpts};
use crate::graph::GraphModel;
use crate::hamiltonian::{build_terms, AnnealSpec, Catalyst};
use crate::io::{
    read_instances_lenient, read_results, read_scaling, write_instances, write_results,
    InstanceRecord, ResultRow,
};
use crate::plot::{box_svg, scaling_svg, scatter_svg};
use crate::spectrum::{min_gap, sweep, DEGENERACY_TOL};
use crate::stats::decade_bins;

#[derive(Debug, Clone)]
pub struct GenerateOpts {
    pub model: String,
    pub n: usize,
    pub p: Option<f64>,
    pub m: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub out: PathBuf,
}

fn resolve_model(model: &str, p: Option<f64>, m: Option<usize>) -> Result<GraphModel> {
    match (model, p, m) {
        ("er", Some(p), None) => Ok(GraphModel::Er { p }),
        ("ba", None, Some(m)) => Ok(GraphModel::Ba { m }),
        ("er", None, _) => Err(Error::Parameter("--model er requires --p".into())),
        ("ba", _, None) => Err(Error::Parameter("--model ba requires --m".into())),
        ("er", _, Some(_)) => Err(Error::Parameter("--m is not valid with --model er".into())),
        ("ba", Some(_), _) => Err(Error::Parameter("--p is not valid with --model ba".into())),
        _ => Err(Error::Parameter(format!("unknown model '{model}' (use er or ba)"))),
    }
}

/// Write `count` self-contained instance records, deterministically from
/// the master seed.
pub fn cmd_generate(opts: &GenerateOpts) -> Result<()> {
    let model = resolve_model(&opts.model, opts.p, opts.m)?;
    model.validate(opts.n)?;
    if opts.count == 0 {
        return Err(Error::Parameter("--count must be positive".into()));
    }
    let mut records = Vec::with_capacity(opts.count);
    for i in 0..opts.count as u64 {
        let (graph, coupling, seed) = instance_parts(model, opts.n, opts.seed, i)?;
        records.push(InstanceRecord {
            id: instance_id(model, opts.n, i),
            model: model.tag().to_string(),
            n: opts.n,
            p: opts.p,
            m: opts.m,
            seed,
            j: coupling,
            weights: graph.weights.clone(),
            edges: graph.edges.clone(),
        });
    }
    let file = File::create(&opts.out)?;
    write_instances(BufWriter::new(file), &records)
}

#[derive(Debug, Clone)]
pub struct CompareOpts {
    pub input: PathBuf,
    pub out: PathBuf,
    pub j_c: f64,
    pub grid: usize,
    /// Skip the catalyzed arm entirely.
    pub catalyst_none: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOutcome {
    pub total: usize,
    pub failed: usize,
}

/// Paired gap computation over an instance file; one output row per input
/// record, in input order. Failed records produce a NaN row and a stderr
/// diagnostic instead of aborting the batch.
pub fn cmd_compare(opts: &CompareOpts) -> Result<CompareOutcome> {
    let parsed = read_instances_lenient(File::open(&opts.input)?)?;
    let baseline = AnnealSpec::new(Catalyst::None).with_grid_points(opts.grid);
    let catalyzed = AnnealSpec::new(Catalyst::Xx { j_c: opts.j_c }).with_grid_points(opts.grid);
    baseline.validate()?;

    let rows: Vec<(ResultRow, Option<String>)> = parsed
        .into_par_iter()
        .enumerate()
        .map(|(k, entry)| match entry {
            Err(msg) => (
                ResultRow::failed(&format!("line-{}", k + 1), 0, "?", f64::NAN),
                Some(msg),
            ),
            Ok(rec) => match compare_record(&rec, &baseline, &catalyzed, opts.catalyst_none) {
                Ok(row) => (row, None),
                Err(e) => {
                    let param = rec.p.unwrap_or(rec.m.unwrap_or(0) as f64);
                    (
                        ResultRow::failed(&rec.id, rec.n, &rec.model, param),
                        Some(format!("record {}: {e}", rec.id)),
                    )
                }
            },
        })
        .collect();

    let total = rows.len();
    let mut failed = 0;
    for (_, err) in &rows {
        if let Some(msg) = err {
            eprintln!("annealgap: compare: {msg}");
            failed += 1;
        }
    }
    let file = File::create(&opts.out)?;
    write_results(
        BufWriter::new(file),
        &rows.into_iter().map(|(r, _)| r).collect::<Vec<_>>(),
    )?;
    Ok(CompareOutcome { total, failed })
}

fn compare_record(
    rec: &InstanceRecord,
    baseline: &AnnealSpec,
    catalyzed: &AnnealSpec,
    skip_catalyst: bool,
) -> Result<ResultRow> {
    let model = rec.graph_model()?;
    let graph = rec.graph()?;
    let problem = encode_mwis(&graph, rec.j)?;
    let terms = build_terms(&problem, baseline)?;

    let mut d = terms.diagonal().to_vec();
    d.sort_by(|a, b| a.total_cmp(b));
    if d[1] - d[0] < DEGENERACY_TOL {
        let mut row = ResultRow::failed(&rec.id, rec.n, &rec.model, model.param());
        row.rejected = true;
        return Ok(row);
    }

    let curve = sweep(&terms, baseline).map_err(|e| e.with_instance(&rec.id))?;
    let free = min_gap(&curve, &terms, baseline).map_err(|e| e.with_instance(&rec.id))?;
    let (delta_c, s_star_c) = if skip_catalyst {
        (f64::NAN, f64::NAN)
    } else {
        let terms_c = build_terms(&problem, catalyzed)?;
        let curve_c = sweep(&terms_c, catalyzed).map_err(|e| e.with_instance(&rec.id))?;
        let cat = min_gap(&curve_c, &terms_c, catalyzed).map_err(|e| e.with_instance(&rec.id))?;
        (cat.delta, cat.s_star)
    };
    Ok(ResultRow {
        id: rec.id.clone(),
        n: rec.n,
        model: rec.model.clone(),
        param: model.param(),
        delta: free.delta,
        s_star: free.s_star,
        delta_c,
        s_star_c,
        ratio: delta_c / free.delta,
        rejected: false,
    })
}

#[derive(Debug, Clone)]
pub struct StatsOpts {
    pub input: PathBuf,
    pub hard_threshold: f64,
    pub bootstrap: usize,
    pub bootstrap_seed: u64,
    pub ci_level: f64,
}

/// Text summary of a results file: improved fraction and geometric-mean
/// improvement with bootstrap intervals, plus per-decade box summaries.
pub fn cmd_stats(opts: &StatsOpts) -> Result<String> {
    let rows = read_results(File::open(&opts.input)?)?;
    let rejected = rows.iter().filter(|r| r.rejected).count();
    let pairs: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.usable())
        .map(|r| (r.delta, r.delta_c))
        .collect();
    if pairs.is_empty() {
        return Err(Error::Statistics("no usable rows in the results file".into()));
    }
    let stats = summarize_pairs(
        &pairs,
        rejected,
        &SummarizeOpts {
            hard_threshold: opts.hard_threshold,
            bootstrap_resamples: opts.bootstrap,
            ci_level: opts.ci_level,
            bootstrap_seed: opts.bootstrap_seed,
        },
    )?;

    let mut out = String::new();
    use std::fmt::Write as _;
    let pct = opts.ci_level * 100.0;
    let _ = writeln!(out, "records: {} usable, {} rejected", stats.total, stats.rejected);
    let _ = writeln!(
        out,
        "hard filter delta < {}: {} records",
        opts.hard_threshold, stats.count
    );
    let _ = writeln!(
        out,
        "fraction improved: {:.4} ({pct:.0}% CI {:.4}..{:.4})",
        stats.fraction_improved, stats.fraction_ci.0, stats.fraction_ci.1
    );
    let _ = writeln!(
        out,
        "geometric mean improvement: {:.4} ({pct:.0}% CI {:.4}..{:.4})",
        stats.geo_mean_improvement, stats.geo_mean_ci.0, stats.geo_mean_ci.1
    );
    let _ = writeln!(out, "decade bins of the gap ratio (all usable records):");
    for b in &stats.decade_bins {
        let _ = writeln!(
            out,
            "  1e{:>3}: count {:>6}  median {:.4}  mean {:.4}  q1 {:.4}  q3 {:.4}  whiskers {:.4}..{:.4}  outliers {}",
            -b.exponent,
            b.count,
            b.median,
            b.mean,
            b.q1,
            b.q3,
            b.whisker_lo,
            b.whisker_hi,
            b.outliers.len()
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Scatter,
    Box,
    Scaling,
}

#[derive(Debug, Clone)]
pub struct PlotOpts {
    pub input: PathBuf,
    pub kind: PlotKind,
    pub out: PathBuf,
}

/// Render a results or scaling file to a static SVG.
pub fn cmd_plot(opts: &PlotOpts) -> Result<()> {
    let svg = match opts.kind {
        PlotKind::Scatter => {
            let rows = usable_rows(&opts.input)?;
            scatter_svg(&rows.iter().map(|r| (r.delta, r.delta_c)).collect::<Vec<_>>())?
        }
        PlotKind::Box => {
            let rows = usable_rows(&opts.input)?;
            let bins = decade_bins(rows.iter().map(|r| (r.delta, r.ratio)));
            box_svg(&bins)?
        }
        PlotKind::Scaling => {
            let rows = read_scaling(File::open(&opts.input)?)?;
            scaling_svg(&rows)?
        }
    };
    let mut file = BufWriter::new(File::create(&opts.out)?);
    file.write_all(svg.as_bytes())?;
    Ok(())
}

fn usable_rows(path: &Path) -> Result<Vec<ResultRow>> {
    let rows = read_results(File::open(path)?)?;
    let usable: Vec<ResultRow> = rows.into_iter().filter(|r| r.usable()).collect();
    if usable.is_empty() {
        return Err(Error::Statistics("no usable rows in the results file".into()));
    }
    Ok(usable)
}
