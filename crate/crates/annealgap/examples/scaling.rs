//! How the catalyst's effect scales with problem size.
//!
//! Runs the three ensembles from the scaling analysis (ER with p = 0.5,
//! BA with constant m = 3, BA with m = n/2) across n = 6..=max_n, tracking
//! the improved fraction over hard instances, the geometric-mean gap
//! improvement, and the share of very small gaps (< 1e-3). Writes the
//! scaling summary file and its SVG rendering.
//!
//! Run:
//!   cargo run --release --example scaling [instances-per-point] [max-n]
//!
//! The defaults (120 instances, max n = 10) finish in a few minutes; the
//! full sweep to n = 12 multiplies the runtime by roughly four.

use annealgap::experiments::{scaling_sweep, AnnealPair, SummarizeOpts};
use annealgap::graph::GraphModel;
use annealgap::io::{write_scaling, ScalingRow};
use annealgap::plot::scaling_svg;

fn main() {
    let count: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(120);
    let max_n: usize = std::env::args()
        .nth(2)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10);
    let sizes: Vec<usize> = (6..=max_n).step_by(2).collect();

    let mut settings: Vec<(GraphModel, usize)> = Vec::new();
    for &n in &sizes {
        settings.push((GraphModel::Er { p: 0.5 }, n));
        settings.push((GraphModel::Ba { m: 3 }, n));
        settings.push((GraphModel::Ba { m: n / 2 }, n));
    }

    eprintln!(
        "scaling sweep: {count} instances per point, n in {sizes:?}, three ensembles ..."
    );
    let pair = AnnealPair::xx(-1.0).with_grid_points(201);
    let points = scaling_sweep(&settings, count, 77, &pair, &SummarizeOpts::default()).unwrap();

    println!("model\tn\tfraction_improved\tgeo_mean\ttiny_gap_share");
    for p in &points {
        println!(
            "{} {}\t{}\t{:.3} ({:.3}..{:.3})\t{:.3} ({:.3}..{:.3})\t{:.4}",
            p.model.tag(),
            p.model.param(),
            p.n,
            p.stats.fraction_improved,
            p.stats.fraction_ci.0,
            p.stats.fraction_ci.1,
            p.stats.geo_mean_improvement,
            p.stats.geo_mean_ci.0,
            p.stats.geo_mean_ci.1,
            p.tiny_gap_share
        );
    }

    let rows: Vec<ScalingRow> = points.iter().map(ScalingRow::from_point).collect();
    let mut file = Vec::new();
    write_scaling(&mut file, &rows).unwrap();
    std::fs::write("scaling.tsv", &file).unwrap();
    std::fs::write("scaling.svg", scaling_svg(&rows).unwrap()).unwrap();
    eprintln!("wrote scaling.tsv and scaling.svg");
}
