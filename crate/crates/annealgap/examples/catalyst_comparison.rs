//! Batch comparison of minimum gaps with and without the stoquastic XX
//! catalyst on random MWIS instances, one ER and one BA ensemble.
//!
//! Prints the improved fraction and geometric-mean improvement with
//! bootstrap intervals, plus the per-decade ratio distribution, and writes
//! scatter and box SVGs next to the current directory.
//!
//! Run:
//!   cargo run --release --example catalyst_comparison [instances-per-ensemble]

use annealgap::experiments::{run_batch, summarize, AnnealPair, SummarizeOpts};
use annealgap::graph::GraphModel;
use annealgap::plot::{box_svg, scatter_svg};
use annealgap::stats::decade_bins;

fn main() {
    let count: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(200);
    let pair = AnnealPair::xx(-1.0).with_grid_points(201);
    let opts = SummarizeOpts::default();

    for (label, model, master) in [
        ("er-p0.6", GraphModel::Er { p: 0.6 }, 11u64),
        ("ba-m4", GraphModel::Ba { m: 4 }, 12u64),
    ] {
        eprintln!("running {count} instances of {label} (n = 10) ...");
        let records = run_batch(model, 10, count, master, &pair).unwrap();
        let all = summarize(
            &records,
            &SummarizeOpts {
                hard_threshold: f64::INFINITY,
                ..opts
            },
        )
        .unwrap();
        let hard = summarize(&records, &opts).unwrap();

        println!("== {label}, n = 10, {} usable instances ({} rejected)", all.count, all.rejected);
        println!(
            "   improved fraction, all instances : {:.3} (95% CI {:.3}..{:.3})",
            all.fraction_improved, all.fraction_ci.0, all.fraction_ci.1
        );
        println!(
            "   improved fraction, gap < 1e-1    : {:.3} over {} instances",
            hard.fraction_improved, hard.count
        );
        println!(
            "   geometric mean ratio, gap < 1e-1 : {:.3} (95% CI {:.3}..{:.3})",
            hard.geo_mean_improvement, hard.geo_mean_ci.0, hard.geo_mean_ci.1
        );
        println!("   ratio by decade of the plain gap:");
        for b in &all.decade_bins {
            println!(
                "     1e{:>3}: {:>4} instances, median {:.3}, mean {:.3}",
                -b.exponent, b.count, b.median, b.mean
            );
        }

        let pairs: Vec<(f64, f64)> = records
            .iter()
            .filter(|r| r.usable())
            .map(|r| (r.delta, r.delta_c))
            .collect();
        let scatter_path = format!("catalyst_comparison_{label}_scatter.svg");
        std::fs::write(&scatter_path, scatter_svg(&pairs).unwrap()).unwrap();
        let bins = decade_bins(pairs.iter().map(|&(d, dc)| (d, dc / d)));
        let box_path = format!("catalyst_comparison_{label}_box.svg");
        std::fs::write(&box_path, box_svg(&bins).unwrap()).unwrap();
        eprintln!("   wrote {scatter_path} and {box_path}");
    }
}
