// temporary: preview bin medians and scaling trends before the full acceptance run
use annealgap::experiments::{run_batch, AnnealPair, ComparisonRecord};
use annealgap::graph::GraphModel;
use annealgap::stats::quantile_sorted;

fn medians(records: &[&ComparisonRecord]) -> (usize, f64, usize, f64) {
    let mut tiny: Vec<f64> = records.iter().filter(|r| r.delta < 1e-3).map(|r| r.delta_c / r.delta).collect();
    let mut d1: Vec<f64> = records.iter().filter(|r| r.delta > 1e-2 && r.delta <= 1e-1).map(|r| r.delta_c / r.delta).collect();
    tiny.sort_by(|a, b| a.total_cmp(b));
    d1.sort_by(|a, b| a.total_cmp(b));
    let mt = if tiny.is_empty() { f64::NAN } else { quantile_sorted(&tiny, 0.5) };
    let m1 = if d1.is_empty() { f64::NAN } else { quantile_sorted(&d1, 0.5) };
    (tiny.len(), mt, d1.len(), m1)
}

fn main() {
    let count = 300;
    // criterion 5 preview: stoquastic pooled bins
    for (label, jc, models) in [
        ("c5 ER jc=-1", -1.0, vec![GraphModel::Er { p: 0.25 }, GraphModel::Er { p: 0.4 }, GraphModel::Er { p: 0.6 }, GraphModel::Er { p: 0.8 }]),
        ("c5 BA jc=-1", -1.0, vec![GraphModel::Ba { m: 3 }, GraphModel::Ba { m: 4 }, GraphModel::Ba { m: 5 }, GraphModel::Ba { m: 6 }]),
        ("c6 pooled jc=+1", 1.0, vec![GraphModel::Er { p: 0.4 }, GraphModel::Er { p: 0.6 }, GraphModel::Ba { m: 4 }, GraphModel::Ba { m: 5 }]),
    ] {
        let pair = AnnealPair::xx(jc).with_grid_points(201);
        let mut all: Vec<ComparisonRecord> = Vec::new();
        for (i, model) in models.into_iter().enumerate() {
            all.extend(run_batch(model, 10, count, 0x900 + i as u64, &pair).unwrap());
        }
        let usable: Vec<&ComparisonRecord> = all.iter().filter(|r| r.usable()).collect();
        let (nt, mt, n1, m1) = medians(&usable);
        println!("{label}: tiny bin n={nt} median={mt:.3}; 1e-1 bin n={n1} median={m1:.3}");
    }
    // criterion 7 preview: trends at n=6..10
    for (label, model) in [("ER p=0.5", GraphModel::Er { p: 0.5 }), ("BA m=3", GraphModel::Ba { m: 3 })] {
        let pair = AnnealPair::xx(-1.0).with_grid_points(201);
        for n in [6usize, 8, 10] {
            let recs = run_batch(model, n, if n < 10 { 800 } else { 300 }, 0xa00 + n as u64, &pair).unwrap();
            let usable: Vec<&ComparisonRecord> = recs.iter().filter(|r| r.usable()).collect();
            let hard: Vec<f64> = usable.iter().filter(|r| r.delta < 1e-1).map(|r| (r.delta_c / r.delta).ln()).collect();
            let geo = (hard.iter().sum::<f64>() / hard.len() as f64).exp();
            let tiny_share = usable.iter().filter(|r| r.delta < 1e-3).count() as f64 / usable.len() as f64;
            println!("{label} n={n}: geo {geo:.3} (hard n={}), tiny share {tiny_share:.4}", hard.len());
        }
    }
}
