// temporary: catalyst-strength sensitivity of the improved fraction
use annealgap::experiments::{run_batch, AnnealPair};
use annealgap::graph::GraphModel;

fn main() {
    for (label, model) in [
        ("ER p=0.25", GraphModel::Er { p: 0.25 }),
        ("ER p=0.8", GraphModel::Er { p: 0.8 }),
        ("BA m=6", GraphModel::Ba { m: 6 }),
    ] {
        for jc in [-0.5, -1.0, -2.0] {
            let pair = AnnealPair::xx(jc).with_grid_points(201);
            let recs = run_batch(model, 10, 100, 777, &pair).unwrap();
            let usable = recs.iter().filter(|r| r.usable()).count();
            let improved = recs.iter().filter(|r| r.usable() && r.delta_c > r.delta).count();
            println!("{label} jc={jc}: improved {improved}/{usable}");
        }
    }
}
