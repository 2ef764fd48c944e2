use annealgap::experiments::{run_instance, AnnealPair};
use annealgap::graph::GraphModel;
use std::time::Instant;

fn main() {
    for (n, count, grid) in [(10usize, 10usize, 201usize), (10, 10, 501), (12, 3, 201), (8, 10, 201), (6, 10, 201)] {
        let pair = AnnealPair::xx(-1.0).with_grid_points(grid);
        let t0 = Instant::now();
        let mut hard = 0;
        for i in 0..count {
            let r = run_instance(GraphModel::Er { p: 0.5 }, n, 12345, i as u64, &pair).unwrap();
            if r.usable() && r.delta < 1e-1 { hard += 1; }
        }
        let dt = t0.elapsed().as_secs_f64();
        println!("n={n} grid={grid}: {:.3} s/instance  ({count} instances, {hard} hard, total {:.1} s)", dt / count as f64, dt);
    }
}
