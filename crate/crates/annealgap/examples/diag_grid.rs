// temporary: grid-resolution sensitivity of the improved fraction
use annealgap::encode::{draw_coupling, encode_mwis};
use annealgap::graph::{generate, GraphModel};
use annealgap::hamiltonian::{build_terms, AnnealSpec, Catalyst};
use annealgap::rng::derive_seed;
use annealgap::spectrum::{min_gap, sweep};
use rayon::prelude::*;

fn main() {
    for (label, model) in [
        ("ER p=0.8", GraphModel::Er { p: 0.8 }),
        ("BA m=6", GraphModel::Ba { m: 6 }),
    ] {
        let outcomes: Vec<(bool, bool, bool)> = (0..100u64).into_par_iter().map(|idx| {
            let seed = derive_seed(4242, idx);
            let g = generate(model, 10, seed).unwrap();
            let j = draw_coupling(derive_seed(seed, 0xc001));
            let p = encode_mwis(&g, j).unwrap();
            let gap_for = |catalyst: Catalyst, grid: usize, refine: bool| -> f64 {
                let spec = AnnealSpec::new(catalyst).with_grid_points(grid);
                let t = build_terms(&p, &spec).unwrap();
                let curve = sweep(&t, &spec).unwrap();
                if refine {
                    min_gap(&curve, &t, &spec).unwrap().delta
                } else {
                    curve.gap(curve.min_index())
                }
            };
            let r201 = gap_for(Catalyst::Xx { j_c: -1.0 }, 201, true) > gap_for(Catalyst::None, 201, true);
            let r501 = gap_for(Catalyst::Xx { j_c: -1.0 }, 501, true) > gap_for(Catalyst::None, 501, true);
            let c201 = gap_for(Catalyst::Xx { j_c: -1.0 }, 201, false) > gap_for(Catalyst::None, 201, false);
            (r201, r501, c201)
        }).collect();
        let f = |sel: fn(&(bool, bool, bool)) -> bool| outcomes.iter().filter(|o| sel(o)).count();
        println!("{label}: improved 201+refine {}, 501+refine {}, 201 coarse {}", f(|o| o.0), f(|o| o.1), f(|o| o.2));
    }
}
