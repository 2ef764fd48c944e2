//! Minimum spectral gap statistics for quantum annealing of maximum
//! weighted independent set problems on random graphs.
//!
//! The crate generates random MWIS instances on Erdős–Rényi and
//! Barabási–Albert graphs, encodes them into Ising problem Hamiltonians,
//! assembles the annealing operator with an optional multi-edge XX
//! catalyst, and tracks the two lowest energy levels across the schedule
//! to locate the minimum gap. Batch runners compare the catalyzed and
//! catalyst-free gap on identical instances and derive the headline
//! statistics: improved fraction, geometric-mean improvement, per-decade
//! box summaries and scaling series, all with seeded bootstrap intervals.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --release --example gap_curve
//! cargo run --release --example catalyst_comparison
//! cargo run --release --example nonstoquastic_catalyst
//! cargo run --release --example scaling
//! ```
//!
//! or the `annealgap` binary (`generate`, `compare`, `stats`, `plot`).

pub mod cli;
pub mod eigen;
pub mod encode;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod hamiltonian;
pub mod io;
pub mod oracle;
pub mod plot;
pub mod rng;
pub mod spectrum;
pub mod stats;

pub use eigen::EigMethod;
pub use encode::{draw_coupling, encode_mwis, IsingProblem};
pub use error::{Error, Result};
pub use experiments::{
    anneal_time_estimate, run_batch, run_instance, scaling_sweep, summarize, AnnealPair,
    BatchStats, ComparisonRecord, ScalingPoint, SummarizeOpts,
};
pub use graph::{generate, generate_ba, generate_er, GraphModel, WeightedGraph};
pub use hamiltonian::{build_terms, AnnealSpec, Catalyst, OperatorTerms};
pub use oracle::{classical_spectrum, solve_mwis_exhaustive, MwisSolution};
pub use spectrum::{lowest_two, min_gap, sweep, GapCurve, GapResult};
