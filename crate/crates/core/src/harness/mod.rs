//! Synthetic corpora and the measurements reported by `chc bench`.

mod experiments;
mod zipf;

pub use experiments::{
    measure_rare_occurrences, rare_length_threshold, run_point, write_csv, BenchRow, PointReport,
};
pub use zipf::{zipf_generate, SplitMix64, ZipfSpec};
