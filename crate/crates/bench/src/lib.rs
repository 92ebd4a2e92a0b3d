//! Fixed benchmark workloads shared by the criterion benches.

use didp::benchmarks::{random, ProblemClass};
use didp::Model;

/// Seeds per class in [`suite`].
pub const SEEDS: u64 = 8;

/// Small random models of `class`, the same on every run.
pub fn suite(class: ProblemClass) -> Vec<Model> {
    (0..SEEDS)
        .map(|seed| random::tiny(class, seed).build().expect("generated instances build"))
        .collect()
}
