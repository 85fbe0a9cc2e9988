#![allow(dead_code)]

use logsum::harness::config::GeneratorSpec;
use logsum::harness::rng::{rng_from_seed, TrialRng};
use logsum::matfun::{max_norm, HermitianMatrix};

pub fn rng(seed: u64) -> TrialRng {
    rng_from_seed(seed)
}

pub fn spec() -> GeneratorSpec {
    GeneratorSpec::default()
}

/// `‖a - b‖_max / max(1, ‖a‖_max, ‖b‖_max)`.
pub fn rel_diff(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    max_norm(&(a.matrix() - b.matrix())) / 1f64.max(a.max_norm()).max(b.max_norm())
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
