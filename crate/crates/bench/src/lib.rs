//! Shared inputs for the benchmarks.

use bforest_core::{validate_spec, ConnectionSpec, RawSpec};

/// The four reference families: α = {1}, γ = {0}, with β = {1} for
/// family 1 and the half-turn flags selecting families 2–4.
pub fn fixture(family: u8, n: u64) -> ConnectionSpec {
    let (betas, half_r, half_t) = match family {
        1 => (vec![1], false, false),
        2 => (vec![], true, false),
        3 => (vec![], false, true),
        _ => (vec![], true, true),
    };
    let raw = RawSpec { n, alphas: vec![1], betas, gammas: vec![0], half_r, half_t };
    validate_spec(&raw, true).expect("fixture is valid")
}

/// A denser spec with two jumps on each side and two spokes.
pub fn wide(n: u64) -> ConnectionSpec {
    let raw = RawSpec { n, alphas: vec![1, 3], betas: vec![2, 5], gammas: vec![0, 1], half_r: false, half_t: false };
    validate_spec(&raw, true).expect("spec is valid")
}
