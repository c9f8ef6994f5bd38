//! Desk-scale caps guarding operations that materialize per-vertex data.
//!
//! `JEL_MAX_VERTICES`, when set, overrides every cap below. The defaults keep
//! the expensive operations (dense eigenspace bases) well inside interactive
//! runtimes while letting cheap per-vertex scans (partition verification,
//! oracle enumeration) go further.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default vertex cap for dense eigenspace computations.
pub const DEFAULT_EIGENSPACE_CAP: usize = 10_000;
/// Default vertex cap for linear-time per-vertex scans.
pub const DEFAULT_GRAPH_CAP: usize = 100_000;
/// Default vertex cap for the exhaustive negative-set search.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 30;

fn env_override() -> Option<usize> {
    std::env::var("JEL_MAX_VERTICES").ok()?.trim().parse().ok()
}

pub fn eigenspace_cap() -> usize {
    env_override().unwrap_or(DEFAULT_EIGENSPACE_CAP)
}

pub fn graph_cap() -> usize {
    env_override().unwrap_or(DEFAULT_GRAPH_CAP)
}

pub fn exhaustive_cap() -> usize {
    env_override().unwrap_or(DEFAULT_EXHAUSTIVE_CAP)
}

/// Checks `count <= cap` and converts the exact vertex count to `usize`.
pub fn check_cap(count: &BigUint, cap: usize) -> Result<usize> {
    let fits: Option<usize> = count.try_into().ok().filter(|&c: &usize| c <= cap);
    fits.ok_or(Error::CapExceeded {
        needed: count.clone(),
        cap,
    })
}
