//! Desk-scale exact determination of the minimum negative-entry count of
//! zero-free eigenvectors, by exhaustive sign-pattern feasibility over the
//! eigenspace, plus a seeded randomized descent for upper bounds.
//!
//! A candidate negative set S is feasible when some v in V_i has strictly
//! negative entries exactly on S and strictly positive entries elsewhere;
//! that is a strict-sign linear feasibility problem over the eigenspace
//! basis. Candidate sets are scanned by size ascending, so the first
//! feasible size is exactly the minimum.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::bounds::{
    build_even_partition, build_odd_partition, even_quotient_eigenvector, lift_eigenvector,
    odd_quotient_eigenvector, verify_equitable,
};
use crate::caps;
use crate::combinat::JohnsonParams;
use crate::error::{Error, Result};
use crate::exactlinalg::{strict_feasibility, RatMatrix, Sign};
use crate::spectra::{adjacency_apply, eigenspace_basis, eigenvalue, sign_census, SchemeVector};

/// A proposed set X_-(v) of vertex ranks. Zero-free eigenvectors for i >= 1
/// are orthogonal to the all-ones vector, so their negative set is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeSet {
    pub params: JohnsonParams,
    pub i: u32,
    pub vertices: BTreeSet<usize>,
}

impl NegativeSet {
    pub fn new(params: JohnsonParams, i: u32, vertices: BTreeSet<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParams("negative set must be nonempty".into()));
        }
        let total = params.vertex_count_capped(usize::MAX)?;
        if let Some(&max) = vertices.iter().next_back() {
            if max >= total {
                return Err(Error::OutOfRange(format!(
                    "vertex rank {max} >= C(n,w) = {total}"
                )));
            }
        }
        Ok(NegativeSet {
            params,
            i,
            vertices,
        })
    }
}

/// Outcome value of a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchValue {
    /// The exact minimum.
    Exact(usize),
    /// Every size up to the scanned maximum was infeasible.
    GreaterThan(usize),
    /// Best value seen by an incomplete (randomized) search.
    UpperBound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub value: SearchValue,
    pub witness: Option<SchemeVector>,
    /// Number of candidate sets tested for feasibility.
    pub explored: usize,
    pub method: SearchMethod,
}

/// Solves the sign-pattern LP for a candidate negative set over a
/// precomputed eigenspace basis; verifies any witness independently.
fn solve_negative_set(
    params: JohnsonParams,
    i: u32,
    basis: &RatMatrix,
    set: &BTreeSet<usize>,
) -> Result<Option<SchemeVector>> {
    let signs: Vec<Sign> = (0..basis.nrows())
        .map(|r| {
            if set.contains(&r) {
                Sign::Neg
            } else {
                Sign::Pos
            }
        })
        .collect();
    let Some(coeffs) = strict_feasibility(basis, &signs)? else {
        return Ok(None);
    };
    let entries = basis.mul_vec(&coeffs)?;
    let mut v = SchemeVector::new(params, entries)?;
    v.normalize_primitive();
    verify_witness(&v, i, set.len())?;
    Ok(Some(v))
}

/// Independent recheck of a witness: exact eigenvector, zero-free, claimed
/// negative count.
fn verify_witness(v: &SchemeVector, i: u32, expected_negatives: usize) -> Result<()> {
    let p = v.params();
    let lambda = BigInt::from(eigenvalue(i, p.n, p.w)?);
    let av = adjacency_apply(p, v.entries());
    for (a, x) in av.iter().zip(v.entries()) {
        if *a != crate::exactlinalg::Rat::from_integer(lambda.clone()) * x {
            return Err(Error::NotEigenvector(
                "witness failed the exact eigenvector recheck".into(),
            ));
        }
    }
    let (_, neg, zero) = sign_census(v);
    if zero != 0 {
        return Err(Error::ZeroEntry("witness has a zero entry".into()));
    }
    if neg != expected_negatives {
        return Err(Error::NotEigenvector(format!(
            "witness has {neg} negatives, expected {expected_negatives}"
        )));
    }
    Ok(())
}

/// Exact zero-free eigenvector with X_-(v) = S, or None when infeasible.
pub fn feasible_negative_set(s: &NegativeSet) -> Result<Option<SchemeVector>> {
    let basis = eigenspace_basis(s.i, s.params)?;
    solve_negative_set(s.params, s.i, &basis, &s.vertices)
}

/// Smallest s <= s_max admitting a feasible negative set of size s, with a
/// verified witness; "greater than s_max" otherwise.
///
/// Candidate sets of each size are enumerated in lexicographic order and
/// tested in parallel chunks; the reported witness belongs to the
/// lexicographically least feasible set, independent of thread count.
pub fn min_negatives_exhaustive(
    i: u32,
    params: JohnsonParams,
    s_max: usize,
) -> Result<SearchResult> {
    let total = params.vertex_count_capped(caps::exhaustive_cap())?;
    let basis = eigenspace_basis(i, params)?;
    let mut explored = 0usize;
    const CHUNK: usize = 64;

    for size in 0..=s_max.min(total) {
        let combos = (0..total).combinations(size);
        for chunk in &combos.chunks(CHUNK) {
            let chunk: Vec<Vec<usize>> = chunk.collect();
            explored += chunk.len();
            let hits: Vec<(usize, SchemeVector)> = chunk
                .par_iter()
                .enumerate()
                .filter_map(|(idx, combo)| {
                    let set: BTreeSet<usize> = combo.iter().copied().collect();
                    match solve_negative_set(params, i, &basis, &set) {
                        Ok(Some(v)) => Some(Ok((idx, v))),
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some((_, witness)) = hits.into_iter().min_by_key(|(idx, _)| *idx) {
                return Ok(SearchResult {
                    value: SearchValue::Exact(size),
                    witness: Some(witness),
                    explored,
                    method: SearchMethod::Exhaustive,
                });
            }
        }
    }
    Ok(SearchResult {
        value: SearchValue::GreaterThan(s_max),
        witness: None,
        explored,
        method: SearchMethod::Exhaustive,
    })
}

/// Zero-free starting eigenvector for the randomized search: the lifted
/// construction eigenvector where one exists, otherwise a random integer
/// combination of basis columns.
fn starting_vector(
    i: u32,
    params: JohnsonParams,
    basis: &RatMatrix,
    rng: &mut StdRng,
) -> Result<SchemeVector> {
    if i == 2 && params.w == 3 && params.n >= 8 {
        let lifted = if params.n.is_multiple_of(2) {
            let r = params.n / 2;
            let p = build_even_partition(r)?;
            let q = verify_equitable(&p)?;
            let u = even_quotient_eigenvector(&q, r)?;
            lift_eigenvector(&p, &u)?.0
        } else {
            let r = (params.n - 1) / 2;
            let p = build_odd_partition(r)?;
            let u = odd_quotient_eigenvector(r);
            lift_eigenvector(&p, &u)?.0
        };
        if lifted.is_zero_free() {
            return Ok(lifted);
        }
    }
    for _ in 0..500 {
        let coeffs: Vec<_> = (0..basis.ncols())
            .map(|_| crate::exactlinalg::rat(rng.gen_range(-9i64..=9)))
            .collect();
        let entries = basis.mul_vec(&coeffs)?;
        let v = SchemeVector::new(params, entries)?;
        if v.is_zero_free() {
            return Ok(v);
        }
    }
    Err(Error::NoZeroFreeStart)
}

/// Seeded local descent on negative sets: single-vertex removals, accepted
/// when still feasible. The result is an upper bound only.
pub fn random_upper_search(
    i: u32,
    params: JohnsonParams,
    iterations: usize,
    seed: u64,
) -> Result<SearchResult> {
    params.vertex_count_capped(caps::eigenspace_cap())?;
    let basis = eigenspace_basis(i, params)?;
    let mut rng = StdRng::seed_from_u64(seed);

    let mut witness = {
        let mut v = starting_vector(i, params, &basis, &mut rng)?;
        v.normalize_primitive();
        v
    };
    let mut current: BTreeSet<usize> = witness
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| num_traits::Signed::is_negative(*e))
        .map(|(r, _)| r)
        .collect();
    verify_witness(&witness, i, current.len())?;

    let mut explored = 0usize;
    for _ in 0..iterations {
        if current.len() <= 1 {
            break;
        }
        let victim = *current
            .iter()
            .nth(rng.gen_range(0..current.len()))
            .expect("nonempty");
        let mut candidate = current.clone();
        candidate.remove(&victim);
        explored += 1;
        if let Some(v) = solve_negative_set(params, i, &basis, &candidate)? {
            current = candidate;
            witness = v;
        }
    }

    Ok(SearchResult {
        value: SearchValue::UpperBound(current.len()),
        witness: Some(witness),
        explored,
        method: SearchMethod::Randomized,
    })
}

/// Witness export: {n, w, i, lambda, entries: [{rank, num, den}]}.
pub fn export_witness_json(v: &SchemeVector, i: u32) -> Result<serde_json::Value> {
    let p = v.params();
    let lambda = eigenvalue(i, p.n, p.w)?;
    let entries: Vec<serde_json::Value> = v
        .entries()
        .iter()
        .enumerate()
        .map(|(rank, e)| {
            serde_json::json!({
                "rank": rank,
                "num": e.numer().to_string(),
                "den": e.denom().to_string(),
            })
        })
        .collect();
    Ok(serde_json::json!({
        "n": p.n,
        "w": p.w,
        "i": i,
        "lambda": lambda,
        "entries": entries,
    }))
}
