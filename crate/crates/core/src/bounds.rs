//! Bounds on the minimum number of negative entries of zero-free
//! eigenvectors: the weight-distribution lower bound, anticode ratio bounds,
//! equitable partitions with exact quotient matrices, the two explicit
//! J(n,3) constructions with their quadratic upper bounds, and aggregated
//! bound reports.

use std::io::{BufRead, Write};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::caps;
use crate::combinat::{binomial, vertices, vertices_from, JohnsonParams, RankTable};
use crate::error::{Error, Result};
use crate::exactlinalg::{nullspace, rat, Rat, RatMatrix, RatVector};
use crate::spectra::{eberlein, eigenvalue, SchemeVector};

/// A partition of the vertex set of J(n,w) into parts 0..r-1 (rendered
/// 1-based in the file format).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    params: JohnsonParams,
    part_of: Vec<u32>,
    part_sizes: Vec<usize>,
}

impl VertexPartition {
    /// Validates that every vertex is assigned and no part is empty.
    pub fn new(params: JohnsonParams, part_of: Vec<u32>) -> Result<Self> {
        let n = params.vertex_count_capped(caps::graph_cap())?;
        if part_of.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} assignments for {} vertices",
                part_of.len(),
                n
            )));
        }
        let r = match part_of.iter().max() {
            Some(&m) => m as usize + 1,
            None => return Err(Error::InvalidParams("empty partition".into())),
        };
        let mut part_sizes = vec![0usize; r];
        for &p in &part_of {
            part_sizes[p as usize] += 1;
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidParams("partition has an empty part".into()));
        }
        Ok(VertexPartition {
            params,
            part_of,
            part_sizes,
        })
    }

    pub fn params(&self) -> JohnsonParams {
        self.params
    }

    pub fn num_parts(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_of(&self, rank: usize) -> u32 {
        self.part_of[rank]
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn assignments(&self) -> &[u32] {
        &self.part_of
    }
}

/// The r x r matrix of between-part neighbor counts of an equitable
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    entries: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Result<Self> {
        let r = entries.len();
        if entries.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch(
                "quotient matrix must be square".into(),
            ));
        }
        Ok(QuotientMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn to_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_rows(&self.entries).expect("square by construction")
    }
}

/// Weight-distribution lower bound: 1 + sum over k >= 1 with E_k(i,w,n) >= 0
/// of (E_k + 1).
pub fn wd_lower_bound(i: u32, n: u32, w: u32) -> Result<BigUint> {
    JohnsonParams::new(n, w)?;
    if i < 1 || i > w {
        return Err(Error::OutOfRange(format!(
            "need 1 <= i <= w, got i={i}, w={w}"
        )));
    }
    let mut acc = BigUint::one();
    for k in 1..=w {
        let e = eberlein(k, i, w, n)?;
        if !e.is_negative() {
            acc += e.to_biguint().unwrap() + BigUint::one();
        }
    }
    Ok(acc)
}

/// Anticode lower bound n-2 on the w=3, i=2 case for n = 1,3 (mod 6),
/// computed as C(n,3) divided by the size of a Steiner triple system.
pub fn sts_anticode_lower(n: u32) -> Result<BigUint> {
    if n < 7 {
        return Err(Error::OutOfRange(format!(
            "bound established only for n >= 7, got {n}"
        )));
    }
    if n % 6 != 1 && n % 6 != 3 {
        return Err(Error::CongruenceViolated(format!(
            "n = {n} is not 1 or 3 mod 6; no Steiner triple system"
        )));
    }
    let sts = BigUint::from(n as u64 * (n as u64 - 1));
    assert!((&sts % 6u32).is_zero());
    let sts = sts / 6u32;
    let total = binomial(n as u64, 3);
    assert!(
        (&total % &sts).is_zero(),
        "anticode size must divide C(n,3)"
    );
    let value = total / sts;
    debug_assert_eq!(value, BigUint::from(n as u64 - 2));
    Ok(value)
}

/// Per-part neighbor counts of every vertex, computed in parallel chunks.
fn neighbor_count_matrix(p: &VertexPartition) -> Result<Vec<u32>> {
    let params = p.params();
    let n = params.vertex_count_capped(caps::graph_cap())?;
    let r = p.num_parts();
    let chunk = 1024usize;
    let mut counts = vec![0u32; n * r];
    counts
        .par_chunks_mut(chunk * r)
        .enumerate()
        .try_for_each(|(ci, slice)| -> Result<()> {
            let start = ci * chunk;
            let len = slice.len() / r;
            let table = RankTable::new(params);
            let mut nbrs = Vec::with_capacity(params.degree() as usize);
            let mut it = vertices_from(params, start)?;
            for local in 0..len {
                let x = it.next().expect("rank in range");
                nbrs.clear();
                crate::combinat::neighbor_ranks(params, x.elements(), &table, &mut nbrs);
                let row = &mut slice[local * r..(local + 1) * r];
                for &y in &nbrs {
                    row[p.part_of(y) as usize] += 1;
                }
            }
            Ok(())
        })?;
    Ok(counts)
}

/// Checks every vertex's per-part neighbor counts and returns the quotient
/// matrix, or a least-rank witness vertex when the partition is not
/// equitable.
pub fn verify_equitable(p: &VertexPartition) -> Result<QuotientMatrix> {
    let params = p.params();
    let n = params.vertex_count_capped(caps::graph_cap())?;
    let r = p.num_parts();
    let counts = neighbor_count_matrix(p)?;

    let mut rep: Vec<Option<usize>> = vec![None; r];
    for rank in 0..n {
        let part = p.part_of(rank) as usize;
        match rep[part] {
            None => rep[part] = Some(rank),
            Some(first) => {
                if counts[first * r..(first + 1) * r] != counts[rank * r..(rank + 1) * r] {
                    return Err(Error::NotEquitable {
                        vertex: rank,
                        counts: counts[rank * r..(rank + 1) * r]
                            .iter()
                            .map(|&c| c as usize)
                            .collect(),
                    });
                }
            }
        }
    }

    let entries: Vec<Vec<i64>> = rep
        .iter()
        .map(|first| {
            let first = first.expect("no empty parts");
            counts[first * r..(first + 1) * r]
                .iter()
                .map(|&c| c as i64)
                .collect()
        })
        .collect();
    let q = QuotientMatrix::from_rows(entries)?;

    // Row sums equal the degree and |C_a| A_ab = |C_b| A_ba.
    let degree = params.degree() as i64;
    for row in q.rows() {
        assert_eq!(row.iter().sum::<i64>(), degree);
    }
    for a in 0..r {
        for b in 0..r {
            assert_eq!(
                p.part_sizes()[a] as i64 * q.entry(a, b),
                p.part_sizes()[b] as i64 * q.entry(b, a)
            );
        }
    }
    Ok(q)
}

/// True iff u is nonzero and Q u = lambda u exactly.
pub fn verify_quotient_eigvec(q: &QuotientMatrix, u: &[Rat], lambda: i64) -> Result<bool> {
    if u.len() != q.size() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvector has {} entries for a {}x{} quotient",
            u.len(),
            q.size(),
            q.size()
        )));
    }
    if u.iter().all(Rat::is_zero) {
        return Ok(false);
    }
    let qu = q.to_rat_matrix().mul_vec(u)?;
    let lambda = rat(lambda);
    Ok(qu.iter().zip(u).all(|(a, x)| *a == &lambda * x))
}

/// Determines the eigenvalue of u against Q; errors if u is not an exact
/// eigenvector with an integer eigenvalue.
fn quotient_eigenvalue(q: &QuotientMatrix, u: &[Rat]) -> Result<i64> {
    let j = u
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| Error::NotEigenvector("zero vector".into()))?;
    let qu = q.to_rat_matrix().mul_vec(u)?;
    let lambda = &qu[j] / &u[j];
    if !lambda.is_integer() {
        return Err(Error::NotEigenvector(format!(
            "candidate eigenvalue {lambda} is not an integer"
        )));
    }
    let lambda_int: i64 = lambda
        .to_integer()
        .try_into()
        .map_err(|_| Error::NotEigenvector("eigenvalue out of i64 range".into()))?;
    if !verify_quotient_eigvec(q, u, lambda_int)? {
        return Err(Error::NotEigenvector(
            "vector is not an exact quotient eigenvector".into(),
        ));
    }
    Ok(lambda_int)
}

/// Lifts a quotient eigenvector to the part-constant vector on J(n,w);
/// returns the lifted vector and its eigenvalue.
pub fn lift_eigenvector(p: &VertexPartition, u: &[Rat]) -> Result<(SchemeVector, i64)> {
    let q = verify_equitable(p)?;
    let lambda = quotient_eigenvalue(&q, u)?;
    let entries: RatVector = p
        .assignments()
        .iter()
        .map(|&part| u[part as usize].clone())
        .collect();
    Ok((SchemeVector::new(p.params(), entries)?, lambda))
}

/// Upper bound from an equitable partition: the total size of the parts carrying
/// negative eigenvector coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionBound {
    pub value: BigUint,
    /// True when u has no negative coordinate (the all-ones case); the bound
    /// is then 0 and vacuous, reported rather than refused.
    pub vacuous: bool,
}

pub fn negative_parts_bound(p: &VertexPartition, u: &[Rat]) -> Result<PartitionBound> {
    let q = verify_equitable(p)?;
    quotient_eigenvalue(&q, u)?;
    if let Some(j) = u.iter().position(Rat::is_zero) {
        return Err(Error::ZeroEntry(format!(
            "quotient eigenvector has a zero coordinate at part {}",
            j + 1
        )));
    }
    let mut value = BigUint::zero();
    let mut any_negative = false;
    for (j, v) in u.iter().enumerate() {
        if v.is_negative() {
            any_negative = true;
            value += BigUint::from(p.part_sizes()[j]);
        }
    }
    Ok(PartitionBound {
        value,
        vacuous: !any_negative,
    })
}

/// Side of the bipartition {1..r} / {r+1..2r}.
fn side(v: u32, r: u32) -> u32 {
    u32::from(v > r)
}

/// Adjacency in the matching-complement graph: cross pairs except i <-> r+i.
fn crossing_adjacent(a: u32, b: u32, r: u32) -> bool {
    if side(a, r) == side(b, r) {
        return false;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi != lo + r
}

/// Equitable 2-partition of J(2r,3) from the complement of a perfect
/// matching inside the complete bipartite graph: part 0 collects the
/// same-side triples and the two-edge triples, part 1 the one-edge triples.
pub fn build_even_partition(r: u32) -> Result<VertexPartition> {
    if r < 3 {
        return Err(Error::InvalidParams(format!(
            "even construction needs r >= 3 for nonempty parts, got r={r}"
        )));
    }
    let params = JohnsonParams::new(2 * r, 3)?;
    params.vertex_count_capped(caps::graph_cap())?;
    let part_of: Vec<u32> = vertices(params)
        .map(|x| {
            let e = x.elements();
            let same_side = side(e[0], r) == side(e[1], r) && side(e[1], r) == side(e[2], r);
            if same_side {
                return 0;
            }
            let edges = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .filter(|&&(a, b)| crossing_adjacent(e[a], e[b], r))
                .count();
            debug_assert!(edges == 1 || edges == 2);
            if edges == 2 {
                0
            } else {
                1
            }
        })
        .collect();
    VertexPartition::new(params, part_of)
}

/// Closed-form 2x2 quotient of the even construction, valid for r >= 4.
pub fn even_quotient_formula(r: u32) -> QuotientMatrix {
    let r = r as i64;
    QuotientMatrix::from_rows(vec![vec![3 * (2 * r - 5), 6], vec![4 * (r - 2), 2 * r - 1]]).unwrap()
}

/// Equitable 6-partition of J(2r+1,3): vertex 2r+1 is isolated, vertices
/// {1..2r} carry the matching-complement graph. Parts follow the orbit
/// structure of the triples.
pub fn build_odd_partition(r: u32) -> Result<VertexPartition> {
    if r < 3 {
        return Err(Error::InvalidParams(format!(
            "odd construction needs r >= 3 for nonempty parts, got r={r}"
        )));
    }
    let n = 2 * r + 1;
    let params = JohnsonParams::new(n, 3)?;
    params.vertex_count_capped(caps::graph_cap())?;
    let part_of: Vec<u32> = vertices(params)
        .map(|x| {
            let e = x.elements();
            if e[2] == n {
                // Triple contains the isolated vertex: classify the pair.
                let (a, b) = (e[0], e[1]);
                if side(a, r) == side(b, r) {
                    4 // C5: pair inside one side
                } else if crossing_adjacent(a, b, r) {
                    5 // C6: adjacent pair
                } else {
                    3 // C4: matched (nonadjacent) cross pair
                }
            } else {
                let same_side = side(e[0], r) == side(e[1], r) && side(e[1], r) == side(e[2], r);
                if same_side {
                    return 0; // C1
                }
                let edges = [(0, 1), (0, 2), (1, 2)]
                    .iter()
                    .filter(|&&(a, b)| crossing_adjacent(e[a], e[b], r))
                    .count();
                debug_assert!(edges == 1 || edges == 2);
                if edges == 2 {
                    1
                } else {
                    2
                } // C2 / C3
            }
        })
        .collect();
    VertexPartition::new(params, part_of)
}

/// Closed-form 6x6 quotient of the odd construction, valid for r >= 4.
pub fn odd_quotient_formula(r: u32) -> QuotientMatrix {
    let r = r as i64;
    QuotientMatrix::from_rows(vec![
        vec![3 * (r - 3), 3 * (r - 2), 6, 0, 3, 0],
        vec![r - 2, 5 * r - 13, 6, 0, 1, 2],
        vec![r - 2, 3 * (r - 2), 2 * r - 1, 1, 1, 1],
        vec![0, 0, 2 * (r - 1), 0, 2 * (r - 1), 2 * (r - 1)],
        vec![r - 2, r - 2, 2, 2, 2 * (r - 2), 2 * (r - 1)],
        vec![0, 2 * (r - 2), 2, 2, 2 * (r - 1), 2 * (r - 2)],
    ])
    .unwrap()
}

/// The quotient eigenvector (3, 3, 4-2r, 2-2r, 1, 1) for eigenvalue 2r-6.
pub fn odd_quotient_eigenvector(r: u32) -> RatVector {
    let r = r as i64;
    vec![
        rat(3),
        rat(3),
        rat(4 - 2 * r),
        rat(2 - 2 * r),
        rat(1),
        rat(1),
    ]
}

/// Zero-free eigenvector of the even quotient for lambda_2(2r,3), solved
/// exactly from (Q - lambda I) u = 0.
pub fn even_quotient_eigenvector(q: &QuotientMatrix, r: u32) -> Result<RatVector> {
    let lambda = eigenvalue(2, 2 * r, 3)?;
    let mut m = q.to_rat_matrix();
    for j in 0..q.size() {
        let v = m.at(j, j) - rat(lambda);
        *m.at_mut(j, j) = v;
    }
    let ns = nullspace(&m);
    if ns.ncols() != 1 {
        return Err(Error::NotEigenvector(format!(
            "expected a simple lambda_2 quotient eigenvalue, nullity {}",
            ns.ncols()
        )));
    }
    let mut u = ns.col(0);
    if u.iter().any(Rat::is_zero) {
        return Err(Error::ZeroEntry(
            "lambda_2 quotient eigenvector has a zero".into(),
        ));
    }
    // Orient with the first coordinate positive: the negative coordinate then
    // sits on the one-edge-triple part, giving the sharp bound.
    if u[0].is_negative() {
        for v in u.iter_mut() {
            *v = -v.clone();
        }
    }
    Ok(u)
}

/// Construction-backed upper bound on the w=3, i=2 case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionBound {
    pub value: BigUint,
    /// True when the construction was built, verified equitable and its
    /// negative-parts bound reproduced the closed form.
    pub construction_verified: bool,
}

/// n(n-2)/2 for even n, (n-1)(n-2)/2 for odd n; verified against the actual
/// construction whenever n is in the validated range and within the desk
/// cap.
pub fn construction_upper_bound(n: u32) -> Result<ConstructionBound> {
    if n < 4 {
        return Err(Error::InvalidParams(format!(
            "J(n,3) needs n >= 4, got {n}"
        )));
    }
    let n64 = n as u64;
    let value = if n.is_multiple_of(2) {
        BigUint::from(n64 * (n64 - 2) / 2)
    } else {
        BigUint::from((n64 - 1) * (n64 - 2) / 2)
    };
    let in_range = if n.is_multiple_of(2) { n >= 8 } else { n >= 9 };
    let within_cap = binomial(n64, 3) <= BigUint::from(caps::graph_cap());
    if !(in_range && within_cap) {
        return Ok(ConstructionBound {
            value,
            construction_verified: false,
        });
    }

    let bound = if n.is_multiple_of(2) {
        let r = n / 2;
        let p = build_even_partition(r)?;
        let q = verify_equitable(&p)?;
        let u = even_quotient_eigenvector(&q, r)?;
        negative_parts_bound(&p, &u)?
    } else {
        let r = (n - 1) / 2;
        let p = build_odd_partition(r)?;
        let q = verify_equitable(&p)?;
        let u = odd_quotient_eigenvector(r);
        let lambda = eigenvalue(2, n, 3)?;
        if !verify_quotient_eigvec(&q, &u, lambda)? {
            return Err(Error::NotEigenvector(
                "odd-construction quotient eigenvector failed verification".into(),
            ));
        }
        negative_parts_bound(&p, &u)?
    };
    assert_eq!(
        bound.value, value,
        "construction bound disagrees with the closed form"
    );
    Ok(ConstructionBound {
        value,
        construction_verified: true,
    })
}

/// Exact minimum negative count C(2w-1, w-1) on the antipodal graph J(2w,w)
/// for odd eigenspace indices.
pub fn antipodal_value(w: u32) -> Result<BigUint> {
    if w == 0 {
        return Err(Error::InvalidParams("w must be positive".into()));
    }
    Ok(binomial(2 * w as u64 - 1, w as i64 - 1))
}

/// Provenance of a bound in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundProvenance {
    WeightDistribution,
    AnticodeEq2,
    RatioEq1,
    EvenPartition,
    OddPartition,
    Antipodal,
    UserPartition,
}

impl std::fmt::Display for BoundProvenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BoundProvenance::WeightDistribution => "weight-distribution",
            BoundProvenance::AnticodeEq2 => "anticode-Eq2",
            BoundProvenance::RatioEq1 => "ratio-Eq1",
            BoundProvenance::EvenPartition => "even-partition",
            BoundProvenance::OddPartition => "odd-partition",
            BoundProvenance::Antipodal => "antipodal",
            BoundProvenance::UserPartition => "user-partition",
        };
        write!(f, "{s}")
    }
}

/// Every applicable bound on the minimum negative count, with provenance.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub i: u32,
    pub n: u32,
    pub w: u32,
    pub lower_bounds: Vec<(BigUint, BoundProvenance)>,
    pub upper_bounds: Vec<(BigUint, BoundProvenance)>,
    /// Set when the value is known exactly (the antipodal case).
    pub exact: Option<BigUint>,
    pub best_lower: Option<BigUint>,
    pub best_upper: Option<BigUint>,
}

impl BoundsReport {
    fn recompute_best(&mut self) {
        self.best_lower = self.lower_bounds.iter().map(|(v, _)| v.clone()).max();
        self.best_upper = self.upper_bounds.iter().map(|(v, _)| v.clone()).min();
        if let (Some(lo), Some(hi)) = (&self.best_lower, &self.best_upper) {
            assert!(lo <= hi, "lower bound {lo} exceeds upper bound {hi}");
        }
    }

    /// Adds an upper bound obtained from a user-supplied equitable partition
    /// whose quotient has a zero-free lambda_i eigenvector.
    pub fn add_user_partition(&mut self, p: &VertexPartition, u: &[Rat]) -> Result<()> {
        let params = p.params();
        if (params.n, params.w) != (self.n, self.w) {
            return Err(Error::DimensionMismatch(
                "partition parameters disagree with the report".into(),
            ));
        }
        let q = verify_equitable(p)?;
        let lambda = quotient_eigenvalue(&q, u)?;
        if lambda != eigenvalue(self.i, self.n, self.w)? {
            return Err(Error::NotEigenvector(format!(
                "partition eigenvalue {lambda} is not lambda_{}",
                self.i
            )));
        }
        let bound = negative_parts_bound(p, u)?;
        self.upper_bounds
            .push((bound.value, BoundProvenance::UserPartition));
        self.recompute_best();
        Ok(())
    }
}

/// Collects every applicable bound for m_i^-(n,w).
pub fn bounds_report(i: u32, n: u32, w: u32) -> Result<BoundsReport> {
    JohnsonParams::new(n, w)?;
    if i < 1 || i > w {
        return Err(Error::OutOfRange(format!(
            "need 1 <= i <= w, got i={i}, w={w}"
        )));
    }
    let mut report = BoundsReport {
        i,
        n,
        w,
        lower_bounds: Vec::new(),
        upper_bounds: Vec::new(),
        exact: None,
        best_lower: None,
        best_upper: None,
    };

    report.lower_bounds.push((
        wd_lower_bound(i, n, w)?,
        BoundProvenance::WeightDistribution,
    ));
    if i == 2 && w == 3 && n >= 7 && (n % 6 == 1 || n % 6 == 3) {
        report
            .lower_bounds
            .push((sts_anticode_lower(n)?, BoundProvenance::AnticodeEq2));
    }
    if i == w {
        // The Delsarte clique {x : y subset x} for a (w-1)-subset y is
        // orthogonal to V_w; the ratio bound applies with |D| = n-w+1.
        let total = binomial(n as u64, w as i64);
        let d = BigUint::from((n - w + 1) as u64);
        let ceil = (&total + &d - BigUint::one()) / &d;
        report.lower_bounds.push((ceil, BoundProvenance::RatioEq1));
    }

    if i == 2 && w == 3 {
        if n.is_multiple_of(2) && n >= 8 {
            let t = construction_upper_bound(n)?;
            report
                .upper_bounds
                .push((t.value, BoundProvenance::EvenPartition));
        } else if n % 2 == 1 && n >= 9 {
            let t = construction_upper_bound(n)?;
            report
                .upper_bounds
                .push((t.value, BoundProvenance::OddPartition));
        }
    }
    if n == 2 * w && i % 2 == 1 {
        let v = antipodal_value(w)?;
        report
            .upper_bounds
            .push((v.clone(), BoundProvenance::Antipodal));
        report.exact = Some(v);
    }

    report.recompute_best();
    Ok(report)
}

/// Writes the partition file: a one-line JSON header {n, w, r} followed by
/// one `rank<TAB>part` line per vertex (parts 1-based), ranks ascending.
pub fn write_partition<W: Write>(p: &VertexPartition, out: &mut W) -> Result<()> {
    let params = p.params();
    writeln!(
        out,
        "{{\"n\":{},\"w\":{},\"r\":{}}}",
        params.n,
        params.w,
        p.num_parts()
    )?;
    for (rank, &part) in p.assignments().iter().enumerate() {
        writeln!(out, "{rank}\t{}", part + 1)?;
    }
    Ok(())
}

/// Reads the partition file format produced by `write_partition`.
pub fn read_partition<R: BufRead>(input: &mut R) -> Result<VertexPartition> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let meta: serde_json::Value = serde_json::from_str(header.trim())
        .map_err(|e| Error::Parse(format!("bad partition header: {e}")))?;
    let get = |k: &str| -> Result<u64> {
        meta.get(k)
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("header field {k} missing or not an integer")))
    };
    let n = get("n")? as u32;
    let w = get("w")? as u32;
    let r = get("r")? as usize;
    let params = JohnsonParams::new(n, w)?;
    let total = params.vertex_count_capped(caps::graph_cap())?;

    let mut part_of = vec![u32::MAX; total];
    let mut seen = 0usize;
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (rank_s, part_s) = line
            .split_once('\t')
            .ok_or_else(|| Error::Parse(format!("expected rank<TAB>part, got {line:?}")))?;
        let rank: usize = rank_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank {rank_s:?}")))?;
        let part: usize = part_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad part index {part_s:?}")))?;
        if rank >= total {
            return Err(Error::Parse(format!("rank {rank} out of range")));
        }
        if part < 1 || part > r {
            return Err(Error::Parse(format!("part {part} outside 1..={r}")));
        }
        if part_of[rank] != u32::MAX {
            return Err(Error::Parse(format!("rank {rank} assigned twice")));
        }
        part_of[rank] = (part - 1) as u32;
        seen += 1;
    }
    if seen != total {
        return Err(Error::Parse(format!(
            "{seen} assignments for {total} vertices"
        )));
    }
    let p = VertexPartition::new(params, part_of)?;
    if p.num_parts() != r {
        return Err(Error::Parse(format!(
            "header declares r={r} but {} parts are used",
            p.num_parts()
        )));
    }
    Ok(p)
}
