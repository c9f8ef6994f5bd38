//! Minimum support of first-eigenspace vectors: the closed form, the two
//! attaining construction classes, an independent brute-force oracle, and the
//! large-range scan behind the pair-vector conjecture.
//!
//! For n >= 2w, w >= 2 the minimum support of a nonzero lambda_1-eigenvector
//! of J(n,w) is
//!
//! ```text
//! min( 2 C(n-2,w-1),  C(n,w) - max_k C(k, kw/n) C(n-k, (n-k)w/n) )
//! ```
//!
//! with k ranging over {2..n-2} with kw/n integral; the first branch is
//! attained by the image of e_1 - e_2 under the inclusion mapping, the second
//! by the image of the two-valued vector with k entries n-k and n-k entries
//! -k.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::caps;
use crate::combinat::{binomial, BinomialTable, JohnsonParams};
use crate::error::{Error, Result};
use crate::spectra::{inclusion_map, is_eigenvector, sign_census, GroundVector, SchemeVector};

/// One of the two classes of support-minimizing ground vectors.
///
/// `TwoValued { k }` is canonicalized to min(k, n-k): the k and n-k ground
/// vectors differ by a coordinate permutation and a scalar, so they are the
/// same class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttainingClass {
    PairVector,
    TwoValued { k: u32 },
}

impl std::fmt::Display for AttainingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AttainingClass::PairVector => write!(f, "PairVector"),
            AttainingClass::TwoValued { k } => write!(f, "TwoValued({k})"),
        }
    }
}

/// The minimum support value together with every branch attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSupportCertificate {
    pub n: u32,
    pub w: u32,
    pub value: BigUint,
    /// Every tied minimizing class, PairVector first then ascending k.
    pub attained_by: Vec<AttainingClass>,
    pub pair_branch: BigUint,
    /// Best two-valued branch (smallest maximizing k), when any k is
    /// admissible.
    pub twovalued_branch: Option<(u32, BigUint)>,
}

fn check_regime(n: u32, w: u32) -> Result<JohnsonParams> {
    let p = JohnsonParams::new(n, w)?;
    if w < 2 {
        return Err(Error::RegimeViolation(format!("need w >= 2, got w={w}")));
    }
    p.check_halved_regime()?;
    Ok(p)
}

/// Support 2 C(n-2,w-1) of the pair-vector construction I(e_1 - e_2).
pub fn pair_support(n: u32, w: u32) -> Result<BigUint> {
    check_regime(n, w)?;
    Ok(BigUint::from(2u32) * binomial(n as u64 - 2, w as i64 - 1))
}

fn admissible_ratio(n: u32, w: u32, k: u32) -> Result<u32> {
    if !(2..=n - 2).contains(&k) {
        return Err(Error::OutOfRange(format!("k={k} outside 2..={}", n - 2)));
    }
    let prod = k as u64 * w as u64;
    if !prod.is_multiple_of(n as u64) {
        return Err(Error::DivisibilityViolated(format!(
            "kw/n = {k}*{w}/{n} is not an integer"
        )));
    }
    Ok((prod / n as u64) as u32)
}

/// Support C(n,w) - C(k, kw/n) C(n-k, (n-k)w/n) of the two-valued
/// construction for an admissible k.
pub fn two_valued_support(n: u32, w: u32, k: u32) -> Result<BigUint> {
    check_regime(n, w)?;
    let kw_n = admissible_ratio(n, w, k)?;
    let zeros = binomial(k as u64, kw_n as i64) * binomial((n - k) as u64, (w - kw_n) as i64);
    Ok(binomial(n as u64, w as i64) - zeros)
}

/// Closed-form minimum support with every attaining branch.
pub fn min_support_certificate(n: u32, w: u32) -> Result<MinSupportCertificate> {
    let table = BinomialTable::new(n as usize);
    min_support_certificate_with(&table, n, w)
}

/// As `min_support_certificate`, reusing a shared binomial table (the scan calls this
/// for tens of thousands of pairs).
pub fn min_support_certificate_with(
    table: &BinomialTable,
    n: u32,
    w: u32,
) -> Result<MinSupportCertificate> {
    check_regime(n, w)?;
    let pair = BigUint::from(2u32) * table.get(n as usize - 2, w as usize - 1);

    // kw/n integral iff k is a multiple of step = n / gcd(n, w); note
    // step >= 2 because gcd(n,w) <= w <= n/2.
    let step = (n / num_integer::gcd(n, w)) as usize;
    let mut best_product = BigUint::zero();
    let mut maximizers: Vec<u32> = Vec::new();
    let mut k = step;
    while k <= n as usize - 2 {
        let ratio = k * w as usize / n as usize;
        let product = table.get(k, ratio) * table.get(n as usize - k, w as usize - ratio);
        if product > best_product {
            best_product = product;
            maximizers.clear();
            maximizers.push(k as u32);
        } else if product == best_product {
            maximizers.push(k as u32);
        }
        k += step;
    }

    let twovalued_branch = maximizers
        .first()
        .map(|&k| (k, table.get(n as usize, w as usize) - &best_product));

    let value = match &twovalued_branch {
        Some((_, tv)) if *tv < pair => tv.clone(),
        _ => pair.clone(),
    };

    let mut attained_by = Vec::new();
    if pair == value {
        attained_by.push(AttainingClass::PairVector);
    }
    if let Some((_, tv)) = &twovalued_branch {
        if *tv == value {
            let mut ks: Vec<u32> = maximizers.iter().map(|&k| k.min(n - k)).collect();
            ks.sort_unstable();
            ks.dedup();
            attained_by.extend(ks.into_iter().map(|k| AttainingClass::TwoValued { k }));
        }
    }
    debug_assert!(!attained_by.is_empty());

    Ok(MinSupportCertificate {
        n,
        w,
        value,
        attained_by,
        pair_branch: pair,
        twovalued_branch,
    })
}

/// Materializes the ground vector of an attaining class and returns its
/// inclusion-map image. The image's support equals the certificate value and
/// the image is a lambda_1-eigenvector; both are re-checked here.
pub fn build_optimal_vector(
    cert: &MinSupportCertificate,
    choice: AttainingClass,
) -> Result<SchemeVector> {
    if !cert.attained_by.contains(&choice) {
        return Err(Error::InvalidChoice(format!(
            "{choice} is not an attaining class of m({},{})",
            cert.n, cert.w
        )));
    }
    let p = JohnsonParams::new(cert.n, cert.w)?;
    let ground = match choice {
        AttainingClass::PairVector => {
            let mut a = vec![0i64; cert.n as usize];
            a[0] = 1;
            a[1] = -1;
            GroundVector::from_ints(&a)
        }
        AttainingClass::TwoValued { k } => {
            // Integer-scaled two-valued vector: n-k on the first k
            // coordinates, -k on the rest; support is scale invariant.
            let mut a = vec![-(k as i64); cert.n as usize];
            for slot in a.iter_mut().take(k as usize) {
                *slot = (cert.n - k) as i64;
            }
            GroundVector::from_ints(&a)
        }
    };
    let v = inclusion_map(p, &ground)?;
    let (pos, neg, _) = sign_census(&v);
    assert_eq!(
        BigUint::from(pos + neg),
        cert.value,
        "constructed vector support disagrees with the certificate"
    );
    assert!(is_eigenvector(&v, 1)?, "constructed vector is not in V_1");
    Ok(v)
}

/// Asymptotic reference value 2^i C(n-2i, w-i) for the minimum support of
/// V_i; exact only for sufficiently large n, exposed for comparison.
pub fn asymptotic_reference(i: u32, n: u32, w: u32) -> Result<BigUint> {
    if i > w {
        return Err(Error::OutOfRange(format!("i={i} > w={w}")));
    }
    let top = n as i64 - 2 * i as i64;
    let b = if top < 0 {
        BigUint::zero()
    } else {
        binomial(top as u64, (w - i) as i64)
    };
    Ok(BigUint::from(2u32).pow(i) * b)
}

/// Independent brute-force check of the closed form: minimum support of I(a)
/// over nonzero integer zero-sum ground vectors with entries in [-radius,
/// radius], enumerated up to permutation and scaling (entries sorted
/// non-increasing, gcd 1).
pub fn oracle_min_support(n: u32, w: u32, radius: u32) -> Result<BigUint> {
    let p = check_regime(n, w)?;
    let total = p.vertex_count_capped(caps::graph_cap())?;
    if radius == 0 {
        return Err(Error::InvalidParams("radius must be positive".into()));
    }
    let r = radius as i64;

    // Parallelize over the multiplicity of the largest value +radius; each
    // branch enumerates the remaining non-increasing tail sequentially.
    let best = (0..=n)
        .into_par_iter()
        .map(|count_top| {
            let mut ctx = OracleCtx::new(n, w, r, total);
            if count_top > 0 {
                ctx.groups.push((r, count_top));
            }
            ctx.enumerate(r - 1, n - count_top, r * count_top as i64);
            ctx.best
        })
        .min()
        .unwrap_or(usize::MAX);
    assert!(best < usize::MAX, "oracle enumerated no admissible vector");
    Ok(BigUint::from(best))
}

struct OracleCtx {
    n: u32,
    w: u32,
    r: i64,
    total: usize,
    groups: Vec<(i64, u32)>,
    /// Small binomial table C(m, t) for m <= n, t <= w.
    choose: Vec<Vec<u64>>,
    best: usize,
}

impl OracleCtx {
    fn new(n: u32, w: u32, r: i64, total: usize) -> Self {
        let mut choose = vec![vec![0u64; w as usize + 1]; n as usize + 1];
        for m in 0..=n as usize {
            choose[m][0] = 1;
            for t in 1..=(w as usize).min(m) {
                choose[m][t] = if t == m {
                    1
                } else {
                    choose[m - 1][t - 1] + choose[m - 1][t]
                };
            }
        }
        OracleCtx {
            n,
            w,
            r,
            total,
            groups: Vec::new(),
            choose,
            best: usize::MAX,
        }
    }

    fn enumerate(&mut self, value: i64, remaining: u32, sum: i64) {
        if remaining == 0 {
            if sum == 0 {
                self.process();
            }
            return;
        }
        if value < -self.r {
            return;
        }
        // The tail must reach -sum with entries in [-r, value].
        let lo = -(self.r) * remaining as i64;
        let hi = value * remaining as i64;
        if -sum < lo || -sum > hi {
            return;
        }
        for count in 0..=remaining {
            if count > 0 {
                self.groups.push((value, count));
            }
            self.enumerate(value - 1, remaining - count, sum + value * count as i64);
            if count > 0 {
                self.groups.pop();
            }
        }
    }

    fn process(&mut self) {
        let mut gcd: u64 = 0;
        for &(v, _) in &self.groups {
            if v != 0 {
                gcd = num_integer::gcd(gcd, v.unsigned_abs());
            }
        }
        if gcd != 1 {
            // All-zero (gcd 0) or a scaled copy of a primitive vector.
            return;
        }
        let zeros = if self.w == 2 {
            self.zero_pairs()
        } else {
            self.zero_subsets_dp()
        };
        let support = self.total - zeros;
        self.best = self.best.min(support);
    }

    /// Number of pairs with zero sum: matched +v/-v groups plus zero pairs.
    fn zero_pairs(&self) -> usize {
        let count_of = |target: i64| -> u64 {
            self.groups
                .iter()
                .find(|&&(v, _)| v == target)
                .map_or(0, |&(_, c)| c as u64)
        };
        let mut zeros: u64 = 0;
        for &(v, c) in &self.groups {
            if v > 0 {
                zeros += c as u64 * count_of(-v);
            } else if v == 0 {
                zeros += c as u64 * (c as u64 - 1) / 2;
            }
        }
        zeros as usize
    }

    /// DP over value groups counting w-subsets with zero entry sum.
    fn zero_subsets_dp(&self) -> usize {
        let w = self.w as usize;
        let span = (self.r * self.n as i64) as usize;
        let width = 2 * span + 1;
        let mut dp = vec![vec![0u64; width]; w + 1];
        dp[0][span] = 1;
        for &(v, c) in &self.groups {
            let mut next = vec![vec![0u64; width]; w + 1];
            for taken in 0..=w {
                for (s, &ways) in dp[taken].iter().enumerate() {
                    if ways == 0 {
                        continue;
                    }
                    for t in 0..=(c as usize).min(w - taken) {
                        let ns = s as i64 + v * t as i64;
                        if ns < 0 || ns >= width as i64 {
                            continue;
                        }
                        next[taken + t][ns as usize] += ways * self.choose[c as usize][t];
                    }
                }
            }
            dp = next;
        }
        dp[w][span] as usize
    }
}

/// One row of the conjecture scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub n: u32,
    pub w: u32,
    pub value: BigUint,
    pub winner: Vec<AttainingClass>,
    pub pair_branch: BigUint,
    pub twovalued: Option<(u32, BigUint)>,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    /// Rows sorted by (n, w).
    pub rows: Vec<ScanRow>,
    /// Pairs with w >= 5 and n >= 2w+1 whose winner is not the pair vector.
    /// The conjecture predicts this list is empty.
    pub violations: Vec<(u32, u32)>,
}

/// Evaluates the closed form for every n in [n_min, n_max] and 2 <= w <=
/// n/2, flagging conjecture violations.
pub fn conjecture_scan(n_min: u32, n_max: u32) -> Result<ScanReport> {
    if n_min > n_max {
        return Err(Error::InvalidParams(format!(
            "n_min={n_min} > n_max={n_max}"
        )));
    }
    let table = BinomialTable::new(n_max as usize);
    let per_n: Vec<Vec<ScanRow>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut rows = Vec::new();
            for w in 2..=n / 2 {
                let cert = min_support_certificate_with(&table, n, w)
                    .expect("scan pairs satisfy the regime by construction");
                rows.push(ScanRow {
                    n,
                    w,
                    value: cert.value,
                    winner: cert.attained_by,
                    pair_branch: cert.pair_branch,
                    twovalued: cert.twovalued_branch,
                });
            }
            rows
        })
        .collect();
    let rows: Vec<ScanRow> = per_n.into_iter().flatten().collect();
    let violations: Vec<(u32, u32)> = rows
        .iter()
        .filter(|r| r.w >= 5 && r.n > 2 * r.w && !r.winner.contains(&AttainingClass::PairVector))
        .map(|r| (r.n, r.w))
        .collect();
    Ok(ScanReport { rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn pair_support_examples() {
        assert_eq!(pair_support(8, 2).unwrap(), big(12));
        assert_eq!(pair_support(9, 3).unwrap(), big(42));
        assert_eq!(pair_support(4, 2).unwrap(), big(4));
        assert!(pair_support(5, 3).is_err());
        assert!(pair_support(7, 1).is_err());
    }

    #[test]
    fn two_valued_examples() {
        assert_eq!(two_valued_support(9, 3, 3).unwrap(), big(39));
        assert_eq!(two_valued_support(10, 4, 5).unwrap(), big(110));
        assert_eq!(two_valued_support(6, 2, 3).unwrap(), big(6));
        assert!(matches!(
            two_valued_support(9, 3, 4),
            Err(Error::DivisibilityViolated(_))
        ));
        assert!(two_valued_support(9, 3, 8).is_err());
    }

    #[test]
    fn two_valued_complement_symmetry() {
        for (n, w) in [(9u32, 3u32), (12, 3), (12, 4), (10, 5), (16, 4)] {
            for k in 2..=n - 2 {
                if (k * w) % n == 0 && ((n - k) * w) % n == 0 {
                    assert_eq!(
                        two_valued_support(n, w, k).unwrap(),
                        two_valued_support(n, w, n - k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_exceptional_examples() {
        let c = min_support_certificate(6, 2).unwrap();
        assert_eq!(c.value, big(6));
        assert_eq!(c.attained_by, vec![AttainingClass::TwoValued { k: 3 }]);

        let c = min_support_certificate(8, 2).unwrap();
        assert_eq!(c.value, big(12));
        assert_eq!(
            c.attained_by,
            vec![
                AttainingClass::PairVector,
                AttainingClass::TwoValued { k: 4 }
            ]
        );

        let c = min_support_certificate(9, 3).unwrap();
        assert_eq!(c.value, big(39));
        assert_eq!(c.attained_by, vec![AttainingClass::TwoValued { k: 3 }]);
        assert_eq!(c.twovalued_branch, Some((3, big(39))));

        let c = min_support_certificate(10, 4).unwrap();
        assert_eq!(c.value, big(110));
        assert_eq!(c.attained_by, vec![AttainingClass::TwoValued { k: 5 }]);
    }

    #[test]
    fn closed_form_no_admissible_k() {
        let c = min_support_certificate(12, 5).unwrap();
        assert_eq!(c.value, big(420));
        assert_eq!(c.twovalued_branch, None);
        assert_eq!(c.attained_by, vec![AttainingClass::PairVector]);
    }

    #[test]
    fn closed_form_antipodal_identity_small() {
        for w in 2..=8u32 {
            let n = 2 * w;
            let c = min_support_certificate(n, w).unwrap();
            let expected =
                binomial(n as u64, w as i64) - big(2) * binomial(n as u64 - 2, w as i64 - 1);
            assert_eq!(c.value, expected);
            assert!(c.attained_by.contains(&AttainingClass::TwoValued { k: 2 }));
        }
    }

    #[test]
    fn closed_form_never_exceeds_pair_branch() {
        for n in 4..=40u32 {
            for w in 2..=n / 2 {
                let c = min_support_certificate(n, w).unwrap();
                assert!(c.value <= c.pair_branch);
            }
        }
    }

    #[test]
    fn build_vectors_realize_certificates() {
        let c = min_support_certificate(8, 2).unwrap();
        let v = build_optimal_vector(&c, AttainingClass::PairVector).unwrap();
        let (pos, neg, _) = sign_census(&v);
        assert_eq!(pos + neg, 12);

        let v = build_optimal_vector(&c, AttainingClass::TwoValued { k: 4 }).unwrap();
        let (pos, neg, _) = sign_census(&v);
        assert_eq!(pos + neg, 12);

        let c = min_support_certificate(9, 3).unwrap();
        let v = build_optimal_vector(&c, AttainingClass::TwoValued { k: 3 }).unwrap();
        let (pos, neg, _) = sign_census(&v);
        assert_eq!(pos + neg, 39);
        assert!(is_eigenvector(&v, 1).unwrap());
        assert!(matches!(
            build_optimal_vector(&c, AttainingClass::PairVector),
            Err(Error::InvalidChoice(_))
        ));

        let c = min_support_certificate(6, 3).unwrap();
        let v = build_optimal_vector(&c, AttainingClass::TwoValued { k: 2 }).unwrap();
        let (pos, neg, _) = sign_census(&v);
        assert_eq!(pos + neg, 8);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_min_support(6, 2, 2).unwrap(), big(6));
        assert_eq!(oracle_min_support(8, 2, 2).unwrap(), big(12));
        assert_eq!(oracle_min_support(6, 3, 3).unwrap(), big(8));
    }

    #[test]
    fn oracle_matches_closed_form_on_small_pairs() {
        for (n, w) in [(4u32, 2u32), (5, 2), (6, 2), (7, 2), (7, 3), (8, 4)] {
            let radius = 4.max(w);
            assert_eq!(
                oracle_min_support(n, w, radius).unwrap(),
                min_support_certificate(n, w).unwrap().value,
                "(n,w) = ({n},{w})"
            );
        }
    }

    #[test]
    fn oracle_matches_full_grid_enumeration() {
        // The dumbest possible route: every vector in [-R,R]^n, no
        // canonicalization at all. Confirms the canonical enumeration loses
        // nothing.
        for (n, w, radius) in [(4u32, 2u32, 2u32), (5, 2, 2), (6, 3, 2)] {
            let p = JohnsonParams::new(n, w).unwrap();
            let total: usize = (&p.vertex_count()).try_into().unwrap();
            let side = 2 * radius as i64 + 1;
            let mut best = usize::MAX;
            let mut a = vec![0i64; n as usize];
            for code in 0..side.pow(n) {
                let mut c = code;
                for slot in a.iter_mut() {
                    *slot = c % side - radius as i64;
                    c /= side;
                }
                if a.iter().sum::<i64>() != 0 || a.iter().all(|&v| v == 0) {
                    continue;
                }
                let v = inclusion_map(p, &GroundVector::from_ints(&a)).unwrap();
                let (pos, neg, _) = sign_census(&v);
                best = best.min(pos + neg);
                let _ = total;
            }
            assert_eq!(
                oracle_min_support(n, w, radius).unwrap(),
                BigUint::from(best),
                "(n,w,R) = ({n},{w},{radius})"
            );
        }
    }

    #[test]
    fn zero_subset_dp_matches_direct_enumeration() {
        use itertools::Itertools;
        // Fix a handful of ground vectors and compare the DP zero count with
        // direct subset enumeration.
        let cases: Vec<(u32, u32, Vec<i64>)> = vec![
            (6, 3, vec![2, 2, 0, -1, -1, -2]),
            (7, 3, vec![3, 1, 1, 0, -1, -2, -2]),
            (8, 4, vec![3, 3, 1, 0, 0, -2, -2, -3]),
        ];
        for (n, w, a) in cases {
            let mut sorted = a.clone();
            sorted.sort_unstable_by(|x, y| y.cmp(x));
            let mut ctx = OracleCtx::new(n, w, 4, 0);
            for (v, chunk) in &sorted.iter().chunk_by(|&&v| v) {
                ctx.groups.push((v, chunk.count() as u32));
            }
            let dp = ctx.zero_subsets_dp();
            let direct = (0..n as usize)
                .combinations(w as usize)
                .filter(|c| c.iter().map(|&i| a[i]).sum::<i64>() == 0)
                .count();
            assert_eq!(dp, direct, "(n,w)=({n},{w})");
        }
    }

    #[test]
    fn asymptotic_reference_values() {
        for (n, w) in [(8u32, 3u32), (10, 4), (12, 5)] {
            assert_eq!(
                asymptotic_reference(1, n, w).unwrap(),
                pair_support(n, w).unwrap()
            );
        }
        assert_eq!(asymptotic_reference(2, 10, 3).unwrap(), big(24));
        assert_eq!(asymptotic_reference(0, 9, 4).unwrap(), binomial(9, 4));
    }

    #[test]
    fn scan_small_range() {
        let report = conjecture_scan(6, 12).unwrap();
        assert!(report.violations.is_empty());
        // Rows sorted by (n, w) and containing the exceptional small cases.
        for pair in report.rows.windows(2) {
            assert!((pair[0].n, pair[0].w) < (pair[1].n, pair[1].w));
        }
        let find = |n: u32, w: u32| report.rows.iter().find(|r| r.n == n && r.w == w).unwrap();
        assert_eq!(find(6, 2).value, big(6));
        assert_eq!(find(8, 2).value, big(12));
        assert_eq!(find(9, 3).value, big(39));
        assert_eq!(find(10, 4).value, big(110));
        assert_eq!(find(12, 6).winner, vec![AttainingClass::TwoValued { k: 2 }]);
    }
}
