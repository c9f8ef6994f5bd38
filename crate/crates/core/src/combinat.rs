//! Exact binomial arithmetic, combinadic (colexicographic) subset ranking and
//! the adjacency/distance structure of the Johnson graph J(n,w).
//!
//! Vertices of J(n,w) are the w-subsets of {1..n}. Two subsets are in the
//! i-th relation of the scheme when their intersection has size w-i; relation
//! 1 is graph adjacency. Subsets are indexed by their 0-based colexicographic
//! rank, so {1..w} has rank 0 and {n-w+1..n} has rank C(n,w)-1.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// C(n,k) as an arbitrary-precision integer; 0 when k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k as u64))
}

/// Dense Pascal-triangle table of C(m,k) for 0 <= k <= m <= max_n.
///
/// Built once and shared by bulk consumers (the conjecture scan evaluates
/// hundreds of thousands of binomials of 100+ digit size).
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for m in 0..=max_n {
            let mut row = Vec::with_capacity(m + 1);
            row.push(BigUint::one());
            for k in 1..m {
                let v = &rows[m - 1][k - 1] + &rows[m - 1][k];
                row.push(v);
            }
            if m > 0 {
                row.push(BigUint::one());
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// C(m,k); zero for k > m. Panics if m exceeds the table size.
    pub fn get(&self, m: usize, k: usize) -> BigUint {
        if k > m {
            return BigUint::zero();
        }
        self.rows[m][k].clone()
    }
}

/// Saturating machine-word binomial, used for rank arithmetic at desk scale.
fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul((n - k + i) as u128) / i as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Parameters (n,w) of the Johnson scheme J(n,w).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JohnsonParams {
    pub n: u32,
    pub w: u32,
}

impl JohnsonParams {
    pub fn new(n: u32, w: u32) -> Result<Self> {
        if w == 0 || w >= n {
            return Err(Error::InvalidParams(format!(
                "need 1 <= w <= n-1, got n={n}, w={w}"
            )));
        }
        Ok(JohnsonParams { n, w })
    }

    /// Errors unless n >= 2w, the regime assumed by the closed forms.
    pub fn check_halved_regime(&self) -> Result<()> {
        if self.n < 2 * self.w {
            return Err(Error::RegimeViolation(format!(
                "n={} < 2w={}",
                self.n,
                2 * self.w
            )));
        }
        Ok(())
    }

    /// Number of vertices C(n,w).
    pub fn vertex_count(&self) -> BigUint {
        binomial(self.n as u64, self.w as i64)
    }

    /// Vertex count as usize, failing when it exceeds `cap`.
    pub fn vertex_count_capped(&self, cap: usize) -> Result<usize> {
        crate::caps::check_cap(&self.vertex_count(), cap)
    }

    /// Degree w(n-w) of the Johnson graph.
    pub fn degree(&self) -> u64 {
        self.w as u64 * (self.n - self.w) as u64
    }
}

/// Per-parameter table of machine-word binomials for ranking hot paths.
pub(crate) struct RankTable {
    /// c[m][j] = C(m,j) (saturating) for m <= n, j <= w.
    c: Vec<Vec<usize>>,
}

impl RankTable {
    pub(crate) fn new(p: JohnsonParams) -> Self {
        let n = p.n as usize;
        let w = p.w as usize;
        let mut c = vec![vec![0usize; w + 1]; n + 1];
        for m in 0..=n {
            c[m][0] = 1;
            for j in 1..=w.min(m) {
                c[m][j] = if m == j {
                    1
                } else {
                    c[m - 1][j - 1].saturating_add(c[m - 1][j])
                };
            }
        }
        RankTable { c }
    }

    /// Colex rank of a strictly increasing 1-based element list.
    pub(crate) fn rank(&self, elements: &[u32]) -> usize {
        elements
            .iter()
            .enumerate()
            .map(|(j, &e)| self.c[(e - 1) as usize][j + 1])
            .sum()
    }
}

/// A w-subset of {1..n} together with its colexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WSubset {
    elements: Vec<u32>,
    rank: usize,
}

impl WSubset {
    /// Builds a subset from its (strictly increasing) 1-based elements.
    pub fn from_elements(p: JohnsonParams, elements: Vec<u32>) -> Result<Self> {
        if elements.len() != p.w as usize {
            return Err(Error::InvalidParams(format!(
                "expected {} elements, got {}",
                p.w,
                elements.len()
            )));
        }
        for pair in elements.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidParams(
                    "elements must be strictly increasing".into(),
                ));
            }
        }
        if elements[0] < 1 || *elements.last().unwrap() > p.n {
            return Err(Error::OutOfRange(format!(
                "elements must lie in 1..={}",
                p.n
            )));
        }
        let mut rank = BigUint::zero();
        for (j, &e) in elements.iter().enumerate() {
            rank += binomial((e - 1) as u64, (j + 1) as i64);
        }
        let rank: usize = (&rank).try_into().map_err(|_| Error::CapExceeded {
            needed: rank.clone(),
            cap: usize::MAX,
        })?;
        Ok(WSubset { elements, rank })
    }

    /// Inverse of `rank()`: the subset with the given colex rank.
    pub fn unrank(p: JohnsonParams, rank: usize) -> Result<Self> {
        let total = p.vertex_count();
        if BigUint::from(rank) >= total {
            return Err(Error::OutOfRange(format!(
                "rank {rank} >= C({},{}) = {total}",
                p.n, p.w
            )));
        }
        let mut elements = vec![0u32; p.w as usize];
        let mut r = rank;
        let mut bound = p.n as usize;
        for j in (1..=p.w as usize).rev() {
            // Largest m with C(m-1, j) <= r; elements are 1-based.
            let mut m = bound;
            while binom_usize(m - 1, j) > r {
                m -= 1;
            }
            r -= binom_usize(m - 1, j);
            elements[j - 1] = m as u32;
            bound = m - 1;
        }
        debug_assert_eq!(r, 0);
        Ok(WSubset { elements, rank })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elements.binary_search(&e).is_ok()
    }
}

/// Relation index of the pair: w - |x intersect y|.
pub fn distance(p: JohnsonParams, x: &WSubset, y: &WSubset) -> Result<u32> {
    if x.elements.len() != p.w as usize || y.elements.len() != p.w as usize {
        return Err(Error::DimensionMismatch(
            "subsets come from different parameters".into(),
        ));
    }
    Ok(p.w - intersection_size(&x.elements, &y.elements))
}

pub(crate) fn intersection_size(a: &[u32], b: &[u32]) -> u32 {
    let (mut i, mut j, mut count) = (0, 0, 0u32);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// All vertices adjacent to x (relation 1), sorted by rank.
pub fn neighbors(p: JohnsonParams, x: &WSubset) -> Result<Vec<WSubset>> {
    let table = RankTable::new(p);
    let mut out = Vec::with_capacity(p.degree() as usize);
    neighbor_elements(p, x.elements(), |elems| {
        out.push(WSubset {
            elements: elems.to_vec(),
            rank: table.rank(elems),
        });
    });
    out.sort_by_key(|s| s.rank);
    Ok(out)
}

/// Ranks of the neighbors of `elements`, appended to `out` (unsorted).
pub(crate) fn neighbor_ranks(
    p: JohnsonParams,
    elements: &[u32],
    table: &RankTable,
    out: &mut Vec<usize>,
) {
    neighbor_elements(p, elements, |elems| out.push(table.rank(elems)));
}

/// Generates each neighbor y = x \ {a} + {b} as a sorted element slice.
fn neighbor_elements(p: JohnsonParams, elements: &[u32], mut visit: impl FnMut(&[u32])) {
    let w = elements.len();
    let mut buf = vec![0u32; w];
    for drop_idx in 0..w {
        for b in 1..=p.n {
            if elements.binary_search(&b).is_ok() {
                continue;
            }
            // Merge the kept elements with b, preserving sorted order.
            let mut k = 0;
            let mut placed = false;
            for (idx, &e) in elements.iter().enumerate() {
                if idx == drop_idx {
                    continue;
                }
                if !placed && b < e {
                    buf[k] = b;
                    k += 1;
                    placed = true;
                }
                buf[k] = e;
                k += 1;
            }
            if !placed {
                buf[k] = b;
            }
            visit(&buf);
        }
    }
}

/// Iterator over all vertices of J(n,w) in colexicographic order.
///
/// Ranks are assigned sequentially, matching `WSubset::rank`.
pub struct VertexIter {
    n: u32,
    current: Option<Vec<u32>>,
    rank: usize,
}

pub fn vertices(p: JohnsonParams) -> VertexIter {
    VertexIter {
        n: p.n,
        current: Some((1..=p.w).collect()),
        rank: 0,
    }
}

/// Vertex iterator starting at the given rank (for chunked parallel scans).
pub fn vertices_from(p: JohnsonParams, start_rank: usize) -> Result<VertexIter> {
    let start = WSubset::unrank(p, start_rank)?;
    Ok(VertexIter {
        n: p.n,
        current: Some(start.elements().to_vec()),
        rank: start_rank,
    })
}

impl Iterator for VertexIter {
    type Item = WSubset;

    fn next(&mut self) -> Option<WSubset> {
        let cur = self.current.take()?;
        let item = WSubset {
            elements: cur.clone(),
            rank: self.rank,
        };
        self.rank += 1;
        // Colex successor: bump the smallest element that can move, reset
        // everything below it to {1..j}.
        let w = cur.len();
        let mut next = cur;
        let mut advanced = false;
        for j in 0..w {
            let limit = if j + 1 < w { next[j + 1] - 1 } else { self.n };
            if next[j] < limit {
                next[j] += 1;
                for (i, slot) in next.iter_mut().enumerate().take(j) {
                    *slot = (i + 1) as u32;
                }
                advanced = true;
                break;
            }
        }
        self.current = advanced.then_some(next);
        Some(item)
    }
}

/// Distance partition (C_0,...,C_w) around x: C_k holds the ranks of the
/// vertices at relation k, each class sorted by rank.
pub fn distance_partition(p: JohnsonParams, x: &WSubset) -> Result<Vec<Vec<usize>>> {
    let n = p.vertex_count_capped(crate::caps::graph_cap())?;
    let mut classes = vec![Vec::new(); p.w as usize + 1];
    let mut count = 0usize;
    for y in vertices(p) {
        let d = p.w - intersection_size(x.elements(), y.elements());
        classes[d as usize].push(y.rank());
        count += 1;
    }
    debug_assert_eq!(count, n);
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, w: u32) -> JohnsonParams {
        JohnsonParams::new(n, w).unwrap()
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(17, 0), BigUint::one());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
    }

    #[test]
    fn binomial_600_300_matches_pascal_recurrence() {
        let table = BinomialTable::new(600);
        let direct = binomial(600, 300);
        assert_eq!(direct, table.get(600, 300));
        assert!(direct.to_string().len() > 170);
    }

    #[test]
    fn pascal_table_agrees_with_direct_binomial() {
        let table = BinomialTable::new(40);
        for m in 0..=40u64 {
            for k in 0..=m {
                assert_eq!(table.get(m as usize, k as usize), binomial(m, k as i64));
            }
        }
    }

    #[test]
    fn unrank_first_and_derived() {
        let p = params(4, 2);
        assert_eq!(WSubset::unrank(p, 0).unwrap().elements(), &[1, 2]);
        // Enumerate all C(5,2)=10 subsets in colex order: rank 9 is {4,5}.
        let p = params(5, 2);
        assert_eq!(WSubset::unrank(p, 9).unwrap().elements(), &[4, 5]);
        assert!(WSubset::unrank(p, 10).is_err());
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for (n, w) in [(5, 2), (6, 3), (7, 4), (9, 2), (8, 1), (6, 5)] {
            let p = params(n, w);
            let total: usize = (&p.vertex_count()).try_into().unwrap();
            for r in 0..total {
                let s = WSubset::unrank(p, r).unwrap();
                assert_eq!(s.rank(), r);
                let back = WSubset::from_elements(p, s.elements().to_vec()).unwrap();
                assert_eq!(back.rank(), r);
            }
        }
    }

    #[test]
    fn vertex_iterator_matches_unrank() {
        let p = params(7, 3);
        let total: usize = (&p.vertex_count()).try_into().unwrap();
        let all: Vec<WSubset> = vertices(p).collect();
        assert_eq!(all.len(), total);
        for (r, s) in all.iter().enumerate() {
            assert_eq!(s.rank(), r);
            assert_eq!(s.elements(), WSubset::unrank(p, r).unwrap().elements());
        }
    }

    #[test]
    fn distance_examples() {
        let p = params(7, 3);
        let x = WSubset::from_elements(p, vec![1, 2, 3]).unwrap();
        let same = WSubset::from_elements(p, vec![1, 2, 3]).unwrap();
        let disjoint = WSubset::from_elements(p, vec![4, 5, 6]).unwrap();
        let adj = WSubset::from_elements(p, vec![1, 2, 4]).unwrap();
        assert_eq!(distance(p, &x, &same).unwrap(), 0);
        assert_eq!(distance(p, &x, &disjoint).unwrap(), 3);
        assert_eq!(distance(p, &x, &adj).unwrap(), 1);
    }

    #[test]
    fn neighbors_of_j42() {
        let p = params(4, 2);
        let x = WSubset::from_elements(p, vec![1, 2]).unwrap();
        let ns = neighbors(p, &x).unwrap();
        let sets: Vec<Vec<u32>> = ns.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(sets, vec![vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4]]);
    }

    #[test]
    fn neighbors_k2() {
        let p = params(2, 1);
        let x = WSubset::from_elements(p, vec![1]).unwrap();
        let ns = neighbors(p, &x).unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].elements(), &[2]);
    }

    #[test]
    fn regularity_and_symmetry() {
        for (n, w) in [(5, 2), (6, 3), (7, 2)] {
            let p = params(n, w);
            let deg = p.degree() as usize;
            for x in vertices(p) {
                let ns = neighbors(p, &x).unwrap();
                assert_eq!(ns.len(), deg);
                for y in &ns {
                    assert_ne!(y.rank(), x.rank());
                    assert!(neighbors(p, y)
                        .unwrap()
                        .iter()
                        .any(|z| z.rank() == x.rank()));
                }
            }
        }
    }

    #[test]
    fn distance_partition_sizes() {
        let p = params(4, 2);
        let x = WSubset::from_elements(p, vec![1, 2]).unwrap();
        let classes = distance_partition(p, &x).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 4, 1]);
        assert_eq!(classes[0], vec![x.rank()]);

        let p = params(7, 3);
        let x = WSubset::from_elements(p, vec![1, 2, 3]).unwrap();
        let classes = distance_partition(p, &x).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 12, 18, 4]);
        // |C_k| = C(w,k) C(n-w,k), and the classes cover the graph.
        for (k, size) in sizes.iter().enumerate() {
            let expect = binomial(3, k as i64) * binomial(4, k as i64);
            assert_eq!(BigUint::from(*size), expect);
        }
        assert_eq!(sizes.iter().sum::<usize>(), 35);
    }
}
