//! Eberlein polynomials, Johnson-graph eigenvalues and eigenspaces, the
//! inclusion mapping from J(n,1), sphere sums and sign censuses.
//!
//! The eigenspace V_i is the lambda_i-eigenspace of the Johnson graph's
//! adjacency operator, lambda_i = (w-i)(n-w-i) - i. Bases are computed as the
//! exact nullspace of A - lambda_i I; this equals V_i whenever the w+1
//! eigenvalue formulas are pairwise distinct, which is checked at runtime and
//! never assumed.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::caps;
use crate::combinat::{
    binomial, intersection_size, neighbor_ranks, vertices, JohnsonParams, RankTable, WSubset,
};
use crate::error::{Error, Result};
use crate::exactlinalg::{nullspace_int, Rat, RatMatrix, RatVector};

/// Binomial with the degenerate-factor convention of the scheme: zero when
/// the lower index is negative or exceeds a non-negative upper index.
fn binom_checked(top: i64, low: i64) -> BigUint {
    if top < 0 {
        return BigUint::zero();
    }
    binomial(top as u64, low)
}

/// Eberlein polynomial E_k(i,w,n), the eigenvalue of relation k on V_i.
pub fn eberlein(k: u32, i: u32, w: u32, n: u32) -> Result<BigInt> {
    if k > w || i > w || w > n {
        return Err(Error::OutOfRange(format!(
            "eberlein requires k,i <= w <= n; got k={k}, i={i}, w={w}, n={n}"
        )));
    }
    let mut acc = BigInt::zero();
    for j in 0..=k as i64 {
        let term = binom_checked(i as i64, j)
            * binom_checked((w - i) as i64, k as i64 - j)
            * binom_checked(n as i64 - w as i64 - i as i64, k as i64 - j);
        let term = BigInt::from(term);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// lambda_i(n,w) = E_1(i,w,n) = (w-i)(n-w-i) - i.
pub fn eigenvalue(i: u32, n: u32, w: u32) -> Result<i64> {
    if i > w || w > n {
        return Err(Error::OutOfRange(format!(
            "eigenvalue requires i <= w <= n; got i={i}, w={w}, n={n}"
        )));
    }
    let value = (w - i) as i64 * (n as i64 - w as i64 - i as i64) - i as i64;
    if i + w <= n {
        // Inside the scheme's class range the closed form must agree with the
        // Eberlein value.
        debug_assert_eq!(BigInt::from(value), eberlein(1, i, w, n)?);
    }
    Ok(value)
}

/// A rational vector on the points {1..n}, i.e. on J(n,1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundVector(pub Vec<Rat>);

impl GroundVector {
    pub fn from_ints(entries: &[i64]) -> Self {
        GroundVector(
            entries
                .iter()
                .map(|&v| crate::exactlinalg::rat(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.0.iter().sum::<Rat>().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }
}

/// A rational vector indexed by the C(n,w) vertices in colex rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeVector {
    params: JohnsonParams,
    entries: RatVector,
}

impl SchemeVector {
    pub fn new(params: JohnsonParams, entries: RatVector) -> Result<Self> {
        let n = params.vertex_count_capped(usize::MAX)?;
        if entries.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for J({},{}), got {}",
                n,
                params.n,
                params.w,
                entries.len()
            )));
        }
        Ok(SchemeVector { params, entries })
    }

    pub fn params(&self) -> JohnsonParams {
        self.params
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn entry(&self, rank: usize) -> &Rat {
        &self.entries[rank]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_zero_free(&self) -> bool {
        !self.entries.iter().any(Rat::is_zero)
    }

    /// Scales by the positive rational that makes entries primitive integers.
    pub fn normalize_primitive(&mut self) {
        let mut lcm = BigInt::one();
        for v in &self.entries {
            lcm = num_integer::Integer::lcm(&lcm, v.denom());
        }
        let mut gcd = BigInt::zero();
        for v in &self.entries {
            if !v.is_zero() {
                let scaled = v.numer() * (&lcm / v.denom());
                gcd = num_integer::Integer::gcd(&gcd, &scaled);
            }
        }
        if gcd.is_zero() {
            return;
        }
        let factor = Rat::new(lcm, gcd);
        for v in self.entries.iter_mut() {
            *v *= &factor;
        }
    }
}

/// Image of a ground vector under the inclusion mapping: the entry at vertex
/// x is the sum of the ground entries over the elements of x. For a nonzero
/// zero-sum ground vector the image is a lambda_1-eigenvector.
pub fn inclusion_map(p: JohnsonParams, a: &GroundVector) -> Result<SchemeVector> {
    if a.len() != p.n as usize {
        return Err(Error::DimensionMismatch(format!(
            "ground vector has {} entries, n = {}",
            a.len(),
            p.n
        )));
    }
    let n = p.vertex_count_capped(caps::graph_cap())?;
    let mut entries = Vec::with_capacity(n);
    for x in vertices(p) {
        let mut acc = Rat::zero();
        for &e in x.elements() {
            let v = &a.0[(e - 1) as usize];
            if !v.is_zero() {
                acc += v;
            }
        }
        entries.push(acc);
    }
    SchemeVector::new(p, entries)
}

/// Checks that lambda_0..lambda_w are pairwise distinct for (n,w).
fn check_distinct_eigenvalues(p: JohnsonParams) -> Result<Vec<i64>> {
    let lambdas: Vec<i64> = (0..=p.w)
        .map(|i| eigenvalue(i, p.n, p.w))
        .collect::<Result<_>>()?;
    for a in 0..lambdas.len() {
        for b in a + 1..lambdas.len() {
            if lambdas[a] == lambdas[b] {
                return Err(Error::CoincidentEigenvalues(format!(
                    "lambda_{a} = lambda_{b} = {} for J({},{})",
                    lambdas[a], p.n, p.w
                )));
            }
        }
    }
    Ok(lambdas)
}

/// Applies the adjacency operator by neighbor iteration (the matrix is never
/// materialized; adjacency is symmetric so nonzero entries are scattered).
pub(crate) fn adjacency_apply(p: JohnsonParams, v: &[Rat]) -> Vec<Rat> {
    let table = RankTable::new(p);
    let mut out = vec![Rat::zero(); v.len()];
    let mut nbrs = Vec::with_capacity(p.degree() as usize);
    for x in vertices(p) {
        let vx = &v[x.rank()];
        if vx.is_zero() {
            continue;
        }
        nbrs.clear();
        neighbor_ranks(p, x.elements(), &table, &mut nbrs);
        for &y in &nbrs {
            out[y] += vx;
        }
    }
    out
}

/// Exact basis of the eigenspace V_i, one column per basis vector.
///
/// Computed as nullspace(A - lambda_i I). Errors when C(n,w) exceeds the
/// eigenspace cap or when two eigenvalue formulas coincide (in which case the
/// nullspace would not single out V_i).
pub fn eigenspace_basis(i: u32, p: JohnsonParams) -> Result<RatMatrix> {
    if i > p.w {
        return Err(Error::OutOfRange(format!("i={i} > w={}", p.w)));
    }
    let n = p.vertex_count_capped(caps::eigenspace_cap())?;
    let lambdas = check_distinct_eigenvalues(p)?;
    let lambda = lambdas[i as usize];

    let table = RankTable::new(p);
    let mut rows: Vec<Vec<i64>> = vec![vec![0i64; n]; n];
    let mut nbrs = Vec::with_capacity(p.degree() as usize);
    for x in vertices(p) {
        nbrs.clear();
        neighbor_ranks(p, x.elements(), &table, &mut nbrs);
        let row = &mut rows[x.rank()];
        for &y in &nbrs {
            row[y] = 1;
        }
        row[x.rank()] = -lambda;
    }
    let basis = nullspace_int(rows)?;

    if p.n >= 2 * p.w {
        let expected = if i == 0 {
            BigUint::one()
        } else {
            binomial(p.n as u64, i as i64) - binomial(p.n as u64, i as i64 - 1)
        };
        assert_eq!(
            BigUint::from(basis.ncols()),
            expected,
            "eigenspace dimension mismatch for i={i}, J({},{})",
            p.n,
            p.w
        );
    }
    Ok(basis)
}

/// True iff v is nonzero and A v = lambda_i v exactly.
pub fn is_eigenvector(v: &SchemeVector, i: u32) -> Result<bool> {
    let p = v.params();
    let lambda = eigenvalue(i, p.n, p.w)?;
    if v.is_zero() {
        return Ok(false);
    }
    let av = adjacency_apply(p, v.entries());
    let lambda = crate::exactlinalg::rat(lambda);
    Ok(av.iter().zip(v.entries()).all(|(a, x)| *a == &lambda * x))
}

/// Sums of v over the distance classes C_0..C_w around x.
pub fn sphere_sums(v: &SchemeVector, x: &WSubset) -> Result<Vec<Rat>> {
    let p = v.params();
    if x.elements().len() != p.w as usize {
        return Err(Error::DimensionMismatch(
            "base vertex has the wrong subset size".into(),
        ));
    }
    let mut sums = vec![Rat::zero(); p.w as usize + 1];
    for y in vertices(p) {
        let vy = &v.entries()[y.rank()];
        if vy.is_zero() {
            continue;
        }
        let d = p.w - intersection_size(x.elements(), y.elements());
        sums[d as usize] += vy;
    }
    Ok(sums)
}

/// (|X_+|, |X_-|, |X_0|): counts of positive, negative and zero entries.
/// The support of v is |X_+| + |X_-|.
pub fn sign_census(v: &SchemeVector) -> (usize, usize, usize) {
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for e in v.entries() {
        if e.is_zero() {
            zero += 1;
        } else if e.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos, neg, zero)
}

/// Complement vertex in the antipodal graph J(2w,w).
pub fn antipode(p: JohnsonParams, x: &WSubset) -> Result<WSubset> {
    if p.n != 2 * p.w {
        return Err(Error::InvalidParams(format!(
            "antipode requires n = 2w, got n={}, w={}",
            p.n, p.w
        )));
    }
    let complement: Vec<u32> = (1..=p.n).filter(|e| !x.contains(*e)).collect();
    WSubset::from_elements(p, complement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::distance_partition;
    use crate::exactlinalg::rat;

    fn params(n: u32, w: u32) -> JohnsonParams {
        JohnsonParams::new(n, w).unwrap()
    }

    fn e12(p: JohnsonParams) -> SchemeVector {
        let mut a = vec![0i64; p.n as usize];
        a[0] = 1;
        a[1] = -1;
        inclusion_map(p, &GroundVector::from_ints(&a)).unwrap()
    }

    #[test]
    fn eberlein_closed_forms_for_w3() {
        for n in 7..=30u32 {
            assert_eq!(eberlein(1, 2, 3, n).unwrap(), BigInt::from(n as i64 - 7));
            assert_eq!(
                eberlein(2, 2, 3, n).unwrap(),
                BigInt::from(11 - 2 * n as i64)
            );
            assert_eq!(eberlein(3, 2, 3, n).unwrap(), BigInt::from(n as i64 - 5));
        }
        assert_eq!(eberlein(3, 2, 3, 12).unwrap(), BigInt::from(7));
    }

    #[test]
    fn eberlein_k0_and_i0() {
        for (n, w) in [(7u32, 3u32), (9, 4), (6, 2)] {
            for i in 0..=w {
                assert_eq!(eberlein(0, i, w, n).unwrap(), BigInt::one());
            }
            // E_k(0,w,n) equals the sphere size C(w,k) C(n-w,k).
            let p = params(n, w);
            let x = WSubset::unrank(p, 0).unwrap();
            let classes = distance_partition(p, &x).unwrap();
            for k in 0..=w {
                assert_eq!(
                    eberlein(k, 0, w, n).unwrap(),
                    BigInt::from(classes[k as usize].len())
                );
            }
        }
    }

    #[test]
    fn eigenvalue_formulas() {
        assert_eq!(eigenvalue(0, 9, 3).unwrap(), 18); // w(n-w)
        assert_eq!(eigenvalue(1, 10, 3).unwrap(), 11);
        for r in 4..=12u32 {
            assert_eq!(eigenvalue(2, 2 * r + 1, 3).unwrap(), 2 * r as i64 - 6);
        }
        assert!(eigenvalue(4, 9, 3).is_err());
    }

    #[test]
    fn eigenvalue_matches_eberlein_broadly() {
        for w in 1..=10u32 {
            for n in (2 * w)..=40 {
                for i in 0..=w {
                    assert_eq!(
                        BigInt::from(eigenvalue(i, n, w).unwrap()),
                        eberlein(1, i, w, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn inclusion_map_examples() {
        let p = params(4, 2);
        let zero = inclusion_map(p, &GroundVector::from_ints(&[0, 0, 0, 0])).unwrap();
        assert!(zero.is_zero());

        let v = inclusion_map(p, &GroundVector::from_ints(&[1, 1, -1, -1])).unwrap();
        let idx = |e: Vec<u32>| WSubset::from_elements(p, e).unwrap().rank();
        assert_eq!(*v.entry(idx(vec![1, 2])), rat(2));
        assert_eq!(*v.entry(idx(vec![3, 4])), rat(-2));
        let zeros = v.entries().iter().filter(|e| e.is_zero()).count();
        assert_eq!(zeros, 4);
    }

    #[test]
    fn v12_structure_and_census() {
        for (n, w) in [(6u32, 2u32), (7, 3), (8, 3)] {
            let p = params(n, w);
            let v = e12(p);
            let (pos, neg, zero) = sign_census(&v);
            let expected: usize = (&binomial(n as u64 - 2, w as i64 - 1)).try_into().unwrap();
            assert_eq!(pos, expected);
            assert_eq!(neg, expected);
            let total: usize = (&p.vertex_count()).try_into().unwrap();
            assert_eq!(zero, total - 2 * expected);
            assert!(is_eigenvector(&v, 1).unwrap());
        }
    }

    #[test]
    fn all_ones_is_v0_only() {
        let p = params(5, 2);
        let ones = SchemeVector::new(p, vec![rat(1); 10]).unwrap();
        assert!(is_eigenvector(&ones, 0).unwrap());
        assert!(!is_eigenvector(&ones, 1).unwrap());
        let (pos, neg, zero) = sign_census(&ones);
        assert_eq!((pos, neg, zero), (10, 0, 0));
    }

    #[test]
    fn eigenspace_dims_and_defining_property() {
        let p = params(6, 3);
        let b0 = eigenspace_basis(0, p).unwrap();
        assert_eq!(b0.ncols(), 1);
        let col = b0.col(0);
        assert!(col.windows(2).all(|w| w[0] == w[1]));

        let b1 = eigenspace_basis(1, p).unwrap();
        assert_eq!(b1.ncols(), 5);

        for i in 0..=3u32 {
            let b = eigenspace_basis(i, p).unwrap();
            for c in 0..b.ncols() {
                let v = SchemeVector::new(p, b.col(c)).unwrap();
                assert!(is_eigenvector(&v, i).unwrap(), "i={i}, column {c}");
            }
        }
    }

    #[test]
    fn coincident_eigenvalues_are_refused() {
        // J(5,4): lambda_2 = lambda_4 = -4.
        let p = params(5, 4);
        assert!(matches!(
            eigenspace_basis(1, p),
            Err(Error::CoincidentEigenvalues(_))
        ));
    }

    #[test]
    fn sphere_sums_examples() {
        let p = params(6, 2);
        let ones = SchemeVector::new(p, vec![rat(1); 15]).unwrap();
        let x = WSubset::unrank(p, 0).unwrap();
        let sums = sphere_sums(&ones, &x).unwrap();
        let classes = distance_partition(p, &x).unwrap();
        for k in 0..=2usize {
            assert_eq!(sums[k], rat(classes[k].len() as i64));
        }

        // v^{1,2} around x with 1 in x, 2 not in x: S_k = E_k(1,w,n).
        let v = e12(p);
        let x = WSubset::from_elements(p, vec![1, 3]).unwrap();
        let sums = sphere_sums(&v, &x).unwrap();
        for k in 0..=2u32 {
            let e = eberlein(k, 1, 2, 6).unwrap();
            assert_eq!(sums[k as usize], Rat::from_integer(e));
        }
    }

    #[test]
    fn antipode_examples_and_parity() {
        let p = params(4, 2);
        let x = WSubset::from_elements(p, vec![1, 2]).unwrap();
        let bar = antipode(p, &x).unwrap();
        assert_eq!(bar.elements(), &[3, 4]);
        assert_eq!(antipode(p, &bar).unwrap().elements(), x.elements());

        let bad = params(5, 2);
        let y = WSubset::from_elements(bad, vec![1, 2]).unwrap();
        assert!(antipode(bad, &y).is_err());

        // Antipodal parity on J(6,3): odd i gives odd vectors, even i even.
        let p = params(6, 3);
        let pairs: Vec<(usize, usize)> = vertices(p)
            .map(|x| (x.rank(), antipode(p, &x).unwrap().rank()))
            .collect();
        for i in 0..=3u32 {
            let b = eigenspace_basis(i, p).unwrap();
            for c in 0..b.ncols() {
                let col = b.col(c);
                for &(x, y) in &pairs {
                    if i % 2 == 1 {
                        assert_eq!(col[x], -col[y].clone());
                    } else {
                        assert_eq!(col[x], col[y]);
                    }
                }
            }
        }
    }

    #[test]
    fn inclusion_images_of_zero_sum_vectors_are_lambda1_eigenvectors() {
        let p = params(7, 3);
        let a = GroundVector(vec![
            rat_frac_local(1, 2),
            rat(1),
            rat(-2),
            rat_frac_local(3, 2),
            rat(0),
            rat(-1),
            rat(0),
        ]);
        assert!(a.is_zero_sum());
        let v = inclusion_map(p, &a).unwrap();
        assert!(is_eigenvector(&v, 1).unwrap());
    }

    fn rat_frac_local(p: i64, q: i64) -> Rat {
        crate::exactlinalg::rat_frac(p, q)
    }
}
