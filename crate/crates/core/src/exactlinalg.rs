//! Exact rational vectors and matrices, reduced row echelon form, nullspace
//! bases, and a strict-sign feasibility solver backed by an exact-rational
//! simplex.
//!
//! Elimination runs fraction-free on primitive integer rows (an i64 fast path
//! escalates to `BigInt` on overflow), which keeps entries small for the
//! structured matrices this crate produces. Results are converted back to
//! reduced rationals at the boundary.

mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVector = Vec<Rat>;

/// Rational from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational p/q (q != 0); reduced on construction.
pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            nrows,
            ncols,
            data: vec![Rat::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.ncols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.ncols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn col(&self, c: usize) -> RatVector {
        (0..self.nrows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<RatVector> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.ncols,
                v.len()
            )));
        }
        Ok((0..self.nrows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }
}

/// Integer rows used internally by the elimination.
enum IntRows {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

/// Clears denominators and strips content, row by row.
fn primitive_int_rows(m: &RatMatrix) -> IntRows {
    let mut big: Vec<Vec<BigInt>> = Vec::with_capacity(m.nrows());
    for r in 0..m.nrows() {
        let mut lcm = BigInt::one();
        for v in m.row(r) {
            lcm = lcm.lcm(v.denom());
        }
        let mut row: Vec<BigInt> = m
            .row(r)
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        strip_content_big(&mut row);
        big.push(row);
    }
    let fits = big
        .iter()
        .flatten()
        .all(|v| <&BigInt as TryInto<i64>>::try_into(v).is_ok());
    if fits {
        IntRows::Small(
            big.iter()
                .map(|row| row.iter().map(|v| v.try_into().unwrap()).collect())
                .collect(),
        )
    } else {
        IntRows::Big(big)
    }
}

fn strip_content_big(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn strip_content_i128(row: &mut [i128]) {
    let mut g: u128 = 0;
    for &v in row.iter() {
        g = gcd_u128(g, v.unsigned_abs());
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g as i128;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Gauss-Jordan over i64 rows. Each pivot row ends primitive with positive
/// pivot and zeros above/below every pivot. Returns None when an intermediate
/// value escapes i64; the caller then retries over BigInt.
fn eliminate_small(rows: &mut [Vec<i64>]) -> Option<Vec<usize>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0usize;
    let mut buf: Vec<i128> = vec![0; ncols];
    for col in 0..ncols {
        if next == nrows {
            break;
        }
        let pivot_row = (next..nrows)
            .filter(|&i| rows[i][col] != 0)
            .min_by_key(|&i| (rows[i][col].unsigned_abs(), i));
        let Some(pivot_row) = pivot_row else { continue };
        rows.swap(next, pivot_row);
        for i in 0..nrows {
            if i == next || rows[i][col] == 0 {
                continue;
            }
            let a = rows[next][col] as i128;
            let b = rows[i][col] as i128;
            let g = gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128;
            let (pa, pb) = (a / g, b / g);
            for j in 0..ncols {
                let v = pa
                    .checked_mul(rows[i][j] as i128)?
                    .checked_sub(pb.checked_mul(rows[next][j] as i128)?)?;
                buf[j] = v;
            }
            strip_content_i128(&mut buf);
            for j in 0..ncols {
                rows[i][j] = i64::try_from(buf[j]).ok()?;
            }
        }
        pivots.push(col);
        next += 1;
    }
    for (r, &p) in pivots.iter().enumerate() {
        if rows[r][p] < 0 {
            for v in rows[r].iter_mut() {
                *v = -*v;
            }
        }
    }
    Some(pivots)
}

// Index loops here walk two rows of the same slice at once.
#[allow(clippy::needless_range_loop)]
fn eliminate_big(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..ncols {
        if next == nrows {
            break;
        }
        let pivot_row = (next..nrows)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].abs(), i));
        let Some(pivot_row) = pivot_row else { continue };
        rows.swap(next, pivot_row);
        for i in 0..nrows {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let a = rows[next][col].clone();
            let b = rows[i][col].clone();
            let g = a.gcd(&b);
            let (pa, pb) = (&a / &g, &b / &g);
            for j in 0..ncols {
                let v = &pa * &rows[i][j] - &pb * &rows[next][j];
                rows[i][j] = v;
            }
            strip_content_big(&mut rows[i]);
        }
        pivots.push(col);
        next += 1;
    }
    for (r, &p) in pivots.iter().enumerate() {
        if rows[r][p].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
    }
    pivots
}

/// Integer RREF rows (pivot rows primitive, pivots positive) plus pivot cols.
fn integer_rref(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    integer_rref_from(primitive_int_rows(m))
}

fn integer_rref_from(rows: IntRows) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    match rows {
        IntRows::Small(mut rows) => {
            let saved = rows.clone();
            if let Some(pivots) = eliminate_small(&mut rows) {
                let big = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                (big, pivots)
            } else {
                let mut big: Vec<Vec<BigInt>> = saved
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                let pivots = eliminate_big(&mut big);
                (big, pivots)
            }
        }
        IntRows::Big(mut rows) => {
            let pivots = eliminate_big(&mut rows);
            (rows, pivots)
        }
    }
}

/// Reduced row echelon form over exact rationals, with the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, pivots) = integer_rref(m);
    let mut out = RatMatrix::zeros(m.nrows(), m.ncols());
    for (r, row) in rows.iter().enumerate() {
        if r < pivots.len() {
            let p = &row[pivots[r]];
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    *out.at_mut(r, c) = Rat::new(v.clone(), p.clone());
                }
            }
        }
        // rows past the last pivot are zero by construction
    }
    (out, pivots)
}

/// Rank of the matrix (number of RREF pivots).
pub fn rank(m: &RatMatrix) -> usize {
    integer_rref(m).1.len()
}

/// Basis of the nullspace {x : Mx = 0}, one column per free variable.
///
/// Columns are scaled to primitive integer entries with the free coordinate
/// positive, so the basis is deterministic.
pub fn nullspace(m: &RatMatrix) -> RatMatrix {
    let ncols = m.ncols();
    nullspace_from(integer_rref(m), ncols)
}

/// Nullspace of an integer matrix, skipping the rational round trip.
pub fn nullspace_int(rows: Vec<Vec<i64>>) -> Result<RatMatrix> {
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("ragged rows".into()));
    }
    Ok(nullspace_from(
        integer_rref_from(IntRows::Small(rows)),
        ncols,
    ))
}

fn nullspace_from(rref: (Vec<Vec<BigInt>>, Vec<usize>), ncols: usize) -> RatMatrix {
    let (rows, pivots) = rref;
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = RatMatrix::zeros(ncols, free.len());
    for (bi, &f) in free.iter().enumerate() {
        // x[f] = 1, x[pivot_r] = -row_r[f] / row_r[pivot_r]; scale primitive.
        let mut col: Vec<BigInt> = vec![BigInt::zero(); ncols];
        let mut denom_lcm = BigInt::one();
        for (r, &p) in pivots.iter().enumerate() {
            if !rows[r][f].is_zero() {
                denom_lcm = denom_lcm.lcm(&rows[r][p]);
            }
        }
        col[f] = denom_lcm.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if !rows[r][f].is_zero() {
                col[p] = -&rows[r][f] * (&denom_lcm / &rows[r][p]);
            }
        }
        strip_content_big(&mut col);
        for (c, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                *basis.at_mut(c, bi) = Rat::from_integer(v);
            }
        }
    }
    basis
}

/// Required strict sign of a row product in `strict_feasibility`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    fn factor(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    /// True when `v` has this sign strictly.
    pub fn matches(self, v: &Rat) -> bool {
        match self {
            Sign::Pos => v.is_positive(),
            Sign::Neg => v.is_negative(),
        }
    }
}

/// Searches for c with sign((A c)_r) = signs_r strictly for every row.
///
/// Solved as an exact LP: maximize the margin t subject to
/// signs_r (A c)_r >= t and -1 <= c_j <= 1; the system is strictly feasible
/// iff the optimum satisfies t > 0. Any returned witness is re-verified by
/// direct multiplication before being handed back. Infeasibility is a valid
/// answer (None), not an error.
pub fn strict_feasibility(a: &RatMatrix, signs: &[Sign]) -> Result<Option<RatVector>> {
    if signs.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{} sign constraints for {} rows",
            signs.len(),
            a.nrows()
        )));
    }
    let nrows = a.nrows();
    let m = a.ncols();
    if nrows == 0 {
        return Ok(Some(vec![Rat::zero(); m]));
    }
    if m == 0 {
        return Ok(None);
    }

    // Variables: u_0..u_{m-1} in [0,2] (c_j = u_j - 1), t >= 0, one surplus
    // per strict row, one slack per box row. (u = 1, t = 0) is feasible, so
    // artificials are only needed on rows whose rhs stays positive.
    let nvars = m + 1 + nrows + m;
    let t_col = m;
    let surplus0 = m + 1;
    let slack0 = m + 1 + nrows;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(nrows + m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(nrows + m);
    let mut basic_hint: Vec<Option<usize>> = Vec::with_capacity(nrows + m);

    for r in 0..nrows {
        let s = rat(signs[r].factor());
        let mut row = vec![Rat::zero(); nvars];
        let mut b = Rat::zero();
        for (j, slot) in row.iter_mut().enumerate().take(m) {
            let d = &s * a.at(r, j);
            b += &d;
            *slot = d;
        }
        row[t_col] = rat(-1);
        row[surplus0 + r] = rat(-1);
        if b.is_positive() {
            basic_hint.push(None);
        } else {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
            basic_hint.push(Some(surplus0 + r));
        }
        rows.push(row);
        rhs.push(b);
    }
    for j in 0..m {
        let mut row = vec![Rat::zero(); nvars];
        row[j] = Rat::one();
        row[slack0 + j] = Rat::one();
        rows.push(row);
        rhs.push(rat(2));
        basic_hint.push(Some(slack0 + j));
    }

    let mut cost = vec![Rat::zero(); nvars];
    cost[t_col] = rat(-1); // maximize t

    let outcome = simplex::solve_standard(rows, rhs, cost, basic_hint);
    let x = match outcome {
        simplex::LpOutcome::Optimal { x, objective } => {
            debug_assert_eq!(objective, -x[t_col].clone());
            x
        }
        // (u=1, t=0) is always feasible and t is bounded by the box.
        simplex::LpOutcome::Infeasible | simplex::LpOutcome::Unbounded => {
            unreachable!("margin LP is feasible and bounded by construction")
        }
    };
    if !x[t_col].is_positive() {
        return Ok(None);
    }
    let c: RatVector = (0..m).map(|j| &x[j] - Rat::one()).collect();
    let prod = a.mul_vec(&c)?;
    for (r, v) in prod.iter().enumerate() {
        assert!(
            signs[r].matches(v),
            "simplex witness failed the exact sign recheck on row {r}"
        );
    }
    Ok(Some(c))
}
