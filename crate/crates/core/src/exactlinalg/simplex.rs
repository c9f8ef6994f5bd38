//! Textbook two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Instances here are tiny (tens of rows, a handful of structural unknowns),
//! so a dense tableau is the right tool: termination is guaranteed by Bland's
//! rule and exact arithmetic leaves no feasibility-vs-roundoff gap.

use num_traits::{One, Signed, Zero};

use super::Rat;

pub(crate) enum LpOutcome {
    Optimal { x: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    cost: Vec<Rat>,
    /// Negated current objective value (classic tableau bookkeeping).
    neg_obj: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    /// Subtracts basic-row multiples from the cost row so reduced costs of
    /// basic columns are zero.
    fn price_out(&mut self) {
        for (i, &b) in self.basis.iter().enumerate() {
            if !self.cost[b].is_zero() {
                let f = self.cost[b].clone();
                for (c, v) in self.cost.iter_mut().enumerate() {
                    if !self.rows[i][c].is_zero() {
                        *v -= &f * &self.rows[i][c];
                    }
                }
                self.neg_obj -= &f * &self.rhs[i];
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let nonzero: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut self.rows[i][c], Rat::zero());
            for &j in &nonzero {
                if j == c {
                    continue;
                }
                let delta = &f * &self.rows[r][j];
                self.rows[i][j] -= delta;
            }
            let delta = &f * &self.rhs[r];
            self.rhs[i] -= delta;
        }
        if !self.cost[c].is_zero() {
            let f = std::mem::replace(&mut self.cost[c], Rat::zero());
            for &j in &nonzero {
                if j == c {
                    continue;
                }
                let delta = &f * &self.rows[r][j];
                self.cost[j] -= delta;
            }
            let delta = &f * &self.rhs[r];
            self.neg_obj -= delta;
        }
        self.basis[r] = c;
    }

    /// Bland's rule iteration until optimal or unbounded.
    fn optimize(&mut self, active_cols: usize) -> bool {
        loop {
            let entering = (0..active_cols).find(|&j| self.cost[j].is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let key = (ratio, self.basis[i], i);
                    if best.as_ref().is_none_or(|b| (&key.0, key.1) < (&b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            let Some((_, _, r)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Solves min c.x subject to rows.x = rhs, x >= 0, rhs >= 0.
///
/// `basic_hint[i]`, when set, names a column that is an identity column for
/// row i and starts in the basis; other rows receive artificial variables.
pub(crate) fn solve_standard(
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    cost: Vec<Rat>,
    basic_hint: Vec<Option<usize>>,
) -> LpOutcome {
    let m = rows.len();
    let n = cost.len();
    debug_assert!(rhs.iter().all(|b| !b.is_negative()));

    let artificial_rows: Vec<usize> = (0..m).filter(|&i| basic_hint[i].is_none()).collect();
    let total = n + artificial_rows.len();

    let mut t_rows: Vec<Vec<Rat>> = rows
        .into_iter()
        .map(|mut row| {
            row.resize(total, Rat::zero());
            row
        })
        .collect();
    let mut basis = vec![0usize; m];
    for (i, hint) in basic_hint.iter().enumerate() {
        if let Some(col) = hint {
            basis[i] = *col;
        }
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        t_rows[i][n + k] = Rat::one();
        basis[i] = n + k;
    }

    let mut t = Tableau {
        rows: t_rows,
        rhs,
        cost: {
            let mut c1 = vec![Rat::zero(); total];
            for k in 0..artificial_rows.len() {
                c1[n + k] = Rat::one();
            }
            c1
        },
        neg_obj: Rat::zero(),
        basis,
    };

    if !artificial_rows.is_empty() {
        t.price_out();
        let ok = t.optimize(total);
        assert!(ok, "phase-1 objective is bounded below by zero");
        // Objective value is -neg_obj.
        if t.neg_obj.is_negative() {
            return LpOutcome::Infeasible;
        }
        // Pivot lingering artificials out; drop rows that are redundant.
        let mut drop_rows = Vec::new();
        for i in 0..m {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => drop_rows.push(i),
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            t.rows.remove(i);
            t.rhs.remove(i);
            t.basis.remove(i);
        }
    }

    // Phase 2 on the original costs, artificial columns frozen out.
    t.cost = {
        let mut c2 = cost;
        c2.resize(total, Rat::zero());
        c2
    };
    t.neg_obj = Rat::zero();
    t.price_out();
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let objective = -t.neg_obj.clone();
    LpOutcome::Optimal { x, objective }
}
