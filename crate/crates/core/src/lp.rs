//! Small exact linear programs over the rationals (dense two-phase simplex, Bland's rule).
//!
//! Variables are nonnegative. Problem sizes here are tiny (a handful of variables
//! and constraints), so a dense tableau is adequate.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rel: Rel, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn from_ints(coeffs: &[i64], rel: Rel, rhs: i64) -> Self {
        Constraint::new(coeffs.iter().map(|&c| int(c)).collect(), rel, int(rhs))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<BigRational>, value: BigRational },
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

struct Tableau {
    // rows[i] = coefficients of all columns followed by the rhs
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · x` over the current feasible basis; `allowed` masks entering columns.
    fn optimize(&mut self, obj: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            // reduced cost of column j: obj_j - Σ obj_{basis_i} row_i[j]
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = obj[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &obj[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        rc -= cb * &row[j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x ≥ 0`.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    // columns: n originals, one slack per inequality, one artificial per row
    let n_slack = constraints.iter().filter(|c| c.rel != Rel::Eq).count();
    let ncols = n + n_slack + m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint arity");
        let mut row = vec![BigRational::zero(); ncols + 1];
        row[..n].clone_from_slice(&c.coeffs);
        match c.rel {
            Rel::Le => {
                row[slack] = BigRational::one();
                slack += 1;
            }
            Rel::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
            }
            Rel::Eq => {}
        }
        row[ncols] = c.rhs.clone();
        if row[ncols].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[n + n_slack + i] = BigRational::one();
        basis.push(n + n_slack + i);
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    // Phase I: maximize -Σ artificials.
    let mut obj1 = vec![BigRational::zero(); ncols];
    for v in obj1.iter_mut().skip(n + n_slack) {
        *v = -BigRational::one();
    }
    let all = vec![true; ncols];
    t.optimize(&obj1, &all);
    let infeasible = t.basis.iter().enumerate().any(|(i, &b)| b >= n + n_slack && !t.rows[i][ncols].is_zero());
    if infeasible {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..t.rows.len() {
        if t.basis[i] >= n + n_slack {
            if let Some(c) = (0..n + n_slack).find(|&c| !t.rows[i][c].is_zero()) {
                t.pivot(i, c);
            }
        }
    }

    // Phase II on the original objective, artificials barred from entering.
    let mut obj2 = vec![BigRational::zero(); ncols];
    obj2[..n].clone_from_slice(objective);
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().skip(n + n_slack) {
        *a = false;
    }
    if !t.optimize(&obj2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][ncols].clone();
        }
    }
    let value = x.iter().zip(objective).map(|(a, b)| a * b).fold(BigRational::zero(), |s, v| s + v);
    LpOutcome::Optimal { x, value }
}

/// A feasible point, if any.
pub fn feasible_point(nvars: usize, constraints: &[Constraint]) -> Option<Vec<BigRational>> {
    match maximize(&vec![BigRational::zero(); nvars], constraints) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
