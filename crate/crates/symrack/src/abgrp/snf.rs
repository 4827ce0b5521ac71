//! Smith normal form over the integers, with transform tracking.
//!
//! `snf(m)` produces unimodular `u`, `v` with `u * m * v = d` diagonal and
//! `d[0] | d[1] | ...`. The inverses `u_inv`, `v_inv` are accumulated
//! alongside so presentations can be rebased without a separate matrix
//! inversion. Arbitrary precision is not optional here: intermediate
//! entries blow past machine words even for small inputs.

use super::mat::Mat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub struct Snf {
    pub u: Mat,
    pub u_inv: Mat,
    pub d: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

impl Snf {
    /// Diagonal entry, treating out-of-range indices as 0.
    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.d.rows().min(self.d.cols()) {
            self.d.at(i, i).clone()
        } else {
            BigInt::zero()
        }
    }

    /// Invariant factors per column generator: `d[j]` for pivoted columns,
    /// 0 for the rest.
    pub fn column_factors(&self) -> Vec<BigInt> {
        (0..self.d.cols()).map(|j| self.diag(j)).collect()
    }
}

struct Work {
    d: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    v_inv: Mat,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row_i -= q * row_k  (so u_inv gets col_k += q * col_i)
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        self.d.row_sub(i, k, q);
        self.u.row_sub(i, k, q);
        let mq = -q.clone();
        self.u_inv.col_sub(k, i, &mq);
    }

    /// col_j -= q * col_k  (so v_inv gets row_k += q * row_j)
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        self.d.col_sub(j, k, q);
        self.v.col_sub(j, k, q);
        let mq = -q.clone();
        self.v_inv.row_sub(k, j, &mq);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Quotient and balanced remainder: `a = q*b + r` with `|r| <= b/2`,
/// assuming `b > 0`.
fn balanced_div(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (mut q, mut r) = a.div_mod_floor(b);
    if &r * 2 > *b {
        q += 1;
        r -= b;
    }
    (q, r)
}

fn find_pivot(d: &Mat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let e = d.at(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((_, _, b)) if *b <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn snf(m: &Mat) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: Mat::identity(rows),
        u_inv: Mat::identity(rows),
        v: Mat::identity(cols),
        v_inv: Mat::identity(cols),
    };
    let mut k = 0;
    while k < rows.min(cols) {
        'pivot: loop {
            // global reselection of the smallest pivot each sweep keeps the
            // balanced quotients tiny, which is what stops the classic
            // transform-entry explosion on dense inputs
            let Some((pi, pj)) = find_pivot(&w.d, k) else { break };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.d.at(k, k).is_negative() {
                w.negate_row(k);
            }
            // one balanced reduction sweep over the pivot column and row
            let mut clean = true;
            for i in k + 1..rows {
                if w.d.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = balanced_div(w.d.at(i, k), w.d.at(k, k));
                w.row_sub(i, k, &q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if w.d.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = balanced_div(w.d.at(k, j), w.d.at(k, k));
                w.col_sub(j, k, &q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // divisibility fix-up: the pivot must divide the rest
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !w.d.at(i, j).mod_floor(w.d.at(k, k)).is_zero() {
                        let m1 = BigInt::from(-1);
                        w.row_sub(k, i, &m1); // row_k += row_i
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if w.d.at(k, k).is_negative() {
            w.negate_row(k);
        }
        k += 1;
    }
    Snf { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, v_inv: w.v_inv }
}

/// Columns generating the integer kernel lattice `{x : m x = 0}`.
pub fn kernel(m: &Mat) -> Mat {
    let s = snf(m);
    let free: Vec<usize> = (0..m.cols()).filter(|&j| s.diag(j).is_zero()).collect();
    s.v.select_cols(&free)
}

/// Reusable exact solver for `m x = b` against a fixed `m`.
pub struct Solver {
    s: Snf,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(m: &Mat) -> Self {
        Solver { s: snf(m), rows: m.rows(), cols: m.cols() }
    }

    pub fn is_solvable(&self, b: &[BigInt]) -> bool {
        self.solve_reduced(b).is_some()
    }

    fn solve_reduced(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.s.u.mul_vec(b);
        let mut wvec = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            let di = self.s.diag(i);
            if di.is_zero() {
                if !ci.is_zero() {
                    return None;
                }
            } else if i < self.cols {
                let (q, r) = ci.div_mod_floor(&di);
                if !r.is_zero() {
                    return None;
                }
                wvec[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(wvec)
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.solve_reduced(b)?;
        Some(self.s.v.mul_vec(&w))
    }
}

/// One-shot exact solve of `m x = b`.
pub fn solve(m: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(m).solve(b)
}
