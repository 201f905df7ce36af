//! Smith normal form over ℤ with unimodular certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries `factors` positive and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub diagonal: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }

    /// Columns of `V` spanning the kernel lattice of `M`.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.v.select_cols(self.rank()..self.v.cols())
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the nonzero entry of least absolute value in the
    /// submatrix starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row and column `t` using `(t, t)` as pivot; returns false if a
    /// nonzero remainder was left, in which case a smaller pivot exists.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn move_min_of_cross(&mut self, t: usize) {
        let mut best = (t, t);
        let mut best_abs: Option<BigInt> = None;
        let mut consider = |pos: (usize, usize), x: &BigInt| {
            if !x.is_zero() && best_abs.as_ref().is_none_or(|b| x.abs() < *b) {
                best = pos;
                best_abs = Some(x.abs());
            }
        };
        for i in t..self.a.rows() {
            consider((i, t), &self.a[(i, t)]);
        }
        for j in t..self.a.cols() {
            consider((t, j), &self.a[(t, j)]);
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.min_pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            if !r.clear_cross(t) {
                r.move_min_of_cross(t);
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let p = r.a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !r.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        factors.push(r.a[(t, t)].clone());
        t += 1;
    }
    SmithForm { factors, u: r.u, u_inv: r.u_inv, v: r.v, v_inv: r.v_inv, diagonal: r.a }
}
