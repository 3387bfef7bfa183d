//! Exact dense linear algebra over Q and Z.
//!
//! The rational solver clears denominators and runs fraction-free (Bareiss)
//! elimination on integers, which keeps intermediate growth polynomial and
//! avoids rational gcd churn in the inner loop. The integer side provides
//! row-style Hermite reduction (for module spans) and Smith diagonalisation
//! with the left transform tracked (for p-adic membership tests).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        QMat { rows, cols, a }
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = x * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Solve self * X = B by fraction-free elimination. None if singular.
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let m = b.cols;
        // Clear denominators row by row: each row of [A | B] is scaled by the
        // lcm of its denominators, which does not change the solution.
        let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut l = BigInt::one();
            for j in 0..n {
                l = l.lcm(self[(i, j)].denom());
            }
            for j in 0..m {
                l = l.lcm(b[(i, j)].denom());
            }
            let mut row = Vec::with_capacity(n + m);
            for j in 0..n {
                let x = &self[(i, j)];
                row.push(x.numer() * (&l / x.denom()));
            }
            for j in 0..m {
                let x = &b[(i, j)];
                row.push(x.numer() * (&l / x.denom()));
            }
            w.push(row);
        }
        // Bareiss forward elimination.
        let mut denom = BigInt::one();
        for k in 0..n {
            let piv = (k..n).find(|&i| !w[i][k].is_zero())?;
            w.swap(k, piv);
            for i in k + 1..n {
                for j in k + 1..n + m {
                    let t = &w[k][k] * &w[i][j] - &w[i][k] * &w[k][j];
                    w[i][j] = &t / &denom;
                }
                w[i][k] = BigInt::zero();
            }
            denom = w[k][k].clone();
        }
        // Back substitution in rationals.
        let mut x = QMat::zero(n, m);
        for c in 0..m {
            for i in (0..n).rev() {
                let mut s = BigRational::from(w[i][n + c].clone());
                for j in i + 1..n {
                    s -= BigRational::from(w[i][j].clone()) * &x[(j, c)];
                }
                x[(i, c)] = s / BigRational::from(w[i][i].clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        self.solve(&QMat::identity(self.rows))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.a.swap(p * self.cols + j, r * self.cols + j);
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let t = &self[(r, j)] * &inv;
                self[(r, j)] = t;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let t = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel, as rows.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = vec![];
        for &fc in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[fc] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = -m[(i, fc)].clone();
            }
            out.push(v);
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.a[i * self.cols + j]
    }
}

/// Row-style Hermite reduction of an integer row span: returns a reduced
/// basis of the Z-module spanned by the input rows, ordered by pivot column.
pub fn hnf_row_basis(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut by_pivot: std::collections::BTreeMap<usize, Vec<BigInt>> = Default::default();
    for row in rows {
        insert_row(&mut by_pivot, row, ncols);
    }
    let mut basis: Vec<Vec<BigInt>> = by_pivot.into_values().collect();
    // Reduce entries above each pivot.
    for i in (0..basis.len()).rev() {
        let c = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        let p = basis[i][c].clone();
        for k in 0..i {
            let q = num_integer::Integer::div_floor(&basis[k][c], &p);
            if !q.is_zero() {
                for j in 0..ncols {
                    let t = &basis[k][j] - &q * &basis[i][j];
                    basis[k][j] = t;
                }
            }
        }
    }
    basis
}

fn insert_row(
    by_pivot: &mut std::collections::BTreeMap<usize, Vec<BigInt>>,
    mut row: Vec<BigInt>,
    ncols: usize,
) {
    loop {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            return;
        };
        match by_pivot.get_mut(&c) {
            None => {
                if row[c].is_negative() {
                    for x in row.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                by_pivot.insert(c, row);
                return;
            }
            Some(b) => {
                let e = b[c].extended_gcd(&row[c]);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let (u, v) = (&row[c] / &g, &b[c] / &g);
                for j in 0..ncols {
                    let nb = &x * &b[j] + &y * &row[j];
                    let nr = &v * &row[j] - &u * &b[j];
                    b[j] = nb;
                    row[j] = nr;
                }
                debug_assert_eq!(b[c], g);
                debug_assert!(row[c].is_zero());
                // row's pivot moved strictly right; reinsert.
            }
        }
    }
}

/// Smith-style diagonalisation: returns (u, d) with u unimodular, d diagonal
/// entries (possibly zero), such that u * a * v = diag(d) for some unimodular
/// v that is not tracked. Suitable for solvability tests of a*y = x.
pub fn smith_diagonal(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // Pick smallest nonzero entry in the remaining block as pivot.
            let mut piv: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !m[i][j].is_zero()
                        && piv.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            m.swap(k, pi);
            u.swap(k, pi);
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(k, pj);
                }
            }
            let mut clean = true;
            for i in k + 1..rows {
                if !m[i][k].is_zero() {
                    let q = rounded_div(&m[i][k], &m[k][k]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &m[i][j] - &q * &m[k][j];
                            m[i][j] = t;
                        }
                        for j in 0..rows {
                            let t = &u[i][j] - &q * &u[k][j];
                            u[i][j] = t;
                        }
                    }
                    if !m[i][k].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !m[k][j].is_zero() {
                    let q = rounded_div(&m[k][j], &m[k][k]);
                    if !q.is_zero() {
                        for row in m.iter_mut() {
                            let t = &row[j] - &q * &row[k];
                            row[j] = t;
                        }
                    }
                    if !m[k][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
    }
    let d = (0..n).map(|k| m[k][k].clone()).collect();
    (u, d)
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // Quotient minimising |a - q b|.
    let (q, r) = a.div_rem(b);
    if r.abs() * 2u8 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn solve_and_inverse() {
        let a = QMat::from_fn(2, 2, |i, j| rat((i * 2 + j + 1) as i64, 1));
        // [[1,2],[3,4]]
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        let singular = QMat::from_fn(2, 2, |i, j| rat((i + j) as i64, 1));
        // [[0,1],[1,2]] is invertible; make a real singular one
        let s = QMat::from_fn(2, 2, |i, _| rat(i as i64 + 1, 1));
        assert!(s.inverse().is_none());
        assert!(singular.inverse().is_some());
    }

    #[test]
    fn kernel_dim() {
        // x + y + z = 0 has 2-dim kernel.
        let a = QMat::from_fn(1, 3, |_, _| rat(1, 1));
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn hnf_reduces_span() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(3)],
        ];
        let b = hnf_row_basis(rows);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0][0], BigInt::from(2));
        assert_eq!(b[1][1], BigInt::from(3));
    }

    #[test]
    fn smith_solvability() {
        // a = [[2,0],[0,6]] scaled by a shear; membership of (2,0) yes, (1,0) no.
        let a = vec![
            vec![BigInt::from(2), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(8)],
        ];
        let (u, d) = smith_diagonal(&a);
        // |det| preserved: product of d = |det a| = 12
        let prod: BigInt = d.iter().product();
        assert_eq!(prod.abs(), BigInt::from(12));
        // u must be unimodular: det = +-1
        let det = &u[0][0] * &u[1][1] - &u[0][1] * &u[1][0];
        assert_eq!(det.abs(), BigInt::one());
    }
}
