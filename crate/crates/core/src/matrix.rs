//! Dense square/rectangular matrices over a [`Ring`].

use std::fmt;

use crate::field::{Fe, Field};
use crate::poly::{Poly, TPoly};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<R> {
    base: Field,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn zeros(base: Field, rows: usize, cols: usize) -> Self {
        Mat { base, rows, cols, data: vec![R::zero_in(base); rows * cols] }
    }

    pub fn identity(base: Field, n: usize) -> Self {
        let mut m = Self::zeros(base, n, n);
        for i in 0..n {
            m[(i, i)] = R::one_in(base);
        }
        m
    }

    pub fn from_rows(base: Field, rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { base, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(base: Field, d: &[R]) -> Self {
        let mut m = Self::zeros(base, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn base_field(&self) -> Field {
        self.base
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { base: self.base, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.base, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.base, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(R::zero_in(self.base), |acc, j| acc + self[(i, j)].clone() * v[j].clone()))
            .collect()
    }

    /// `P^T * self * P`.
    pub fn congruent(&self, p: &Self) -> Self {
        p.transpose().mul(self).mul(p)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone())).collect();
        Mat { base: self.base, rows: rows.len(), cols: cols.len(), data }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Fraction-free (Bareiss) determinant; exact over any domain with exact division.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one_in(self.base);
        }
        let mut m = self.to_rows();
        let mut sign_neg = false;
        let mut prev = R::one_in(self.base);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign_neg = !sign_neg;
                    }
                    None => return R::zero_in(self.base),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = R::zero_in(self.base);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign_neg {
            -d
        } else {
            d
        }
    }

    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        let mut adj = Self::zeros(self.base, n, n);
        if n == 1 {
            adj[(0, 0)] = R::one_in(self.base);
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).det();
                adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        adj
    }

    /// Inverse when the determinant is a unit of the ring.
    pub fn inverse(&self) -> Option<Self> {
        let d_inv = self.det().unit_inv()?;
        Some(self.adjugate().map(|x| x.clone() * d_inv.clone()))
    }
}

impl Mat<Fe> {
    pub fn from_ints(base: Field, rows: &[&[i64]]) -> Self {
        Self::from_rows(base, rows.iter().map(|r| r.iter().map(|&x| base.int(x)).collect()).collect())
    }

    /// Solve `self * x = b` over a field for square invertible `self`.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        let n = self.rows;
        let mut m: Vec<Vec<Fe>> = self.to_rows();
        for (row, bi) in m.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        for k in 0..n {
            let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
            m.swap(piv, k);
            let inv = m[k][k].inv()?;
            for x in m[k].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != k && !m[i][k].is_zero() {
                    let f = m[i][k].clone();
                    for j in k..=n {
                        let v = &m[i][j] - &(&f * &m[k][j]);
                        m[i][j] = v;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n].clone()).collect())
    }
}

impl Mat<TPoly> {
    pub fn lift_const(m: &Mat<Fe>) -> Self {
        m.map(|c| Poly::constant(c.clone()))
    }

    pub fn eval_t(&self, t: &Fe) -> Mat<Fe> {
        self.map(|c| c.eval(t))
    }
}

impl<R> std::ops::Index<(usize, usize)> for Mat<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat<Fe> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Display for Mat<TPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|x| x.fmt_var("T")).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let q = Field::Rationals;
        let m = Mat::from_ints(q, &[&[0, 2, 1], &[3, 0, -1], &[1, 1, 4]]);
        // 0*(0+1) - 2*(12+1) + 1*(3-0) = -23
        assert_eq!(m.det(), q.int(-23));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(q, 3));
    }

    #[test]
    fn det_over_kt() {
        let q = Field::Rationals;
        let t = Poly::from_ints(q, &[0, 1]);
        let one = TPoly::one(q);
        let zero = TPoly::zero(q);
        let m = Mat::from_rows(q, vec![vec![t.clone(), one.clone()], vec![one.clone(), zero]]);
        assert_eq!(m.det(), -one);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(q, 2));
    }

    #[test]
    fn solve_small_system() {
        let f = Field::Prime(5);
        let m = Mat::from_ints(f, &[&[1, 2], &[3, 4]]);
        let x = m.solve(&[f.int(1), f.int(0)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![f.int(1), f.int(0)]);
    }
}
