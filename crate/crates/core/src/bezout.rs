//! Bézout forms, their Hankel inverses and the inverse map `ψ_n`.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ratmap::{mk_pointed, PointedRat};
use crate::resultant::{bezout_pair, laurent_expand};
use crate::ring::Ring;

/// Gram matrix `[c_{p,q}]` of `δ(X,Y) = (A(X)B(Y) - A(Y)B(X)) / (X - Y)`.
pub fn bezout_matrix<R: Ring>(a: &Poly<R>, b: &Poly<R>, n: usize) -> Mat<R> {
    let base = a.base_field();
    let mut c: Mat<R> = Mat::zeros(base, n, n);
    for k in 1..=n {
        for l in 0..k {
            let w = a.coeff(k) * b.coeff(l) - a.coeff(l) * b.coeff(k);
            if w.is_zero() {
                continue;
            }
            for m in 0..k - l {
                let (i, j) = (l + m, k - 1 - m);
                c[(i, j)] = c[(i, j)].clone() + w.clone();
            }
        }
    }
    debug_assert!(c.is_symmetric());
    c
}

pub fn bezout_form<R: Ring>(f: &PointedRat<R>) -> Mat<R> {
    bezout_matrix(f.a(), f.b(), f.degree())
}

/// A Hankel matrix stored as `s_1..s_{2n-1}`, entry `(p, q) = s_{p+q-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hankel<R> {
    pub s: Vec<R>,
}

impl<R: Ring> Hankel<R> {
    pub fn size(&self) -> usize {
        self.s.len().div_ceil(2)
    }

    pub fn to_matrix(&self) -> Mat<R> {
        let n = self.size();
        let base = self.s[0].base();
        let rows = (0..n).map(|p| (0..n).map(|q| self.s[p + q].clone()).collect()).collect();
        Mat::from_rows(base, rows)
    }

    /// Read a symmetric matrix as a Hankel matrix when it is one.
    pub fn from_matrix(m: &Mat<R>) -> Option<Self> {
        let n = m.rows();
        if n == 0 || !m.is_square() {
            return None;
        }
        let s: Vec<R> =
            (0..2 * n - 1).map(|k| m[(k.saturating_sub(n - 1), k - k.saturating_sub(n - 1))].clone()).collect();
        let h = Hankel { s };
        (h.to_matrix() == *m).then_some(h)
    }
}

/// `Béz_n(f)^{-1}` via the expansion of `V/A`.
pub fn hankel_of<R: Ring>(f: &PointedRat<R>) -> Hankel<R> {
    let n = f.degree();
    Hankel { s: laurent_expand(f.v(), f.a(), 2 * n - 1).expect("deg V < deg A") }
}

/// The inverse of `Hank_n × φ_n`.
pub fn psi_n<R: Ring>(h: &Hankel<R>, v: &R) -> Result<PointedRat<R>> {
    let n = h.size();
    let base = v.base();
    let hm = h.to_matrix();
    let hinv = hm.inverse().ok_or(Error::Degenerate)?;
    let s = |i: usize| h.s[i - 1].clone();
    let mut rhs: Vec<R> = (n + 1..2 * n).map(|i| -s(i)).collect();
    rhs.push(v.clone());
    let mut a = hinv.mul_vec(&rhs);
    a.push(R::one_in(base));
    let a = Poly::new(base, a);
    let vpoly = Poly::new(
        base,
        (0..n).map(|j| (1..=n - j).fold(R::zero_in(base), |acc, i| acc + s(i) * a.coeff(i + j))).collect(),
    );
    let (_, b) = bezout_pair(&a, &vpoly).map_err(|_| Error::Internal("A and V are not coprime".into()))?;
    mk_pointed(a, b)
}

/// `Béz_2 × φ_2`.
pub fn f2_iso<R: Ring>(f: &PointedRat<R>) -> Result<(Mat<R>, R)> {
    if f.degree() != 2 {
        return Err(Error::Invalid("degree 2 expected".into()));
    }
    Ok((bezout_form(f), f.phi()?))
}

/// Inverse of [`f2_iso`]: `ψ_2(S^{-1}, t)`.
pub fn f2_iso_inv<R: Ring>(s: &Mat<R>, t: &R) -> Result<PointedRat<R>> {
    if s.rows() != 2 || !s.is_symmetric() {
        return Err(Error::Invalid("symmetric 2x2 matrix expected".into()));
    }
    let sinv = s.inverse().ok_or(Error::Degenerate)?;
    psi_n(&Hankel::from_matrix(&sinv).expect("2x2 symmetric matrices are Hankel"), t)
}
