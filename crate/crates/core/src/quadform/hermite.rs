//! Reduction of symmetric matrices over `k[T]` with constant determinant.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::matrix::Mat;
use crate::poly::TPoly;
use crate::ring::Ring;

use super::{block_sum, diagonalize, Block};

/// `Pᵀ S P = form` with `det P = 1`.
#[derive(Clone, Debug)]
pub struct HermiteReduction {
    pub p: Mat<TPoly>,
    pub form: Mat<TPoly>,
    pub blocks: Vec<Block>,
}

impl HermiteReduction {
    /// The reduced form at `T = 0` and `T = 1`.
    pub fn endpoints(&self) -> (Mat<Fe>, Mat<Fe>) {
        let base = self.form.base_field();
        (self.form.eval_t(&base.zero()), self.form.eval_t(&base.one()))
    }
}

fn check(s: &Mat<TPoly>) -> Result<Fe> {
    if !s.is_square() || !s.is_symmetric() {
        return Err(Error::Invalid("matrix is not symmetric".into()));
    }
    let d = s.det();
    if d.is_zero() {
        return Err(Error::Degenerate);
    }
    d.as_scalar().ok_or(Error::NonConstantDeterminant)
}

fn bil(s: &Mat<TPoly>, x: &[TPoly], y: &[TPoly]) -> TPoly {
    let sy = s.mul_vec(y);
    x.iter().zip(&sy).fold(TPoly::zero(s.base_field()), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn max_deg(m: &Mat<TPoly>) -> i64 {
    m.to_rows().iter().flatten().map(|c| c.deg()).max().unwrap_or(-1)
}

fn leading_minor(g: &Mat<TPoly>, k: usize) -> TPoly {
    let idx: Vec<usize> = (0..k).collect();
    g.submatrix(&idx, &idx).det()
}

fn primitive_part(x: Vec<TPoly>) -> Vec<TPoly> {
    let base = x[0].base_field();
    let g = x.iter().fold(TPoly::zero(base), |acc, c| TPoly::gcd(&acc, c));
    x.into_iter().map(|c| c.exact_quotient(&g).expect("gcd divides")).collect()
}

/// A primitive vector `x` with `deg b(x, x) <= 0`, by lattice reduction of the Gram matrix.
pub fn kt_short_vector(s: &Mat<TPoly>) -> Result<Vec<TPoly>> {
    check(s)?;
    let base = s.base_field();
    let n = s.rows();
    let mut b: Mat<TPoly> = Mat::identity(base, n);
    loop {
        let g = s.congruent(&b);
        let delta: Vec<TPoly> = (0..=n).map(|k| leading_minor(&g, k)).collect();
        if let Some(k) = (1..=n).find(|&k| delta[k].is_zero()) {
            // kernel vector of the leading k x k block
            let idx: Vec<usize> = (0..k - 1).collect();
            let adj = g.submatrix(&idx, &idx).adjugate();
            let c: Vec<TPoly> = (0..k - 1).map(|i| g[(i, k - 1)].clone()).collect();
            let mut z: Vec<TPoly> = adj.mul_vec(&c).into_iter().map(|v| -v).collect();
            z.push(delta[k - 1].clone());
            z.resize(n, TPoly::zero(base));
            return Ok(primitive_part(b.mul_vec(&z)));
        }
        if delta[1].deg() <= 0 {
            return Ok(b.col(0));
        }
        let k = (1..n)
            .find(|&k| delta[k + 1].deg() + delta[k - 1].deg() < 2 * delta[k].deg())
            .ok_or_else(|| Error::Internal("reduced basis with a long first vector".into()))?;
        let rows: Vec<usize> = (0..k).collect();
        let mut cols: Vec<usize> = (0..k - 1).collect();
        cols.push(k);
        let lambda = g.submatrix(&rows, &cols).det();
        let (q, _) = lambda.divmod(&delta[k])?;
        if !q.is_zero() {
            for r in 0..n {
                let v = b[(r, k)].clone() - q.clone() * b[(r, k - 1)].clone();
                b[(r, k)] = v;
            }
        }
        b.swap_cols(k - 1, k);
    }
}

/// A determinant-one matrix whose first column is the primitive vector `x`.
///
/// For `n = 1` the result is `[x_0]`.
pub fn extend_to_basis(x: &[TPoly]) -> Result<Mat<TPoly>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Invalid("empty vector".into()));
    }
    let base = x[0].base_field();
    if n == 1 {
        return if x[0].as_scalar().is_some_and(|c| !c.is_zero()) {
            Ok(Mat::from_rows(base, vec![vec![x[0].clone()]]))
        } else {
            Err(Error::Invalid("vector is not primitive".into()))
        };
    }
    let mut v = x.to_vec();
    let mut u: Mat<TPoly> = Mat::identity(base, n);
    for i in 1..n {
        if v[i].is_zero() {
            continue;
        }
        let (g, s, t) = TPoly::xgcd(&v[0], &v[i])?;
        let a = v[0].exact_quotient(&g).expect("gcd divides");
        let b = v[i].exact_quotient(&g).expect("gcd divides");
        for c in 0..n {
            let (r0, ri) = (u[(0, c)].clone(), u[(i, c)].clone());
            u[(0, c)] = s.clone() * r0.clone() + t.clone() * ri.clone();
            u[(i, c)] = a.clone() * ri - b.clone() * r0;
        }
        v[0] = g;
        v[i] = TPoly::zero(base);
    }
    let c =
        v[0].as_scalar().filter(|c| !c.is_zero()).ok_or_else(|| Error::Invalid("vector is not primitive".into()))?;
    let ci = c.inv().expect("nonzero");
    for col in 0..n {
        u[(0, col)] = u[(0, col)].scale(&ci);
        u[(1, col)] = u[(1, col)].scale(&c);
    }
    u.inverse().ok_or_else(|| Error::Internal("elimination matrix is not invertible".into()))
}

fn shift(blocks: Vec<Block>, by: usize) -> impl Iterator<Item = Block> {
    blocks.into_iter().map(move |b| match b {
        Block::Unit(i) => Block::Unit(i + by),
        Block::Hyperbolic(i) => Block::Hyperbolic(i + by),
    })
}

/// A `y` with `b(x, y) = 1`.
fn dual_vector(s: &Mat<TPoly>, x: &[TPoly]) -> Result<Vec<TPoly>> {
    let q = extend_to_basis(&s.mul_vec(x))?;
    let inv = q.inverse().ok_or_else(|| Error::Internal("basis is not invertible".into()))?;
    Ok(inv.row(0))
}

fn reduce(s: &Mat<TPoly>) -> Result<(Mat<TPoly>, Vec<Block>)> {
    let base = s.base_field();
    let n = s.rows();
    if n == 0 {
        return Ok((Mat::zeros(base, 0, 0), Vec::new()));
    }
    if max_deg(s) <= 0 {
        let d = diagonalize(&s.eval_t(&base.zero()))?;
        return Ok((Mat::lift_const(&d.p), d.blocks));
    }
    let mut x = kt_short_vector(s)?;
    let mut lambda = bil(s, &x, &x);
    if lambda.is_zero() && !base.is_char_two() {
        // x and y with b(y, y) = 0 span a hyperbolic plane; x + y has value 2
        let mut y = dual_vector(s, &x)?;
        let half = base.int(2).inv().expect("odd characteristic");
        let c = bil(s, &y, &y).scale(&half);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = yi.clone() - c.clone() * xi.clone();
        }
        x = x.iter().zip(&y).map(|(a, b)| a.clone() + b.clone()).collect();
        lambda = bil(s, &x, &x);
    }
    if let Some(l) = lambda.as_scalar().filter(|l| !l.is_zero()) {
        let mut q = extend_to_basis(&x)?;
        let s1 = s.congruent(&q);
        let li = l.inv().expect("nonzero");
        let mut e: Mat<TPoly> = Mat::identity(base, n);
        for i in 1..n {
            e[(0, i)] = -s1[(0, i)].scale(&li);
        }
        q = q.mul(&e);
        let rest: Vec<usize> = (1..n).collect();
        let (pr, br) = reduce(&s.congruent(&q).submatrix(&rest, &rest))?;
        let p = q.mul(&block_sum(&Mat::identity(base, 1), &pr));
        let mut blocks = vec![Block::Unit(0)];
        blocks.extend(shift(br, 1));
        return Ok((p, blocks));
    }
    if !lambda.is_zero() {
        return Err(Error::Internal("short vector has a non-constant value".into()));
    }
    // characteristic 2: split off [[0, 1], [1, α]] spanned by x and y
    let y = dual_vector(s, &x)?;
    let q1 = extend_to_basis(&x)?;
    let u1 = q1.inverse().ok_or_else(|| Error::Internal("basis is not invertible".into()))?;
    let w = u1.mul_vec(&y);
    let q2 = extend_to_basis(&w[1..])?;
    let mut q = q1.mul(&block_sum(&Mat::identity(base, 1), &q2));
    for r in 0..n {
        let v = q[(r, 1)].clone() + w[0].clone() * q[(r, 0)].clone();
        q[(r, 1)] = v;
    }
    let s1 = s.congruent(&q);
    let a = s1[(1, 1)].clone();
    let mut e: Mat<TPoly> = Mat::identity(base, n);
    for i in 2..n {
        let (bx, by) = (s1[(0, i)].clone(), s1[(1, i)].clone());
        e[(0, i)] = -(by - a.clone() * bx.clone());
        e[(1, i)] = -bx;
    }
    q = q.mul(&e);
    let rest: Vec<usize> = (2..n).collect();
    let (pr, br) = reduce(&s.congruent(&q).submatrix(&rest, &rest))?;
    let p = q.mul(&block_sum(&Mat::identity(base, 2), &pr));
    let mut blocks = vec![Block::Hyperbolic(0)];
    blocks.extend(shift(br, 2));
    Ok((p, blocks))
}

/// Congruence by a determinant-one matrix over `k[T]` to constant units and
/// `[[0, 1], [1, α(T)]]` blocks.
pub fn hermite_reduce(s: &Mat<TPoly>) -> Result<HermiteReduction> {
    check(s)?;
    let (p, blocks) = reduce(s)?;
    if !p.det().is_one() {
        return Err(Error::Internal("reduction matrix has determinant different from 1".into()));
    }
    let form = s.congruent(&p);
    Ok(HermiteReduction { p, form, blocks })
}
