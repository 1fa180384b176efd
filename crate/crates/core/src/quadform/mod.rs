//! Symmetric bilinear forms: diagonalization over `k`, stable invariants,
//! Hilbert symbols and reduction over `k[T]`.

pub mod hermite;
pub mod witt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::poly::TPoly;
use crate::ring::Ring;
use crate::squares::square_class;

pub use hermite::{extend_to_basis, hermite_reduce, kt_short_vector, HermiteReduction};
pub use witt::{hilbert_symbol, stable_equal, stable_invariant, Place, WittDetail, WittInvariant};

/// `col_target += c * col_source` together with the matching row operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColOp {
    pub target: usize,
    pub source: usize,
    pub c: Fe,
}

impl ColOp {
    /// The elementary matrix `I + c·t·E_{source,target}` over `R`.
    pub fn matrix<R: Ring>(&self, n: usize, t: &R) -> Mat<R> {
        let base = self.c.field();
        let mut m = Mat::identity(base, n);
        m[(self.source, self.target)] = t.scale(&self.c);
        m
    }
}

/// Product of the elementary matrices of `ops`, each parameter multiplied by `t`.
pub fn ops_matrix<R: Ring>(base: Field, n: usize, ops: &[ColOp], t: &R) -> Mat<R> {
    ops.iter().fold(Mat::identity(base, n), |acc, op| acc.mul(&op.matrix(n, t)))
}

/// A block of a block-diagonal normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// A unit `⟨u⟩` at this index.
    Unit(usize),
    /// A `[[0, 1], [1, α]]` block at indices `(i, i + 1)`.
    Hyperbolic(usize),
}

/// `Pᵀ S P = form` with `P = ops_matrix(ops)` of determinant 1.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub p: Mat<Fe>,
    pub form: Mat<Fe>,
    pub blocks: Vec<Block>,
    pub ops: Vec<ColOp>,
}

impl Diagonalization {
    /// Diagonal entries of the unit blocks.
    pub fn units(&self) -> Vec<Fe> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                Block::Unit(i) => Some(self.form[(*i, *i)].clone()),
                Block::Hyperbolic(_) => None,
            })
            .collect()
    }

    pub fn hyperbolic_count(&self) -> usize {
        self.blocks.iter().filter(|b| matches!(b, Block::Hyperbolic(_))).count()
    }

    /// Unit entries replaced by their square classes.
    pub fn canonical_units(&self) -> Vec<Fe> {
        self.units().iter().map(|u| square_class(u).expect("unit")).collect()
    }

    /// The matrix path `P(T)ᵀ S P(T)` from `S` at `T = 0` to the normal form at `T = 1`.
    pub fn path(&self, s: &Mat<Fe>) -> Mat<TPoly> {
        let base = s.base_field();
        let pt = ops_matrix(base, s.rows(), &self.ops, &TPoly::x(base));
        Mat::lift_const(s).congruent(&pt)
    }
}

struct Work {
    s: Mat<Fe>,
    p: Mat<Fe>,
    ops: Vec<ColOp>,
}

impl Work {
    fn op(&mut self, target: usize, source: usize, c: Fe) {
        if c.is_zero() {
            return;
        }
        let n = self.s.rows();
        for r in 0..n {
            let v = &self.s[(r, target)] + &(&c * &self.s[(r, source)]);
            self.s[(r, target)] = v;
        }
        for col in 0..n {
            let v = &self.s[(target, col)] + &(&c * &self.s[(source, col)]);
            self.s[(target, col)] = v;
        }
        for r in 0..n {
            let v = &self.p[(r, target)] + &(&c * &self.p[(r, source)]);
            self.p[(r, target)] = v;
        }
        self.ops.push(ColOp { target, source, c });
    }

    /// Exchange two basis vectors up to sign using three transvections.
    fn swap(&mut self, i: usize, j: usize) {
        let one = self.s.base_field().one();
        self.op(i, j, one.clone());
        self.op(j, i, -one.clone());
        self.op(i, j, one);
    }
}

/// Congruence by a determinant-one matrix to diagonal form (block form in characteristic 2).
pub fn diagonalize(s: &Mat<Fe>) -> Result<Diagonalization> {
    if !s.is_symmetric() {
        return Err(Error::Invalid("matrix is not symmetric".into()));
    }
    if s.det().is_zero() {
        return Err(Error::Degenerate);
    }
    let base = s.base_field();
    let n = s.rows();
    let mut w = Work { s: s.clone(), p: Mat::identity(base, n), ops: Vec::new() };
    let mut blocks = Vec::new();
    let mut k = 0;
    while k < n {
        if w.s[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !w.s[(j, j)].is_zero()) {
                // S_kk becomes c (2 S_kj + c S_jj)
                let c = (1..)
                    .map(|c| base.int(c))
                    .find(|c| !(c * &(&(&base.int(2) * &w.s[(k, j)]) + &(c * &w.s[(j, j)]))).is_zero())
                    .expect("a good multiplier exists");
                w.op(k, j, c);
            } else if !base.is_char_two() {
                let j = (k + 1..n).find(|&j| !w.s[(k, j)].is_zero()).expect("non-degenerate");
                w.op(k, j, base.one());
            } else {
                // alternating remainder: split off a hyperbolic plane
                let j = (k + 1..n).find(|&j| !w.s[(k, j)].is_zero()).expect("non-degenerate");
                if j != k + 1 {
                    w.swap(k + 1, j);
                }
                let b = w.s[(k, k + 1)].clone();
                let bi = b.inv().expect("nonzero");
                for i in k + 2..n {
                    let y = -(&w.s[(k, i)] * &bi);
                    w.op(i, k + 1, y);
                    let x = -(&w.s[(k + 1, i)] * &bi);
                    w.op(i, k, x);
                }
                blocks.push(Block::Hyperbolic(k));
                k += 2;
                continue;
            }
        }
        let d = w.s[(k, k)].inv().expect("pivot");
        for i in k + 1..n {
            let c = -(&w.s[(k, i)] * &d);
            w.op(i, k, c);
        }
        blocks.push(Block::Unit(k));
        k += 1;
    }
    Ok(Diagonalization { p: w.p, form: w.s, blocks, ops: w.ops })
}

/// `⟨u_i v_j⟩` over all pairs.
pub fn tensor_diag(d1: &[Fe], d2: &[Fe]) -> Vec<Fe> {
    d1.iter().flat_map(|u| d2.iter().map(move |v| u * v)).collect()
}

/// Orthogonal sum of two matrices.
pub fn block_sum<R: Ring>(a: &Mat<R>, b: &Mat<R>) -> Mat<R> {
    let base = a.base_field();
    let (n, m) = (a.rows(), b.rows());
    let mut out = Mat::zeros(base, n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(n + i, n + j)] = b[(i, j)].clone();
        }
    }
    out
}
