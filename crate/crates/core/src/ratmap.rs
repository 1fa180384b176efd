//! Pointed and unpointed rational functions, the ⊕ monoid, continued
//! fractions, composition, the additive action and `φ_n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::{Poly, TPoly};
use crate::resultant::{bezout_pair, laurent_expand, resultant_nn};
use crate::ring::Ring;

/// A point `A/B` of `F_n(R)` with its cached Bézout pair `AU + BV = 1`.
#[derive(Clone, Debug)]
pub struct PointedRat<R: Ring> {
    a: Poly<R>,
    b: Poly<R>,
    u: Poly<R>,
    v: Poly<R>,
}

pub type Pointed = PointedRat<Fe>;
/// A `k[T]`-point, i.e. a naive pointed homotopy.
pub type PointedPath = PointedRat<TPoly>;

impl<R: Ring> PartialEq for PointedRat<R> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl<R: Ring> Eq for PointedRat<R> {}

fn check_unit<R: Ring>(res: &R) -> Result<()> {
    match res.as_scalar() {
        Some(c) if !c.is_zero() => Ok(()),
        Some(c) if R::IS_SCALAR => Err(Error::RejectedPoint { res: c }),
        _ => Err(Error::RejectedPath),
    }
}

/// Validate `(A, B)` as a point of `F_n(R)`.
pub fn mk_pointed<R: Ring>(a: Poly<R>, b: Poly<R>) -> Result<PointedRat<R>> {
    if !a.is_monic() {
        return Err(Error::Invalid("numerator must be monic".into()));
    }
    if b.deg() >= a.deg() {
        return Err(Error::Invalid("denominator degree must be smaller than numerator degree".into()));
    }
    let n = a.degree().expect("monic");
    let res = resultant_nn(&a, &b, n)?;
    check_unit(&res)?;
    let (u, v) = bezout_pair(&a, &b)?;
    Ok(PointedRat { a, b, u, v })
}

impl<R: Ring> PointedRat<R> {
    /// The degree-0 point `1/0`, unit of ⊕.
    pub fn zero_point(base: Field) -> Self {
        PointedRat { a: Poly::one(base), b: Poly::zero(base), u: Poly::one(base), v: Poly::zero(base) }
    }

    pub fn a(&self) -> &Poly<R> {
        &self.a
    }

    pub fn b(&self) -> &Poly<R> {
        &self.b
    }

    pub fn u(&self) -> &Poly<R> {
        &self.u
    }

    pub fn v(&self) -> &Poly<R> {
        &self.v
    }

    pub fn base_field(&self) -> Field {
        self.a.base_field()
    }

    pub fn degree(&self) -> usize {
        self.a.degree().expect("monic")
    }

    pub fn resultant(&self) -> R {
        resultant_nn(&self.a, &self.b, self.degree()).expect("valid point")
    }

    /// `f ⊕ g` via the product of the matrices `[A -V; B U]`.
    pub fn oplus(&self, g: &Self) -> Self {
        let (a1, b1, u1, v1) = (&self.a, &self.b, &self.u, &self.v);
        let (a2, b2, u2, v2) = (&g.a, &g.b, &g.u, &g.v);
        let a = a1.clone() * a2.clone() - v1.clone() * b2.clone();
        let v = a1.clone() * v2.clone() + v1.clone() * u2.clone();
        let b = b1.clone() * a2.clone() + u1.clone() * b2.clone();
        let u = u1.clone() * u2.clone() - b1.clone() * v2.clone();
        PointedRat { a, b, u, v }
    }

    /// `h · A/B = (A + hB)/B`.
    pub fn ga_act(&self, h: &R) -> Self {
        let hb = self.b.scale(h);
        let hu = self.u.scale(h);
        PointedRat { a: self.a.clone() + hb, b: self.b.clone(), u: self.u.clone(), v: self.v.clone() - hu }
    }

    /// `f ∘ g` by homogeneous substitution of `g = C/D` into `f`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let base = self.base_field();
        let m = self.degree();
        let (c, d) = (&g.a, &g.b);
        let cpow: Vec<Poly<R>> = (0..=m).map(|i| c.pow(i)).collect();
        let dpow: Vec<Poly<R>> = (0..=m).map(|i| d.pow(i)).collect();
        let mut a = Poly::zero(base);
        let mut b = Poly::zero(base);
        for i in 0..=m {
            let term = cpow[i].clone() * dpow[m - i].clone();
            a = a + term.scale(&self.a.coeff(i));
            if i < m {
                b = b + term.scale(&self.b.coeff(i));
            }
        }
        mk_pointed(a, b)
    }

    /// `φ_n`: minus the coefficient of `X^(n-1)` in `V_1`, where `A U_1 + B V_1 = X^(2n-1)`.
    pub fn phi(&self) -> Result<R> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let x = Poly::monomial(R::one_in(self.base_field()), 2 * n - 1);
        let v1 = (x * self.v.clone()).rem(&self.a)?;
        Ok(-v1.coeff(n - 1))
    }

    /// `φ_n` as `-s_{2n}` from the expansion of `V/A`.
    pub fn phi_via_laurent(&self) -> Result<R> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let s = laurent_expand(&self.v, &self.a, 2 * n)?;
        Ok(-s[2 * n - 1].clone())
    }

    /// Structural recomputation of the cached pair.
    pub fn check_bezout_pair(&self) -> bool {
        match bezout_pair(&self.a, &self.b) {
            Ok((u, v)) => u == self.u && v == self.v,
            Err(_) => false,
        }
    }
}

impl Pointed {
    /// Constant path.
    pub fn lift(&self) -> PointedPath {
        let l = |p: &Poly<Fe>| Poly::lift_const(p);
        PointedRat { a: l(&self.a), b: l(&self.b), u: l(&self.u), v: l(&self.v) }
    }

    /// `[(P_0, b_0), ..., (P_r, b_r)]` with `f = P_0/b_0 ⊕ ... ⊕ P_r/b_r`.
    pub fn cf_expand(&self) -> Vec<(Poly<Fe>, Fe)> {
        let mut out = Vec::new();
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        while a.deg() > 0 {
            let b0 = b.lc().expect("unit resultant forces B != 0").clone();
            let b0_inv = b0.inv().expect("nonzero");
            let a2 = b.scale(&b0_inv);
            let (p0, r) = a.divmod(&a2).expect("monic");
            out.push((p0, b0.clone()));
            let b2 = r.scale(&-b0);
            a = a2;
            b = b2;
        }
        out
    }
}

/// `P_0/b_0 ⊕ ... ⊕ P_r/b_r`.
pub fn cf_assemble(base: Field, terms: &[(Poly<Fe>, Fe)]) -> Result<Pointed> {
    let mut acc = Pointed::zero_point(base);
    for (p, b) in terms {
        if !p.is_monic() || p.deg() < 1 || b.is_zero() {
            return Err(Error::Invalid("continued fraction terms need monic P of positive degree and b != 0".into()));
        }
        acc = acc.oplus(&mk_pointed(p.clone(), Poly::constant(b.clone()))?);
    }
    Ok(acc)
}

impl PointedPath {
    pub fn eval_path(&self, t: &Fe) -> Pointed {
        PointedRat { a: self.a.eval_t(t), b: self.b.eval_t(t), u: self.u.eval_t(t), v: self.v.eval_t(t) }
    }

    /// The same path traversed backwards (`T -> 1 - T`).
    pub fn reversed(&self) -> Self {
        PointedRat { a: self.a.reverse_t(), b: self.b.reverse_t(), u: self.u.reverse_t(), v: self.v.reverse_t() }
    }

    pub fn endpoints(&self) -> (Pointed, Pointed) {
        let f = self.base_field();
        (self.eval_path(&f.zero()), self.eval_path(&f.one()))
    }
}

impl fmt::Display for Pointed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.a.fmt_var("X"), self.b.fmt_var("X"))
    }
}

fn fmt_tx(p: &Poly<TPoly>) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.fmt_var("T");
        let cs = if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 { format!("({cs})") } else { cs };
        terms.push(match i {
            0 => cs,
            1 => format!("{cs}*X"),
            _ => format!("{cs}*X^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for PointedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", fmt_tx(&self.a), fmt_tx(&self.b))
    }
}

/// Elementary matrices `Up(c) = [1 c; 0 1]` and `Lo(c) = [1 0; c 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Up(Fe),
    Lo(Fe),
}

/// A 2x2 matrix `[[p, q], [r, s]]`, acting on `(A, B)` as a column vector.
pub type M2<R> = [[R; 2]; 2];

pub fn m2_mul<R: Ring>(x: &M2<R>, y: &M2<R>) -> M2<R> {
    let e = |i: usize, j: usize| x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn m2_identity<R: Ring>(base: Field) -> M2<R> {
    [[R::one_in(base), R::zero_in(base)], [R::zero_in(base), R::one_in(base)]]
}

pub fn m2_apply<R: Ring>(m: &M2<R>, a: &Poly<R>, b: &Poly<R>) -> (Poly<R>, Poly<R>) {
    (a.scale(&m[0][0]) + b.scale(&m[0][1]), a.scale(&m[1][0]) + b.scale(&m[1][1]))
}

impl Elem {
    pub fn param(&self) -> &Fe {
        match self {
            Elem::Up(c) | Elem::Lo(c) => c,
        }
    }

    /// The matrix with parameter `c * t`.
    pub fn matrix<R: Ring>(&self, t: &R) -> M2<R> {
        let base = self.param().field();
        let x = t.scale(self.param());
        let (o, z) = (R::one_in(base), R::zero_in(base));
        match self {
            Elem::Up(_) => [[o.clone(), x], [z, o]],
            Elem::Lo(_) => [[o.clone(), z], [x, o]],
        }
    }

    pub fn inverse(&self) -> Elem {
        match self {
            Elem::Up(c) => Elem::Up(-c.clone()),
            Elem::Lo(c) => Elem::Lo(-c.clone()),
        }
    }
}

pub fn elem_product<R: Ring>(base: Field, factors: &[Elem], t: &R) -> M2<R> {
    factors.iter().fold(m2_identity(base), |acc, e| m2_mul(&acc, &e.matrix(t)))
}

/// Write a determinant-one matrix over `k` as a product of elementary matrices.
pub fn sl2_decompose(m: &M2<Fe>) -> Result<Vec<Elem>> {
    let [[p, q], [r, s]] = m.clone();
    if !(&(&p * &s) - &(&q * &r)).is_one() {
        return Err(Error::Invalid("matrix does not have determinant 1".into()));
    }
    let base = p.field();
    let mut out = Vec::new();
    let (p, r, s) = if r.is_zero() {
        // m = Lo(-1) (Lo(1) m)
        out.push(Elem::Lo(-base.one()));
        (p.clone(), p, &q + &s)
    } else {
        (p, r, s)
    };
    let ri = r.inv().expect("nonzero");
    out.push(Elem::Up(&(&p - &base.one()) * &ri));
    out.push(Elem::Lo(r));
    out.push(Elem::Up(&(&s - &base.one()) * &ri));
    out.retain(|e| !e.param().is_zero());
    Ok(out)
}

/// A point of the unpointed space `U_n(k)`, scaled so its first nonzero
/// coordinate in the order `a_n..a_0, b_n..b_0` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnpointedRat {
    n: usize,
    a: Poly<Fe>,
    b: Poly<Fe>,
}

impl UnpointedRat {
    pub fn new(n: usize, a: Poly<Fe>, b: Poly<Fe>) -> Result<Self> {
        let deg = a.deg().max(b.deg());
        if deg != n as i64 {
            return Err(Error::Invalid(format!("true degree {deg} differs from n = {n}")));
        }
        let res = resultant_nn(&a, &b, n)?;
        if res.is_zero() {
            return Err(Error::RejectedPoint { res });
        }
        let lead = (0..=n).rev().map(|i| a.coeff(i)).chain((0..=n).rev().map(|i| b.coeff(i))).find(|c| !c.is_zero());
        let s = lead.expect("nonzero").inv().expect("nonzero");
        Ok(UnpointedRat { n, a: a.scale(&s), b: b.scale(&s) })
    }

    pub fn from_pointed(f: &Pointed) -> Self {
        UnpointedRat::new(f.degree(), f.a().clone(), f.b().clone()).expect("pointed points are unpointed points")
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Poly<Fe> {
        &self.a
    }

    pub fn b(&self) -> &Poly<Fe> {
        &self.b
    }

    pub fn base_field(&self) -> Field {
        self.a.base_field()
    }

    pub fn resultant(&self) -> Fe {
        resultant_nn(&self.a, &self.b, self.n).expect("valid")
    }

    pub fn is_pointed(&self) -> bool {
        self.b.coeff(self.n).is_zero()
    }

    /// The pointed function with the same graph when `f(∞) = ∞`.
    pub fn to_pointed(&self) -> Option<Pointed> {
        if !self.is_pointed() {
            return None;
        }
        let s = self.a.coeff(self.n).inv()?;
        mk_pointed(self.a.scale(&s), self.b.scale(&s)).ok()
    }

    pub fn lift(&self) -> UnpointedPath {
        UnpointedPath { n: self.n, a: Poly::lift_const(&self.a), b: Poly::lift_const(&self.b) }
    }
}

impl fmt::Display for UnpointedRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.a.fmt_var("X"), self.b.fmt_var("X"))
    }
}

/// A `k[T]`-point of `U_n`: `res_{n,n}(A, B)` is a nonzero constant in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnpointedPath {
    pub n: usize,
    pub a: Poly<TPoly>,
    pub b: Poly<TPoly>,
}

impl UnpointedPath {
    pub fn validate(&self) -> Result<Fe> {
        let res = resultant_nn(&self.a, &self.b, self.n)?;
        match res.as_scalar() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::RejectedPath),
        }
    }

    pub fn eval_path(&self, t: &Fe) -> Result<UnpointedRat> {
        UnpointedRat::new(self.n, self.a.eval_t(t), self.b.eval_t(t))
    }

    pub fn endpoints(&self) -> Result<(UnpointedRat, UnpointedRat)> {
        let f = self.a.base_field();
        Ok((self.eval_path(&f.zero())?, self.eval_path(&f.one())?))
    }

    pub fn reversed(&self) -> Self {
        UnpointedPath { n: self.n, a: self.a.reverse_t(), b: self.b.reverse_t() }
    }

    /// `α(T) · (A, B)` for a constant-or-path point and a matrix over `k[T]`.
    pub fn moved(n: usize, m: &M2<TPoly>, a: &Poly<TPoly>, b: &Poly<TPoly>) -> Self {
        let (a, b) = m2_apply(m, a, b);
        UnpointedPath { n, a, b }
    }
}

impl fmt::Display for UnpointedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", fmt_tx(&self.a), fmt_tx(&self.b))
    }
}

/// The result of moving an unpointed point to a pointed one.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub pointed: Pointed,
    /// `α_1 = E_1 ... E_k` with `α_1 · ∞ = u(∞)`.
    pub factors: Vec<Elem>,
    /// `α(T)^{-1} · u`, from `u` at `T = 0` to the pointed function at `T = 1`.
    pub path: UnpointedPath,
}

/// Conjugate `u` into a pointed function by a path in `SL_2(k[T])`.
pub fn normalize_unpointed(u: &UnpointedRat) -> Normalization {
    let base = u.base_field();
    let n = u.n;
    let (an, bn) = (u.a.coeff(n), u.b.coeff(n));
    let factors = if bn.is_zero() {
        vec![]
    } else if !an.is_zero() {
        vec![Elem::Lo(&bn / &an)]
    } else {
        // [0 -1; 1 1] sends ∞ to 0
        vec![Elem::Up(-base.one()), Elem::Lo(base.one())]
    };
    let inv: Vec<Elem> = factors.iter().rev().map(Elem::inverse).collect();
    let t = TPoly::x(base);
    let m = elem_product(base, &inv, &t);
    let path = UnpointedPath::moved(n, &m, &Poly::lift_const(&u.a), &Poly::lift_const(&u.b));
    let end = path.eval_path(&base.one()).expect("determinant one preserves the resultant");
    let pointed = end.to_pointed().expect("∞ is fixed after the move");
    Normalization { pointed, factors, path }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{self, FIELDS};

    fn p(f: Field, c: &[i64]) -> TPoly {
        TPoly::from_ints(f, c)
    }

    fn pt(f: Field, a: &[i64], b: &[i64]) -> Pointed {
        mk_pointed(p(f, a), p(f, b)).unwrap()
    }

    #[test]
    fn mk_pointed_examples() {
        let q = Field::Rationals;
        assert_eq!(pt(q, &[-1, 0, 1], &[0, 1]).resultant(), q.int(-1));
        assert_eq!(mk_pointed(p(q, &[0, 0, 1]), p(q, &[0, 1])), Err(Error::RejectedPoint { res: q.zero() }));
        let t = p(q, &[0, 1]);
        let a: Poly<TPoly> = Poly::new(q, vec![TPoly::zero(q), t.clone(), TPoly::one(q)]);
        let path = mk_pointed(a, Poly::one(q)).unwrap();
        assert_eq!(path.resultant(), TPoly::one(q));
        assert_eq!(mk_pointed(Poly::x(q), Poly::constant(t)).err(), Some(Error::RejectedPath));
    }

    #[test]
    fn oplus_examples() {
        let q = Field::Rationals;
        let x = pt(q, &[0, 1], &[1]);
        assert_eq!(x.oplus(&x), pt(q, &[-1, 0, 1], &[0, 1]));
        let f = pt(q, &[3, -2, 0, 1], &[1, 2]);
        // X ⊕ A/B = (AX - B)/A
        let expect = mk_pointed(f.a().clone() * Poly::x(q) - f.b().clone(), f.a().clone()).unwrap();
        assert_eq!(x.oplus(&f), expect);
        // A/B ⊕ X = (AX - V)/(BX + U)
        let expect =
            mk_pointed(f.a().clone() * Poly::x(q) - f.v().clone(), f.b().clone() * Poly::x(q) + f.u().clone()).unwrap();
        assert_eq!(f.oplus(&x), expect);
        let z = Pointed::zero_point(q);
        assert_eq!(z.oplus(&f), f);
        assert_eq!(f.oplus(&z), f);
    }

    #[test]
    fn oplus_pair_is_the_unique_one_and_laws_hold() {
        let mut r = testutil::rng(1);
        for f in FIELDS {
            for _ in 0..200 {
                let a = testutil::pointed(f, 1 + r.gen_range(0..3), &mut r);
                let b = testutil::pointed(f, 1 + r.gen_range(0..3), &mut r);
                let c = testutil::pointed(f, 1 + r.gen_range(0..2), &mut r);
                let ab = a.oplus(&b);
                assert!(ab.check_bezout_pair());
                assert_eq!(ab.degree(), a.degree() + b.degree());
                let prod = a.resultant() * b.resultant();
                let sign = if a.degree() * b.degree() % 2 == 1 { -prod } else { prod };
                assert_eq!(ab.resultant(), sign);
                assert_eq!(ab.oplus(&c), a.oplus(&b.oplus(&c)));
                let mut cat = a.cf_expand();
                cat.extend(b.cf_expand());
                assert_eq!(ab.cf_expand(), cat);
            }
        }
    }

    use rand::Rng;

    #[test]
    fn cf_examples() {
        let q = Field::Rationals;
        assert_eq!(pt(q, &[-1, 0, 1], &[0, 1]).cf_expand(), vec![(p(q, &[0, 1]), q.one()), (p(q, &[0, 1]), q.one())]);
        assert_eq!(pt(q, &[0, 2, 0, 1], &[5]).cf_expand(), vec![(p(q, &[0, 2, 0, 1]), q.int(5))]);
        assert_eq!(pt(q, &[0, 1], &[7]).cf_expand(), vec![(p(q, &[0, 1]), q.int(7))]);
    }

    #[test]
    fn cf_round_trip_exhaustive_f3_and_random_q() {
        let f3 = Field::Prime(3);
        for n in 1..=3 {
            let pts = testutil::all_points(f3, n);
            assert!(!pts.is_empty());
            for x in pts {
                assert_eq!(cf_assemble(f3, &x.cf_expand()).unwrap(), x);
            }
        }
        let mut r = testutil::rng(2);
        for _ in 0..200 {
            let x = testutil::pointed(Field::Rationals, 1 + r.gen_range(0..4), &mut r);
            let cf = x.cf_expand();
            assert_eq!(cf.iter().map(|(p, _)| p.degree().unwrap()).sum::<usize>(), x.degree());
            assert_eq!(cf_assemble(Field::Rationals, &cf).unwrap(), x);
        }
    }

    #[test]
    fn compose_examples_and_laws() {
        let q = Field::Rationals;
        let f = pt(q, &[3, -2, 0, 1], &[1, 2]);
        let a = q.int(5);
        let xa = mk_pointed(Poly::x(q), Poly::constant(a.clone())).unwrap();
        assert_eq!(xa.compose(&f).unwrap(), mk_pointed(f.a().clone(), f.b().scale(&a)).unwrap());
        let x = pt(q, &[0, 1], &[1]);
        assert_eq!(f.compose(&x).unwrap(), f);
        let x2 = pt(q, &[0, 0, 1], &[1]);
        assert_eq!(x2.compose(&x2).unwrap(), pt(q, &[0, 0, 0, 0, 1], &[1]));
        let mut r = testutil::rng(3);
        for fl in FIELDS {
            for _ in 0..30 {
                let a = testutil::pointed(fl, 1 + r.gen_range(0..2), &mut r);
                let b = testutil::pointed(fl, 1 + r.gen_range(0..2), &mut r);
                let c = testutil::pointed(fl, 1 + r.gen_range(0..2), &mut r);
                let ab = a.compose(&b).unwrap();
                assert_eq!(ab.degree(), a.degree() * b.degree());
                assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn ga_and_phi() {
        let q = Field::Rationals;
        let x = pt(q, &[0, 1], &[1]);
        assert_eq!(x.ga_act(&q.zero()), x);
        assert_eq!(x.ga_act(&q.one()), pt(q, &[1, 1], &[1]));
        // n = 1: (X + a)/b has phi = a/b
        let f = pt(q, &[3, 1], &[4]);
        assert_eq!(f.phi().unwrap(), q.ratio(3, 4).unwrap());
        assert_eq!(Pointed::zero_point(q).phi(), Err(Error::ZeroDegree));
        let mut r = testutil::rng(4);
        let f5 = Field::Prime(5);
        for _ in 0..200 {
            let g = testutil::pointed(f5, 1 + r.gen_range(0..4), &mut r);
            let h = testutil::scalar(f5, &mut r);
            let gh = g.ga_act(&h);
            assert_eq!(gh.resultant(), g.resultant());
            assert!(gh.check_bezout_pair());
            assert_eq!(g.ga_act(&f5.one()).ga_act(&h), g.ga_act(&(&h + &f5.one())));
            assert_eq!(gh.phi().unwrap(), &g.phi().unwrap() + &h);
        }
        for fl in FIELDS {
            for _ in 0..100 {
                let g = testutil::pointed(fl, 1 + r.gen_range(0..4), &mut r);
                assert_eq!(g.phi().unwrap(), g.phi_via_laurent().unwrap());
                assert_eq!(&g.ga_act(&fl.one()).phi().unwrap() - &g.phi().unwrap(), fl.one());
            }
        }
    }

    #[test]
    fn homotopy_examples() {
        let q = Field::Rationals;
        let t = TPoly::x(q);
        // (X^2 + T a1 X + T a0)/b0
        let (a1, a0, b0) = (q.int(3), q.int(-2), q.int(5));
        let a: Poly<TPoly> = Poly::new(q, vec![t.scale(&a0), t.scale(&a1), TPoly::one(q)]);
        let path = mk_pointed(a, Poly::constant(TPoly::constant(b0))).unwrap();
        let (s, e) = path.endpoints();
        assert_eq!(s, pt(q, &[0, 0, 1], &[5]));
        assert_eq!(e, pt(q, &[-2, 3, 1], &[5]));
        // X^3/(T b2 X^2 + T b1 X + b0)
        let b: Poly<TPoly> = Poly::new(q, vec![TPoly::constant(q.int(7)), t.scale(&q.int(2)), t.scale(&q.int(-1))]);
        let path = mk_pointed(Poly::monomial(TPoly::one(q), 3), b).unwrap();
        let (s, e) = path.endpoints();
        assert_eq!(s, pt(q, &[0, 0, 0, 1], &[7]));
        assert_eq!(e, pt(q, &[0, 0, 0, 1], &[7, 2, -1]));
        assert_eq!(s.resultant(), e.resultant());
        let f = pt(q, &[1, 2, 1], &[3, 1]);
        let c = f.lift();
        for v in -3..3 {
            assert_eq!(c.eval_path(&q.int(v)), f);
        }
        assert_eq!(path.reversed().endpoints(), (e, s));
    }

    #[test]
    fn sl2_decomposition() {
        let mut r = testutil::rng(5);
        for f in FIELDS {
            for _ in 0..100 {
                let (p0, r0) = (testutil::scalar(f, &mut r), testutil::unit(f, &mut r));
                let s0 = testutil::scalar(f, &mut r);
                let q1 = &(&(&p0 * &s0) - &f.one()) / &r0;
                let m = [[p0.clone(), q1], [r0, s0]];
                let fac = sl2_decompose(&m).unwrap();
                assert!(fac.len() <= 3);
                assert_eq!(elem_product(f, &fac, &f.one()), m);
                let l = testutil::unit(f, &mut r);
                let d = [[l.clone(), p0.clone()], [f.zero(), l.inv().unwrap()]];
                let fac = sl2_decompose(&d).unwrap();
                assert!(fac.len() <= 4);
                assert_eq!(elem_product(f, &fac, &f.one()), d);
            }
        }
    }

    #[test]
    fn normalization() {
        let q = Field::Rationals;
        let f = pt(q, &[-1, 0, 1], &[0, 1]);
        let u = UnpointedRat::from_pointed(&f);
        let nm = normalize_unpointed(&u);
        assert!(nm.factors.is_empty());
        assert_eq!(nm.pointed, f);
        let inv_x = UnpointedRat::new(1, p(q, &[1]), p(q, &[0, 1])).unwrap();
        let nm = normalize_unpointed(&inv_x);
        assert_eq!(nm.pointed.degree(), 1);
        nm.path.validate().unwrap();
        let (s, e) = nm.path.endpoints().unwrap();
        assert_eq!(s, inv_x);
        assert_eq!(e, UnpointedRat::from_pointed(&nm.pointed));
        let mut r = testutil::rng(6);
        for fl in FIELDS {
            for _ in 0..50 {
                let n = 1 + r.gen_range(0..3);
                let a = testutil::poly(fl, n + 1, &mut r);
                let b = testutil::poly(fl, n + 1, &mut r);
                let Ok(u) = UnpointedRat::new(n, a, b) else { continue };
                let nm = normalize_unpointed(&u);
                assert!(nm.factors.len() <= 3);
                nm.path.validate().unwrap();
                let (s, e) = nm.path.endpoints().unwrap();
                assert_eq!(s, u);
                assert_eq!(e, UnpointedRat::from_pointed(&nm.pointed));
                assert_eq!(nm.pointed.degree(), n);
            }
        }
    }
}
