//! Homotopy invariants and equivalence decisions.

use std::fmt;

use crate::bezout::bezout_form;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::{Poly, TPoly};
use crate::quadform::witt::invariant_of_diag;
use crate::quadform::{diagonalize, stable_equal, tensor_diag, WittInvariant};
use crate::ratmap::{normalize_unpointed, Pointed, UnpointedRat};
use crate::ring::Ring;
use crate::squares::{power_class, square_class};

/// `(n, Witt class of Béz(f), res f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedInvariant {
    pub n: usize,
    pub witt: WittInvariant,
    pub res: Fe,
    /// Canonical diagonal representative of the Witt class.
    pub diag: Vec<Fe>,
}

impl PointedInvariant {
    fn from_diag(field: Field, diag: Vec<Fe>, res: Fe) -> Self {
        let witt = invariant_of_diag(field, &diag, 0);
        PointedInvariant { n: diag.len(), witt, res, diag }
    }

    /// `disc = (-1)^{n(n-1)/2} res` modulo squares.
    pub fn is_coherent(&self) -> bool {
        let sign = if (self.n * self.n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        let r = &self.res * &self.res.field().int(sign);
        self.witt.disc.inv().is_some_and(|d| (&r * &d).is_square())
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.n == other.n && self.res == other.res && stable_equal(&self.witt, &other.witt)?)
    }
}

/// `(n, Witt class, res modulo k^{×2n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnpointedInvariant {
    pub n: usize,
    pub witt: WittInvariant,
    pub res_class: Fe,
}

impl UnpointedInvariant {
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.n == other.n && self.res_class == other.res_class && stable_equal(&self.witt, &other.witt)?)
    }
}

fn canonical_diag(f: &Pointed) -> Result<Vec<Fe>> {
    let field = f.base_field();
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    if field.is_char_two() {
        return Ok(vec![field.one(); f.degree()]);
    }
    Ok(diagonalize(&bezout_form(f))?.canonical_units())
}

pub fn pointed_invariant(f: &Pointed) -> Result<PointedInvariant> {
    let inv = PointedInvariant::from_diag(f.base_field(), canonical_diag(f)?, f.resultant());
    if !inv.is_coherent() {
        return Err(Error::Internal("Witt discriminant and resultant disagree".into()));
    }
    Ok(inv)
}

pub fn pointed_equiv(f: &Pointed, g: &Pointed) -> Result<bool> {
    check_same(f.base_field(), g.base_field())?;
    pointed_invariant(f)?.equivalent(&pointed_invariant(g)?)
}

fn check_same(a: Field, b: Field) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Invariant of `f ⊕ g` from those of `f` and `g`.
pub fn oplus_invariant(i1: &PointedInvariant, i2: &PointedInvariant) -> Result<PointedInvariant> {
    let field = i1.res.field();
    check_same(field, i2.res.field())?;
    let sign = if (i1.n * i2.n) % 2 == 0 { 1 } else { -1 };
    let res = &(&i1.res * &i2.res) * &field.int(sign);
    let diag = i1.diag.iter().chain(&i2.diag).cloned().collect();
    Ok(PointedInvariant::from_diag(field, diag, res))
}

/// Invariant of `f ∘ g`: `(b₁ ⊗ b₂, λ₁^{n₂} λ₂^{n₁²})`.
pub fn compose_invariant(i1: &PointedInvariant, i2: &PointedInvariant) -> Result<PointedInvariant> {
    let field = i1.res.field();
    check_same(field, i2.res.field())?;
    let res = &i1.res.pow_u(i2.n as u64) * &i2.res.pow_u((i1.n * i1.n) as u64);
    let diag = tensor_diag(&i1.diag, &i2.diag).iter().map(|u| square_class(u).expect("unit")).collect();
    Ok(PointedInvariant::from_diag(field, diag, res))
}

pub fn unpointed_invariant(u: &UnpointedRat) -> Result<UnpointedInvariant> {
    let f = normalize_unpointed(u).pointed;
    let inv = pointed_invariant(&f)?;
    let n = inv.n;
    let res_class = if n == 0 { inv.res.field().one() } else { power_class(&inv.res, 2 * n as u64)? };
    Ok(UnpointedInvariant { n, witt: inv.witt, res_class })
}

pub fn unpointed_equiv(u1: &UnpointedRat, u2: &UnpointedRat) -> Result<bool> {
    check_same(u1.base_field(), u2.base_field())?;
    unpointed_invariant(u1)?.equivalent(&unpointed_invariant(u2)?)
}

/// A point `(A, B₁, …, B_d)` of `F_n^d` with `A c₀ + Σ B_i c_i = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdPoint<R: Ring> {
    a: Poly<R>,
    bs: Vec<Poly<R>>,
    cof: Vec<Poly<R>>,
}

pub type PdPath = PdPoint<TPoly>;

impl<R: Ring> PdPoint<R> {
    /// Checks shape and the cofactor identity.
    pub fn with_cofactors(a: Poly<R>, bs: Vec<Poly<R>>, cof: Vec<Poly<R>>) -> Result<Self> {
        let base = a.base_field();
        if bs.len() < 2 {
            return Err(Error::Invalid("P^d points need d >= 2".into()));
        }
        if !a.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if bs.iter().any(|b| b.deg() >= a.deg()) {
            return Err(Error::NotProper);
        }
        if cof.len() != bs.len() + 1 {
            return Err(Error::Invalid("wrong number of cofactors".into()));
        }
        let sum = bs.iter().zip(&cof[1..]).fold(a.clone() * cof[0].clone(), |acc, (b, c)| acc + b.clone() * c.clone());
        if sum != Poly::one(base) {
            return Err(Error::NotCoprime { n: a.degree().unwrap_or(0) });
        }
        Ok(PdPoint { a, bs, cof })
    }

    pub fn a(&self) -> &Poly<R> {
        &self.a
    }

    pub fn bs(&self) -> &[Poly<R>] {
        &self.bs
    }

    pub fn cofactors(&self) -> &[Poly<R>] {
        &self.cof
    }

    pub fn d(&self) -> usize {
        self.bs.len()
    }

    pub fn degree(&self) -> usize {
        self.a.degree().expect("monic")
    }

    pub fn base_field(&self) -> Field {
        self.a.base_field()
    }
}

impl PdPoint<Fe> {
    /// Computes cofactors with iterated extended gcds.
    pub fn new(a: Poly<Fe>, bs: Vec<Poly<Fe>>) -> Result<Self> {
        let base = a.base_field();
        let mut g = a.clone();
        let mut cof = vec![Poly::one(base)];
        for b in &bs {
            let (g2, s, t) = Poly::xgcd(&g, b)?;
            for c in cof.iter_mut() {
                *c = c.clone() * s.clone();
            }
            cof.push(t);
            g = g2;
        }
        if !g.is_one() {
            return Err(Error::NotCoprime { n: a.degree().unwrap_or(0) });
        }
        Self::with_cofactors(a, bs, cof)
    }

    /// `(X^n, 1, …, 1)`.
    pub fn base_point(base: Field, n: usize, d: usize) -> Self {
        let one = Poly::one(base);
        let b = if n == 0 { Poly::zero(base) } else { one.clone() };
        let unit = if n == 0 { 0 } else { 1 };
        let cof = (0..=d).map(|i| if i == unit { one.clone() } else { Poly::zero(base) }).collect();
        Self::with_cofactors(Poly::monomial(base.one(), n), vec![b; d], cof).expect("valid base point")
    }

    pub fn lift(&self) -> PdPath {
        let l = |p: &Poly<Fe>| Poly::lift_const(p);
        PdPoint { a: l(&self.a), bs: self.bs.iter().map(l).collect(), cof: self.cof.iter().map(l).collect() }
    }
}

impl PdPath {
    pub fn eval_path(&self, t: &Fe) -> PdPoint<Fe> {
        let e = |p: &Poly<TPoly>| p.eval_t(t);
        PdPoint { a: e(&self.a), bs: self.bs.iter().map(e).collect(), cof: self.cof.iter().map(e).collect() }
    }

    pub fn reversed(&self) -> Self {
        let r = |p: &Poly<TPoly>| p.reverse_t();
        PdPoint { a: r(&self.a), bs: self.bs.iter().map(r).collect(), cof: self.cof.iter().map(r).collect() }
    }
}

impl fmt::Display for PdPoint<Fe> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = std::iter::once(&self.a).chain(&self.bs).map(|p| p.fmt_var("X")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Two points of `F_n^d` are homotopic iff their degrees agree.
pub fn pd_equiv(p1: &PdPoint<Fe>, p2: &PdPoint<Fe>) -> Result<bool> {
    check_same(p1.base_field(), p2.base_field())?;
    if p1.d() != p2.d() {
        return Err(Error::Invalid(format!("target dimensions differ: {} vs {}", p1.d(), p2.d())));
    }
    Ok(p1.degree() == p2.degree())
}

impl fmt::Display for PointedInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}; {}; res {}", self.n, self.witt, self.res)
    }
}

impl fmt::Display for UnpointedInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}; {}; res class {} mod {}-th powers", self.n, self.witt, self.res_class, 2 * self.n)
    }
}
