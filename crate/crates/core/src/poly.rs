//! Dense univariate polynomials over a [`Ring`], lowest degree first.
//!
//! `Poly<Fe>` is `k[X]` (or `k[T]` when used as a coefficient ring) and
//! `Poly<Poly<Fe>>` is `k[T][X]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R> {
    base: Field,
    coeffs: Vec<R>,
}

/// Polynomials in `T` over the base field, the coefficient ring of homotopies.
pub type TPoly = Poly<Fe>;

impl<R: Ring> Poly<R> {
    pub fn new(base: Field, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.base() == base));
        Poly { base, coeffs }
    }

    pub fn zero(base: Field) -> Self {
        Poly { base, coeffs: Vec::new() }
    }

    pub fn one(base: Field) -> Self {
        Self::constant(R::one_in(base))
    }

    pub fn constant(c: R) -> Self {
        let base = c.base();
        Self::new(base, vec![c])
    }

    /// The variable `X`.
    pub fn x(base: Field) -> Self {
        Self::monomial(R::one_in(base), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let base = c.base();
        let mut v = vec![R::zero_in(base); k];
        v.push(c);
        Self::new(base, v)
    }

    pub fn base_field(&self) -> Field {
        self.base
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero_in(self.base))
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    /// Coefficient vector padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<R> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero_in(self.base), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.base, self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![R::zero_in(self.base); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { base: self.base, coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.base), |acc, _| acc * self.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * R::from_scalar(self.base.int(i as i64)))
            .collect();
        Self::new(self.base, coeffs)
    }

    /// Substitute a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(self.base), |acc, c| acc * inner.clone() + Self::constant(c.clone()))
    }

    /// Euclidean division by a divisor whose leading coefficient is a unit.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let lc = b.lc().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.unit_inv().ok_or(Error::NonMonicDivisor)?;
        self.long_division(b, |c| Some(c.clone() * lc_inv.clone())).ok_or(Error::NonMonicDivisor)
    }

    /// Division that is only required to be exact.
    pub fn exact_quotient(&self, b: &Self) -> Option<Self> {
        let lc = b.lc()?.clone();
        let (q, r) = self.long_division(b, |c| c.exact_div(&lc))?;
        r.is_zero().then_some(q)
    }

    fn long_division(&self, b: &Self, div_lc: impl Fn(&R) -> Option<R>) -> Option<(Self, Self)> {
        let db = b.degree()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((Self::zero(self.base), self.clone()));
        }
        let mut q = vec![R::zero_in(self.base); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].clone();
            if c.is_zero() {
                continue;
            }
            let t = div_lc(&c)?;
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - t.clone() * bj.clone();
            }
            debug_assert!(r[i + db].is_zero());
            q[i] = t;
        }
        Some((Self::new(self.base, q), Self::new(self.base, r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        self.divmod(b).map(|(_, r)| r)
    }
}

impl Poly<Fe> {
    pub fn from_ints(base: Field, coeffs: &[i64]) -> Self {
        Self::new(base, coeffs.iter().map(|&c| base.int(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Extended gcd: `a*s + b*t = g` with `g` monic.
    pub fn xgcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let base = a.base;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(base), Self::zero(base));
        let (mut t0, mut t1) = (Self::zero(base), Self::one(base));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0 - q.clone() * s1.clone();
            let t = t0 - q * t1.clone();
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = r0.lc().expect("nonzero gcd").inv().expect("field");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        match Self::xgcd(a, b) {
            Ok((g, _, _)) => g,
            Err(_) => Self::zero(a.base),
        }
    }

    /// Render with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl Poly<Poly<Fe>> {
    /// Lift a `k[X]` polynomial to constant coefficients in `k[T]`.
    pub fn lift_const(p: &Poly<Fe>) -> Self {
        p.map(|c| Poly::constant(c.clone()))
    }

    /// Evaluate every coefficient at `T = t`.
    pub fn eval_t(&self, t: &Fe) -> Poly<Fe> {
        self.map(|c| c.eval(t))
    }

    /// Substitute `T -> 1 - T`.
    pub fn reverse_t(&self) -> Self {
        let base = self.base;
        let one_minus_t = Poly::new(base, vec![base.one(), -base.one()]);
        self.map(|c| c.compose(&one_minus_t))
    }

    pub fn max_t_degree(&self) -> i64 {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(-1)
    }
}

impl fmt::Display for Poly<Fe> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("X"))
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Self::new(self.base, v)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Self::new(self.base, v)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.base);
        }
        let mut v = vec![R::zero_in(self.base); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.base, v)
    }
}

impl<R: Ring> Ring for Poly<R> {
    const IS_SCALAR: bool = false;

    fn base(&self) -> Field {
        self.base
    }
    fn zero_in(f: Field) -> Self {
        Self::zero(f)
    }
    fn one_in(f: Field) -> Self {
        Self::one(f)
    }
    fn from_scalar(c: Fe) -> Self {
        Self::constant(R::from_scalar(c))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn unit_inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].unit_inv().map(Self::constant)
        } else {
            None
        }
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return (!d.is_zero()).then(|| self.clone());
        }
        self.exact_quotient(d)
    }
    fn as_scalar(&self) -> Option<Fe> {
        match self.coeffs.len() {
            0 => Some(self.base.zero()),
            1 => self.coeffs[0].as_scalar(),
            _ => None,
        }
    }
}
