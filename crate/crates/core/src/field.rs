//! Base fields: the rationals and prime fields `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Descriptor of a base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) && p < (1u64 << 62) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_char_two(self) -> bool {
        self == Field::Prime(2)
    }

    pub fn zero(self) -> Fe {
        self.int(0)
    }

    pub fn one(self) -> Fe {
        self.int(1)
    }

    pub fn int(self, v: i64) -> Fe {
        match self {
            Field::Rationals => Fe::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Fe::P { p, v: (v as i128).rem_euclid(p as i128) as u64 },
        }
    }

    /// `num/den` in this field; `None` when `den` vanishes in it.
    pub fn ratio(self, num: i64, den: i64) -> Option<Fe> {
        let d = self.int(den);
        d.inv().map(|d| self.int(num) * d)
    }

    pub fn from_rational(self, r: &BigRational) -> Option<Fe> {
        match self {
            Field::Rationals => Some(Fe::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64()?;
                let d = r.denom().mod_floor(&pb).to_u64()?;
                let d = Fe::P { p, v: d }.inv()?;
                Some(Fe::P { p, v: n } * d)
            }
        }
    }

    /// All elements of a prime field in residue order; `None` over Q.
    pub fn elements(self) -> Option<Vec<Fe>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|v| Fe::P { p, v }).collect()),
        }
    }

    pub fn units(self) -> Option<Vec<Fe>> {
        self.elements().map(|e| e.into_iter().skip(1).collect())
    }

    /// Smallest quadratic non-residue of an odd prime field.
    pub fn nonresidue(self) -> Option<Fe> {
        match self {
            Field::Prime(p) if p > 2 => (2..p).map(|v| Fe::P { p, v }).find(|x| !x.is_square()),
            _ => None,
        }
    }

    /// Smallest generator of `F_p^x`.
    pub fn primitive_root(self) -> Option<Fe> {
        let Field::Prime(p) = self else { return None };
        if p == 2 {
            return Some(self.one());
        }
        let order = p - 1;
        let factors = crate::squares::factor_u64(order);
        (2..p).map(|v| Fe::P { p, v }).find(|g| factors.iter().all(|&(q, _)| !g.pow_u(order / q).is_one()))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact scalar of Q or of a prime field.
///
/// Rationals are kept reduced with positive denominator (guaranteed by
/// `BigRational`), residues are kept in `[0, p)`, so derived equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Fe {
    Q(BigRational),
    P { p: u64, v: u64 },
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Fe {
    pub fn field(&self) -> Field {
        match self {
            Fe::Q(_) => Field::Rationals,
            Fe::P { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_zero(),
            Fe::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_one(),
            Fe::P { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Fe::Q(r) => Fe::Q(r.recip()),
            Fe::P { p, v } => {
                let (mut a, mut b) = (*v as i128, *p as i128);
                let (mut x0, mut x1) = (1i128, 0i128);
                while b != 0 {
                    let q = a / b;
                    (a, b) = (b, a - q * b);
                    (x0, x1) = (x1, x0 - q * x1);
                }
                Fe::P { p: *p, v: x0.rem_euclid(*p as i128) as u64 }
            }
        })
    }

    pub fn pow_u(&self, mut e: u64) -> Fe {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow_i(&self, e: i64) -> Option<Fe> {
        if e >= 0 {
            Some(self.pow_u(e as u64))
        } else {
            self.inv().map(|i| i.pow_u(e.unsigned_abs()))
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(r) => Some(r),
            Fe::P { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Fe::P { v, .. } => Some(*v),
            Fe::Q(_) => None,
        }
    }

    pub fn is_square(&self) -> bool {
        match self {
            Fe::Q(r) => !r.is_negative() && exact_sqrt(r.numer()).is_some() && exact_sqrt(r.denom()).is_some(),
            Fe::P { p, v } => *p == 2 || *v == 0 || Fe::P { p: *p, v: *v }.pow_u((p - 1) / 2).is_one(),
        }
    }

    /// A square root when one exists in the field.
    pub fn sqrt(&self) -> Option<Fe> {
        match self {
            Fe::Q(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_sqrt(r.numer())?;
                let d = exact_sqrt(r.denom())?;
                Some(Fe::Q(BigRational::new(n, d)))
            }
            Fe::P { p, v } => (0..*p).find(|x| mulmod(*x, *x, *p) == *v).map(|x| Fe::P { p: *p, v: x }),
        }
    }

    /// Deterministic total order used for canonical output.
    pub fn canonical_cmp(&self, other: &Fe) -> Ordering {
        match (self, other) {
            (Fe::Q(a), Fe::Q(b)) => a.cmp(b),
            (Fe::P { v: a, .. }, Fe::P { v: b, .. }) => a.cmp(b),
            (Fe::Q(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Integer value when the scalar is an integer of Q (or any residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Fe::Q(r) if r.is_integer() => r.numer().to_i64(),
            Fe::Q(_) => None,
            Fe::P { v, .. } => i64::try_from(*v).ok(),
        }
    }

    fn check(&self, other: &Fe) {
        assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }
}

pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Fe::P { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(_) => write!(f, "{self}"),
            Fe::P { p, v } => write!(f, "{v}%{p}"),
        }
    }
}

impl Add for Fe {
    type Output = Fe;
    fn add(self, rhs: Fe) -> Fe {
        &self + &rhs
    }
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, rhs: &Fe) -> Fe {
        self.check(rhs);
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            (Fe::P { p, v: a }, Fe::P { v: b, .. }) => {
                Fe::P { p: *p, v: ((*a as u128 + *b as u128) % *p as u128) as u64 }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for Fe {
    type Output = Fe;
    fn sub(self, rhs: Fe) -> Fe {
        &self - &rhs
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, rhs: &Fe) -> Fe {
        self + &(-rhs)
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Q(a) => Fe::Q(-a),
            Fe::P { p, v } => Fe::P { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }
}

impl Mul for Fe {
    type Output = Fe;
    fn mul(self, rhs: Fe) -> Fe {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, rhs: &Fe) -> Fe {
        self.check(rhs);
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            (Fe::P { p, v: a }, Fe::P { v: b, .. }) => Fe::P { p: *p, v: mulmod(*a, *b, *p) },
            _ => unreachable!(),
        }
    }
}

/// Panics on division by zero; use [`Fe::inv`] for a checked inverse.
impl Div for Fe {
    type Output = Fe;
    fn div(self, rhs: Fe) -> Fe {
        self * rhs.inv().expect("division by zero scalar")
    }
}

impl<'a> Div<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn div(self, rhs: &Fe) -> Fe {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

/// Rational from a big integer pair, helper for Q-specific code.
pub fn q_frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Fe {
    Fe::Q(BigRational::new(n.into(), d.into()))
}

pub fn q_is_positive(x: &Fe) -> Option<bool> {
    x.as_rational().map(|r| r.is_positive())
}

pub fn big_one() -> BigInt {
    BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(101).is_ok());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::Prime(7);
        assert_eq!(f.int(-1), f.int(6));
        assert_eq!(f.int(3) * f.int(5), f.int(1));
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
        assert!(f.zero().inv().is_none());
        assert!(f.int(2).is_square());
        assert!(!f.int(3).is_square());
        assert_eq!(f.nonresidue().unwrap(), f.int(3));
        assert_eq!(f.primitive_root().unwrap(), f.int(3));
    }

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(q_frac(2, -4), q_frac(-1, 2));
        assert_eq!(q_frac(9, 4).sqrt().unwrap(), q_frac(3, 2));
        assert!(q_frac(2, 1).sqrt().is_none());
        assert_eq!(format!("{}", q_frac(-6, 4)), "-3/2");
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = Field::Prime(5);
        let r = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&r).unwrap(), f.int(3));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert!(f.from_rational(&bad).is_none());
    }
}
