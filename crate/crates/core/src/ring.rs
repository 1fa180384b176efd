//! The small commutative-ring interface shared by scalars `k` and by `k[T]`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Fe, Field};

/// Exact commutative ring over a base field (either `k` itself or `k[T]`).
pub trait Ring:
    Clone + PartialEq + Eq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// True for `k`, false for `k[T]`.
    const IS_SCALAR: bool;

    fn base(&self) -> Field;
    fn zero_in(f: Field) -> Self;
    fn one_in(f: Field) -> Self;
    fn from_scalar(c: Fe) -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse when `self` is a unit of the ring.
    fn unit_inv(&self) -> Option<Self>;
    /// `self / d` when the division is exact.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// The scalar value when `self` is a constant.
    fn as_scalar(&self) -> Option<Fe>;

    fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    fn scale(&self, c: &Fe) -> Self {
        self.clone() * Self::from_scalar(c.clone())
    }
}

impl Ring for Fe {
    const IS_SCALAR: bool = true;
    fn base(&self) -> Field {
        self.field()
    }
    fn zero_in(f: Field) -> Self {
        f.zero()
    }
    fn one_in(f: Field) -> Self {
        f.one()
    }
    fn from_scalar(c: Fe) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        Fe::is_zero(self)
    }
    fn unit_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self * &i)
    }
    fn as_scalar(&self) -> Option<Fe> {
        Some(self.clone())
    }
}
