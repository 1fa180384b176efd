//! Stable Witt-type invariants and Hilbert symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::squares::{factor_big, square_class};

use super::diagonalize;

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    P(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittDetail {
    /// Signature and Hasse invariants at the stored primes (all others are +1).
    Rational {
        pos: usize,
        neg: usize,
        hasse: BTreeMap<BigInt, i8>,
    },
    OddPrime,
    CharTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittInvariant {
    pub field: Field,
    pub rank: usize,
    /// Square class of the determinant.
    pub disc: Fe,
    pub detail: WittDetail,
}

fn sqfree_int(a: &Fe) -> BigInt {
    let c = square_class(a).expect("nonzero");
    let r = c.as_rational().expect("rational").clone();
    r.to_integer()
}

fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn split_p(a: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut a = a.clone();
    let mut e = 0;
    while (&a % p).is_zero() {
        a /= p;
        e += 1;
    }
    (e, a)
}

/// The Hilbert symbol `(a, b)_v` of nonzero rationals.
pub fn hilbert_symbol(a: &Fe, b: &Fe, place: &Place) -> Result<i8> {
    if a.field() != Field::Rationals || b.field() != Field::Rationals {
        return Err(Error::Unsupported("Hilbert symbols are defined over Q only".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    // n/d and nd lie in the same square class
    let int_rep = |x: &Fe| {
        let r = x.as_rational().expect("rational");
        r.numer() * r.denom()
    };
    let (a, b) = (int_rep(a), int_rep(b));
    Ok(match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::P(p) if *p == BigInt::from(2) => {
            let (al, u) = split_p(&a, p);
            let (be, v) = split_p(&b, p);
            let eps = |x: &BigInt| i32::from(x.mod_floor(&BigInt::from(4)) == BigInt::from(3));
            let omega = |x: &BigInt| {
                let m = x.mod_floor(&BigInt::from(8));
                i32::from(m == BigInt::from(3) || m == BigInt::from(5))
            };
            let e = eps(&u) * eps(&v) + al as i32 * omega(&v) + be as i32 * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::P(p) => {
            let (al, u) = split_p(&a, p);
            let (be, v) = split_p(&b, p);
            let eps_p = i32::from(p.mod_floor(&BigInt::from(4)) == BigInt::from(3));
            let mut s: i8 = if (al as i32 * be as i32 * eps_p) % 2 == 0 { 1 } else { -1 };
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    })
}

/// `∏_{i<j} (a_i, a_j)_v`.
pub fn hasse_at(diag: &[Fe], place: &Place) -> i8 {
    let mut h = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            h *= hilbert_symbol(&diag[i], &diag[j], place).expect("rational units");
        }
    }
    h
}

/// Invariant of `⟨units⟩ ⊕ hyper · [[0,1],[1,α]]`.
pub fn invariant_of_diag(field: Field, units: &[Fe], hyper: usize) -> WittInvariant {
    let rank = units.len() + 2 * hyper;
    let mut det = units.iter().fold(field.one(), |acc, u| &acc * u);
    if hyper % 2 == 1 {
        det = -det;
    }
    let disc = square_class(&det).expect("non-degenerate");
    let detail = match field {
        Field::Rationals => {
            // each hyperbolic plane is ⟨1, -1⟩
            let mut diag: Vec<Fe> = units.iter().map(|u| square_class(u).expect("unit")).collect();
            for _ in 0..hyper {
                diag.push(field.one());
                diag.push(field.int(-1));
            }
            let pos = diag.iter().filter(|u| u.as_rational().unwrap().is_positive()).count();
            let mut primes: BTreeSet<BigInt> = BTreeSet::new();
            primes.insert(BigInt::from(2));
            for x in diag.iter().chain(std::iter::once(&disc)) {
                for (p, _) in factor_big(&sqfree_int(x)) {
                    primes.insert(p);
                }
            }
            let hasse = primes.into_iter().map(|p| {
                let h = hasse_at(&diag, &Place::P(p.clone()));
                (p, h)
            });
            WittDetail::Rational { pos, neg: rank - pos, hasse: hasse.collect() }
        }
        Field::Prime(2) => WittDetail::CharTwo,
        Field::Prime(_) => WittDetail::OddPrime,
    };
    WittInvariant { field, rank, disc, detail }
}

pub fn stable_invariant(s: &Mat<Fe>) -> Result<WittInvariant> {
    let d = diagonalize(s)?;
    Ok(invariant_of_diag(s.base_field(), &d.units(), d.hyperbolic_count()))
}

/// Componentwise comparison; missing Hasse entries count as +1.
pub fn stable_equal(a: &WittInvariant, b: &WittInvariant) -> Result<bool> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
    }
    if a.rank != b.rank {
        return Ok(false);
    }
    Ok(match (&a.detail, &b.detail) {
        (WittDetail::CharTwo, WittDetail::CharTwo) => true,
        (WittDetail::OddPrime, WittDetail::OddPrime) => a.disc == b.disc,
        (
            WittDetail::Rational { pos: p1, neg: n1, hasse: h1 },
            WittDetail::Rational { pos: p2, neg: n2, hasse: h2 },
        ) => {
            let keys: BTreeSet<&BigInt> = h1.keys().chain(h2.keys()).collect();
            a.disc == b.disc
                && (p1, n1) == (p2, n2)
                && keys.into_iter().all(|k| h1.get(k).unwrap_or(&1) == h2.get(k).unwrap_or(&1))
        }
        _ => false,
    })
}

impl fmt::Display for WittInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}, disc {}", self.rank, self.disc)?;
        match &self.detail {
            WittDetail::Rational { pos, neg, hasse } => {
                write!(f, ", signature ({pos}, {neg})")?;
                let bad: Vec<String> = hasse.iter().filter(|(_, h)| **h == -1).map(|(p, _)| p.to_string()).collect();
                if bad.is_empty() {
                    write!(f, ", Hasse +1 everywhere")
                } else {
                    write!(f, ", Hasse -1 at {}", bad.join(", "))
                }
            }
            WittDetail::OddPrime => Ok(()),
            WittDetail::CharTwo => write!(f, " (rank only)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q_frac;
    use crate::quadform::block_sum;
    use crate::testutil;
    use rand::Rng;

    fn q(n: i64) -> Fe {
        q_frac(n, 1)
    }

    fn p(v: u64) -> Place {
        Place::P(BigInt::from(v))
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &p(3)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), &p(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(5), &q(2), &p(5)).unwrap(), -1);
    }

    fn rand_rat(r: &mut impl Rng) -> Fe {
        loop {
            let n = r.gen_range(-60i64..=60);
            let d = r.gen_range(1i64..=12);
            if n != 0 {
                return q_frac(n, d);
            }
        }
    }

    fn places_for(xs: &[&Fe]) -> Vec<Place> {
        let mut ps: BTreeSet<BigInt> = [2, 3, 5].into_iter().map(BigInt::from).collect();
        for x in xs {
            for (pr, _) in factor_big(&sqfree_int(x)) {
                ps.insert(pr);
            }
        }
        let mut v: Vec<Place> = ps.into_iter().map(Place::P).collect();
        v.push(Place::Real);
        v
    }

    #[test]
    fn hilbert_laws() {
        let mut r = testutil::rng(30);
        for _ in 0..300 {
            let (a, b, c) = (rand_rat(&mut r), rand_rat(&mut r), rand_rat(&mut r));
            for v in [p(2), p(3), p(5), Place::Real] {
                let lhs = hilbert_symbol(&a, &(&b * &c), &v).unwrap();
                let rhs = hilbert_symbol(&a, &b, &v).unwrap() * hilbert_symbol(&a, &c, &v).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(hilbert_symbol(&a, &-a.clone(), &v).unwrap(), 1);
                assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&b, &a, &v).unwrap());
            }
            // product formula over all places
            let prod: i8 = places_for(&[&a, &b]).iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
            assert_eq!(prod, 1);
        }
    }

    #[test]
    fn invariant_examples() {
        let qf = Field::Rationals;
        let i3 = stable_invariant(&Mat::identity(qf, 3)).unwrap();
        assert_eq!((i3.rank, i3.disc.clone()), (3, qf.one()));
        match &i3.detail {
            WittDetail::Rational { pos, neg, hasse } => {
                assert_eq!((*pos, *neg), (3, 0));
                assert!(hasse.values().all(|h| *h == 1));
            }
            _ => unreachable!(),
        }
        let a = stable_invariant(&Mat::from_ints(qf, &[&[1, 0], &[0, -1]])).unwrap();
        let h = stable_invariant(&Mat::from_ints(qf, &[&[0, 1], &[1, 0]])).unwrap();
        assert!(stable_equal(&a, &h).unwrap());
        let f5 = Field::Prime(5);
        let a = stable_invariant(&Mat::from_ints(f5, &[&[1, 0], &[0, 1]])).unwrap();
        let b = stable_invariant(&Mat::from_ints(f5, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(stable_equal(&a, &b).unwrap());
        let f2 = Field::Prime(2);
        let a = stable_invariant(&Mat::identity(f2, 3)).unwrap();
        let b = stable_invariant(&Mat::from_ints(f2, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap();
        assert!(stable_equal(&a, &b).unwrap());
        let one = stable_invariant(&Mat::from_ints(qf, &[&[1]])).unwrap();
        let m1 = stable_invariant(&Mat::from_ints(qf, &[&[-1]])).unwrap();
        assert!(!stable_equal(&one, &m1).unwrap());
        assert!(stable_equal(&one, &a).is_err());
        // ⟨1,1⟩ vs ⟨3,3⟩ differ only by a Hasse symbol at 3
        let x = stable_invariant(&Mat::from_ints(qf, &[&[1, 0], &[0, 1]])).unwrap();
        let y = stable_invariant(&Mat::from_ints(qf, &[&[3, 0], &[0, 3]])).unwrap();
        assert_eq!(x.disc, y.disc);
        assert!(!stable_equal(&x, &y).unwrap());
    }

    fn rand_sym(f: Field, n: usize, r: &mut impl Rng) -> Mat<Fe> {
        let mut s = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in i..n {
                let x = testutil::scalar(f, r);
                s[(i, j)] = x.clone();
                s[(j, i)] = x;
            }
        }
        s
    }

    #[test]
    fn orthogonal_sum_cocycle() {
        let qf = Field::Rationals;
        let mut r = testutil::rng(31);
        let mut done = 0;
        while done < 200 {
            let s1 = rand_sym(qf, 1 + r.gen_range(0..3), &mut r);
            let s2 = rand_sym(qf, 1 + r.gen_range(0..3), &mut r);
            let (Ok(i1), Ok(i2)) = (stable_invariant(&s1), stable_invariant(&s2)) else { continue };
            done += 1;
            let i12 = stable_invariant(&block_sum(&s1, &s2)).unwrap();
            assert_eq!(i12.rank, i1.rank + i2.rank);
            assert_eq!(i12.disc, square_class(&(&i1.disc * &i2.disc)).unwrap());
            let (
                WittDetail::Rational { pos: p1, neg: n1, .. },
                WittDetail::Rational { pos: p2, neg: n2, .. },
                WittDetail::Rational { pos: p12, neg: n12, hasse: h12 },
            ) = (&i1.detail, &i2.detail, &i12.detail)
            else {
                unreachable!()
            };
            assert_eq!((*p12, *n12), (p1 + p2, n1 + n2));
            let d1 = diagonalize(&s1).unwrap().units();
            let d2 = diagonalize(&s2).unwrap().units();
            let det = |v: &[Fe]| v.iter().fold(qf.one(), |acc, x| &acc * x);
            for (pr, h) in h12 {
                let v = Place::P(pr.clone());
                let expect = hasse_at(&d1, &v) * hasse_at(&d2, &v) * hilbert_symbol(&det(&d1), &det(&d2), &v).unwrap();
                assert_eq!(*h, expect);
            }
        }
    }

    #[test]
    fn reflexive_on_random_forms() {
        let mut r = testutil::rng(32);
        for f in testutil::FIELDS {
            for _ in 0..100 {
                let s = rand_sym(f, 1 + r.gen_range(0..4), &mut r);
                if let Ok(i) = stable_invariant(&s) {
                    assert!(stable_equal(&i, &i).unwrap());
                }
            }
        }
    }
}
