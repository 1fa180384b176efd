//! Random generators shared by unit tests.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Fe, Field};
use crate::poly::TPoly;
use crate::ratmap::{mk_pointed, Pointed};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(f: Field, r: &mut impl Rng) -> Fe {
    match f {
        Field::Rationals => {
            let n = r.gen_range(-5i64..=5);
            let d = if r.gen_bool(0.2) { r.gen_range(1i64..=3) } else { 1 };
            f.ratio(n, d).unwrap()
        }
        Field::Prime(p) => f.int(r.gen_range(0..p) as i64),
    }
}

pub fn unit(f: Field, r: &mut impl Rng) -> Fe {
    loop {
        let x = scalar(f, r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn poly(f: Field, len: usize, r: &mut impl Rng) -> TPoly {
    TPoly::new(f, (0..len).map(|_| scalar(f, r)).collect())
}

pub fn pointed(f: Field, n: usize, r: &mut impl Rng) -> Pointed {
    loop {
        let mut a = poly(f, n, r);
        a = a + TPoly::monomial(f.one(), n);
        let b = poly(f, n, r);
        if let Ok(p) = mk_pointed(a, b) {
            return p;
        }
    }
}

pub const FIELDS: [Field; 5] = [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(7)];

/// Every point of `F_n(F_p)`.
pub fn all_points(f: Field, n: usize) -> Vec<Pointed> {
    let Field::Prime(pr) = f else { unreachable!() };
    let total = pr.pow(2 * n as u32);
    let mut out = Vec::new();
    for mut k in 0..total {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for _ in 0..n {
            a.push(f.int((k % pr) as i64));
            k /= pr;
        }
        for _ in 0..n {
            b.push(f.int((k % pr) as i64));
            k /= pr;
        }
        a.push(f.one());
        if let Ok(x) = mk_pointed(TPoly::new(f, a), TPoly::new(f, b)) {
            out.push(x);
        }
    }
    out
}

/// A point with integer coefficients in `-2..=2`, keeping rational invariants cheap.
pub fn small_pointed(f: Field, n: usize, r: &mut impl Rng) -> Pointed {
    loop {
        let mut a: Vec<Fe> = (0..n).map(|_| f.int(r.gen_range(-2..=2))).collect();
        a.push(f.one());
        let b: Vec<Fe> = (0..n).map(|_| f.int(r.gen_range(-2..=2))).collect();
        if let Ok(p) = mk_pointed(TPoly::new(f, a), TPoly::new(f, b)) {
            return p;
        }
    }
}
