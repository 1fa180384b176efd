//! Factorization of polynomials over prime fields.

use num::bigint::BigUint;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::TPoly;
use crate::ring::Ring;

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_fp(a: &TPoly) -> Result<Vec<(TPoly, u32)>> {
    let Field::Prime(p) = a.base_field() else {
        return Err(Error::FactorOverRationals);
    };
    if a.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (sq, m) in squarefree(&a.monic(), p) {
        for (g, d) in distinct_degree(&sq, p) {
            for h in equal_degree(&g, d, p) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| {
        x.0.deg().cmp(&y.0.deg()).then_with(|| {
            let cx: Vec<_> = x.0.coeffs().iter().map(|c| c.residue()).collect();
            let cy: Vec<_> = y.0.coeffs().iter().map(|c| c.residue()).collect();
            cx.cmp(&cy)
        })
    });
    Ok(out)
}

fn squarefree(f: &TPoly, p: u64) -> Vec<(TPoly, u32)> {
    let base = f.base_field();
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let c0 = TPoly::gcd(f, &f.derivative());
    let mut w = f.exact_quotient(&c0).expect("gcd divides");
    let mut c = c0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = TPoly::gcd(&w, &c);
        let fac = w.exact_quotient(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.exact_quotient(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power
        let root: Vec<Fe> = c.coeffs().iter().step_by(p as usize).cloned().collect();
        for (g, m) in squarefree(&TPoly::new(base, root), p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn powmod(b: &TPoly, e: &BigUint, m: &TPoly) -> TPoly {
    let mut acc = TPoly::one(b.base_field());
    let base = b.rem(m).expect("monic modulus");
    for i in (0..e.bits()).rev() {
        acc = (acc.clone() * acc).rem(m).expect("monic modulus");
        if e.bit(i) {
            acc = (acc * base.clone()).rem(m).expect("monic modulus");
        }
    }
    acc
}

fn distinct_degree(f: &TPoly, p: u64) -> Vec<(TPoly, usize)> {
    let base = f.base_field();
    let x = TPoly::x(base);
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while f.deg() >= 2 * d as i64 {
        h = powmod(&h, &pe, &f);
        let g = TPoly::gcd(&f, &(h.clone() - x.clone()));
        if !g.is_one() {
            f = f.exact_quotient(&g).expect("gcd divides");
            h = h.rem(&f).expect("monic");
            out.push((g, d));
        }
        d += 1;
    }
    if f.deg() > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

/// The `k`-th polynomial of degree `< len` in base-`p` digit order.
fn candidate(base: Field, p: u64, mut k: u64, len: usize) -> TPoly {
    let mut c = Vec::with_capacity(len);
    for _ in 0..len {
        c.push(base.int((k % p) as i64));
        k /= p;
    }
    TPoly::new(base, c)
}

fn equal_degree(f: &TPoly, d: usize, p: u64) -> Vec<TPoly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let base = f.base_field();
    let q = BigUint::from(p).pow(d as u32);
    let half = (&q - BigUint::one()) / BigUint::from(2u32);
    let mut k = p;
    loop {
        let a = candidate(base, p, k, n);
        k += 1;
        if a.deg() <= 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(f).expect("monic");
            let mut acc = t.clone();
            for _ in 1..d {
                t = (t.clone() * t).rem(f).expect("monic");
                acc = acc + t.clone();
            }
            acc
        } else {
            powmod(&a, &half, f) - TPoly::one(base)
        };
        if b.is_zero() && half.is_zero() {
            continue;
        }
        let g = TPoly::gcd(f, &b);
        if g.deg() > 0 && g.deg() < n as i64 {
            let h = f.exact_quotient(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&h, d, p));
            return out;
        }
    }
}

/// Irreducibility by exhaustive trial division by every monic polynomial of degree `<= n/2`.
pub fn is_irreducible_exhaustive(f: &TPoly) -> bool {
    let Field::Prime(p) = f.base_field() else { return false };
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let base = f.base_field();
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let g = candidate(base, p, k, d) + TPoly::monomial(base.one(), d);
            if f.rem(&g).expect("monic").is_zero() {
                return false;
            }
        }
    }
    true
}
