//! Integer factorization and square-class / power-class representatives.

use num::bigint::{BigInt, Sign};
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Fe, Field};

/// Prime factorization of a machine integer, ascending primes.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_big(&BigInt::from(n)).into_iter().map(|(p, e)| (p.to_u64().expect("factor fits"), e)).collect()
}

/// Prime factorization of `|n|` for nonzero `n`, ascending primes.
pub fn factor_big(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    for p in (2u32..1000).filter(|&p| is_prime_u64(p as u64)) {
        let p = BigInt::from(p);
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut primes: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    primes.sort();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let small = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in small {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in small {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant with products of 128 differences per gcd.
fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut ys) = (BigInt::from(2), BigInt::from(2), BigInt::from(2));
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            // backtrack one step at a time
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

/// Signed squarefree integer in the square class of a nonzero rational.
fn q_squarefree(num: &BigInt, den: &BigInt) -> BigInt {
    let mut r = BigInt::one();
    for (p, e) in factor_big(num).into_iter().chain(factor_big(den)) {
        if e % 2 == 1 {
            r *= p;
        }
    }
    if num.sign() == Sign::Minus {
        -r
    } else {
        r
    }
}

/// Canonical representative of `a * k^{x2}`.
pub fn square_class(a: &Fe) -> Result<Fe> {
    if a.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    Ok(match a {
        Fe::Q(r) => Fe::Q(q_squarefree(r.numer(), r.denom()).into()),
        Fe::P { p, .. } => {
            let f = Field::Prime(*p);
            if *p == 2 || a.is_square() {
                f.one()
            } else {
                f.nonresidue().expect("odd prime has a nonresidue")
            }
        }
    })
}

/// Canonical representative of `a * k^{x m}` for `m >= 1`.
///
/// Over Q: sign (when `m` is odd it is absorbed) times the product of `p^(e mod m)`.
/// Over F_p: `g^(e mod gcd(m, p-1))` where `a = g^e` for the smallest primitive root `g`.
pub fn power_class(a: &Fe, m: u64) -> Result<Fe> {
    if a.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    assert!(m >= 1);
    Ok(match a {
        Fe::Q(r) => {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for (p, e) in factor_big(r.numer()) {
                num *= p.pow((e as u64 % m) as u32);
            }
            for (p, e) in factor_big(r.denom()) {
                // p^{-e} ~ p^{(-e) mod m}
                let k = (m - (e as u64 % m)) % m;
                den *= p.pow(k as u32);
            }
            let v = num * den;
            if r.is_negative() && m % 2 == 0 {
                Fe::Q((-v).into())
            } else {
                Fe::Q(v.into())
            }
        }
        Fe::P { p, .. } => {
            let f = Field::Prime(*p);
            let g = f.primitive_root().expect("prime field");
            let e = discrete_log(&g, a, *p - 1);
            let d = num::integer::gcd(m, *p - 1);
            g.pow_u(e % d)
        }
    })
}

/// Exponent `e` in `[0, order)` with `g^e = a`, by baby-step giant-step.
pub fn discrete_log(g: &Fe, a: &Fe, order: u64) -> u64 {
    use std::collections::HashMap;
    let s = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::new();
    let mut x = g.field().one();
    for j in 0..s {
        table.entry(x.residue().unwrap()).or_insert(j);
        x = &x * g;
    }
    let step = g.pow_u(s).inv().expect("unit");
    let mut y = a.clone();
    for i in 0..=s {
        if let Some(&j) = table.get(&y.residue().unwrap()) {
            return (i * s + j) % order.max(1);
        }
        y = &y * &step;
    }
    panic!("element not in the cyclic group generated by g");
}
