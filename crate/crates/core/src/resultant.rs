//! Padded resultants, unique Bézout pairs and Laurent expansions.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ring::Ring;

/// The `2n x 2n` Sylvester matrix of `(a, b)`, both read at formal degree `n`.
///
/// Row `i < n` holds the coefficients of `X^(n-1-i) a`, row `n + i` those of
/// `X^(n-1-i) b`; column `j` is the coefficient of `X^(2n-1-j)`.
pub fn sylvester<R: Ring>(a: &Poly<R>, b: &Poly<R>, n: usize) -> Mat<R> {
    let base = a.base_field();
    let mut m = Mat::zeros(base, 2 * n, 2 * n);
    for (row0, p) in [(0, a), (n, b)] {
        for i in 0..n {
            for k in 0..=n {
                let c = p.coeff(k);
                if !c.is_zero() {
                    m[(row0 + i, i + n - k)] = c;
                }
            }
        }
    }
    m
}

/// `res_{n,n}(a, b)`.
pub fn resultant_nn<R: Ring>(a: &Poly<R>, b: &Poly<R>, n: usize) -> Result<R> {
    let deg = a.deg().max(b.deg());
    if deg > n as i64 {
        return Err(Error::ResultantDegree { n, deg: deg as usize });
    }
    if n == 0 {
        return Ok(R::one_in(a.base_field()));
    }
    Ok(sylvester(a, b, n).det())
}

/// The unique `(U, V)` with `AU + BV = 1`, `deg U <= n-2`, `deg V <= n-1`, `n = deg A`.
///
/// Solved by Cramer's rule, so it works over `k[T]` whenever the resultant is a unit.
pub fn bezout_pair<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<(Poly<R>, Poly<R>)> {
    let base = a.base_field();
    let n = a.degree().ok_or(Error::ZeroDegree)?;
    if n == 0 {
        return if a.is_one() && b.is_zero() {
            Ok((Poly::one(base), Poly::zero(base)))
        } else {
            Err(Error::NotCoprime { n })
        };
    }
    // unknowns: u_0..u_{n-2}, v_0..v_{n-1}; equations: coefficient of X^r, r = 0..2n-2
    let size = 2 * n - 1;
    let mut m: Mat<R> = Mat::zeros(base, size, size);
    for j in 0..n - 1 {
        for k in 0..=n {
            m[(j + k, j)] = a.coeff(k);
        }
    }
    for j in 0..n {
        for k in 0..n {
            m[(j + k, n - 1 + j)] = b.coeff(k);
        }
    }
    let det = m.det();
    let inv = det.unit_inv().ok_or(Error::NotCoprime { n })?;
    let mut sol = Vec::with_capacity(size);
    for j in 0..size {
        let mut mj = m.clone();
        for r in 0..size {
            mj[(r, j)] = if r == 0 { R::one_in(base) } else { R::zero_in(base) };
        }
        sol.push(mj.det() * inv.clone());
    }
    let v = sol.split_off(n - 1);
    Ok((Poly::new(base, sol), Poly::new(base, v)))
}

/// `s_1..s_m` with `V/A = sum s_i X^{-i} + O(X^{-(m+1)})`, for monic `A`.
pub fn laurent_expand<R: Ring>(v: &Poly<R>, a: &Poly<R>, m: usize) -> Result<Vec<R>> {
    if v.deg() >= a.deg() {
        return Err(Error::NotProper);
    }
    if !a.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let n = a.degree().expect("nonzero");
    let mut r = v.clone();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let rx = r.shift(1);
        let q = rx.coeff(n);
        r = rx - a.scale(&q);
        out.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, Field};
    use crate::poly::TPoly;
    use proptest::prelude::*;

    fn p(f: Field, c: &[i64]) -> TPoly {
        Poly::from_ints(f, c)
    }

    #[test]
    fn resultant_examples() {
        let q = Field::Rationals;
        assert_eq!(resultant_nn(&p(q, &[0, 1]), &p(q, &[7]), 1).unwrap(), q.int(7));
        assert_eq!(resultant_nn(&p(q, &[-1, 0, 1]), &p(q, &[0, 1]), 2).unwrap(), q.int(-1));
        assert_eq!(resultant_nn(&p(q, &[3, 2, 1]), &TPoly::zero(q), 2).unwrap(), q.zero());
        assert!(resultant_nn(&p(q, &[0, 0, 0, 1]), &p(q, &[1]), 2).is_err());
    }

    #[test]
    fn resultant_is_product_of_b_at_roots_for_monic_a() {
        // A = (X-1)(X-2)(X+3), res_{3,3}(A, B) = B(1) B(2) B(-3) by the product formula
        let q = Field::Rationals;
        let a = p(q, &[6, -7, 0, 1]);
        let b = p(q, &[5, -1, 2]);
        let expect = b.eval(&q.int(1)) * b.eval(&q.int(2)) * b.eval(&q.int(-3));
        assert_eq!(resultant_nn(&a, &b, 3).unwrap(), expect);
    }

    #[test]
    fn bezout_pair_examples() {
        let q = Field::Rationals;
        let (u, v) = bezout_pair(&p(q, &[-1, 0, 1]), &p(q, &[0, 1])).unwrap();
        assert_eq!((u, v), (p(q, &[-1]), p(q, &[0, 1])));
        let (u, v) = bezout_pair(&p(q, &[0, 1]), &p(q, &[4])).unwrap();
        assert!(u.is_zero());
        assert_eq!(v, TPoly::constant(Fe::Q(num::BigRational::new(1.into(), 4.into()))));
        let f3 = Field::Prime(3);
        let (u, v) = bezout_pair(&p(f3, &[1, 0, 1]), &p(f3, &[1])).unwrap();
        assert!(u.is_zero());
        assert_eq!(v, TPoly::one(f3));
        assert!(matches!(bezout_pair(&p(q, &[0, 0, 1]), &p(q, &[0, 1])), Err(Error::NotCoprime { n: 2 })));
    }

    #[test]
    fn bezout_pair_over_kt() {
        // A = X^2 + T X, B = 1
        let q = Field::Rationals;
        let t = p(q, &[0, 1]);
        let a: Poly<TPoly> = Poly::new(q, vec![TPoly::zero(q), t, TPoly::one(q)]);
        let b: Poly<TPoly> = Poly::new(q, vec![TPoly::one(q)]);
        let (u, v) = bezout_pair(&a, &b).unwrap();
        assert_eq!(a * u + b * v, Poly::one(q));
    }

    #[test]
    fn laurent_examples() {
        let q = Field::Rationals;
        let s = laurent_expand(&p(q, &[0, 1]), &p(q, &[-1, 0, 1]), 3).unwrap();
        assert_eq!(s, vec![q.int(1), q.int(0), q.int(1)]);
        let s = laurent_expand(&p(q, &[1]), &p(q, &[0, 1]), 2).unwrap();
        assert_eq!(s, vec![q.int(1), q.int(0)]);
        let f2 = Field::Prime(2);
        let s = laurent_expand(&p(f2, &[1]), &p(f2, &[1, 1]), 3).unwrap();
        assert_eq!(s, vec![f2.one(), f2.one(), f2.one()]);
        assert!(laurent_expand(&p(q, &[0, 1]), &p(q, &[0, 1]), 2).is_err());
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![
            Field::Rationals,
            Field::Prime(2),
            Field::Prime(3),
            Field::Prime(5),
            Field::Prime(101),
        ])
    }

    fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, len)
    }

    proptest! {
        #[test]
        fn resultant_nonzero_iff_coprime(f in field_strategy(), n in 1usize..=4, ac in coeffs(4), bc in coeffs(4), bd in 0usize..4) {
            let mut a = ac[..n].to_vec();
            a.push(1);
            let a = p(f, &a);
            let b = p(f, &bc[..bd.min(n - 1) + 1]);
            prop_assume!(!b.is_zero());
            let r = resultant_nn(&a, &b, n).unwrap();
            let g = TPoly::gcd(&a, &b);
            prop_assert_eq!(!r.is_zero(), g.is_one());
        }

        #[test]
        fn bezout_pair_is_the_unique_bounded_solution(f in field_strategy(), n in 1usize..=4, ac in coeffs(4), bc in coeffs(4)) {
            let mut a = ac[..n].to_vec();
            a.push(1);
            let a = p(f, &a);
            let b = p(f, &bc[..n]);
            let r = resultant_nn(&a, &b, n).unwrap();
            prop_assume!(!r.is_zero());
            let (u, v) = bezout_pair(&a, &b).unwrap();
            prop_assert!(u.deg() <= n as i64 - 2);
            prop_assert!(v.deg() <= n as i64 - 1);
            prop_assert!((a.clone() * u.clone() + b.clone() * v.clone()).is_one());
            // xgcd yields a (possibly different) solution; reducing it mod A gives the bounded one
            let (g, _s, t) = TPoly::xgcd(&a, &b).unwrap();
            prop_assert!(g.is_one());
            let v2 = t.rem(&a).unwrap();
            let u2 = (TPoly::one(f) - b.clone() * v2.clone()).exact_quotient(&a).unwrap();
            prop_assert_eq!((u2, v2), (u, v));
        }

        #[test]
        fn laurent_agrees_with_long_division(f in field_strategy(), n in 1usize..=4, m in 1usize..=8, ac in coeffs(4), vc in coeffs(4)) {
            let mut a = ac[..n].to_vec();
            a.push(1);
            let a = p(f, &a);
            let v = p(f, &vc[..n]);
            let s = laurent_expand(&v, &a, m).unwrap();
            let (qt, _) = v.shift(m).divmod(&a).unwrap();
            // V X^m / A = sum_i s_i X^{m-i} + O(X^{-1})
            for i in 1..=m {
                prop_assert_eq!(&s[i - 1], &qt.coeff(m - i));
            }
        }
    }
}
