//! Explicit chains of naive homotopies and their verification.
//!
//! A certificate is a list of `k[T]`-points whose consecutive endpoints agree.
//! Verification only needs polynomial arithmetic and one resultant per step.

use std::fmt;

use crate::bezout::f2_iso_inv;
use crate::classify::{pointed_invariant, unpointed_invariant, PdPath, PdPoint};
use crate::error::{Error, Result};
use crate::factor::factor_fp;
use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::poly::{Poly, TPoly};
use crate::ratmap::{
    elem_product, mk_pointed, normalize_unpointed, sl2_decompose, Pointed, PointedPath, UnpointedPath, UnpointedRat, M2,
};
use crate::resultant::resultant_nn;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Pointed,
    Unpointed,
    Pd,
}

impl CertKind {
    pub fn name(self) -> &'static str {
        match self {
            CertKind::Pointed => "pointed",
            CertKind::Unpointed => "unpointed",
            CertKind::Pd => "pd",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "pointed" => Some(CertKind::Pointed),
            "unpointed" => Some(CertKind::Unpointed),
            "pd" => Some(CertKind::Pd),
            _ => None,
        }
    }
}

/// An endpoint `(A, B_1, ..., B_d)`; `d = 1` except for `P^d` targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub a: Poly<Fe>,
    pub bs: Vec<Poly<Fe>>,
}

impl Point {
    pub fn pointed(f: &Pointed) -> Self {
        Point { a: f.a().clone(), bs: vec![f.b().clone()] }
    }

    pub fn unpointed(u: &UnpointedRat) -> Self {
        Point { a: u.a().clone(), bs: vec![u.b().clone()] }
    }

    pub fn pd(p: &PdPoint<Fe>) -> Self {
        Point { a: p.a().clone(), bs: p.bs().to_vec() }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bs.len() == 1 {
            return write!(f, "({})/({})", self.a.fmt_var("X"), self.bs[0].fmt_var("X"));
        }
        let parts: Vec<String> = std::iter::once(&self.a).chain(&self.bs).map(|p| p.fmt_var("X")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// One homotopy. `cof` holds the unimodularity cofactors of a `P^d` step
/// and is empty otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub a: Poly<TPoly>,
    pub bs: Vec<Poly<TPoly>>,
    pub cof: Vec<Poly<TPoly>>,
}

impl Step {
    pub fn eval(&self, t: &Fe) -> Point {
        Point { a: self.a.eval_t(t), bs: self.bs.iter().map(|b| b.eval_t(t)).collect() }
    }

    pub fn reversed(&self) -> Self {
        let r = |p: &Poly<TPoly>| p.reverse_t();
        Step { a: r(&self.a), bs: self.bs.iter().map(r).collect(), cof: self.cof.iter().map(r).collect() }
    }

    fn from_pointed(p: &PointedPath) -> Self {
        Step { a: p.a().clone(), bs: vec![p.b().clone()], cof: vec![] }
    }

    fn from_unpointed(p: &UnpointedPath) -> Self {
        Step { a: p.a.clone(), bs: vec![p.b.clone()], cof: vec![] }
    }

    fn from_pd(p: &PdPath) -> Self {
        Step { a: p.a().clone(), bs: p.bs().to_vec(), cof: p.cofactors().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub field: Field,
    pub n: usize,
    pub source: Point,
    pub target: Point,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn reversed(&self) -> Self {
        Certificate {
            source: self.target.clone(),
            target: self.source.clone(),
            steps: self.steps.iter().rev().map(Step::reversed).collect(),
            ..self.clone()
        }
    }

    /// `self` followed by `next`; the shared endpoint must agree.
    pub fn then(&self, next: &Certificate) -> Result<Self> {
        if self.kind != next.kind || self.field != next.field || self.n != next.n {
            return Err(Error::Invalid("certificates of different shape".into()));
        }
        if !same_point(self.kind, &self.target, &next.source) {
            return Err(Error::Invalid("certificates do not share an endpoint".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(Certificate { steps, target: next.target.clone(), ..self.clone() })
    }

    /// `f ~ f'` becomes `f ⊕ g ~ f' ⊕ g` for a constant `g`.
    pub fn oplus_const(&self, g: &Pointed) -> Result<Self> {
        if self.kind != CertKind::Pointed || g.base_field() != self.field {
            return Err(Error::Invalid("pointed certificate over the same field expected".into()));
        }
        let plus =
            |p: &Point| -> Result<Point> { Ok(Point::pointed(&mk_pointed(p.a.clone(), p.bs[0].clone())?.oplus(g))) };
        let steps = self
            .steps
            .iter()
            .map(|s| Ok(Step::from_pointed(&mk_pointed(s.a.clone(), s.bs[0].clone())?.oplus(&g.lift()))))
            .collect::<Result<_>>()?;
        Ok(Certificate {
            n: self.n + g.degree(),
            source: plus(&self.source)?,
            target: plus(&self.target)?,
            steps,
            ..self.clone()
        })
    }

    /// Check every step and every junction. The error names the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let (zero, one) = (self.field.zero(), self.field.one());
        check_endpoint(self, &self.source).map_err(|e| format!("source: {e}"))?;
        check_endpoint(self, &self.target).map_err(|e| format!("target: {e}"))?;
        let mut cur = self.source.clone();
        for (i, step) in self.steps.iter().enumerate() {
            check_step(self, step).map_err(|e| format!("{e} at step {i}"))?;
            if !same_point(self.kind, &step.eval(&zero), &cur) {
                return Err(format!("endpoint mismatch at step {i}"));
            }
            cur = step.eval(&one);
        }
        if !same_point(self.kind, &cur, &self.target) {
            return Err("chain does not end at the target".into());
        }
        Ok(())
    }
}

fn same_point(kind: CertKind, p: &Point, q: &Point) -> bool {
    match kind {
        CertKind::Unpointed => {
            let n = p.a.deg().max(p.bs[0].deg()).max(0) as usize;
            match (
                UnpointedRat::new(n, p.a.clone(), p.bs[0].clone()),
                UnpointedRat::new(n, q.a.clone(), q.bs[0].clone()),
            ) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            }
        }
        _ => p == q,
    }
}

fn check_endpoint(c: &Certificate, p: &Point) -> std::result::Result<(), String> {
    if p.a.base_field() != c.field || p.bs.iter().any(|b| b.base_field() != c.field) {
        return Err("field mismatch".into());
    }
    match c.kind {
        CertKind::Pointed => {
            if p.bs.len() != 1 {
                return Err("expected one denominator".into());
            }
            let f = mk_pointed(p.a.clone(), p.bs[0].clone()).map_err(|e| e.to_string())?;
            if f.degree() != c.n {
                return Err(format!("degree {} differs from {}", f.degree(), c.n));
            }
        }
        CertKind::Unpointed => {
            if p.bs.len() != 1 {
                return Err("expected one denominator".into());
            }
            UnpointedRat::new(c.n, p.a.clone(), p.bs[0].clone()).map_err(|e| e.to_string())?;
        }
        CertKind::Pd => {
            if p.a.degree() != Some(c.n) {
                return Err(format!("degree differs from {}", c.n));
            }
            PdPoint::new(p.a.clone(), p.bs.clone()).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn check_step(c: &Certificate, s: &Step) -> std::result::Result<(), String> {
    let base = c.field;
    if s.a.base_field() != base || s.bs.iter().any(|b| b.base_field() != base) {
        return Err("field mismatch".into());
    }
    let constant_unit = |r: &TPoly| r.deg() == 0;
    match c.kind {
        CertKind::Pointed => {
            if s.bs.len() != 1 {
                return Err("expected one denominator".into());
            }
            if !s.a.is_monic() || s.a.degree() != Some(c.n) {
                return Err(format!("numerator is not monic of degree {}", c.n));
            }
            if s.bs[0].deg() >= c.n as i64 {
                return Err("denominator degree too large".into());
            }
            let res = resultant_nn(&s.a, &s.bs[0], c.n).map_err(|e| e.to_string())?;
            if !constant_unit(&res) {
                return Err("non-constant resultant".into());
            }
        }
        CertKind::Unpointed => {
            if s.bs.len() != 1 {
                return Err("expected one denominator".into());
            }
            if s.a.deg() > c.n as i64 || s.bs[0].deg() > c.n as i64 {
                return Err(format!("degree exceeds {}", c.n));
            }
            let res = resultant_nn(&s.a, &s.bs[0], c.n).map_err(|e| e.to_string())?;
            if !constant_unit(&res) {
                return Err("non-constant resultant".into());
            }
        }
        CertKind::Pd => {
            if s.a.degree() != Some(c.n) {
                return Err(format!("numerator is not of degree {}", c.n));
            }
            PdPath::with_cofactors(s.a.clone(), s.bs.clone(), s.cof.clone()).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

/// `(1 - T) p + T q`.
fn lerp(base: Field, p: &Poly<Fe>, q: &Poly<Fe>) -> Poly<TPoly> {
    let t = TPoly::x(base);
    let s = TPoly::new(base, vec![base.one(), -base.one()]);
    Poly::lift_const(p).scale(&s) + Poly::lift_const(q).scale(&t)
}

fn fold(base: Field, terms: &[Pointed]) -> Pointed {
    terms.iter().fold(Pointed::zero_point(base), |acc, g| acc.oplus(g))
}

/// `prefix ⊕ path ⊕ suffix` with constant outer summands.
fn embed(prefix: &Pointed, path: &PointedPath, suffix: &Pointed) -> PointedPath {
    prefix.lift().oplus(path).oplus(&suffix.lift())
}

fn x_over(u: &Fe) -> Pointed {
    mk_pointed(Poly::x(u.field()), Poly::constant(u.clone())).expect("unit")
}

/// `[u_1, ..., u_n] = X/u_1 ⊕ ... ⊕ X/u_n`.
pub fn bracket(base: Field, us: &[Fe]) -> Pointed {
    fold(base, &us.iter().map(x_over).collect::<Vec<_>>())
}

/// Homotopies from `f` to some `[u_1, ..., u_n]`, returning the units.
///
/// Works summand by summand on the continued fraction: lower terms of a
/// summand are scaled away, then `X^m/b` is split off as `X/1 ⊕ ...` through
/// `X^m/(T X^{m-1} + b)`.
pub fn normal_form_paths(f: &Pointed) -> (Vec<PointedPath>, Vec<Fe>) {
    let base = f.base_field();
    let mut terms: Vec<Pointed> =
        f.cf_expand().into_iter().map(|(p, b)| mk_pointed(p, Poly::constant(b)).expect("valid term")).collect();
    let mut paths = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let p = terms[i].a().clone();
        let b = terms[i].b().coeff(0);
        let m = p.degree().expect("monic");
        let xm = Poly::monomial(base.one(), m);
        let (prefix, suffix) = (fold(base, &terms[..i]), fold(base, &terms[i + 1..]));
        if p != xm {
            let path = mk_pointed(lerp(base, &p, &xm), Poly::lift_const(&Poly::constant(b.clone()))).expect("res b^m");
            paths.push(embed(&prefix, &path, &suffix));
            terms[i] = mk_pointed(xm.clone(), Poly::constant(b.clone())).expect("res b^m");
        }
        if m >= 2 {
            let tail = Poly::monomial(TPoly::x(base), m - 1) + Poly::constant(TPoly::constant(b.clone()));
            let path = mk_pointed(Poly::lift_const(&xm), tail).expect("res b^m");
            paths.push(embed(&prefix, &path, &suffix));
            let end = path.eval_path(&base.one());
            let split: Vec<Pointed> = end
                .cf_expand()
                .into_iter()
                .map(|(p, b)| mk_pointed(p, Poly::constant(b)).expect("valid term"))
                .collect();
            terms.splice(i..=i, split);
        } else {
            i += 1;
        }
    }
    let units = terms.iter().map(|t| t.b().coeff(0)).collect();
    (paths, units)
}

/// Search limits for the diagonal chain over `Q`.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub moves: usize,
    pub height: i64,
    pub checks: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { moves: 64, height: 50, checks: 200_000 }
    }
}

/// `(a, b) -> (c, ab/c)` at positions `(pos, pos + 1)` with `c = a x^2 + b y^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub pos: usize,
    pub x: Fe,
    pub y: Fe,
}

impl Move {
    fn target(&self, a: &Fe, b: &Fe) -> Option<(Fe, Fe)> {
        let c = &(a * &(&self.x * &self.x)) + &(b * &(&self.y * &self.y));
        let ci = c.inv()?;
        let d = &(a * b) * &ci;
        Some((c, d))
    }

    fn apply(&self, cur: &mut [Fe]) -> Option<()> {
        let (c, d) = self.target(&cur[self.pos], &cur[self.pos + 1])?;
        cur[self.pos] = c;
        cur[self.pos + 1] = d;
        Some(())
    }

    /// `R` with `R^T diag(a, b) R = diag(c, d)`.
    fn matrix(&self, a: &Fe, b: &Fe) -> M2<Fe> {
        let (c, _) = self.target(a, b).expect("valid move");
        let ci = c.inv().expect("unit");
        [[self.x.clone(), -&(&(b * &self.y) * &ci)], [self.y.clone(), &(a * &self.x) * &ci]]
    }
}

pub enum ChainError {
    NotEquivalent(String),
    Exhausted(String),
}

/// Moves taking the diagonal `us` to `vs`, which must be isometric.
pub fn diag_chain(us: &[Fe], vs: &[Fe], budget: &Budget) -> std::result::Result<Vec<Move>, ChainError> {
    if us.len() != vs.len() {
        return Err(ChainError::NotEquivalent("different ranks".into()));
    }
    let n = us.len();
    let mut cur = us.to_vec();
    let mut moves = Vec::new();
    let mut checks = 0u64;
    for i in 0..n.saturating_sub(1) {
        if cur[i] == vs[i] {
            continue;
        }
        let found = if cur[i].field() == Field::Rationals {
            q_window(&cur, i, 2, &vs[i], budget, &mut checks).or_else(|| {
                if n - i > 2 {
                    q_window(&cur, i, n - i, &vs[i], budget, &mut checks)
                } else {
                    None
                }
            })
        } else {
            fp_pair(&cur, i, &vs[i])
        };
        let Some(ms) = found else {
            return Err(ChainError::Exhausted(format!("no representation of {} found at position {i}", vs[i])));
        };
        for m in ms {
            m.apply(&mut cur).expect("checked during search");
            moves.push(m);
        }
        if moves.len() > budget.moves {
            return Err(ChainError::Exhausted(format!("more than {} moves", budget.moves)));
        }
    }
    if cur != vs {
        return Err(ChainError::NotEquivalent("diagonals are not isometric".into()));
    }
    Ok(moves)
}

fn fp_pair(cur: &[Fe], i: usize, v: &Fe) -> Option<Vec<Move>> {
    let (a, b) = (&cur[i], &cur[i + 1]);
    let bi = b.inv()?;
    for x in cur[i].field().elements()? {
        let r = &(v - &(a * &(&x * &x))) * &bi;
        if let Some(y) = r.sqrt() {
            return Some(vec![Move { pos: i, x, y }]);
        }
    }
    None
}

/// Sweep moves over `cur[i..i + m]` that put `Σ a_j w_j^2` at position `i`.
fn sweep(cur: &[Fe], i: usize, w: &[Fe]) -> Option<Vec<Move>> {
    let m = w.len();
    let mut work = cur.to_vec();
    let one = cur[i].field().one();
    let mut out = Vec::new();
    for j in (i..i + m - 1).rev() {
        let y = if j == i + m - 2 { w[m - 1].clone() } else { one.clone() };
        let mv = Move { pos: j, x: w[j - i].clone(), y };
        mv.apply(&mut work)?;
        out.push(mv);
    }
    Some(out)
}

/// Small-height rational solutions of `Σ a_j z_j^2 = v t^2` in a window of width `m`.
fn q_window(cur: &[Fe], i: usize, m: usize, v: &Fe, budget: &Budget, checks: &mut u64) -> Option<Vec<Move>> {
    let q = Field::Rationals;
    let a = &cur[i..i + m];
    let last_inv = a[m - 1].inv()?;
    for h in 1..=budget.height {
        let mut z = vec![-h; m - 1];
        for t in 1..=h {
            z.iter_mut().for_each(|x| *x = -h);
            loop {
                if t == h || z.iter().any(|x| x.abs() == h) {
                    *checks += 1;
                    if *checks > budget.checks {
                        return None;
                    }
                    let tt = q.int(t);
                    let mut rest = v * &(&tt * &tt);
                    for (aj, zj) in a.iter().zip(&z) {
                        let zq = q.int(*zj);
                        rest = &rest - &(aj * &(&zq * &zq));
                    }
                    if let Some(s) = (&rest * &last_inv).sqrt() {
                        let ti = tt.inv().expect("t > 0");
                        let w: Vec<Fe> = z.iter().map(|x| &q.int(*x) * &ti).chain(std::iter::once(&s * &ti)).collect();
                        if let Some(ms) = sweep(cur, i, &w) {
                            return Some(ms);
                        }
                    }
                }
                let mut k = 0;
                while k < z.len() && z[k] == h {
                    z[k] = -h;
                    k += 1;
                }
                if k == z.len() {
                    break;
                }
                z[k] += 1;
            }
        }
    }
    None
}

/// The homotopy `[a, b] ~ [c, d]` realising one move, placed among the other units.
fn lift_move(us: &[Fe], mv: &Move) -> Result<PointedPath> {
    let base = us[0].field();
    let (a, b) = (&us[mv.pos], &us[mv.pos + 1]);
    let (c, d) = mv.target(a, b).ok_or(Error::Internal("degenerate move".into()))?;
    let r = mv.matrix(a, b);
    // the Bézout form of [a, b] is diag(b, a), so conjugate by the swap
    let rs = [[r[1][1].clone(), r[1][0].clone()], [r[0][1].clone(), r[0][0].clone()]];
    let t = TPoly::x(base);
    let p = elem_product(base, &sl2_decompose(&rs)?, &t);
    let p = Mat::from_rows(base, vec![p[0].to_vec(), p[1].to_vec()]);
    let s0 = Mat::lift_const(&Mat::diagonal(base, &[b.clone(), a.clone()]));
    let s = s0.congruent(&p);
    let (phi_f, phi_g) = (bracket(base, &[a.clone(), b.clone()]).phi()?, bracket(base, &[c, d]).phi()?);
    let phi = TPoly::new(base, vec![phi_f.clone(), &phi_g - &phi_f]);
    let path = f2_iso_inv(&s, &phi)?;
    Ok(embed(&bracket(base, &us[..mv.pos]), &path, &bracket(base, &us[mv.pos + 2..])))
}

pub enum Connection {
    Certified(Certificate),
    NotEquivalent(String),
    /// The invariants agree but the bounded search gave up.
    Exhausted(String),
}

fn check_field(a: Field, b: Field) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

fn pointed_paths(f: &Pointed, g: &Pointed, budget: &Budget) -> Result<std::result::Result<Vec<PointedPath>, String>> {
    if f == g {
        return Ok(Ok(Vec::new()));
    }
    let (mut paths, us) = normal_form_paths(f);
    let (back, vs) = normal_form_paths(g);
    let moves = match diag_chain(&us, &vs, budget) {
        Ok(m) => m,
        Err(ChainError::Exhausted(s)) => return Ok(Err(s)),
        Err(ChainError::NotEquivalent(s)) => return Err(Error::Internal(format!("equal invariants but {s}"))),
    };
    let mut cur = us;
    for mv in &moves {
        paths.push(lift_move(&cur, mv)?);
        mv.apply(&mut cur).expect("valid move");
    }
    paths.extend(back.iter().rev().map(PointedPath::reversed));
    Ok(Ok(paths))
}

/// A certificate `f ~ g`, or the invariant that separates them.
pub fn connect_pointed(f: &Pointed, g: &Pointed, budget: &Budget) -> Result<Connection> {
    check_field(f.base_field(), g.base_field())?;
    let (i1, i2) = (pointed_invariant(f)?, pointed_invariant(g)?);
    if !i1.equivalent(&i2)? {
        let why = if i1.n != i2.n {
            format!("degrees differ: {} vs {}", i1.n, i2.n)
        } else if i1.res != i2.res {
            format!("resultants differ: {} vs {}", i1.res, i2.res)
        } else {
            format!("Bézout forms differ: {} vs {}", i1.witt, i2.witt)
        };
        return Ok(Connection::NotEquivalent(why));
    }
    let paths = match pointed_paths(f, g, budget)? {
        Ok(p) => p,
        Err(s) => return Ok(Connection::Exhausted(s)),
    };
    Ok(Connection::Certified(Certificate {
        kind: CertKind::Pointed,
        field: f.base_field(),
        n: f.degree(),
        source: Point::pointed(f),
        target: Point::pointed(g),
        steps: paths.iter().map(Step::from_pointed).collect(),
    }))
}

/// `r^{1/k}` when it exists in the field.
fn kth_root(r: &Fe, k: u32) -> Option<Fe> {
    match r.as_rational() {
        Some(q) => {
            if k % 2 == 0 && q < &num::BigRational::from_integer(0.into()) {
                return None;
            }
            let (n, d) = (q.numer().nth_root(k), q.denom().nth_root(k));
            let cand = crate::field::q_frac(n, d);
            (cand.pow_u(k as u64) == *r).then_some(cand)
        }
        None => r.field().units()?.into_iter().find(|x| x.pow_u(k as u64) == *r),
    }
}

fn is_constant(p: &UnpointedPath) -> bool {
    p.a.max_t_degree() <= 0 && p.b.max_t_degree() <= 0
}

/// A certificate `u1 ~ u2` in the unpointed space.
pub fn connect_unpointed(u1: &UnpointedRat, u2: &UnpointedRat, budget: &Budget) -> Result<Connection> {
    check_field(u1.base_field(), u2.base_field())?;
    let base = u1.base_field();
    let (i1, i2) = (unpointed_invariant(u1)?, unpointed_invariant(u2)?);
    if !i1.equivalent(&i2)? {
        let why = if i1.n != i2.n {
            format!("degrees differ: {} vs {}", i1.n, i2.n)
        } else if i1.res_class != i2.res_class {
            format!("resultant classes differ: {} vs {}", i1.res_class, i2.res_class)
        } else {
            format!("Bézout forms differ: {} vs {}", i1.witt, i2.witt)
        };
        return Ok(Connection::NotEquivalent(why));
    }
    let n = u1.degree();
    let (n1, n2) = (normalize_unpointed(u1), normalize_unpointed(u2));
    let (f1, f2) = (&n1.pointed, &n2.pointed);
    let ratio = &f2.resultant() * &f1.resultant().inv().expect("unit");
    let lam = kth_root(&ratio, 2 * n as u32).ok_or(Error::Internal("no scaling between equal invariants".into()))?;
    let li = lam.inv().expect("unit");
    // λ² f2 = A2 / (λ^{-2} B2)
    let h = mk_pointed(f2.a().clone(), f2.b().scale(&(&li * &li)))?;
    let mid = match pointed_paths(f1, &h, budget)? {
        Ok(p) => p,
        Err(s) => return Ok(Connection::Exhausted(s)),
    };
    let scale = sl2_decompose(&[[lam.clone(), base.zero()], [base.zero(), li]])?;
    let m = elem_product(base, &scale, &TPoly::x(base));
    let scaling = UnpointedPath::moved(n, &m, &Poly::lift_const(f2.a()), &Poly::lift_const(f2.b()));
    let mut paths = vec![n1.path.clone()];
    paths.extend(mid.iter().map(|p| UnpointedPath { n, a: p.a().clone(), b: p.b().clone() }));
    paths.push(scaling.reversed());
    paths.push(n2.path.reversed());
    paths.retain(|p| !is_constant(p));
    Ok(Connection::Certified(Certificate {
        kind: CertKind::Unpointed,
        field: base,
        n,
        source: Point::unpointed(u1),
        target: Point::unpointed(u2),
        steps: paths.iter().map(Step::from_unpointed).collect(),
    }))
}

/// `a^{-1}` modulo `m`.
fn inverse_mod(a: &TPoly, m: &TPoly) -> Result<TPoly> {
    let (g, s, _) = Poly::xgcd(&a.rem(m)?, m)?;
    if !g.is_one() {
        return Err(Error::NotCoprime { n: m.degree().unwrap_or(0) });
    }
    s.rem(m)
}

/// The path `(A, (1 - T) B_k + T C_k)` with cofactors `c_k` for `k >= 1`;
/// `c_0` is solved for.
fn pd_step(a: &TPoly, from: &[TPoly], to: &[TPoly], cof: &[TPoly]) -> Result<PdPath> {
    let base = a.base_field();
    let coords: Vec<Poly<TPoly>> = from.iter().zip(to).map(|(b, c)| lerp(base, b, c)).collect();
    let cof: Vec<Poly<TPoly>> = cof.iter().map(Poly::lift_const).collect();
    let big_a = Poly::lift_const(a);
    let sum = coords.iter().zip(&cof).fold(Poly::zero(base), |acc, (b, c)| acc + b.clone() * c.clone());
    let c0 =
        (Poly::one(base) - sum).exact_quotient(&big_a).ok_or(Error::Internal("cofactors do not sum to 1".into()))?;
    PdPath::with_cofactors(big_a, coords, std::iter::once(c0).chain(cof).collect())
}

/// Homotopies from `p` to `(X^n, 1, ..., 1)`, one local factor of `A` at a time
/// glued by the Chinese remainder theorem.
pub fn pd_to_base(p: &PdPoint<Fe>) -> Result<Vec<PdPath>> {
    let base = p.base_field();
    let (n, d) = (p.degree(), p.d());
    if n == 0 {
        return Ok(Vec::new());
    }
    let (a, bs) = (p.a(), p.bs());
    let one = TPoly::one(base);
    let factors = factor_fp(a)?;
    let mut idem = Vec::new();
    let mut unit_at = Vec::new();
    let mut local_inv = Vec::new();
    for (q, r) in &factors {
        let m = q.pow(*r as usize);
        let co = a.exact_quotient(&m).expect("factor");
        idem.push((co.clone() * inverse_mod(&co, &m)?).rem(a)?);
        let j = bs.iter().position(|b| !b.rem(q).expect("monic").is_zero()).ok_or(Error::NotCoprime { n })?;
        local_inv.push(inverse_mod(&bs[j], &m)?);
        unit_at.push(j);
    }
    let crt = |vals: &dyn Fn(usize) -> TPoly| -> Result<TPoly> {
        let sum = idem.iter().enumerate().fold(TPoly::zero(base), |acc, (i, e)| acc + e.clone() * vals(i));
        sum.rem(a)
    };
    let cs: Vec<TPoly> =
        (0..d).map(|k| crt(&|i| if unit_at[i] == k { bs[k].clone() } else { one.clone() })).collect::<Result<_>>()?;
    let mut out = Vec::new();
    if cs != bs {
        let cof: Vec<TPoly> = (0..d)
            .map(|k| crt(&|i| if unit_at[i] == k { local_inv[i].clone() } else { TPoly::zero(base) }))
            .collect::<Result<_>>()?;
        out.push(pd_step(a, bs, &cs, &cof)?);
    }
    let ones = vec![one.clone(); d];
    if cs != ones {
        // locally some other coordinate is already 1
        let other = |i: usize| if unit_at[i] == 0 { 1 } else { 0 };
        let cof: Vec<TPoly> = (0..d)
            .map(|k| crt(&|i| if other(i) == k { one.clone() } else { TPoly::zero(base) }))
            .collect::<Result<_>>()?;
        out.push(pd_step(a, &cs, &ones, &cof)?);
    }
    let xn = TPoly::monomial(base.one(), n);
    if *a != xn {
        let coords = vec![Poly::lift_const(&one); d];
        let mut cof = vec![Poly::zero(base); d + 1];
        cof[1] = Poly::one(base);
        out.push(PdPath::with_cofactors(lerp(base, a, &xn), coords, cof)?);
    }
    Ok(out)
}

/// A certificate between two points of `F_n^d` of the same degree.
pub fn connect_pd(p1: &PdPoint<Fe>, p2: &PdPoint<Fe>) -> Result<Connection> {
    check_field(p1.base_field(), p2.base_field())?;
    let base = p1.base_field();
    if base == Field::Rationals {
        return Err(Error::Unsupported("P^d certificates need a prime field".into()));
    }
    if p1.d() != p2.d() {
        return Err(Error::Invalid(format!("target dimensions differ: {} vs {}", p1.d(), p2.d())));
    }
    if p1.degree() != p2.degree() {
        return Ok(Connection::NotEquivalent(format!("degrees differ: {} vs {}", p1.degree(), p2.degree())));
    }
    let mut paths = pd_to_base(p1)?;
    paths.extend(pd_to_base(p2)?.iter().rev().map(PdPath::reversed));
    Ok(Connection::Certified(Certificate {
        kind: CertKind::Pd,
        field: base,
        n: p1.degree(),
        source: Point::pd(p1),
        target: Point::pd(p2),
        steps: paths.iter().map(Step::from_pd).collect(),
    }))
}
