//! Brute-force ground truth over small prime fields.
//!
//! Every point of the space and every `k[T]`-point with coefficients of
//! `T`-degree at most `D` is enumerated. The endpoint pairs of the latter are
//! the edges of a graph whose connected components are compared with the
//! fibres of the invariants.
//!
//! Candidate homotopies are first evaluated at every `t ∈ F_q` against a table
//! of point values (resultant or determinant), which must be a nonzero
//! constant; only survivors get the exact check over `k[T]`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::certify::{connect_pd, connect_pointed, connect_unpointed, Budget, Certificate, Connection};
use crate::classify::{pointed_invariant, unpointed_invariant, PdPoint};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::poly::{Poly, TPoly};
use crate::quadform::stable_invariant;
use crate::ratmap::{mk_pointed, Pointed, UnpointedRat};
use crate::resultant::resultant_nn;
use crate::ring::Ring;

/// Largest number of candidate homotopies an enumeration may scan.
pub const LIMIT: u128 = 300_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Pointed rational functions `F_n`.
    RatFun,
    /// Unpointed rational functions, up to scaling of `(A, B)`.
    Unpointed,
    /// Invertible symmetric matrices `S_n`.
    SymMat,
    /// `F_n^d`: tuples `(A, B_1, ..., B_d)` with `A` monic.
    Pd(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub target: Target,
}

impl EnumSpec {
    /// `d = None` picks the largest `D <= n` within [`LIMIT`].
    pub fn new(q: u64, n: usize, d: Option<usize>, target: Target) -> Result<Self> {
        if ![2, 3, 5].contains(&q) {
            return Err(Error::Unsupported(format!("oracle fields are F2, F3, F5, not F{q}")));
        }
        if !(1..=3).contains(&n) {
            return Err(Error::Invalid(format!("oracle degree must be in 1..=3, got {n}")));
        }
        if let Target::Pd(dim) = target {
            if dim < 2 {
                return Err(Error::Invalid("P^d targets need d >= 2".into()));
            }
        }
        let d = match d {
            Some(d) if d > 3 => return Err(Error::Invalid(format!("D must be at most 3, got {d}"))),
            Some(d) => d,
            None => (0..=n.min(3)).rev().find(|&d| size(q, slots(n, target), d) <= LIMIT).unwrap_or(0),
        };
        let spec = EnumSpec { q, n, d, target };
        let s = spec.size();
        if s > LIMIT {
            return Err(Error::Oversize { size: s, limit: LIMIT });
        }
        Ok(spec)
    }

    pub fn field(&self) -> Field {
        Field::Prime(self.q)
    }

    pub fn slots(&self) -> usize {
        slots(self.n, self.target)
    }

    /// Number of candidate homotopies.
    pub fn size(&self) -> u128 {
        size(self.q, self.slots(), self.d)
    }
}

fn slots(n: usize, target: Target) -> usize {
    match target {
        Target::RatFun => 2 * n,
        Target::Unpointed => 2 * n + 2,
        Target::SymMat => n * (n + 1) / 2,
        Target::Pd(d) => n * (d + 1),
    }
}

fn size(q: u64, slots: usize, d: usize) -> u128 {
    (q as u128).pow((slots * (d + 1)) as u32)
}

impl fmt::Display for EnumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.target {
            Target::RatFun => "F_n".to_string(),
            Target::Unpointed => "U_n".to_string(),
            Target::SymMat => "S_n".to_string(),
            Target::Pd(d) => format!("F_n^{d}"),
        };
        write!(f, "{t} over F{}, n = {}, D = {}", self.q, self.n, self.d)
    }
}

/// Digits of a point code, least significant first.
fn decode(mut code: usize, q: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = code % q;
            code /= q;
            d
        })
        .collect()
}

/// `(A, B)` from coordinates; `A` is monic unless the target is unpointed.
fn rat_parts<R: Ring>(base: Field, n: usize, unpointed: bool, c: &[R]) -> (Poly<R>, Poly<R>) {
    if unpointed {
        return (Poly::new(base, c[..=n].to_vec()), Poly::new(base, c[n + 1..].to_vec()));
    }
    let mut a = c[..n].to_vec();
    a.push(R::one_in(base));
    (Poly::new(base, a), Poly::new(base, c[n..].to_vec()))
}

fn sym_parts<R: Ring>(base: Field, n: usize, c: &[R]) -> Mat<R> {
    let mut rows = vec![vec![R::zero_in(base); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            rows[i][j] = c[k].clone();
            rows[j][i] = c[k].clone();
            k += 1;
        }
    }
    Mat::from_rows(base, rows)
}

fn pd_parts<R: Ring>(base: Field, n: usize, c: &[R]) -> (Poly<R>, Vec<Poly<R>>) {
    let mut a = c[..n].to_vec();
    a.push(R::one_in(base));
    let bs = c[n..].chunks(n).map(|ch| Poly::new(base, ch.to_vec())).collect();
    (Poly::new(base, a), bs)
}

/// `(A, B_1, ..., B_d)` is unimodular over `k[T][X]` iff the `n x n` minors of
/// multiplication by the `B_i` on `k[T][X]/(A)` generate the unit ideal.
fn pd_path_unimodular(base: Field, a: &Poly<TPoly>, bs: &[Poly<TPoly>]) -> bool {
    let n = a.degree().expect("monic");
    let mut cols = Vec::new();
    for b in bs {
        for j in 0..n {
            let r = (b.clone() * Poly::monomial(TPoly::one(base), j)).rem(a).expect("monic");
            cols.push(r.padded(n));
        }
    }
    let m = cols.len();
    let mut g = TPoly::zero(base);
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let rows: Vec<Vec<TPoly>> = (0..n).map(|i| pick.iter().map(|&c| cols[c][i].clone()).collect()).collect();
        g = Poly::gcd(&g, &Mat::from_rows(base, rows).det());
        if g.deg() == 0 {
            return true;
        }
        // next n-subset in lexicographic order
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - n + i) else { return false };
        pick[i] += 1;
        for k in i + 1..n {
            pick[k] = pick[k - 1] + 1;
        }
    }
}

/// A point of the enumerated space.
#[derive(Clone, Debug)]
pub enum OraclePoint {
    RatFun(Pointed),
    Unpointed(UnpointedRat),
    SymMat(Mat<Fe>),
    Pd(PdPoint<Fe>),
}

impl fmt::Display for OraclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OraclePoint::RatFun(p) => write!(f, "{p}"),
            OraclePoint::Unpointed(u) => write!(f, "{u}"),
            OraclePoint::SymMat(m) => {
                let rows: Vec<String> =
                    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
                write!(f, "[{}]", rows.join("; "))
            }
            OraclePoint::Pd(p) => write!(f, "{p}"),
        }
    }
}

impl EnumSpec {
    /// The point with coordinates `c`, its value that must stay constant along
    /// homotopies, and its invariant label. `None` if `c` is not a point.
    fn point(&self, c: &[Fe]) -> Option<(OraclePoint, Fe, String)> {
        let base = self.field();
        let n = self.n;
        match self.target {
            Target::RatFun => {
                let (a, b) = rat_parts(base, n, false, c);
                let f = mk_pointed(a, b).ok()?;
                let label = pointed_invariant(&f).ok()?.to_string();
                Some((OraclePoint::RatFun(f.clone()), f.resultant(), label))
            }
            Target::Unpointed => {
                let (a, b) = rat_parts(base, n, true, c);
                let res = resultant_nn(&a, &b, n).ok()?;
                let u = UnpointedRat::new(n, a, b).ok()?;
                let label = unpointed_invariant(&u).ok()?.to_string();
                Some((OraclePoint::Unpointed(u), res, label))
            }
            Target::SymMat => {
                let m = sym_parts(base, n, c);
                let det = m.det();
                if det.is_zero() {
                    return None;
                }
                let label = format!("{}, det {det}", stable_invariant(&m).ok()?);
                Some((OraclePoint::SymMat(m), det, label))
            }
            Target::Pd(_) => {
                let (a, bs) = pd_parts(base, n, c);
                let p = PdPoint::new(a, bs).ok()?;
                Some((OraclePoint::Pd(p), base.one(), format!("degree {n}")))
            }
        }
    }

    /// Exact check that coordinates over `k[T]` form a homotopy.
    fn is_path(&self, c: &[TPoly]) -> bool {
        let base = self.field();
        let n = self.n;
        let constant_unit = |r: &TPoly| r.deg() == 0;
        match self.target {
            Target::RatFun | Target::Unpointed => {
                let (a, b) = rat_parts(base, n, self.target == Target::Unpointed, c);
                resultant_nn(&a, &b, n).is_ok_and(|r| constant_unit(&r))
            }
            Target::SymMat => constant_unit(&sym_parts(base, n, c).det()),
            Target::Pd(_) => {
                let (a, bs) = pd_parts(base, n, c);
                pd_path_unimodular(base, &a, &bs)
            }
        }
    }
}

/// Union-find over point indices.
struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b) as usize] = a.min(b);
        }
    }
}

const NONE: u32 = u32::MAX;

/// Enumerated points and the lookup tables used by the scan.
pub struct Points {
    pub spec: EnumSpec,
    pub points: Vec<OraclePoint>,
    pub labels: Vec<String>,
    /// Point index of every coordinate code, or `NONE`.
    index: Vec<u32>,
    /// Residue of the point value of every code, or `-1`.
    value: Vec<i32>,
}

fn residue(x: &Fe) -> usize {
    x.residue().expect("prime field") as usize
}

/// All points of the space described by `spec`.
pub fn enumerate_points(spec: &EnumSpec) -> Result<Points> {
    let base = spec.field();
    let q = spec.q as usize;
    let l = spec.slots();
    let total = q.pow(l as u32);
    let els = base.elements().expect("prime field");
    let mut index = vec![NONE; total];
    let mut value = vec![-1; total];
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut by_key: HashMap<usize, u32> = HashMap::new();
    for code in 0..total {
        let c: Vec<Fe> = decode(code, q, l).into_iter().map(|d| els[d].clone()).collect();
        let Some((p, v, label)) = spec.point(&c) else { continue };
        // unpointed points are classes up to scaling
        let key = match &p {
            OraclePoint::Unpointed(u) => {
                let n = spec.n;
                let digits: Vec<usize> = u.a().padded(n + 1).iter().chain(&u.b().padded(n + 1)).map(residue).collect();
                digits.iter().rev().fold(0, |acc, d| acc * q + d)
            }
            _ => code,
        };
        let idx = *by_key.entry(key).or_insert_with(|| {
            points.push(p);
            labels.push(label);
            (points.len() - 1) as u32
        });
        index[code] = idx;
        value[code] = residue(&v) as i32;
    }
    Ok(Points { spec: *spec, points, labels, index, value })
}

/// Depth-first scan over candidate homotopies, one coordinate at a time.
struct Scan<'a> {
    spec: EnumSpec,
    pts: &'a Points,
    q: usize,
    l: usize,
    per: usize,
    /// `ev[s * q + t]`: value at `t` of the coefficient polynomial with digits `s`.
    ev: &'a [u32],
    weight: &'a [u32],
    polys: &'a [TPoly],
    /// For unpointed targets only paths whose first nonzero digit is 1 are kept.
    lead_one: Option<&'a [bool]>,
    chosen: Vec<usize>,
    edges: Vec<(u32, u32)>,
    exact_checks: u64,
}

impl Scan<'_> {
    fn descend(&mut self, slot: usize, partial: &[u32], all_zero: bool) {
        for s in 0..self.per {
            self.visit(slot, partial, all_zero, s);
        }
    }

    fn visit(&mut self, slot: usize, partial: &[u32], all_zero: bool, s: usize) {
        let q = self.q;
        let w = self.weight[slot];
        if let Some(lead) = &self.lead_one {
            if all_zero && s != 0 && !lead[s] {
                return;
            }
        }
        let ev = &self.ev[s * q..(s + 1) * q];
        if slot + 1 < self.l {
            let next: Vec<u32> = partial.iter().zip(ev).map(|(p, e)| p + e * w).collect();
            self.chosen.push(s);
            self.descend(slot + 1, &next, all_zero && s == 0);
            self.chosen.pop();
            return;
        }
        let c0 = (partial[0] + ev[0] * w) as usize;
        let v0 = self.pts.value[c0];
        if v0 < 0 {
            return;
        }
        let c1 = (partial[1] + ev[1] * w) as usize;
        let (i0, i1) = (self.pts.index[c0], self.pts.index[c1]);
        if i1 == NONE || i0 == i1 || self.pts.value[c1] != v0 {
            return;
        }
        if (2..q).any(|t| self.pts.value[(partial[t] + ev[t] * w) as usize] != v0) {
            return;
        }
        self.chosen.push(s);
        let coords: Vec<TPoly> = self.chosen.iter().map(|&k| self.polys[k].clone()).collect();
        self.chosen.pop();
        self.exact_checks += 1;
        if self.spec.is_path(&coords) {
            self.edges.push((i0, i1));
        }
    }
}

/// Endpoint pairs of all homotopies of `T`-degree at most `D`, with the
/// number of exact checks performed.
pub fn edges(pts: &Points) -> (Vec<(u32, u32)>, u64) {
    let spec = pts.spec;
    let base = spec.field();
    let q = spec.q as usize;
    let per = q.pow(spec.d as u32 + 1);
    let els = base.elements().expect("prime field");
    let polys: Vec<TPoly> = (0..per)
        .map(|s| TPoly::new(base, decode(s, q, spec.d + 1).into_iter().map(|d| els[d].clone()).collect()))
        .collect();
    let ev: Vec<u32> = polys.iter().flat_map(|p| els.iter().map(move |t| residue(&p.eval(t)) as u32)).collect();
    let lead_one: Option<Vec<bool>> = (spec.target == Target::Unpointed)
        .then(|| (0..per).map(|s| decode(s, q, spec.d + 1).into_iter().find(|&d| d != 0) == Some(1)).collect());
    let l = spec.slots();
    let weight: Vec<u32> = (0..l).map(|i| q.pow(i as u32) as u32).collect();
    // one task per value of the first coordinate
    let parts: Vec<(Vec<(u32, u32)>, u64)> = (0..per)
        .into_par_iter()
        .map(|s| {
            let mut scan = Scan {
                spec,
                pts,
                q,
                l,
                per,
                ev: &ev,
                weight: &weight,
                polys: &polys,
                lead_one: lead_one.as_deref(),
                chosen: Vec::with_capacity(l),
                edges: Vec::new(),
                exact_checks: 0,
            };
            scan.visit(0, &vec![0; q], true, s);
            (scan.edges, scan.exact_checks)
        })
        .collect();
    let checks = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().flat_map(|p| p.0).collect(), checks)
}

#[derive(Clone, Debug)]
pub struct Component {
    pub size: usize,
    pub representative: String,
    pub invariant: String,
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub spec: EnumSpec,
    pub points: usize,
    pub edges: usize,
    pub exact_checks: u64,
    /// Components after bridging, largest first.
    pub components: Vec<Component>,
    /// Components of the homotopy graph before bridging.
    pub raw_components: usize,
    pub fibers: usize,
    /// Every edge joins points with equal invariants.
    pub sound: bool,
    /// Witnesses joining components that the graph left apart.
    pub bridges: Vec<Bridge>,
    /// Fibres that could not be bridged, as pairs of representatives.
    pub unbridged: Vec<(String, String)>,
    pub agreement: bool,
}

/// Connected components of the homotopy graph, without bridging.
pub fn components(spec: &EnumSpec) -> Result<ComponentReport> {
    run(spec, false)
}

/// Components compared with invariant fibres; fibres split by the graph are
/// joined with verified certificates when possible.
pub fn cross_check(spec: &EnumSpec) -> Result<ComponentReport> {
    run(spec, true)
}

/// A homotopy found outside the enumeration.
#[derive(Clone, Debug)]
pub enum Bridge {
    Certificate(Certificate),
    /// `S(T)` with constant determinant.
    SymPath {
        from: Mat<Fe>,
        to: Mat<Fe>,
        path: Mat<TPoly>,
    },
}

impl Bridge {
    pub fn verify(&self) -> bool {
        match self {
            Bridge::Certificate(c) => c.verify().is_ok(),
            Bridge::SymPath { from, to, path } => {
                let base = from.base_field();
                path.is_symmetric()
                    && path.det().deg() == 0
                    && path.eval_t(&base.zero()) == *from
                    && path.eval_t(&base.one()) == *to
            }
        }
    }
}

/// `P` of determinant 1 with `P^T s1 P = s2`, by exhaustive search.
fn sl_congruence(s1: &Mat<Fe>, s2: &Mat<Fe>) -> Option<Mat<Fe>> {
    let base = s1.base_field();
    let n = s1.rows();
    let els = base.elements()?;
    let q = els.len();
    let total = q.checked_pow((n * n) as u32).filter(|&t| t <= 2_000_000)?;
    (0..total).find_map(|code| {
        let d = decode(code, q, n * n);
        let rows = (0..n).map(|i| (0..n).map(|j| els[d[i * n + j]].clone()).collect()).collect();
        let p = Mat::from_rows(base, rows);
        (p.det().is_one() && s1.congruent(&p) == *s2).then_some(p)
    })
}

/// `I + c E_ij`.
fn transvection<R: Ring>(base: Field, n: usize, i: usize, j: usize, c: R) -> Mat<R> {
    let mut m = Mat::identity(base, n).to_rows();
    m[i][j] = c;
    Mat::from_rows(base, m)
}

/// Factors `(i, j, c)` with `p = Π (I + c E_ij)` for `p` of determinant 1.
fn sl_elementary(p: &Mat<Fe>) -> Vec<(usize, usize, Fe)> {
    let base = p.base_field();
    let n = p.rows();
    let mut m = p.to_rows();
    // row operations r_i += c r_j, recorded as left factors
    let mut ops: Vec<(usize, usize, Fe)> = Vec::new();
    let mut add_row = |m: &mut Vec<Vec<Fe>>, i: usize, j: usize, c: Fe| {
        for k in 0..n {
            let v = &m[i][k] + &(&c * &m[j][k]);
            m[i][k] = v;
        }
        ops.push((i, j, c));
    };
    for j in 0..n {
        if m[j][j].is_zero() {
            let r = (j + 1..n).find(|&r| !m[r][j].is_zero()).expect("invertible");
            add_row(&mut m, j, r, base.one());
        }
        let piv = m[j][j].inv().expect("nonzero pivot");
        for i in 0..n {
            if i != j && !m[i][j].is_zero() {
                let c = -&(&m[i][j] * &piv);
                add_row(&mut m, i, j, c);
            }
        }
    }
    // diag(d_0, ..., d_{n-1}) with product 1: push each d_j into the next slot
    for j in 0..n.saturating_sub(1) {
        let d = m[j][j].clone();
        if d.is_one() {
            continue;
        }
        let di = d.inv().expect("unit");
        let block = [[di.clone(), base.zero()], [base.zero(), d.clone()]];
        for e in crate::ratmap::sl2_decompose(&block).expect("det 1") {
            match e {
                crate::ratmap::Elem::Up(c) => add_row(&mut m, j, j + 1, c),
                crate::ratmap::Elem::Lo(c) => add_row(&mut m, j + 1, j, c),
            }
        }
    }
    // m = E_k ... E_1 p is now the identity, so p = E_1^{-1} ... E_k^{-1}
    debug_assert!(m
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| x.is_one() == (i == j) && (i == j || x.is_zero()))));
    ops.into_iter().map(|(i, j, c)| (i, j, -c)).collect()
}

fn sym_bridge(s1: &Mat<Fe>, s2: &Mat<Fe>) -> Option<Bridge> {
    let base = s1.base_field();
    let n = s1.rows();
    let p = sl_congruence(s1, s2)?;
    let t = TPoly::x(base);
    let pt = sl_elementary(&p)
        .into_iter()
        .fold(Mat::identity(base, n), |acc, (i, j, c)| acc.mul(&transvection(base, n, i, j, t.scale(&c))));
    let path = Mat::lift_const(s1).congruent(&pt);
    Some(Bridge::SymPath { from: s1.clone(), to: s2.clone(), path })
}

fn bridge(a: &OraclePoint, b: &OraclePoint) -> Option<Bridge> {
    let budget = Budget::default();
    let conn = match (a, b) {
        (OraclePoint::RatFun(f), OraclePoint::RatFun(g)) => connect_pointed(f, g, &budget),
        (OraclePoint::Unpointed(f), OraclePoint::Unpointed(g)) => connect_unpointed(f, g, &budget),
        (OraclePoint::Pd(f), OraclePoint::Pd(g)) => connect_pd(f, g),
        (OraclePoint::SymMat(s1), OraclePoint::SymMat(s2)) => return sym_bridge(s1, s2).filter(Bridge::verify),
        _ => return None,
    };
    match conn {
        Ok(Connection::Certified(c)) if c.verify().is_ok() => Some(Bridge::Certificate(c)),
        _ => None,
    }
}

fn run(spec: &EnumSpec, bridging: bool) -> Result<ComponentReport> {
    let pts = enumerate_points(spec)?;
    let (edges, exact_checks) = edges(&pts);
    let np = pts.points.len();
    let sound = edges.iter().all(|&(a, b)| pts.labels[a as usize] == pts.labels[b as usize]);
    let mut dsu = Dsu((0..np as u32).collect());
    for &(a, b) in &edges {
        dsu.union(a, b);
    }
    let roots = |dsu: &mut Dsu| -> Vec<u32> {
        let mut r: Vec<u32> = (0..np as u32).filter(|&i| dsu.find(i) == i).collect();
        r.sort();
        r
    };
    let raw = roots(&mut dsu);
    let mut fiber_of: HashMap<&str, u32> = HashMap::new();
    for (i, l) in pts.labels.iter().enumerate() {
        fiber_of.entry(l.as_str()).or_insert(i as u32);
    }
    let mut bridges = Vec::new();
    let mut unbridged = Vec::new();
    if bridging {
        // join each raw component to the first component of its fibre
        for &r in &raw {
            let first = fiber_of[pts.labels[r as usize].as_str()];
            if dsu.find(first) == dsu.find(r) {
                continue;
            }
            let (a, b) = (&pts.points[first as usize], &pts.points[r as usize]);
            match bridge(a, b) {
                Some(c) => {
                    bridges.push(c);
                    dsu.union(first, r);
                }
                None => unbridged.push((a.to_string(), b.to_string())),
            }
        }
    }
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for i in 0..np as u32 {
        *sizes.entry(dsu.find(i)).or_default() += 1;
    }
    let mut components: Vec<Component> = roots(&mut dsu)
        .into_iter()
        .map(|r| Component {
            size: sizes[&r],
            representative: pts.points[r as usize].to_string(),
            invariant: pts.labels[r as usize].clone(),
        })
        .collect();
    components.sort_by(|a, b| b.size.cmp(&a.size).then(a.invariant.cmp(&b.invariant)));
    let fibers = fiber_of.len();
    let agreement = sound && components.len() == fibers;
    Ok(ComponentReport {
        spec: *spec,
        points: np,
        edges: edges.len(),
        exact_checks,
        components,
        raw_components: raw.len(),
        fibers,
        sound,
        bridges,
        unbridged,
        agreement,
    })
}

impl fmt::Display for ComponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.spec)?;
        writeln!(f, "points: {}, homotopy edges: {}", self.points, self.edges)?;
        writeln!(
            f,
            "components: {} ({} before bridging), invariant fibres: {}",
            self.components.len(),
            self.raw_components,
            self.fibers
        )?;
        for c in &self.components {
            writeln!(f, "  {:>6}  {}  [{}]", c.size, c.representative, c.invariant)?;
        }
        if !self.sound {
            writeln!(f, "an edge joins points with different invariants")?;
        }
        for (a, b) in &self.unbridged {
            writeln!(f, "unbridged: {a} and {b}")?;
        }
        write!(f, "agreement: {}", self.agreement)
    }
}
