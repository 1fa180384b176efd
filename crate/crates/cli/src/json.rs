//! JSON encodings. Keys come out sorted, so output is byte-stable.

use p1h_core::certify::{CertKind, Certificate, Point, Step};
use p1h_core::classify::{PointedInvariant, UnpointedInvariant};
use p1h_core::quadform::{WittDetail, WittInvariant};
use p1h_core::{Fe, Field, Mat, Poly, TPoly};
use serde_json::{json, Map, Value};

use crate::parse::{parse_field, parse_scalar, ParseError};

/// Integers as JSON numbers, other rationals as `"a/b"` strings.
pub fn scalar(x: &Fe) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn poly(p: &Poly<Fe>) -> Value {
    Value::Array(p.coeffs().iter().map(scalar).collect())
}

pub fn tpoly(p: &Poly<TPoly>) -> Value {
    Value::Array(p.coeffs().iter().map(poly).collect())
}

pub fn matrix(m: &Mat<Fe>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar).collect())).collect())
}

pub fn tmatrix(m: &Mat<TPoly>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(poly).collect())).collect())
}

fn disc(w: &WittInvariant) -> Value {
    match w.field {
        Field::Rationals => scalar(&w.disc),
        _ if w.disc.is_square() => json!("square"),
        _ => json!("nonresidue"),
    }
}

pub fn witt(w: &WittInvariant) -> Value {
    let mut m = Map::new();
    m.insert("rank".into(), json!(w.rank));
    m.insert("disc".into(), disc(w));
    if let WittDetail::Rational { pos, neg, hasse } = &w.detail {
        m.insert("signature".into(), json!([pos, neg]));
        let bad: Map<String, Value> =
            hasse.iter().filter(|(_, &s)| s == -1).map(|(p, s)| (p.to_string(), json!(s))).collect();
        m.insert("hasse".into(), Value::Object(bad));
    }
    Value::Object(m)
}

pub fn pointed_invariant(i: &PointedInvariant) -> Value {
    json!({
        "kind": "pointed",
        "degree": i.n,
        "resultant": scalar(&i.res),
        "witt": witt(&i.witt),
        "coherent": i.is_coherent(),
    })
}

pub fn unpointed_invariant(i: &UnpointedInvariant) -> Value {
    json!({
        "kind": "unpointed",
        "degree": i.n,
        "resultant_class": scalar(&i.res_class),
        "witt": witt(&i.witt),
    })
}

fn point(kind: CertKind, p: &Point) -> Value {
    let b = match kind {
        CertKind::Pd => Value::Array(p.bs.iter().map(poly).collect()),
        _ => poly(&p.bs[0]),
    };
    json!({ "A": poly(&p.a), "B": b })
}

fn step(kind: CertKind, s: &Step) -> Value {
    match kind {
        CertKind::Pd => json!({
            "A": tpoly(&s.a),
            "B": Value::Array(s.bs.iter().map(tpoly).collect()),
            "C": Value::Array(s.cof.iter().map(tpoly).collect()),
        }),
        _ => json!({ "A": tpoly(&s.a), "B": tpoly(&s.bs[0]) }),
    }
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.name(),
        "field": c.field.to_string(),
        "n": c.n,
        "source": point(c.kind, &c.source),
        "target": point(c.kind, &c.target),
        "steps": Value::Array(c.steps.iter().map(|s| step(c.kind, s)).collect()),
    })
}

type PResult<T> = Result<T, ParseError>;

fn bad<T>(what: &str) -> PResult<T> {
    Err(ParseError(format!("certificate: {what}")))
}

fn read_scalar(v: &Value, f: Field) -> PResult<Fe> {
    match v {
        Value::Number(n) => parse_scalar(&n.to_string(), f),
        Value::String(s) => parse_scalar(s, f),
        _ => bad("scalar expected"),
    }
}

fn array(v: &Value) -> PResult<&Vec<Value>> {
    match v {
        Value::Array(a) => Ok(a),
        _ => bad("array expected"),
    }
}

fn read_poly(v: &Value, f: Field) -> PResult<Poly<Fe>> {
    Ok(Poly::new(f, array(v)?.iter().map(|x| read_scalar(x, f)).collect::<PResult<_>>()?))
}

fn read_tpoly(v: &Value, f: Field) -> PResult<Poly<TPoly>> {
    Ok(Poly::new(f, array(v)?.iter().map(|x| read_poly(x, f)).collect::<PResult<_>>()?))
}

fn field_of<'a>(v: &'a Value, key: &str) -> PResult<&'a Value> {
    v.get(key).map_or_else(|| bad(&format!("missing `{key}`")), Ok)
}

fn read_point(kind: CertKind, v: &Value, f: Field) -> PResult<Point> {
    let a = read_poly(field_of(v, "A")?, f)?;
    let b = field_of(v, "B")?;
    let bs = match kind {
        CertKind::Pd => array(b)?.iter().map(|x| read_poly(x, f)).collect::<PResult<_>>()?,
        _ => vec![read_poly(b, f)?],
    };
    Ok(Point { a, bs })
}

fn read_step(kind: CertKind, v: &Value, f: Field) -> PResult<Step> {
    let a = read_tpoly(field_of(v, "A")?, f)?;
    let b = field_of(v, "B")?;
    let (bs, cof) = match kind {
        CertKind::Pd => (
            array(b)?.iter().map(|x| read_tpoly(x, f)).collect::<PResult<_>>()?,
            array(field_of(v, "C")?)?.iter().map(|x| read_tpoly(x, f)).collect::<PResult<_>>()?,
        ),
        _ => (vec![read_tpoly(b, f)?], vec![]),
    };
    Ok(Step { a, bs, cof })
}

pub fn read_certificate(v: &Value) -> PResult<Certificate> {
    let kind = field_of(v, "kind")?.as_str().and_then(CertKind::from_name);
    let Some(kind) = kind else { return bad("unknown kind") };
    let f = parse_field(field_of(v, "field")?.as_str().unwrap_or(""))?;
    let n = field_of(v, "n")?.as_u64().ok_or_else(|| ParseError("certificate: `n` must be a number".into()))? as usize;
    Ok(Certificate {
        kind,
        field: f,
        n,
        source: read_point(kind, field_of(v, "source")?, f)?,
        target: read_point(kind, field_of(v, "target")?, f)?,
        steps: array(field_of(v, "steps")?)?.iter().map(|s| read_step(kind, s, f)).collect::<PResult<_>>()?,
    })
}
