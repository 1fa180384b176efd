//! Text syntax for fields, polynomials, rational functions and matrices.
//!
//! ```text
//! ratfun := poly "/" poly | "(" poly ")" "/" "(" poly ")"
//! poly   := term (("+" | "-") term)*
//! term   := coeff | coeff "*"? VAR ("^" nat)? | VAR ("^" nat)?
//! coeff  := int | int "/" int
//! ```
//!
//! Without parentheses the first `/` separates numerator and denominator, so
//! fractional coefficients need the parenthesized form.

use p1h_core::classify::PdPoint;
use p1h_core::ratmap::{mk_pointed, Pointed, UnpointedRat};
use p1h_core::{Fe, Field, Mat, Poly, TPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> PResult<T> {
    Err(ParseError(msg.into()))
}

pub fn parse_field(s: &str) -> PResult<Field> {
    let s = s.trim();
    let p = match s {
        "Q" | "q" | "QQ" => return Ok(Field::Rationals),
        _ => s.strip_prefix("Fp=").or_else(|| s.strip_prefix('F')).or_else(|| s.strip_prefix("GF")),
    };
    let p: u64 = p.and_then(|p| p.parse().ok()).ok_or_else(|| ParseError(format!("unknown field `{s}`")))?;
    Field::prime(p).map_err(|e| ParseError(e.to_string()))
}

/// An integer or `a/b`, reduced into the field.
pub fn parse_scalar(s: &str, field: Field) -> PResult<Fe> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ParseError(format!("bad scalar `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s.as_str(), "1"),
    };
    let n: num_like::Int = n.parse().map_err(|_| bad())?;
    let d: num_like::Int = d.parse().map_err(|_| bad())?;
    let (n, d) = (n.to_fe(field), d.to_fe(field));
    let di = d.inv().ok_or_else(|| ParseError(format!("zero denominator in `{s}`")))?;
    Ok(&n * &di)
}

/// Arbitrary-size decimal integers without a bigint dependency: the value is
/// accumulated directly in the field.
mod num_like {
    use p1h_core::{Fe, Field};

    pub struct Int {
        neg: bool,
        digits: Vec<u8>,
    }

    impl std::str::FromStr for Int {
        type Err = ();
        fn from_str(s: &str) -> Result<Self, ()> {
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, s.strip_prefix('+').unwrap_or(s)),
            };
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(());
            }
            Ok(Int { neg, digits: body.bytes().map(|b| b - b'0').collect() })
        }
    }

    impl Int {
        pub fn to_fe(&self, f: Field) -> Fe {
            let ten = f.int(10);
            let v = self.digits.iter().fold(f.zero(), |acc, &d| &(&acc * &ten) + &f.int(d as i64));
            if self.neg {
                -v
            } else {
                v
            }
        }
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    var: u8,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn is_var(&mut self) -> bool {
        self.peek().is_some_and(|c| c.to_ascii_uppercase() == self.var)
    }

    fn fail<T>(&self, what: &str) -> PResult<T> {
        err(format!("syntax error at position {}: expected {what}", self.pos))
    }
}

/// A polynomial in `var` (case-insensitive) over `field`.
pub fn parse_poly_in(s: &str, field: Field, var: char) -> PResult<Poly<Fe>> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0, var: var.to_ascii_uppercase() as u8 };
    let mut coeffs: Vec<Fe> = Vec::new();
    let mut first = true;
    loop {
        let neg = if lx.eat(b'-') {
            true
        } else if lx.eat(b'+') || first {
            false
        } else {
            break;
        };
        if !first && lx.peek().is_none() {
            return lx.fail("a term");
        }
        first = false;
        let mut c = field.one();
        let mut explicit = false;
        if let Some(n) = lx.number() {
            let n = n.to_string();
            explicit = true;
            let mut text = n;
            if lx.eat(b'/') {
                match lx.number() {
                    Some(d) => text = format!("{text}/{d}"),
                    None => return lx.fail("a denominator"),
                }
            }
            c = parse_scalar(&text, field)?;
        }
        let mut deg = 0usize;
        let star = explicit && lx.eat(b'*');
        if lx.is_var() {
            lx.pos += 1;
            deg = 1;
            if lx.eat(b'^') {
                deg = match lx.number().and_then(|n| n.parse().ok()) {
                    Some(d) => d,
                    None => return lx.fail("an exponent"),
                };
            }
        } else if star || !explicit {
            return lx.fail(&format!("`{var}`"));
        }
        if neg {
            c = -c;
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, field.zero());
        }
        coeffs[deg] = &coeffs[deg] + &c;
    }
    if lx.peek().is_some() {
        return lx.fail("`+`, `-` or end of polynomial");
    }
    Ok(Poly::new(field, coeffs))
}

pub fn parse_poly(s: &str, field: Field) -> PResult<Poly<Fe>> {
    parse_poly_in(s, field, 'X')
}

/// Index of the `)` matching the `(` at `open`.
fn matching(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices().skip_while(|(i, _)| *i < open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && matching(t, 0) == Some(t.len() - 1) {
        strip_parens(&t[1..t.len() - 1])
    } else {
        t
    }
}

/// `(A, B)` of a rational function; a bare polynomial gets `B = 1`.
pub fn parse_fraction(s: &str, field: Field) -> PResult<(Poly<Fe>, Poly<Fe>)> {
    let t = s.trim();
    if t.is_empty() {
        return err("empty rational function");
    }
    let (num, den) = if t.starts_with('(') {
        let close = matching(t, 0).ok_or_else(|| ParseError("unbalanced parentheses".into()))?;
        let rest = t[close + 1..].trim();
        if rest.is_empty() {
            return parse_fraction(&t[1..close], field);
        }
        let den = rest.strip_prefix('/').ok_or_else(|| ParseError(format!("expected `/` after `{}`", &t[..=close])))?;
        (&t[1..close], strip_parens(den))
    } else {
        match t.split_once('/') {
            Some((n, d)) => (n, strip_parens(d)),
            None => (t, "1"),
        }
    };
    Ok((parse_poly(num, field)?, parse_poly(den, field)?))
}

/// A parsed function: pointed when the numerator is monic of larger degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatFun {
    Pointed(Pointed),
    Unpointed(UnpointedRat),
}

impl RatFun {
    pub fn unpointed(&self) -> UnpointedRat {
        match self {
            RatFun::Pointed(f) => UnpointedRat::from_pointed(f),
            RatFun::Unpointed(u) => u.clone(),
        }
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RatFun::Pointed(p) => write!(f, "{p}"),
            RatFun::Unpointed(u) => write!(f, "{u}"),
        }
    }
}

fn rejected(e: p1h_core::Error) -> ParseError {
    ParseError(e.to_string())
}

/// Top-level `+` at parenthesis depth 0 joins functions with ⊕ when every
/// piece is itself a fraction, e.g. `X/1+X/1`.
fn oplus_pieces(s: &str) -> Option<Vec<&str>> {
    let mut pieces = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                pieces.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&s[start..]);
    let has_slash = |p: &str| {
        let mut d = 0;
        p.chars().any(|c| {
            match c {
                '(' => d += 1,
                ')' => d -= 1,
                _ => {}
            }
            c == '/' && d == 0
        })
    };
    (pieces.len() > 1 && pieces.iter().all(|p| has_slash(p) && !p.trim().is_empty())).then_some(pieces)
}

pub fn parse_ratfun(s: &str, field: Field) -> PResult<RatFun> {
    if let Some(pieces) = oplus_pieces(s) {
        let mut acc = Pointed::zero_point(field);
        for p in pieces {
            match parse_ratfun(p, field)? {
                RatFun::Pointed(f) => acc = acc.oplus(&f),
                RatFun::Unpointed(_) => return err(format!("`{}` is not pointed, so ⊕ is undefined", p.trim())),
            }
        }
        return Ok(RatFun::Pointed(acc));
    }
    let (a, b) = parse_fraction(s, field)?;
    if a.is_monic() && a.deg() > b.deg() {
        return mk_pointed(a, b).map(RatFun::Pointed).map_err(rejected);
    }
    let n = a.deg().max(b.deg());
    if n < 0 {
        return err("0/0 is not a function");
    }
    UnpointedRat::new(n as usize, a, b).map(RatFun::Unpointed).map_err(rejected)
}

pub fn parse_pointed(s: &str, field: Field) -> PResult<Pointed> {
    match parse_ratfun(s, field)? {
        RatFun::Pointed(f) => Ok(f),
        RatFun::Unpointed(_) => err(format!("`{s}` is not pointed: the numerator must be monic of larger degree")),
    }
}

/// `aN .. a0 ; bN .. b0`, or any rational function expression.
pub fn parse_unpointed(s: &str, field: Field) -> PResult<UnpointedRat> {
    let Some((a, b)) = s.split_once(';') else {
        return Ok(parse_ratfun(s, field)?.unpointed());
    };
    let vec = |t: &str| -> PResult<Vec<Fe>> {
        let mut v: Vec<Fe> = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|x| !x.is_empty())
            .map(|x| parse_scalar(x, field))
            .collect::<PResult<_>>()?;
        v.reverse();
        Ok(v)
    };
    let (a, b) = (vec(a)?, vec(b)?);
    if a.is_empty() || a.len() != b.len() {
        return err("both coefficient vectors need the same positive length n + 1");
    }
    let n = a.len() - 1;
    UnpointedRat::new(n, Poly::new(field, a), Poly::new(field, b)).map_err(rejected)
}

/// `(A, B_1, ..., B_d)`.
pub fn parse_pd(s: &str, field: Field) -> PResult<PdPoint<Fe>> {
    let t = strip_parens(s);
    let parts: Vec<Poly<Fe>> = t.split(',').map(|p| parse_poly(p, field)).collect::<PResult<_>>()?;
    if parts.len() < 3 {
        return err("expected (A, B_1, ..., B_d) with d >= 2");
    }
    PdPoint::new(parts[0].clone(), parts[1..].to_vec()).map_err(rejected)
}

/// Rows separated by `;`, entries by `,`, entries polynomials in `T`.
/// Surrounding brackets are ignored, so `[[T, 1], [1, 0]]` also works.
pub fn parse_tmatrix(s: &str, field: Field) -> PResult<Mat<TPoly>> {
    let t = s.trim();
    let rows: Vec<&str> = if t.contains(';') {
        t.split(';').collect()
    } else {
        let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(t);
        inner.split("],").collect()
    };
    let clean = |x: &str| x.trim().trim_matches(|c| c == '[' || c == ']').trim().to_string();
    let rows: Vec<Vec<TPoly>> = rows
        .iter()
        .map(|r| clean(r).split(',').map(|e| parse_poly_in(&clean(e), field, 'T')).collect::<PResult<Vec<_>>>())
        .collect::<PResult<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return err("expected a square matrix");
    }
    let m = Mat::from_rows(field, rows);
    if !m.is_symmetric() {
        return err("matrix is not symmetric");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field("F5").unwrap(), Field::Prime(5));
        assert_eq!(parse_field("Fp=101").unwrap(), Field::Prime(101));
        assert!(parse_field("F4").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("X^2 - 1", q()).unwrap();
        assert_eq!(p, Poly::from_ints(q(), &[-1, 0, 1]));
        assert_eq!(parse_poly(" 3X^2+2*X -X+ 4 ", q()).unwrap(), Poly::from_ints(q(), &[4, 1, 3]));
        assert_eq!(parse_poly("1/2*X", q()).unwrap().coeff(1), q().ratio(1, 2).unwrap());
        assert_eq!(parse_poly("x^3", q()).unwrap(), Poly::from_ints(q(), &[0, 0, 0, 1]));
        assert_eq!(parse_poly("7X", Field::Prime(5)).unwrap(), Poly::from_ints(Field::Prime(5), &[0, 2]));
        let e = parse_poly("X^2 +", q()).unwrap_err();
        assert!(e.0.contains("position"), "{e}");
        assert!(parse_poly("X^", q()).is_err());
        assert!(parse_poly("2*", q()).is_err());
        assert!(parse_poly("X Y", q()).is_err());
    }

    #[test]
    fn rational_functions() {
        let f = parse_pointed("(X^2-1)/X", q()).unwrap();
        assert_eq!(f.resultant(), q().int(-1));
        let sum = parse_pointed("X/1+X/1", q()).unwrap();
        assert_eq!(sum, f);
        let e = parse_ratfun("(X^2+1)/(X+1)", Field::Prime(2)).unwrap_err();
        assert!(e.0.contains("rejected"), "{e}");
        let g = parse_pointed("X/2", Field::Prime(5)).unwrap();
        assert_eq!(g.resultant(), Field::Prime(5).int(2));
        assert!(matches!(parse_ratfun("1/X", q()).unwrap(), RatFun::Unpointed(_)));
        assert!(matches!(parse_ratfun("2X/1", q()).unwrap(), RatFun::Unpointed(_)));
        assert!(parse_ratfun("(X+1/X", q()).is_err());
        assert!(parse_ratfun("", q()).is_err());
        // rational coefficients in the parenthesized form
        let h = parse_pointed("(X^2 + 1/2*X)/(3/4)", q()).unwrap();
        assert_eq!(h.b().coeff(0), q().ratio(3, 4).unwrap());
    }

    #[test]
    fn printing_round_trips() {
        let corpus = [
            ("(X^2-1)/X", q()),
            ("(X^3 - 2*X + 1/3)/(5*X^2 - 1)", q()),
            ("X/2", Field::Prime(5)),
            ("(X^2 + X + 1)/(2X)", Field::Prime(3)),
            ("1/X", q()),
            ("(2X^2 + 1)/(X^2 - 3)", q()),
            ("(X+1)/1", Field::Prime(2)),
        ];
        for (s, f) in corpus {
            let x = parse_ratfun(s, f).unwrap();
            assert_eq!(parse_ratfun(&x.to_string(), f).unwrap(), x, "{s} -> {x}");
        }
    }

    #[test]
    fn unpointed_vectors() {
        let u = parse_unpointed("1 0 ; 0 4", q()).unwrap();
        assert_eq!(u, parse_ratfun("X/4", q()).unwrap().unpointed());
        let v = parse_unpointed("0, 1; 1, 0", q()).unwrap();
        assert_eq!(v.degree(), 1);
        assert!(parse_unpointed("1 0 ; 1", q()).is_err());
        assert!(parse_unpointed("1 0 ; 2 0", q()).is_err());
    }

    #[test]
    fn pd_and_matrices() {
        let f3 = Field::Prime(3);
        let p = parse_pd("(X^2, X, 1)", f3).unwrap();
        assert_eq!(p.d(), 2);
        assert!(parse_pd("(X^2, X, X)", f3).is_err());
        let m = parse_tmatrix("[[T, 1], [1, 0]]", f3).unwrap();
        assert_eq!(m, parse_tmatrix("T,1;1,0", f3).unwrap());
        assert!(parse_tmatrix("T,1;0,0", f3).is_err());
    }
}
