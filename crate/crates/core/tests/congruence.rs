//! Stable invariants over F2 and F3 against exhaustive GL-congruence classes.

use p1h_core::quadform::{stable_equal, stable_invariant};
use p1h_core::{Field, Mat};
use rayon::prelude::*;

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

fn decode(mut code: u32, m: usize, q: u32) -> Vec<Vec<u32>> {
    let mut s = vec![vec![0; m]; m];
    for i in 0..m {
        for j in i..m {
            s[i][j] = code % q;
            s[j][i] = code % q;
            code /= q;
        }
    }
    s
}

fn encode(s: &[Vec<u32>], q: u32) -> u32 {
    let m = s.len();
    let mut code = 0;
    for i in (0..m).rev() {
        for j in (i..m).rev() {
            code = code * q + s[i][j];
        }
    }
    code
}

/// `col_t += c col_s` with the matching row operation.
fn transvect(s: &mut [Vec<u32>], t: usize, src: usize, c: u32, q: u32) {
    let m = s.len();
    for row in s.iter_mut() {
        row[t] = (row[t] + c * row[src]) % q;
    }
    for col in 0..m {
        s[t][col] = (s[t][col] + c * s[src][col]) % q;
    }
}

fn scale(s: &mut [Vec<u32>], i: usize, c: u32, q: u32) {
    let m = s.len();
    for row in s.iter_mut() {
        row[i] = row[i] * c % q;
    }
    for col in 0..m {
        s[i][col] = s[i][col] * c % q;
    }
}

/// Component labels of all symmetric `m x m` matrices under congruence by GL_m(F_q).
fn components(m: usize, q: u32) -> Vec<u32> {
    let total = q.pow((m * (m + 1) / 2) as u32);
    let gen = if q == 2 { 1 } else { 2 };
    let edges: Vec<(u32, u32)> = (0..total)
        .into_par_iter()
        .flat_map_iter(|code| {
            let s = decode(code, m, q);
            let mut out = Vec::new();
            for t in 0..m {
                for src in 0..m {
                    if t != src {
                        let mut s2 = s.clone();
                        transvect(&mut s2, t, src, 1, q);
                        out.push((code, encode(&s2, q)));
                    }
                }
            }
            let mut s2 = s;
            scale(&mut s2, 0, gen, q);
            out.push((code, encode(&s2, q)));
            out
        })
        .collect();
    let mut dsu = Dsu((0..total).collect());
    for (a, b) in edges {
        dsu.union(a, b);
    }
    (0..total).map(|c| dsu.find(c)).collect()
}

fn padded(s: &[Vec<u32>], m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; m]; m];
    for (i, row) in s.iter().enumerate() {
        out[i][..row.len()].copy_from_slice(row);
    }
    for (i, row) in out.iter_mut().enumerate().skip(s.len()) {
        row[i] = 1;
    }
    out
}

fn check_field(q: u32, padded_size: usize) {
    let f = Field::Prime(q as u64);
    let comp = components(padded_size, q);
    for n in 1..=3 {
        let count = q.pow((n * (n + 1) / 2) as u32);
        let mut forms = Vec::new();
        for code in 0..count {
            let s = decode(code, n, q);
            let rows: Vec<Vec<i64>> = s.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let mat = Mat::from_ints(f, &refs);
            if let Ok(inv) = stable_invariant(&mat) {
                forms.push((inv, comp[encode(&padded(&s, padded_size), q) as usize]));
            }
        }
        assert!(!forms.is_empty());
        for (i1, c1) in &forms {
            for (i2, c2) in &forms {
                assert_eq!(stable_equal(i1, i2).unwrap(), c1 == c2, "q = {q}, n = {n}");
            }
        }
    }
}

#[test]
fn f2_stable_classes_match_congruence() {
    check_field(2, 5);
}

#[test]
fn f3_stable_classes_match_congruence() {
    check_field(3, 4);
}
