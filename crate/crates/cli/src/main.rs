mod json;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use p1h_core::bezout::{bezout_form, hankel_of};
use p1h_core::certify::{connect_pd, connect_pointed, connect_unpointed, Budget, Certificate, Connection};
use p1h_core::classify::{pd_equiv, pointed_invariant, unpointed_invariant, PdPoint};
use p1h_core::oracle::{cross_check, EnumSpec, Target};
use p1h_core::quadform::{hermite_reduce, Block};
use p1h_core::ratmap::{Pointed, UnpointedRat};
use p1h_core::{Fe, Field, Mat, TPoly};
use serde_json::{json, Value};

use parse::{parse_field, parse_pd, parse_pointed, parse_ratfun, parse_tmatrix, parse_unpointed, RatFun};

#[derive(Parser)]
#[command(name = "p1h", version, about = "Naive homotopy classes of rational functions P^1 -> P^1")]
struct Cli {
    /// Q, F2, F3, F5 or Fp=<prime>
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Treat inputs as unpointed; also accepts `aN .. a0 ; bN .. b0`
    #[arg(long, global = true)]
    unpointed: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree, resultant and Bézout class
    Classify { f: String },
    /// Decide whether two functions are naively homotopic
    Equiv { f: String, g: String },
    /// Write a chain of homotopies from f to g
    Certify {
        f: String,
        g: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        moves: usize,
        #[arg(long, default_value_t = 50)]
        height: i64,
    },
    /// Check a certificate file
    Verify { file: PathBuf },
    /// Bézout matrix
    Bezout { f: String },
    /// Hankel matrix of the expansion of f
    Hankel { f: String },
    /// f ⊕ g
    Oplus { f: String, g: String },
    /// f ∘ g
    Compose { f: String, g: String },
    /// Continued fraction f = P_0/b_0 ⊕ ... ⊕ P_r/b_r
    Cfrac { f: String },
    /// Reduce a symmetric matrix over k[T] with constant determinant
    ReduceKt {
        /// e.g. "T, 1; 1, 0"
        matrix: String,
    },
    /// Brute-force components over a small prime field
    Oracle {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Maximal T-degree of homotopies
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = OracleTarget::Ratfun)]
        target: OracleTarget,
        /// Dimension of P^d for the pd target
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Decide homotopy of two points (A, B_1, ..., B_d)
    PdEquiv { p: String, q: String },
    /// Certificate from p to q, or to (X^n, 1, ..., 1)
    PdCertify {
        p: String,
        q: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleTarget {
    Ratfun,
    Unpointed,
    Symmat,
    Pd,
}

/// Exit statuses: success, a negative answer, bad input.
enum Outcome {
    Yes,
    No,
}

struct Input(String);

impl<E: std::fmt::Display> From<E> for Input {
    fn from(e: E) -> Self {
        Input(e.to_string())
    }
}

type Run = Result<Outcome, Input>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(Input(msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, v: Value, text: impl FnOnce() -> String) {
    if cli.json {
        println!("{}", serde_json::to_string(&v).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn ratfun(cli: &Cli, s: &str, field: Field) -> Result<RatFun, Input> {
    if cli.unpointed {
        return Ok(RatFun::Unpointed(parse_unpointed(s, field)?));
    }
    Ok(parse_ratfun(s, field)?)
}

fn fmt_mat(m: &Mat<Fe>) -> String {
    let rows = m.to_rows();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join("  "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn fmt_tmat(m: &Mat<TPoly>) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.fmt_var("T")).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Run {
    let field = parse_field(&cli.field)?;
    match &cli.cmd {
        Cmd::Classify { f } => classify(cli, &ratfun(cli, f, field)?),
        Cmd::Equiv { f, g } => equiv(cli, &ratfun(cli, f, field)?, &ratfun(cli, g, field)?),
        Cmd::Certify { f, g, out, moves, height } => {
            let budget = Budget { moves: *moves, height: *height, ..Budget::default() };
            let (f, g) = (ratfun(cli, f, field)?, ratfun(cli, g, field)?);
            let conn = match (&f, &g) {
                (RatFun::Pointed(a), RatFun::Pointed(b)) => connect_pointed(a, b, &budget)?,
                _ => connect_unpointed(&f.unpointed(), &g.unpointed(), &budget)?,
            };
            write_connection(cli, conn, out.as_ref())
        }
        Cmd::Verify { file } => verify(cli, file),
        Cmd::Bezout { f } => {
            let f = parse_pointed(f, field)?;
            let m = bezout_form(&f);
            emit(cli, json!({ "matrix": json::matrix(&m) }), || fmt_mat(&m));
            Ok(Outcome::Yes)
        }
        Cmd::Hankel { f } => {
            let f = parse_pointed(f, field)?;
            let h = hankel_of(&f);
            let m = h.to_matrix();
            let seq: Vec<Value> = h.s.iter().map(json::scalar).collect();
            emit(cli, json!({ "sequence": seq, "matrix": json::matrix(&m) }), || fmt_mat(&m));
            Ok(Outcome::Yes)
        }
        Cmd::Oplus { f, g } => {
            let h = parse_pointed(f, field)?.oplus(&parse_pointed(g, field)?);
            print_pointed(cli, &h);
            Ok(Outcome::Yes)
        }
        Cmd::Compose { f, g } => {
            let h = parse_pointed(f, field)?.compose(&parse_pointed(g, field)?)?;
            print_pointed(cli, &h);
            Ok(Outcome::Yes)
        }
        Cmd::Cfrac { f } => {
            let terms = parse_pointed(f, field)?.cf_expand();
            let v: Vec<Value> =
                terms.iter().map(|(p, b)| json!({ "P": json::poly(p), "b": json::scalar(b) })).collect();
            emit(cli, Value::Array(v), || {
                terms.iter().map(|(p, b)| format!("({p})/({b})")).collect::<Vec<_>>().join(" ⊕ ")
            });
            Ok(Outcome::Yes)
        }
        Cmd::ReduceKt { matrix } => reduce_kt(cli, &parse_tmatrix(matrix, field)?),
        Cmd::Oracle { q, n, d, target, dim, workers } => {
            let target = match target {
                OracleTarget::Ratfun => Target::RatFun,
                OracleTarget::Unpointed => Target::Unpointed,
                OracleTarget::Symmat => Target::SymMat,
                OracleTarget::Pd => Target::Pd(*dim),
            };
            let spec = EnumSpec::new(*q, *n, *d, target)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.unwrap_or(0)).build()?;
            let report = pool.install(|| cross_check(&spec))?;
            let comps: Vec<Value> = report
                .components
                .iter()
                .map(|c| json!({ "size": c.size, "representative": c.representative, "invariant": c.invariant }))
                .collect();
            let v = json!({
                "spec": spec.to_string(),
                "points": report.points,
                "edges": report.edges,
                "components": comps,
                "raw_components": report.raw_components,
                "fibers": report.fibers,
                "bridges": report.bridges.len(),
                "sound": report.sound,
                "agreement": report.agreement,
            });
            emit(cli, v, || report.to_string());
            Ok(if report.agreement { Outcome::Yes } else { Outcome::No })
        }
        Cmd::PdEquiv { p, q } => {
            let (p, q) = (parse_pd(p, field)?, parse_pd(q, field)?);
            let eq = pd_equiv(&p, &q)?;
            emit(cli, json!({ "equivalent": eq, "degrees": [p.degree(), q.degree()] }), || {
                if eq {
                    "equivalent".into()
                } else {
                    format!("not equivalent: degrees {} and {}", p.degree(), q.degree())
                }
            });
            Ok(if eq { Outcome::Yes } else { Outcome::No })
        }
        Cmd::PdCertify { p, q, out } => {
            let p = parse_pd(p, field)?;
            let q = match q {
                Some(q) => parse_pd(q, field)?,
                None => PdPoint::base_point(field, p.degree(), p.d()),
            };
            write_connection(cli, connect_pd(&p, &q)?, out.as_ref())
        }
    }
}

fn print_pointed(cli: &Cli, f: &Pointed) {
    emit(cli, json!({ "A": json::poly(f.a()), "B": json::poly(f.b()), "text": f.to_string() }), || f.to_string());
}

fn classify(cli: &Cli, f: &RatFun) -> Run {
    match f {
        RatFun::Pointed(f) => {
            let i = pointed_invariant(f)?;
            emit(cli, json::pointed_invariant(&i), || {
                format!("pointed, degree {}, resultant {}\nBézout class: {}", i.n, i.res, i.witt)
            });
        }
        RatFun::Unpointed(u) => {
            let i = unpointed_invariant(u)?;
            emit(cli, json::unpointed_invariant(&i), || {
                format!("unpointed, degree {}, resultant class {}\nBézout class: {}", i.n, i.res_class, i.witt)
            });
        }
    }
    Ok(Outcome::Yes)
}

fn equiv(cli: &Cli, f: &RatFun, g: &RatFun) -> Run {
    let (kind, eq, why) = match (f, g) {
        (RatFun::Pointed(a), RatFun::Pointed(b)) => {
            let (i, j) = (pointed_invariant(a)?, pointed_invariant(b)?);
            let eq = i.equivalent(&j)?;
            ("pointed", eq, format!("{i}\n{j}"))
        }
        _ => {
            let (u, v): (UnpointedRat, UnpointedRat) = (f.unpointed(), g.unpointed());
            let (i, j) = (unpointed_invariant(&u)?, unpointed_invariant(&v)?);
            let eq = i.equivalent(&j)?;
            ("unpointed", eq, format!("{i}\n{j}"))
        }
    };
    emit(cli, json!({ "equivalent": eq, "kind": kind }), || {
        if eq {
            "equivalent".into()
        } else {
            format!("not equivalent\n{why}")
        }
    });
    Ok(if eq { Outcome::Yes } else { Outcome::No })
}

fn write_connection(cli: &Cli, conn: Connection, out: Option<&PathBuf>) -> Run {
    let cert: Certificate = match conn {
        Connection::Certified(c) => c,
        Connection::NotEquivalent(why) => {
            emit(cli, json!({ "status": "not-equivalent", "reason": why }), || format!("not equivalent: {why}"));
            return Ok(Outcome::No);
        }
        Connection::Exhausted(why) => {
            emit(cli, json!({ "status": "exhausted", "reason": why }), || format!("search budget exhausted: {why}"));
            return Ok(Outcome::No);
        }
    };
    let text = serde_json::to_string_pretty(&json::certificate(&cert)).expect("serializable");
    match out {
        Some(path) => {
            std::fs::write(path, text + "\n")?;
            emit(
                cli,
                json!({ "status": "certified", "steps": cert.steps.len(), "file": path.display().to_string() }),
                || format!("{} steps written to {}", cert.steps.len(), path.display()),
            );
        }
        None => println!("{text}"),
    }
    Ok(Outcome::Yes)
}

fn verify(cli: &Cli, file: &PathBuf) -> Run {
    let text = std::fs::read_to_string(file)?;
    let v: Value = serde_json::from_str(&text)?;
    let cert = json::read_certificate(&v)?;
    let res = cert.verify();
    let v = match &res {
        Ok(()) => json!({ "valid": true, "steps": cert.steps.len() }),
        Err(why) => json!({ "valid": false, "reason": why }),
    };
    emit(cli, v, || match &res {
        Ok(()) => format!("valid: {} steps from {} to {}", cert.steps.len(), cert.source, cert.target),
        Err(why) => format!("invalid: {why}"),
    });
    Ok(if res.is_ok() { Outcome::Yes } else { Outcome::No })
}

fn reduce_kt(cli: &Cli, s: &Mat<TPoly>) -> Run {
    let r = hermite_reduce(s)?;
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| match b {
            Block::Unit(i) => json!({ "unit": i }),
            Block::Hyperbolic(i) => json!({ "hyperbolic": i }),
        })
        .collect();
    let (s0, s1) = r.endpoints();
    let v = json!({
        "P": json::tmatrix(&r.p),
        "form": json::tmatrix(&r.form),
        "blocks": blocks,
        "at_0": json::matrix(&s0),
        "at_1": json::matrix(&s1),
    });
    emit(cli, v, || format!("P =\n{}\nP^T S P =\n{}", fmt_tmat(&r.p), fmt_tmat(&r.form)));
    Ok(Outcome::Yes)
}
