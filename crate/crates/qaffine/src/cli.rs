use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use qaffine_core::convolution::{pushforward, star_diag, star_elem, star_grassmann, GradedClass, Side};
use qaffine_core::drinfeld::{dual_partition, drinfeld_polys, fundamental_factors, JordanData, SemisimpleParam};
use qaffine_core::flagcomb::{compose, generator_decomposition, Composition, IntMatrix};
use qaffine_core::polyrep::{Relation, Report};
use qaffine_core::qcoeff::{eval_q, qint, QPoly};
use qaffine_core::{LaurentPoly, QRat};
use serde_json::{json, Value};

use crate::report::{decomposition_value, drinfeld_value, matrix_value, rational_value, reports_value, to_text};
use crate::run::{thread_count, verify_parallel};

#[derive(Parser, Debug)]
#[command(name = "qaffine", version, about = "Exact checks for the polynomial representation of the quantum affine algebra of gl(n)")]
pub struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check relations (a)-(j) mode by mode on sample vectors.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_value = "a,b,c,d,e,f,g,h,i,j")]
        relations: Vec<String>,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// The composition A o B of two matrices.
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Write C as a composition of generators.
    Decompose {
        #[arg(long)]
        c: String,
    },
    /// Convolution products with an explicit formula.
    Star {
        #[command(subcommand)]
        kind: StarKind,
    },
    /// Push a class on A forward along one projection.
    Pushforward {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        f: String,
        /// 1 for the row flag, 2 for the column flag.
        #[arg(long, default_value_t = 1)]
        side: u8,
    },
    /// Drinfeld polynomials of the pair (s_{lambda,alpha}, x_lambda).
    Drinfeld {
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<String>,
        #[arg(long)]
        t: String,
    },
    /// The dual partition of a Jordan type.
    Dual {
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u32>,
        #[arg(long)]
        n: usize,
    },
    /// Quantum integers and the identity [m+1] + [m-1] = [2][m].
    Qid {
        #[arg(long, default_value_t = 10)]
        max: i64,
        /// Evaluate at q = this rational.
        #[arg(long)]
        specialize: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum StarKind {
    /// f * g with f in R^(v) on diag(v), g on B.
    Diag {
        #[arg(long, value_delimiter = ',')]
        v: Vec<u32>,
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "1")]
        g: String,
    },
    /// f * g with A of type E_{i,i+-1}(v, a).
    Elem {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "1")]
        g: String,
    },
    /// The product E_{i,i+1}(v + b e_i, a) * E_{i,i+1}(v + a e_{i+1}, b).
    Grassmann {
        /// 1-based.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u32>,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long, default_value = "1")]
        g: String,
    },
}

/// Exit status and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Done {
    ok: bool,
    json: Value,
    text: String,
}

fn usage<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn matrix(s: &str) -> Result<IntMatrix, String> {
    IntMatrix::parse(s).map_err(|e| format!("bad matrix {s:?}: {e}"))
}

fn poly(s: &str, d: usize) -> Result<LaurentPoly, String> {
    LaurentPoly::parse(s, d).map_err(|e| format!("bad polynomial {s:?}: {e}"))
}

fn rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn class_value(c: &GradedClass) -> Value {
    json!({ "matrix": matrix_value(c.matrix()), "value": c.value().to_canonical() })
}

fn class_text(c: &GradedClass) -> String {
    format!("matrix: {}\nvalue: {}\n", c.matrix(), c.value().pretty())
}

fn zpoly_text(p: &QPoly) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{e}"),
        };
        let mag = c.abs();
        let coef = if mag.is_one() && e > 0 { String::new() } else { mag.to_string() };
        let sep = if coef.is_empty() || mono.is_empty() { "" } else { "*" };
        let term = format!("{coef}{sep}{mono}");
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{term}") } else { term });
        } else {
            parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn report_text(r: &Report) -> String {
    let mut s = format!(
        "relation {}: n={} d={} window={} samples={} seed={} checks={} failures={} {}\n",
        r.relation,
        r.n,
        r.d,
        r.window,
        r.samples,
        r.seed,
        r.checks,
        r.failures.len(),
        if r.passed() { "PASS" } else { "FAIL" }
    );
    for f in r.failures.iter().take(5) {
        s.push_str(&format!(
            "  v={:?} indices={:?} modes={:?} sample={}: {} != {}\n",
            f.v, f.indices, f.modes, f.sample, f.lhs, f.rhs
        ));
    }
    s
}

fn cmd_verify(n: usize, d: usize, relations: &[String], window: i64, samples: usize, seed: u64) -> Result<Done, String> {
    if n == 0 {
        return Err("--n must be at least 1".into());
    }
    let rels: Vec<Relation> = relations.iter().map(|r| r.parse::<Relation>()).collect::<Result<_, _>>().map_err(usage)?;
    let threads = thread_count();
    let reports: Vec<Report> =
        rels.iter().map(|&r| verify_parallel(r, n, d, window, samples, seed, threads)).collect::<Result<_, _>>().map_err(usage)?;
    Ok(Done { ok: reports.iter().all(Report::passed), json: reports_value(&reports), text: reports.iter().map(report_text).collect() })
}

fn cmd_compose(a: &str, b: &str) -> Result<Done, String> {
    let (am, bm) = (matrix(a)?, matrix(b)?);
    let c = compose(&am, &bm).map_err(usage)?;
    Ok(Done { ok: true, json: json!({ "a": matrix_value(&am), "b": matrix_value(&bm), "result": matrix_value(&c) }), text: format!("{c}\n") })
}

fn cmd_decompose(c: &str) -> Result<Done, String> {
    let cm = matrix(c)?;
    let dec = generator_decomposition(&cm);
    let back = dec.recompose().map_err(usage)?;
    let mut text = String::new();
    for g in &dec.factors {
        text.push_str(&format!("{g}\n"));
    }
    let mut json = decomposition_value(&cm, &dec);
    json["recomposes"] = Value::Bool(back == cm);
    Ok(Done { ok: back == cm, json, text })
}

fn cmd_star(kind: &StarKind) -> Result<Done, String> {
    let out = match kind {
        StarKind::Diag { v, f, b, g } => {
            let bm = matrix(b)?;
            let d = bm.total();
            let gc = GradedClass::new(bm, poly(g, d)?).map_err(usage)?;
            star_diag(&Composition::new(v.clone()), &poly(f, d)?, &gc).map_err(usage)?
        }
        StarKind::Elem { a, f, b, g } => {
            let (am, bm) = (matrix(a)?, matrix(b)?);
            let d = am.total();
            let fc = GradedClass::new(am, poly(f, d)?).map_err(usage)?;
            let gc = GradedClass::new(bm, poly(g, d)?).map_err(usage)?;
            star_elem(&fc, &gc).map_err(usage)?
        }
        StarKind::Grassmann { i, v, a, b, f, g } => {
            if *i == 0 {
                return Err("--i is 1-based".into());
            }
            let v = Composition::new(v.clone());
            let d = v.d() + (a + b) as usize;
            star_grassmann(i - 1, &v, *a, *b, &poly(f, d)?, &poly(g, d)?).map_err(usage)?
        }
    };
    Ok(Done { ok: true, json: class_value(&out), text: class_text(&out) })
}

fn cmd_pushforward(a: &str, f: &str, side: u8) -> Result<Done, String> {
    let am = matrix(a)?;
    let side = match side {
        1 => Side::Rows,
        2 => Side::Cols,
        _ => return Err("--side must be 1 or 2".into()),
    };
    let fc = GradedClass::new(am.clone(), poly(f, am.total())?).map_err(usage)?;
    let p = pushforward(&fc, side).map_err(usage)?;
    Ok(Done { ok: true, json: json!({ "matrix": matrix_value(&am), "value": p.to_canonical() }), text: format!("{}\n", p.pretty()) })
}

fn cmd_drinfeld(lambda: &[u32], n: usize, alpha: &[String], t: &str) -> Result<Done, String> {
    let jd = JordanData::new(lambda.to_vec(), n).map_err(usage)?;
    let alphas: Vec<BigRational> = alpha.iter().map(|s| rational(s)).collect::<Result<_, _>>()?;
    let s = SemisimpleParam::new(alphas, rational(t)?).map_err(usage)?;
    let p = drinfeld_polys(&jd, &s).map_err(usage)?;
    let fund = fundamental_factors(&jd, &s).ok();
    let mut text = String::new();
    for (i, poly) in p.polys.iter().enumerate() {
        text.push_str(&format!("P_{}(z) = {}\n", i + 1, zpoly_text(poly)));
    }
    match &fund {
        Some(fs) => {
            let items: Vec<String> = fs.iter().map(|(w, a)| format!("V(omega_{w})_{a}")).collect();
            text.push_str(&format!("fundamental factors: {}\n", items.join(" x ")));
        }
        None => text.push_str("fundamental factors: not defined (some part equals n)\n"),
    }
    let json = json!({
        "lambda": lambda,
        "n": n,
        "alpha": s.alphas.iter().map(rational_value).collect::<Vec<_>>(),
        "t": rational_value(&s.t),
        "dual": dual_partition(&jd),
        "polys": drinfeld_value(&p),
        "fundamental": fund.map(|fs| fs.iter().map(|(w, a)| json!({ "weight": w, "parameter": rational_value(a) })).collect::<Vec<_>>()),
    });
    Ok(Done { ok: true, json, text })
}

fn cmd_dual(lambda: &[u32], n: usize) -> Result<Done, String> {
    let jd = JordanData::new(lambda.to_vec(), n).map_err(usage)?;
    let dual = dual_partition(&jd);
    let text = dual.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    Ok(Done { ok: true, json: json!({ "lambda": lambda, "n": n, "dual": dual }), text: format!("{text}\n") })
}

fn cmd_qid(max: i64, specialize: Option<&str>) -> Result<Done, String> {
    if max < 1 {
        return Err("--max must be at least 1".into());
    }
    let t = specialize.map(rational).transpose()?;
    let show = |r: &QRat| -> Result<String, String> {
        match &t {
            Some(t) => eval_q(r, t).map(|x| x.to_string()).map_err(usage),
            None => Ok(r.pretty()),
        }
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    for m in 1..=max {
        let lhs = &qint(m + 1) + &qint(m - 1);
        let rhs = &qint(2) * &qint(m);
        let holds = lhs == rhs;
        ok &= holds;
        let value = show(&qint(m))?;
        text.push_str(&format!("[{m}] = {value}   [{}]+[{}] = [2][{m}]: {}\n", m + 1, m - 1, if holds { "ok" } else { "FAIL" }));
        rows.push(json!({ "m": m, "value": value, "identity": holds }));
    }
    let json = json!({ "max": max, "specialize": t.as_ref().map(rational_value), "rows": rows, "passed": ok });
    Ok(Done { ok, json, text })
}

fn dispatch(cli: &Cli) -> Result<Done, String> {
    match &cli.command {
        Command::Verify { n, d, relations, window, samples, seed } => cmd_verify(*n, *d, relations, *window, *samples, *seed),
        Command::Compose { a, b } => cmd_compose(a, b),
        Command::Decompose { c } => cmd_decompose(c),
        Command::Star { kind } => cmd_star(kind),
        Command::Pushforward { a, f, side } => cmd_pushforward(a, f, *side),
        Command::Drinfeld { lambda, n, alpha, t } => cmd_drinfeld(lambda, *n, alpha, t),
        Command::Dual { lambda, n } => cmd_dual(lambda, *n),
        Command::Qid { max, specialize } => cmd_qid(*max, specialize.as_deref()),
    }
}

/// Runs one invocation. Exit codes: 0 pass, 1 check failure, 2 usage error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let done = match dispatch(&cli) {
        Ok(d) => d,
        Err(msg) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    let json_text = to_text(&done.json);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &json_text) {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) };
        }
    }
    let stdout = match cli.format {
        Format::Json => json_text,
        Format::Text => done.text,
    };
    Outcome { code: if done.ok { 0 } else { 1 }, stdout, stderr: String::new() }
}
