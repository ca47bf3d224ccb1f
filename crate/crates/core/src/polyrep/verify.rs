use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::operators::{apply_e, apply_f, k_series, q_minus_qinv, ratio_series, CartanData, Sign};
use super::samples::sample_polys;
use crate::error::{Error, Result};
use crate::flagcomb::Composition;
use crate::laurent::LaurentPoly;
use crate::qcoeff::QRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl Relation {
    pub const ALL: [Relation; 10] =
        [Relation::A, Relation::B, Relation::C, Relation::D, Relation::E, Relation::F, Relation::G, Relation::H, Relation::I, Relation::J];

    pub fn letter(self) -> char {
        (b'a' + Relation::ALL.iter().position(|&r| r == self).unwrap() as u8) as char
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let mut cs = t.chars();
        match (cs.next(), cs.next()) {
            (Some(c @ 'a'..='j'), None) => Ok(Relation::ALL[(c as u8 - b'a') as usize]),
            _ => Err(Error::Parse(format!("unknown relation {s:?}; expected one of a..j"))),
        }
    }
}

/// A single mode of a current, or a multiplication operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Op {
    E(usize, i64),
    F(usize, i64),
    /// Coefficient of `z^{-a}` in `K^+_i(z)` or `K^-_i(z)`.
    K(usize, Sign, i64),
    /// Coefficient of `z^{-a}` in the expansion of `K_{i+1}(z)/K_i(z)`.
    G(usize, Sign, i64),
}

/// A linear combination of operator words; a word acts right to left.
pub type Combination = Vec<(QRat, Vec<Op>)>;

/// One identity `lhs = rhs` between mode operators.
#[derive(Clone, Debug)]
pub struct Check {
    pub indices: Vec<usize>,
    pub modes: Vec<i64>,
    pub lhs: Combination,
    pub rhs: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub v: Vec<u32>,
    /// 1-based.
    pub indices: Vec<usize>,
    pub modes: Vec<i64>,
    pub sample: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub relation: Relation,
    pub n: usize,
    pub d: usize,
    pub window: i64,
    pub samples: usize,
    pub seed: u64,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Value = Option<(Composition, LaurentPoly)>;

fn in_support(sign: Sign, a: i64) -> bool {
    match sign {
        Sign::Plus => a >= 0,
        Sign::Minus => a <= 0,
    }
}

/// Evaluates operator words on one vector, caching every suffix.
pub struct Evaluator {
    v: Composition,
    f: LaurentPoly,
    order: usize,
    words: BTreeMap<Vec<Op>, Value>,
    series: BTreeMap<(bool, usize, Sign, Composition), Vec<LaurentPoly>>,
}

impl Evaluator {
    /// `order` bounds the modes of multiplication operators.
    pub fn new(v: Composition, f: LaurentPoly, order: usize) -> Self {
        Evaluator { v, f, order, words: BTreeMap::new(), series: BTreeMap::new() }
    }

    fn series_coeff(&mut self, ratio: bool, i: usize, sign: Sign, a: i64, w: &Composition) -> Result<Option<LaurentPoly>> {
        if !in_support(sign, a) {
            return Ok(None);
        }
        let idx = a.unsigned_abs() as usize;
        if idx > self.order {
            return Err(Error::Precondition(format!("mode {a} beyond the expansion order {}", self.order)));
        }
        let key = (ratio, i, sign, w.clone());
        if !self.series.contains_key(&key) {
            let s = if ratio { ratio_series(i, sign, w, self.order)? } else { k_series(i, sign, w, self.order)? };
            self.series.insert(key.clone(), s);
        }
        Ok(Some(self.series[&key][idx].clone()))
    }

    fn apply(&mut self, op: Op, w: &Composition, p: &LaurentPoly) -> Result<Value> {
        Ok(match op {
            Op::E(i, k) => apply_e(i, k, w, p)?,
            Op::F(i, k) => apply_f(i, k, w, p)?,
            Op::K(i, s, a) => self.series_coeff(false, i, s, a, w)?.map(|c| (w.clone(), &c * p)),
            Op::G(i, s, a) => self.series_coeff(true, i, s, a, w)?.map(|c| (w.clone(), &c * p)),
        })
    }

    pub fn eval(&mut self, word: &[Op]) -> Result<Value> {
        if word.is_empty() {
            return Ok(Some((self.v.clone(), self.f.clone())));
        }
        if let Some(hit) = self.words.get(word) {
            return Ok(hit.clone());
        }
        let inner = self.eval(&word[1..])?;
        let out = match inner {
            Some((w, p)) if !p.is_zero() => self.apply(word[0], &w, &p)?,
            _ => None,
        };
        self.words.insert(word.to_vec(), out.clone());
        Ok(out)
    }

    /// The combination as a polynomial; all nonzero words must land in one weight.
    pub fn combination(&mut self, c: &Combination) -> Result<Value> {
        let mut acc: Value = None;
        for (coef, word) in c {
            let Some((w, p)) = self.eval(word)? else { continue };
            if p.is_zero() {
                continue;
            }
            let p = p.scale(coef);
            acc = match acc {
                None => Some((w, p)),
                Some((w0, p0)) if w0 == w => Some((w0, &p0 + &p)),
                Some((w0, _)) => return Err(Error::Precondition(format!("words land in weights {w0} and {w}"))),
            };
        }
        Ok(acc)
    }
}

fn canonical(v: &Value) -> String {
    match v {
        Some((_, p)) if !p.is_zero() => p.to_canonical(),
        _ => String::from("0"),
    }
}

fn same(a: &Value, b: &Value) -> bool {
    let nz = |v: &Value| v.as_ref().filter(|(_, p)| !p.is_zero()).cloned();
    nz(a) == nz(b)
}

fn modes(window: i64) -> core::ops::RangeInclusive<i64> {
    -window..=window
}

/// `X(z) Y(w) (al z + be w) = (ga z + de w) Y(w) X(z)` at `z^{-a} w^{-b}`.
fn cleared(x: impl Fn(i64) -> Op, y: impl Fn(i64) -> Op, c: [QRat; 4], indices: Vec<usize>, a: i64, b: i64) -> Check {
    let [al, be, ga, de] = c;
    Check {
        indices,
        modes: vec![a, b],
        lhs: vec![(al, vec![x(a + 1), y(b)]), (be, vec![x(a), y(b + 1)])],
        rhs: vec![(ga, vec![y(b), x(a + 1)]), (de, vec![y(b + 1), x(a)])],
    }
}

/// Coefficients clearing `X(z) Y(w) = theta_m(s z / w) Y(w) X(z)`.
fn theta_clear(m: i32, s: i32) -> [QRat; 4] {
    [QRat::q_pow(s), -QRat::q_pow(m), QRat::q_pow(m + s), -QRat::one()]
}

fn commutator(x: Op, y: Op) -> Combination {
    vec![(QRat::one(), vec![x, y]), (-QRat::one(), vec![y, x])]
}

fn serre(op: impl Fn(usize, i64) -> Op, i: usize, j: usize, a: i64, b: i64, c: i64) -> Check {
    let two = &QRat::q_pow(1) + &QRat::q_pow(-1);
    let mut lhs = Vec::new();
    for (s, t) in [(a, b), (b, a)] {
        lhs.push((QRat::one(), vec![op(i, s), op(i, t), op(j, c)]));
        lhs.push((-two.clone(), vec![op(i, s), op(j, c), op(i, t)]));
        lhs.push((QRat::one(), vec![op(j, c), op(i, s), op(i, t)]));
    }
    Check { indices: vec![i, j], modes: vec![a, b, c], lhs, rhs: Vec::new() }
}

/// Every mode identity making up the relation on `⊕_v R^(v)` with `n` parts,
/// for modes in `[-window, window]`.
pub fn relation_checks(rel: Relation, n: usize, window: i64) -> Vec<Check> {
    let cart = CartanData::new(n);
    let ne = n.saturating_sub(1);
    let signs = [Sign::Plus, Sign::Minus];
    let mut out = Vec::new();
    match rel {
        Relation::A => {
            for i in 0..n {
                for j in 0..n {
                    for (s, t) in [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)] {
                        if s != t && i != j {
                            continue;
                        }
                        for a in modes(window).filter(|&a| in_support(s, a)) {
                            for b in modes(window).filter(|&b| in_support(t, b)) {
                                let (x, y) = (Op::K(i, s, a), Op::K(j, t, b));
                                out.push(Check { indices: vec![i, j], modes: vec![a, b], lhs: vec![(QRat::one(), vec![x, y])], rhs: vec![(QRat::one(), vec![y, x])] });
                            }
                        }
                    }
                }
                out.push(Check {
                    indices: vec![i],
                    modes: vec![0, 0],
                    lhs: vec![(QRat::one(), vec![Op::K(i, Sign::Plus, 0), Op::K(i, Sign::Minus, 0)])],
                    rhs: vec![(QRat::one(), Vec::new())],
                });
            }
        }
        Relation::B => {
            // theta_1(q^-1 z/w) (z - w)-cleared on both sides
            for i in 0..n {
                for j in i + 1..n {
                    for s in signs {
                        let t = if s == Sign::Plus { Sign::Minus } else { Sign::Plus };
                        for a in modes(window) {
                            for b in modes(window) {
                                let c = [QRat::one(), -QRat::one(), QRat::one(), -QRat::one()];
                                out.push(cleared(|m| Op::K(i, s, m), |m| Op::K(j, t, m), c, vec![i, j], a, b));
                            }
                        }
                    }
                }
            }
        }
        Relation::C | Relation::D => {
            for i in 0..ne {
                for j in 0..n {
                    let c = cart.c(i, j);
                    let m = if rel == Relation::C { c } else { -c };
                    for s in signs {
                        for a in modes(window) {
                            for b in modes(window) {
                                let y = |k| if rel == Relation::C { Op::E(i, k) } else { Op::F(i, k) };
                                out.push(cleared(|k| Op::K(j, s, k), y, theta_clear(m, c), vec![j, i], a, b));
                            }
                        }
                    }
                }
            }
        }
        Relation::E => {
            for i in 0..ne {
                for j in 0..ne {
                    for k in modes(window) {
                        for l in modes(window) {
                            let rhs = if i == j {
                                let c = q_minus_qinv();
                                vec![(c.clone(), vec![Op::G(i, Sign::Plus, k + l)]), (-c, vec![Op::G(i, Sign::Minus, k + l)])]
                            } else {
                                Vec::new()
                            };
                            out.push(Check { indices: vec![i, j], modes: vec![k, l], lhs: commutator(Op::E(i, k), Op::F(j, l)), rhs });
                        }
                    }
                }
            }
        }
        Relation::F | Relation::G => {
            for i in 0..ne {
                for j in 0..ne {
                    let m = cart.m(i, j);
                    let s = i as i32 - j as i32;
                    for a in modes(window) {
                        for b in modes(window) {
                            out.push(if rel == Relation::F {
                                cleared(|k| Op::E(i, k), |k| Op::E(j, k), theta_clear(m, s), vec![i, j], a, b)
                            } else {
                                cleared(|k| Op::F(i, k), |k| Op::F(j, k), theta_clear(-m, s), vec![i, j], a, b)
                            });
                        }
                    }
                }
            }
        }
        Relation::H | Relation::I => {
            for i in 0..ne {
                for j in 0..ne {
                    if i.abs_diff(j) != 1 {
                        continue;
                    }
                    for a in modes(window) {
                        for b in modes(window).filter(|&b| b >= a) {
                            for c in modes(window) {
                                out.push(if rel == Relation::H { serre(Op::E, i, j, a, b, c) } else { serre(Op::F, i, j, a, b, c) });
                            }
                        }
                    }
                }
            }
        }
        Relation::J => {
            for i in 0..ne {
                for j in i + 2..ne {
                    for a in modes(window) {
                        for b in modes(window) {
                            for op in [Op::E, Op::F] {
                                out.push(Check { indices: vec![i, j], modes: vec![a, b], lhs: commutator(op(i, a), op(j, b)), rhs: Vec::new() });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs the checks on one sample vector of weight `v`; returns the number of
/// checks and the failures.
pub fn verify_unit(checks: &[Check], window: i64, v: &Composition, sample: usize, f: &LaurentPoly) -> Result<(usize, Vec<Failure>)> {
    let mut ev = Evaluator::new(v.clone(), f.clone(), 2 * window as usize + 2);
    let mut failures = Vec::new();
    for c in checks {
        let lhs = ev.combination(&c.lhs)?;
        let rhs = ev.combination(&c.rhs)?;
        if !same(&lhs, &rhs) {
            failures.push(Failure {
                v: v.parts().to_vec(),
                indices: c.indices.iter().map(|i| i + 1).collect(),
                modes: c.modes.clone(),
                sample,
                lhs: canonical(&lhs),
                rhs: canonical(&rhs),
            });
        }
    }
    Ok((checks.len(), failures))
}

/// The work units of a verification run: every weight with its samples.
pub fn verify_units(n: usize, d: usize, samples: usize, seed: u64) -> Vec<(Composition, usize, LaurentPoly)> {
    let mut out = Vec::new();
    for v in Composition::all(n, d) {
        for (s, f) in sample_polys(&v, samples, seed).into_iter().enumerate() {
            out.push((v.clone(), s, f));
        }
    }
    out
}

pub fn check_window(window: i64) -> Result<()> {
    if !(0..=16).contains(&window) {
        return Err(Error::Precondition(format!("window {window} outside 0..=16")));
    }
    Ok(())
}

/// Checks the relation on `samples` test vectors per weight, all modes in `[-window, window]`.
pub fn verify_relation(rel: Relation, n: usize, d: usize, window: i64, samples: usize, seed: u64) -> Result<Report> {
    check_window(window)?;
    let checks = relation_checks(rel, n, window);
    let mut report = Report { relation: rel, n, d, window, samples, seed, checks: 0, failures: Vec::new() };
    for (v, s, f) in verify_units(n, d, samples, seed) {
        let (count, fails) = verify_unit(&checks, window, &v, s, &f)?;
        report.checks += count;
        report.failures.extend(fails);
    }
    Ok(report)
}
