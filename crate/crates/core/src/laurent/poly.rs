use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qcoeff::{eval_q, QRat};

/// Exponent vector of a Laurent monomial `x_1^{e_1} ... x_d^{e_d}`.
///
/// The derived order is lexicographic on the exponent vector; it fixes the
/// canonical term order of [`LaurentPoly`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(d: usize) -> Self {
        Monomial(vec![0; d])
    }

    pub fn var(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Substitution `x_k <- x_{sigma(k)}`.
    pub fn permute(&self, sigma: &[usize]) -> Monomial {
        let mut out = vec![0; self.0.len()];
        for (k, &e) in self.0.iter().enumerate() {
            out[sigma[k]] = e;
        }
        Monomial(out)
    }

    pub fn eval(&self, xs: &[BigRational]) -> BigRational {
        let mut acc = BigRational::one();
        for (x, &e) in xs.iter().zip(&self.0) {
            let base = if e < 0 { x.recip() } else { x.clone() };
            for _ in 0..e.unsigned_abs() {
                acc *= &base;
            }
        }
        acc
    }

    /// `x1^e1 x2^e2 ...`, all variables listed.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(k, e)| format!("x{}^{}", k + 1, e)).collect();
        parts.join(" ")
    }

    /// Omits zero exponents and unit powers; `1` for the empty product.
    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, e) })
            .collect();
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join("*")
        }
    }
}

/// A Laurent polynomial in `x_1..x_d` with coefficients in `Q(q)`.
///
/// Zero coefficients are never stored, so equality is term-map equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, QRat>,
}

/// Ring operation selector for [`LaurentPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl LaurentPoly {
    pub fn zero(d: usize) -> Self {
        LaurentPoly { nvars: d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        LaurentPoly::constant(d, QRat::one())
    }

    pub fn constant(d: usize, c: QRat) -> Self {
        LaurentPoly::term(Monomial::one(d), c)
    }

    pub fn var(d: usize, i: usize) -> Self {
        LaurentPoly::term(Monomial::var(d, i), QRat::one())
    }

    pub fn term(m: Monomial, c: QRat) -> Self {
        let mut terms = BTreeMap::new();
        let d = m.nvars();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { nvars: d, terms }
    }

    /// `x_i - c * x_j`.
    pub fn binomial(d: usize, i: usize, j: usize, c: &QRat) -> Self {
        let mut p = LaurentPoly::var(d, i);
        p.add_term(Monomial::var(d, j), -c);
        p
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Monomial, QRat)>) -> Self {
        let mut p = LaurentPoly::zero(d);
        for (m, c) in terms {
            assert_eq!(m.nvars(), d, "monomial has the wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> QRat {
        self.terms.get(m).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no `x`-dependence.
    pub fn as_constant(&self) -> Option<QRat> {
        match self.terms.len() {
            0 => Some(QRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &QRat)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    pub fn add_term(&mut self, m: Monomial, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Checked ring operation; errors on a variable-count mismatch.
    pub fn arith(&self, other: &LaurentPoly, op: PolyOp) -> Result<LaurentPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VarCount(self.nvars, other.nvars));
        }
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &QRat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn inv_term(&self) -> Result<LaurentPoly> {
        let (m, c) = self.as_term().ok_or(Error::DivisionByZero)?;
        Ok(LaurentPoly::term(m.pow(-1), c.inv()?))
    }

    /// Substitutes `x_k <- x_{sigma(k)}` after validating `sigma`.
    pub fn permute_vars(&self, sigma: &[usize]) -> Result<LaurentPoly> {
        crate::perm::validate(sigma, self.nvars)?;
        Ok(self.permute_unchecked(sigma))
    }

    pub(crate) fn permute_unchecked(&self, sigma: &[usize]) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.permute(sigma), c.clone())).collect() }
    }

    /// Re-embeds into `d` variables, sending variable `k` to `map[k]`.
    pub fn relabel(&self, d: usize, map: &[usize]) -> LaurentPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; d];
            for (k, &x) in m.0.iter().enumerate() {
                e[map[k]] += x;
            }
            (Monomial(e), c.clone())
        });
        LaurentPoly::from_terms(d, terms)
    }

    /// Exact division by `x_i - c * x_j` (`i != j`); `None` if it leaves a remainder.
    pub fn div_binomial(&self, i: usize, j: usize, c: &QRat) -> Option<LaurentPoly> {
        debug_assert!(i != j);
        // Terms sharing all exponents except the split between x_i and x_j
        // form a one-variable polynomial in x_i/x_j; divide each by (t - c).
        let mut classes: BTreeMap<Vec<i32>, BTreeMap<i32, QRat>> = BTreeMap::new();
        for (m, coef) in &self.terms {
            let mut key = m.0.clone();
            let a = key[i];
            key[j] += a;
            key[i] = 0;
            classes.entry(key).or_default().insert(a, coef.clone());
        }
        let mut out = LaurentPoly::zero(self.nvars);
        for (key, mut level) in classes {
            let s = key[j];
            while let Some((&a, _)) = level.iter().next_back() {
                let top = level.remove(&a).unwrap();
                if level.is_empty() {
                    // lowest exponent: whatever is left is the remainder
                    if !top.is_zero() {
                        return None;
                    }
                    break;
                }
                if top.is_zero() {
                    continue;
                }
                let mut e = key.clone();
                e[i] = a - 1;
                e[j] = s - a;
                out.add_term(Monomial(e), top.clone());
                let below = level.entry(a - 1).or_insert_with(QRat::zero);
                *below = &*below + &(c * &top);
            }
        }
        Some(out)
    }

    pub fn eval(&self, xs: &[BigRational], q: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += eval_q(c, q)? * m.eval(xs);
        }
        Ok(acc)
    }

    /// Substitutes `q -> 1/q` in every coefficient.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.bar())).collect() }
    }

    /// Canonical text: `<coef> * x1^e1 ... xd^ed` terms in lexicographic
    /// exponent order joined by ` + `; coefficients with more than one term are
    /// parenthesized. Zero prints as `0`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_canonical();
                let cs = if c.is_single_term() { cs } else { format!("({cs})") };
                if self.nvars == 0 {
                    cs
                } else {
                    format!("{} * {}", cs, m.to_text())
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Human-readable text, highest terms first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let cs = c.pretty();
                let cs = if c.is_single_term() { cs } else { format!("({cs})") };
                if m.is_one() {
                    cs
                } else if c.is_one() {
                    m.pretty()
                } else {
                    format!("{}*{}", cs, m.pretty())
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses an expression in `q` and `x1..xd`; accepts the canonical form.
    pub fn parse(s: &str, d: usize) -> Result<LaurentPoly> {
        crate::parse::parse_laurent(s, d)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(m.clone(), -c);
        }
        acc
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc = LaurentPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                acc.add_term(m1.mul(m2), c1 * c2);
            }
        }
        acc
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
