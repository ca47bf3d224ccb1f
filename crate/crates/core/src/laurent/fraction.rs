use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::qcoeff::QRat;

/// The linear form `x_i - ratio * x_j` with `i < j` and `ratio != 0`.
///
/// Every binomial `a x_i - b x_j` is brought to this shape by pulling out a
/// scalar, so equal factors always compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor {
    pub i: usize,
    pub j: usize,
    pub ratio: QRat,
}

impl BinomialFactor {
    /// Normalizes `a x_i - b x_j`, returning the factor and the scalar `s` with
    /// `a x_i - b x_j = s * factor`.
    pub fn normalize(a: &QRat, i: usize, b: &QRat, j: usize) -> Result<(BinomialFactor, QRat)> {
        if i == j || a.is_zero() || b.is_zero() {
            return Err(Error::Precondition(String::from("binomial needs distinct variables and nonzero coefficients")));
        }
        if i < j {
            Ok((BinomialFactor { i, j, ratio: b.checked_div(a)? }, a.clone()))
        } else {
            // a x_i - b x_j = -b (x_j - (a/b) x_i)
            Ok((BinomialFactor { i: j, j: i, ratio: a.checked_div(b)? }, -b))
        }
    }

    pub fn to_poly(&self, d: usize) -> LaurentPoly {
        LaurentPoly::binomial(d, self.i, self.j, &self.ratio)
    }

    pub fn eval(&self, xs: &[BigRational], q: &BigRational) -> Result<BigRational> {
        Ok(xs[self.i].clone() - crate::qcoeff::eval_q(&self.ratio, q)? * &xs[self.j])
    }

    pub fn pretty(&self) -> String {
        let r = self.ratio.pretty();
        let r = if self.ratio.is_one() {
            String::new()
        } else if self.ratio.is_single_term() {
            format!("{r}*")
        } else {
            format!("({r})*")
        };
        format!("(x{} - {}x{})", self.i + 1, r, self.j + 1)
    }
}

/// A Laurent polynomial divided by a product of binomial factors.
///
/// Monomial denominators are units in the Laurent ring and are absorbed into
/// the numerator, so only binomials are tracked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredFraction {
    numerator: LaurentPoly,
    binomials: BTreeMap<BinomialFactor, u32>,
}

impl From<LaurentPoly> for StructuredFraction {
    fn from(p: LaurentPoly) -> Self {
        StructuredFraction { numerator: p, binomials: BTreeMap::new() }
    }
}

impl StructuredFraction {
    pub fn zero(d: usize) -> Self {
        LaurentPoly::zero(d).into()
    }

    pub fn one(d: usize) -> Self {
        LaurentPoly::one(d).into()
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn binomials(&self) -> &BTreeMap<BinomialFactor, u32> {
        &self.binomials
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `1 / (a x_i - b x_j)`.
    pub fn inv_binomial(d: usize, a: &QRat, i: usize, b: &QRat, j: usize) -> Result<Self> {
        let (f, s) = BinomialFactor::normalize(a, i, b, j)?;
        let mut binomials = BTreeMap::new();
        binomials.insert(f, 1);
        Ok(StructuredFraction { numerator: LaurentPoly::constant(d, s.inv()?), binomials })
    }

    /// `num / (a x_i - b x_j)`.
    pub fn over_binomial(num: LaurentPoly, a: &QRat, i: usize, b: &QRat, j: usize) -> Result<Self> {
        let d = num.nvars();
        Ok(&StructuredFraction::from(num) * &StructuredFraction::inv_binomial(d, a, i, b, j)?)
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        let d = self.nvars();
        let mut acc = LaurentPoly::one(d);
        for (f, &m) in &self.binomials {
            acc = &acc * &f.to_poly(d).pow(m);
        }
        acc
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return StructuredFraction::zero(self.nvars());
        }
        StructuredFraction { numerator: self.numerator.scale(c), binomials: self.binomials.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut out = StructuredFraction { numerator: &self.numerator * p, binomials: self.binomials.clone() };
        if out.numerator.is_zero() {
            out.binomials.clear();
        }
        out
    }

    /// Sum over the least common binomial denominator.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let d = self.nvars();
        let mut lcm = self.binomials.clone();
        for (f, &m) in &other.binomials {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |s: &Self| {
            let mut n = s.numerator.clone();
            for (f, &m) in &lcm {
                let have = s.binomials.get(f).copied().unwrap_or(0);
                if m > have {
                    n = &n * &f.to_poly(d).pow(m - have);
                }
            }
            n
        };
        let numerator = &lift(self) + &lift(other);
        let mut out = StructuredFraction { numerator, binomials: lcm };
        if out.numerator.is_zero() {
            out.binomials.clear();
        }
        out
    }

    pub fn neg(&self) -> Self {
        StructuredFraction { numerator: -&self.numerator, binomials: self.binomials.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let numerator = &self.numerator * &other.numerator;
        if numerator.is_zero() {
            return StructuredFraction::zero(self.nvars());
        }
        let mut binomials = self.binomials.clone();
        for (f, &m) in &other.binomials {
            *binomials.entry(f.clone()).or_insert(0) += m;
        }
        StructuredFraction { numerator, binomials }
    }

    /// Cancels binomial factors that divide the numerator exactly. The value is
    /// unchanged; only the representation shrinks.
    pub fn reduce(&self) -> Self {
        if self.numerator.is_zero() {
            return StructuredFraction::zero(self.nvars());
        }
        let mut numerator = self.numerator.clone();
        let mut binomials = BTreeMap::new();
        for (f, &m) in &self.binomials {
            let mut left = m;
            while left > 0 {
                match numerator.div_binomial(f.i, f.j, &f.ratio) {
                    Some(quot) => {
                        numerator = quot;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                binomials.insert(f.clone(), left);
            }
        }
        StructuredFraction { numerator, binomials }
    }

    /// The polynomial value; errors with the first binomial that does not cancel.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        let r = self.reduce();
        match r.binomials.keys().next() {
            None => Ok(r.numerator),
            Some(f) => Err(Error::NotPolynomial(f.pretty())),
        }
    }

    /// Substitutes `x_k <- x_{sigma(k)}` in numerator and denominator.
    pub fn permute_vars(&self, sigma: &[usize]) -> Result<Self> {
        crate::perm::validate(sigma, self.nvars())?;
        Ok(self.permute_unchecked(sigma))
    }

    pub(crate) fn permute_unchecked(&self, sigma: &[usize]) -> Self {
        let mut numerator = self.numerator.permute_unchecked(sigma);
        let mut binomials = BTreeMap::new();
        let mut scalar = QRat::one();
        for (f, &m) in &self.binomials {
            let (g, s) = BinomialFactor::normalize(&QRat::one(), sigma[f.i], &f.ratio, sigma[f.j])
                .expect("permutation keeps binomials valid");
            *binomials.entry(g).or_insert(0) += m;
            for _ in 0..m {
                scalar = &scalar * &s;
            }
        }
        if !scalar.is_one() {
            numerator = numerator.scale(&scalar.inv().expect("nonzero"));
        }
        StructuredFraction { numerator, binomials }
    }

    pub fn eval(&self, xs: &[BigRational], q: &BigRational) -> Result<BigRational> {
        let mut den = BigRational::from_integer(1.into());
        for (f, &m) in &self.binomials {
            let v = f.eval(xs, q)?;
            for _ in 0..m {
                den *= &v;
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.numerator.eval(xs, q)? / den)
    }

    pub fn pretty(&self) -> String {
        if self.binomials.is_empty() {
            return self.numerator.pretty();
        }
        let den: Vec<String> = self
            .binomials
            .iter()
            .map(|(f, &m)| if m == 1 { f.pretty() } else { format!("{}^{}", f.pretty(), m) })
            .collect();
        format!("({}) / {}", self.numerator.pretty(), den.join(""))
    }
}

impl fmt::Display for StructuredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl core::iter::Sum for StructuredFraction {
    fn sum<I: Iterator<Item = StructuredFraction>>(iter: I) -> StructuredFraction {
        let mut it = iter.peekable();
        let d = it.peek().map(|f| f.nvars()).unwrap_or(0);
        it.fold(StructuredFraction::zero(d), |a, b| a.add(&b))
    }
}

impl core::ops::Mul for &StructuredFraction {
    type Output = StructuredFraction;
    fn mul(self, rhs: &StructuredFraction) -> StructuredFraction {
        StructuredFraction::mul(self, rhs)
    }
}

impl core::ops::Add for &StructuredFraction {
    type Output = StructuredFraction;
    fn add(self, rhs: &StructuredFraction) -> StructuredFraction {
        StructuredFraction::add(self, rhs)
    }
}

/// Product and sum over a common structured denominator.
pub fn frac_product(d: usize, fs: &[StructuredFraction]) -> StructuredFraction {
    fs.iter().fold(StructuredFraction::one(d), |acc, f| acc.mul(f))
}

pub fn frac_sum(d: usize, fs: &[StructuredFraction]) -> StructuredFraction {
    fs.iter().fold(StructuredFraction::zero(d), |acc, f| acc.add(f))
}

/// `theta_m(A/B) = (q^m A - B) / (A - q^m B)` for terms `A = a x^alpha`,
/// `B = b x^beta`.
///
/// The exponent difference `alpha - beta` must be zero (a scalar argument) or
/// `e_i - e_j`. The common monomial cancels, leaving one binomial denominator.
pub fn theta_ratio(d: usize, m: i32, a: (&QRat, &Monomial), b: (&QRat, &Monomial)) -> Result<StructuredFraction> {
    let (ca, ma) = a;
    let (cb, mb) = b;
    if ca.is_zero() || cb.is_zero() {
        return Err(Error::Precondition(String::from("theta arguments must be nonzero")));
    }
    let qm = QRat::q_pow(m);
    let diff = ma.div(mb);
    if diff.is_one() {
        let den = ca - &(&qm * cb);
        if den.is_zero() {
            return Err(Error::ThetaZeroDenominator);
        }
        let num = &(&qm * ca) - cb;
        return Ok(LaurentPoly::constant(d, num.checked_div(&den)?).into());
    }
    let pos: Vec<usize> = diff.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, _)| k).collect();
    let (i, j) = match *pos.as_slice() {
        [s, t] if diff.0[s] == 1 && diff.0[t] == -1 => (s, t),
        [s, t] if diff.0[s] == -1 && diff.0[t] == 1 => (t, s),
        _ => return Err(Error::Precondition(format!("theta argument ratio {} is not x_i/x_j", diff.pretty()))),
    };
    if m == 0 {
        return Ok(StructuredFraction::one(d));
    }
    // (q^m a x_i - b x_j) / (a x_i - q^m b x_j)
    let mut num = LaurentPoly::term(Monomial::var(d, i), &qm * ca);
    num.add_term(Monomial::var(d, j), -cb);
    StructuredFraction::over_binomial(num, ca, i, &(&qm * cb), j)
}
