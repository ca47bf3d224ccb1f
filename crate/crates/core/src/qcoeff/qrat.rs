use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::QPoly;
use crate::error::{Error, Result};

/// An element of `Q(q)` stored as `q^shift * num / den`.
///
/// Canonical form: `num` and `den` have nonzero constant terms, `den` is
/// monic and coprime to `num`. Zero is `(0, 0, 1)`. With this normalization,
/// structural equality is value equality.
///
/// The derived `Ord` is a structural order for use as a map key; it has no
/// algebraic meaning.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRat {
    shift: i32,
    num: QPoly,
    den: QPoly,
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl QRat {
    pub fn zero() -> Self {
        QRat { shift: 0, num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        QRat::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        QRat::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QRat { shift: 0, num: QPoly::constant(c), den: QPoly::one() }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        QRat::monomial(BigRational::one(), e)
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRational, e: i32) -> Self {
        if c.is_zero() {
            return QRat::zero();
        }
        QRat { shift: e, num: QPoly::constant(c), den: QPoly::one() }
    }

    /// Builds `q^shift * num / den` and normalizes.
    pub fn from_parts(shift: i32, num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(shift, num, den))
    }

    /// A Laurent polynomial in `q` given by `coeffs[k]` at exponent `low + k`.
    pub fn laurent(low: i32, coeffs: &[i64]) -> Self {
        normalize(low, QPoly::from_i64s(coeffs), QPoly::one())
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial in `q`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, e))` when the value is `c * q^e` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.den.is_one() && self.num.coeffs().len() == 1 {
            Some((self.num.coeffs()[0].clone(), self.shift))
        } else {
            None
        }
    }

    /// The rational constant, if the value does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }

    /// Laurent coefficients `(low, coeffs)` when `den == 1`.
    pub fn laurent_coeffs(&self) -> Option<(i32, &[BigRational])> {
        self.den.is_one().then(|| (self.shift, self.num.coeffs()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QRat::zero();
        }
        QRat { shift: self.shift, num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_q_pow(&self, e: i32) -> Self {
        if self.is_zero() {
            return QRat::zero();
        }
        QRat { shift: self.shift + e, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading().expect("nonzero").clone();
        let lc_inv = lc.recip();
        Ok(QRat { shift: -self.shift, num: self.den.scale(&lc_inv), den: self.num.scale(&lc_inv) })
    }

    pub fn checked_div(&self, other: &QRat) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `q -> 1/q`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return QRat::zero();
        }
        let dn = self.num.degree().unwrap() as i32;
        let dd = self.den.degree().unwrap() as i32;
        normalize(-self.shift - dn + dd, self.num.reversed(), self.den.reversed())
    }

    /// Canonical text: `c*q^e` terms by descending exponent, joined by ` + `.
    /// A nontrivial denominator gives `(num)/(den)`. The shift is folded into the
    /// numerator, so negative exponents may appear there.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let num = term_list(self.num.coeffs(), self.shift);
        if self.den.is_one() {
            num
        } else {
            format!("({})/({})", num, term_list(self.den.coeffs(), 0))
        }
    }

    /// Human-readable text such as `q^2 - q^-2` or `(q^2 + 1)/(q - 1)`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let num = pretty_terms(self.num.coeffs(), self.shift);
        if self.den.is_one() {
            return num;
        }
        let den = pretty_terms(self.den.coeffs(), 0);
        let wrap = |s: String, n: usize| if n > 1 { format!("({s})") } else { s };
        let nterms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let dterms = self.den.coeffs().iter().filter(|c| !c.is_zero()).count();
        format!("{}/{}", wrap(num, nterms), wrap(den, dterms))
    }

    /// Number of nonzero terms in the pretty form, used to decide on parentheses.
    pub(crate) fn is_single_term(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn parse(s: &str) -> Result<Self> {
        crate::parse::parse_qrat(s)
    }
}

fn term_list(coeffs: &[BigRational], shift: i32) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("{}*q^{}", c, k as i32 + shift))
        .collect();
    parts.join(" + ")
}

fn pretty_terms(coeffs: &[BigRational], shift: i32) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = k as i32 + shift;
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let qpart = match e {
            0 => String::new(),
            1 => String::from("q"),
            _ => format!("q^{e}"),
        };
        if qpart.is_empty() {
            out.push_str(&format!("{abs}"));
        } else if abs.is_one() {
            out.push_str(&qpart);
        } else {
            out.push_str(&format!("{abs}*{qpart}"));
        }
    }
    out
}

fn normalize(mut shift: i32, num: QPoly, den: QPoly) -> QRat {
    if num.is_zero() {
        return QRat::zero();
    }
    let vn = num.valuation().unwrap();
    let vd = den.valuation().unwrap();
    shift += vn as i32 - vd as i32;
    let mut num = num.shift_down(vn);
    let mut den = den.shift_down(vd);
    if den.degree() != Some(0) {
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
    }
    let lc = den.leading().unwrap().clone();
    if !lc.is_one() {
        let inv = lc.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    QRat { shift, num, den }
}

impl From<i64> for QRat {
    fn from(c: i64) -> Self {
        QRat::from_int(c)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.clone().shift_up((self.shift - s) as usize);
        let b = rhs.num.clone().shift_up((rhs.shift - s) as usize);
        if self.den == rhs.den {
            normalize(s, &a + &b, self.den.clone())
        } else {
            let num = &(&a * &rhs.den) + &(&b * &self.den);
            normalize(s, num, &self.den * &rhs.den)
        }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { shift: self.shift, num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            return QRat { shift, num: &self.num * &rhs.num, den: QPoly::one() };
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0);
        let (n2, d1) = (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0);
        normalize(shift, &n1 * &n2, &d1 * &d2)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat { (&self).$m(&rhs) }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl core::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |a, b| &a + &b)
    }
}

impl core::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QRat {
        QRat::q_pow(1)
    }

    #[test]
    fn q_times_q() {
        assert_eq!(&q() * &q(), QRat::q_pow(2));
    }

    #[test]
    fn difference_of_squares() {
        let a = &q() - &QRat::q_pow(-1);
        let b = &q() + &QRat::q_pow(-1);
        assert_eq!(&a * &b, &QRat::q_pow(2) - &QRat::q_pow(-2));
    }

    #[test]
    fn one_minus_one() {
        assert!((&QRat::one() - &QRat::one()).is_zero());
    }

    #[test]
    fn canonical_cancels_common_factor() {
        // (q^2 - 1)/(q - 1) = q + 1
        let r = QRat::from_parts(0, QPoly::from_i64s(&[-1, 0, 1]), QPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(r, QRat::laurent(0, &[1, 1]));
        assert!(r.is_laurent());
    }

    #[test]
    fn denominator_is_monic() {
        let r = QRat::from_parts(0, QPoly::from_i64s(&[1]), QPoly::from_i64s(&[2, 4])).unwrap();
        assert!(r.denominator().leading().unwrap().is_one());
        assert_eq!(r.to_canonical(), "(1/4*q^0)/(1*q^1 + 1/2*q^0)");
    }

    #[test]
    fn inverse_and_division() {
        let a = &q() + &QRat::one();
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(QRat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn bar_is_involution() {
        let r = QRat::from_parts(2, QPoly::from_i64s(&[3, 0, 1]), QPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(r.bar().bar(), r);
        assert_eq!(QRat::q_pow(3).bar(), QRat::q_pow(-3));
    }

    #[test]
    fn text_forms() {
        let r = &q() - &QRat::q_pow(-1);
        assert_eq!(r.to_canonical(), "1*q^1 + -1*q^-1");
        assert_eq!(r.pretty(), "q - q^-1");
        assert_eq!(QRat::zero().to_canonical(), "0");
    }
}
