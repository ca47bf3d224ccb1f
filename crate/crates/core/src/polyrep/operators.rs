use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::flagcomb::Composition;
use crate::laurent::{expand_theta_series, Direction, LaurentPoly, Monomial, StructuredFraction, ThetaFactor};
use crate::qcoeff::{qint, QRat};
use crate::symmetrize::{coset_reps, sum_over};

/// The matrices `C` (upper bidiagonal, `-1` on the diagonal, `1` above) and
/// `M = -C - C^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub n: usize,
}

impl CartanData {
    pub fn new(n: usize) -> Self {
        CartanData { n }
    }

    pub fn c(&self, i: usize, j: usize) -> i32 {
        if i == j {
            -1
        } else if j == i + 1 {
            1
        } else {
            0
        }
    }

    pub fn m(&self, i: usize, j: usize) -> i32 {
        -self.c(i, j) - self.c(j, i)
    }
}

pub(crate) fn q_minus_qinv() -> QRat {
    &QRat::q_pow(1) - &QRat::q_pow(-1)
}

fn x_pow(d: usize, p: usize, k: i64) -> Monomial {
    let mut m = Monomial::one(d);
    m.0[p] = k as i32;
    m
}

/// Mode `k` of `E_i(z)` on `R^(v)`, 0-based `i < n - 1`. `None` when the
/// target weight `v + e_i - e_{i+1}` has a negative part.
pub fn apply_e(i: usize, k: i64, v: &Composition, f: &LaurentPoly) -> Result<Option<(Composition, LaurentPoly)>> {
    let Some(target) = v.shifted(i, i + 1) else { return Ok(None) };
    let d = v.d();
    let p = v.prefix(i + 1);
    let q = QRat::q_pow(1);
    let q2 = QRat::q_pow(2);
    // f x_p^k prod_{m in [v]_i} theta_1(q x_p / x_m)
    let mut frac = StructuredFraction::from(f.mul_monomial(&x_pow(d, p, k)));
    for m in v.segment(i) {
        let num = &LaurentPoly::var(d, p).scale(&q2) - &LaurentPoly::var(d, m);
        frac = frac.mul(&StructuredFraction::over_binomial(num, &q, p, &q, m)?);
    }
    let reps = coset_reps(&v.segments(), &target.segments());
    let out = sum_over(&frac, &reps).to_poly()?.scale(&q_minus_qinv());
    Ok(Some((target, out)))
}

/// Mode `k` of `F_i(z)` on `R^(v)`. `None` when `v_i = 0`.
pub fn apply_f(i: usize, k: i64, v: &Composition, f: &LaurentPoly) -> Result<Option<(Composition, LaurentPoly)>> {
    let Some(target) = v.shifted(i + 1, i) else { return Ok(None) };
    let d = v.d();
    let p = v.prefix(i + 1) - 1;
    let q = QRat::q_pow(1);
    let q2 = QRat::q_pow(2);
    // f x_p^k prod_{m in [v]_{i+1}} theta_1(x_p / (q x_m))^{-1}
    let mut frac = StructuredFraction::from(f.mul_monomial(&x_pow(d, p, k)));
    for m in v.segment(i + 1) {
        let num = &LaurentPoly::var(d, p) - &LaurentPoly::var(d, m).scale(&q2);
        frac = frac.mul(&StructuredFraction::over_binomial(num, &q, p, &q, m)?);
    }
    let reps = coset_reps(&v.segments(), &target.segments());
    let out = sum_over(&frac, &reps).to_poly()?.scale(&q_minus_qinv());
    Ok(Some((target, out)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn direction(self) -> Direction {
        match self {
            Sign::Plus => Direction::AtInfinity,
            Sign::Minus => Direction::AtZero,
        }
    }
}

/// Factors of `K_{i,v}(z) = Theta_{[1, vbar_{i-1}]}(qz) Theta_{[1 + vbar_i, d]}(z/q)`.
pub fn k_factors(i: usize, v: &Composition) -> Vec<ThetaFactor> {
    let q = QRat::q_pow(1);
    let qi = QRat::q_pow(-1);
    let mut fs: Vec<ThetaFactor> = (0..v.prefix(i)).map(|m| ThetaFactor::current(1, q.clone(), m)).collect();
    fs.extend((v.prefix(i + 1)..v.d()).map(|m| ThetaFactor::current(1, qi.clone(), m)));
    fs
}

/// Coefficients `0..=order` of `K^+_i(z)` (of `z^{-l}`) or `K^-_i(z)` (of `z^l`) on `R^(v)`.
pub fn k_series(i: usize, sign: Sign, v: &Composition, order: usize) -> Result<Vec<LaurentPoly>> {
    expand_theta_series(v.d(), &k_factors(i, v), sign.direction(), order)
}

/// The multiplication operator `K_{i, +-l}` on `R^(v)`.
pub fn k_coeff(i: usize, sign: Sign, l: usize, v: &Composition) -> Result<LaurentPoly> {
    Ok(k_series(i, sign, v, l)?.pop().expect("order + 1 entries"))
}

/// Factors of `K_{i+1,v}(z) / K_{i,v}(z) = Theta_{[v]_i}(qz) Theta_{[v]_{i+1}}(z/q)^{-1}`.
pub fn ratio_factors(i: usize, v: &Composition) -> Vec<ThetaFactor> {
    let mut fs: Vec<ThetaFactor> = v.segment(i).map(|m| ThetaFactor::current(1, QRat::q_pow(1), m)).collect();
    // theta_1(u)^{-1} = theta_{-1}(u)
    fs.extend(v.segment(i + 1).map(|m| ThetaFactor::current(-1, QRat::q_pow(-1), m)));
    fs
}

pub fn ratio_series(i: usize, sign: Sign, v: &Composition, order: usize) -> Result<Vec<LaurentPoly>> {
    expand_theta_series(v.d(), &ratio_factors(i, v), sign.direction(), order)
}

fn power_sum_term(d: usize, vars: core::ops::Range<usize>, k: i64, c: &QRat) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(d);
    for l in vars {
        acc.add_term(x_pow(d, l, k), c.clone());
    }
    acc
}

fn h_parts(i: usize, k: i64, v: &Composition) -> Result<LaurentPoly> {
    if k == 0 {
        return Err(Error::Precondition(alloc::string::String::from("H needs a nonzero mode")));
    }
    let d = v.d();
    let kk = k.unsigned_abs() as i64;
    let c = &qint(kk) * &QRat::from_rational(BigRational::new(1.into(), kk.into()));
    let first = power_sum_term(d, 0..v.prefix(i), k, &c.mul_q_pow(-(k as i32)));
    let last = power_sum_term(d, v.prefix(i + 1)..d, k, &c.mul_q_pow(k as i32));
    Ok(&first + &last)
}

/// `H_{i,k} = [|k|]/|k| (q^{-k} sum_{l <= vbar_{i-1}} x_l^k + q^k sum_{l > vbar_i} x_l^k)`,
/// normalized so that `K^+_i(z) = q^{d - v_i} exp((q - q^-1) sum_{k>0} H_{i,k} z^{-k})`.
pub fn h_poly(i: usize, k: i64, v: &Composition) -> Result<LaurentPoly> {
    h_parts(i, k, v)
}

/// The same expression with the overall minus sign of the printed formula.
pub fn h_poly_printed(i: usize, k: i64, v: &Composition) -> Result<LaurentPoly> {
    Ok(-&h_parts(i, k, v)?)
}

/// The matrix expressing `H_{i,k}` through segment power sums
/// `p_s = sum_{l in [v]_s} x_l^k`, read off from [`h_poly`], divided by `[k]/k`.
pub fn power_sum_matrix(n: usize, k: i64) -> Result<Vec<Vec<QRat>>> {
    // one variable per segment suffices to read off the coefficients
    let v = Composition::new(alloc::vec![1; n]);
    let kk = k.unsigned_abs() as i64;
    let c = &qint(kk) * &QRat::from_rational(BigRational::new(1.into(), kk.into()));
    let cinv = c.inv()?;
    (0..n)
        .map(|i| {
            let h = h_poly(i, k, &v)?;
            Ok((0..n).map(|s| &h.coeff(&x_pow(n, s, k)) * &cinv).collect())
        })
        .collect()
}
