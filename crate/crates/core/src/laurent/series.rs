use alloc::vec;
use alloc::vec::Vec;

use super::poly::{LaurentPoly, Monomial};
use crate::error::Result;
use crate::qcoeff::{qint, QRat};

/// Argument of a theta factor in the current variable `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaArg {
    /// `scale * z / x_var`.
    Current { scale: QRat, var: usize },
    /// A `z`-free scalar.
    Constant(QRat),
}

/// `theta_m(arg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFactor {
    pub m: i32,
    pub arg: ThetaArg,
}

impl ThetaFactor {
    pub fn current(m: i32, scale: QRat, var: usize) -> Self {
        ThetaFactor { m, arg: ThetaArg::Current { scale, var } }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Series in `z^{-1}`; entry `l` is the coefficient of `z^{-l}`.
    AtInfinity,
    /// Series in `z`; entry `l` is the coefficient of `z^{l}`.
    AtZero,
}

/// Coefficients `0..=order` of one theta factor in the chosen direction.
fn factor_series(d: usize, f: &ThetaFactor, dir: Direction, order: usize) -> Result<Vec<LaurentPoly>> {
    let m = f.m;
    let mut out = vec![LaurentPoly::zero(d); order + 1];
    match &f.arg {
        ThetaArg::Constant(c) => {
            let th = super::fraction::theta_ratio(d, m, (c, &Monomial::one(d)), (&QRat::one(), &Monomial::one(d)))?;
            out[0] = th.to_poly()?;
        }
        ThetaArg::Current { scale, var } => {
            let diff = &QRat::q_pow(m) - &QRat::q_pow(-m);
            match dir {
                Direction::AtInfinity => {
                    // theta_m(u) = (q^m - w)/(1 - q^m w), w = x/(c z)
                    out[0] = LaurentPoly::constant(d, QRat::q_pow(m));
                    let w = LaurentPoly::term(Monomial::var(d, *var), scale.inv()?);
                    let mut wl = LaurentPoly::one(d);
                    for (l, slot) in out.iter_mut().enumerate().skip(1) {
                        wl = &wl * &w;
                        *slot = wl.scale(&diff.mul_q_pow(m * l as i32));
                    }
                }
                Direction::AtZero => {
                    // theta_m(u) = q^-m (1 - q^m u)/(1 - q^-m u), u = c z / x
                    out[0] = LaurentPoly::constant(d, QRat::q_pow(-m));
                    let mut inv_x = Monomial::one(d);
                    inv_x.0[*var] = -1;
                    let u = LaurentPoly::term(inv_x, scale.clone());
                    let mut ul = LaurentPoly::one(d);
                    for (l, slot) in out.iter_mut().enumerate().skip(1) {
                        ul = &ul * &u;
                        *slot = ul.scale(&(-&diff).mul_q_pow(-m * l as i32));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Truncated product of two series.
pub fn series_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let order = a.len().min(b.len());
    let d = a.first().or(b.first()).map(|p| p.nvars()).unwrap_or(0);
    let mut out = vec![LaurentPoly::zero(d); order];
    for (i, ai) in a.iter().enumerate().take(order) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// Coefficients of `z^{-l}` (at infinity) or `z^{l}` (at zero), `l = 0..=order`,
/// of a product of theta factors.
pub fn expand_theta_series(d: usize, factors: &[ThetaFactor], dir: Direction, order: usize) -> Result<Vec<LaurentPoly>> {
    let mut acc = vec![LaurentPoly::zero(d); order + 1];
    acc[0] = LaurentPoly::one(d);
    for f in factors {
        acc = series_mul(&acc, &factor_series(d, f, dir, order)?);
    }
    Ok(acc)
}

/// Truncated `log(s)` for a series with constant term one.
pub fn series_log(s: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let d = s.first().map(|p| p.nvars()).unwrap_or(0);
    let order = s.len();
    assert!(order == 0 || s[0] == LaurentPoly::one(d), "log needs constant term one");
    let mut t = s.to_vec();
    if order > 0 {
        t[0] = LaurentPoly::zero(d);
    }
    let mut out = vec![LaurentPoly::zero(d); order];
    let mut power = t.clone();
    for k in 1..order {
        // (-1)^{k+1} t^k / k
        let c = QRat::from_rational(num_rational::BigRational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, (k as i64).into()));
        for (o, p) in out.iter_mut().zip(&power) {
            *o = &*o + &p.scale(&c);
        }
        power = series_mul(&power, &t);
    }
    out
}

/// `log theta_1(c z/x)` at infinity has `z^{-k}` coefficient `(q - q^-1)[k]/k (x/c)^k`.
pub fn log_theta1_coefficient(k: i64) -> QRat {
    let diff = &QRat::q_pow(1) - &QRat::q_pow(-1);
    let kk = QRat::from_rational(num_rational::BigRational::new(1.into(), k.into()));
    &(&diff * &qint(k)) * &kk
}
