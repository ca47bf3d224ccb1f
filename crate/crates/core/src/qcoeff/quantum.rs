use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;
use super::qrat::QRat;
use crate::error::{Error, Result};

/// Default bound on cyclotomic orders tried by the pole and root-of-unity guards.
pub const CYCLOTOMIC_BOUND: u32 = 64;

/// The quantum integer `[k] = (q^k - q^-k)/(q - q^-1)`.
pub fn qint(k: i64) -> QRat {
    if k == 0 {
        return QRat::zero();
    }
    let m = k.unsigned_abs() as usize;
    // q^{-(m-1)} + q^{-(m-3)} + ... + q^{m-1}
    let mut coeffs = vec![0i64; 2 * m - 1];
    for c in coeffs.iter_mut().step_by(2) {
        *c = 1;
    }
    let r = QRat::laurent(1 - m as i32, &coeffs);
    if k < 0 {
        -r
    } else {
        r
    }
}

/// `[k]! = [k][k-1]...[1]`.
pub fn qfact(k: i64) -> Result<QRat> {
    if k < 0 {
        return Err(Error::NegativeFactorial(k));
    }
    Ok((1..=k).map(qint).product())
}

/// `q^{ab} [a+b]! / ([a]! [b]!)`.
pub fn gauss_p(a: u32, b: u32) -> QRat {
    let (a, b) = (a as i64, b as i64);
    let top = qfact(a + b).unwrap();
    let bottom = &qfact(a).unwrap() * &qfact(b).unwrap();
    top.checked_div(&bottom).unwrap().mul_q_pow((a * b) as i32)
}

/// The cyclotomic polynomial `Phi_m`, computed by dividing `q^m - 1` by the
/// cyclotomic factors of the proper divisors of `m`.
pub fn cyclotomic(m: u32) -> QPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut coeffs = vec![0i64; m as usize + 1];
    coeffs[0] = -1;
    coeffs[m as usize] = 1;
    let mut p = QPoly::from_i64s(&coeffs);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.div_rem(&cyclotomic(d)).0;
    }
    p
}

/// Order `m <= bound` of a cyclotomic polynomial vanishing at `t`, if any.
pub fn root_of_unity_order(t: &BigRational, bound: u32) -> Option<u32> {
    (1..=bound).find(|&m| cyclotomic(m).eval(t).is_zero())
}

/// Specializes `q = t`.
pub fn eval_q(r: &QRat, t: &BigRational) -> Result<BigRational> {
    if t.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    let den = r.denominator().eval(t);
    if den.is_zero() {
        return Err(Error::Pole { at: format!("{t}"), factor: vanishing_factor(r.denominator(), t) });
    }
    let num = r.numerator().eval(t);
    let qs = pow_rational(t, r.shift());
    Ok(num * qs / den)
}

fn pow_rational(t: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Names the factor of `den` responsible for a zero at `t`, preferring a
/// cyclotomic factor found by bounded trial division.
fn vanishing_factor(den: &QPoly, t: &BigRational) -> String {
    for m in 1..=CYCLOTOMIC_BOUND {
        let phi = cyclotomic(m);
        if phi.eval(t).is_zero() && den.div_rem(&phi).1.is_zero() {
            return pretty_poly(&phi);
        }
    }
    pretty_poly(&QPoly::from_coeffs(vec![-t.clone(), BigRational::one()]))
}

fn pretty_poly(p: &QPoly) -> String {
    QRat::from_parts(0, p.clone(), QPoly::one()).map(|r| r.pretty()).unwrap_or_default()
}

/// Determinant by Laplace expansion; intended for matrices of size at most 4.
pub fn det(m: &[Vec<QRat>]) -> QRat {
    match m.len() {
        0 => QRat::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = QRat::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<QRat>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][col] * &det(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}
