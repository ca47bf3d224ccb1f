//! Jordan types, dual partitions, the dominance order and the Drinfeld
//! polynomials attached to a pair (semisimple, nilpotent).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::flagcomb::Composition;
use crate::qcoeff::{root_of_unity_order, QPoly, CYCLOTOMIC_BOUND};

/// The Jordan type `lambda` of a nilpotent `x` with `x^n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    lambda: Vec<u32>,
    n: usize,
}

impl JordanData {
    pub fn new(lambda: Vec<u32>, n: usize) -> Result<Self> {
        if lambda.contains(&0) {
            return Err(Error::Precondition(format!("parts of {lambda:?} must be positive")));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{lambda:?} is not weakly decreasing")));
        }
        if lambda.first().is_some_and(|&p| p as usize > n) {
            return Err(Error::Precondition(format!("largest part of {lambda:?} exceeds n = {n}")));
        }
        Ok(JordanData { lambda, n })
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.lambda.iter().map(|&p| p as usize).sum()
    }
}

/// Eigenvalue data `alpha_1, .., alpha_l` (one per Jordan block) and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleParam {
    pub alphas: Vec<BigRational>,
    pub t: BigRational,
}

impl SemisimpleParam {
    pub fn new(alphas: Vec<BigRational>, t: BigRational) -> Result<Self> {
        Self::with_bound(alphas, t, CYCLOTOMIC_BOUND)
    }

    /// Rejects `t` a root of `Phi_m` for `m <= bound`; larger orders are not detected.
    pub fn with_bound(alphas: Vec<BigRational>, t: BigRational, bound: u32) -> Result<Self> {
        if t.is_zero() || alphas.iter().any(Zero::is_zero) {
            return Err(Error::Precondition(alloc::string::String::from("t and every alpha must be nonzero")));
        }
        if let Some(m) = root_of_unity_order(&t, bound) {
            return Err(Error::RootOfUnity(format!("{t}"), m));
        }
        Ok(SemisimpleParam { alphas, t })
    }

    fn t_pow(&self, e: i64) -> BigRational {
        let base = if e < 0 { self.t.recip() } else { self.t.clone() };
        num_traits::pow(base, e.unsigned_abs() as usize)
    }
}

/// `P_1, .., P_{n-1}`, monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldPolys {
    pub polys: Vec<QPoly>,
}

impl DrinfeldPolys {
    /// Coefficient vectors, lowest degree first.
    pub fn coefficient_vectors(&self) -> Vec<Vec<BigRational>> {
        self.polys.iter().map(|p| if p.is_zero() { Vec::new() } else { p.coeffs().to_vec() }).collect()
    }
}

/// `lambda^∨_i = #{j : lambda_j >= i}`, `i = 1..n`.
pub fn dual_partition(lambda: &JordanData) -> Vec<u32> {
    (1..=lambda.n as u32).map(|i| lambda.lambda.iter().filter(|&&p| p >= i).count() as u32).collect()
}

fn linear(root: BigRational) -> QPoly {
    QPoly::from_coeffs(vec![-root, BigRational::one()])
}

fn check_lengths(lambda: &JordanData, s: &SemisimpleParam) -> Result<()> {
    if lambda.lambda.len() != s.alphas.len() {
        return Err(Error::LengthMismatch(format!("{} Jordan blocks but {} eigenvalues", lambda.lambda.len(), s.alphas.len())));
    }
    Ok(())
}

/// `P_i(z) = prod_{lambda^∨_{i+1} < k <= lambda^∨_i} (z - t^{i-2} s_k^{-1})`.
pub fn drinfeld_polys(lambda: &JordanData, s: &SemisimpleParam) -> Result<DrinfeldPolys> {
    check_lengths(lambda, s)?;
    let dual = dual_partition(lambda);
    let at = |i: usize| dual.get(i - 1).copied().unwrap_or(0) as usize;
    let polys = (1..lambda.n)
        .map(|i| {
            (at(i + 1) + 1..=at(i)).fold(QPoly::one(), |acc, k| {
                let root = s.t_pow(i as i64 - 2) / &s.alphas[k - 1];
                &acc * &linear(root)
            })
        })
        .collect();
    Ok(DrinfeldPolys { polys })
}

/// `(lambda_i, alpha_i^{-1} t^{lambda_i - 2})` for every block; needs all `lambda_i < n`.
pub fn fundamental_factors(lambda: &JordanData, s: &SemisimpleParam) -> Result<Vec<(u32, BigRational)>> {
    check_lengths(lambda, s)?;
    if let Some(&p) = lambda.lambda.iter().find(|&&p| p as usize >= lambda.n) {
        return Err(Error::Precondition(format!("part {p} is not below n = {}", lambda.n)));
    }
    Ok(lambda.lambda.iter().zip(&s.alphas).map(|(&p, a)| (p, s.t_pow(p as i64 - 2) / a)).collect())
}

/// Drinfeld polynomials of `⊗ V(omega_{i_k})_{a_k}`: `P_i = prod_{i_k = i} (z - a_k)`.
pub fn polys_of_factors(n: usize, factors: &[(u32, BigRational)]) -> DrinfeldPolys {
    let polys = (1..n)
        .map(|i| factors.iter().filter(|(w, _)| *w as usize == i).fold(QPoly::one(), |acc, (_, a)| &acc * &linear(a.clone())))
        .collect();
    DrinfeldPolys { polys }
}

/// `v <= mu`: every prefix sum of `v` is at most that of `mu`.
pub fn dominance(v: &Composition, mu: &[i64]) -> Result<bool> {
    let total: i64 = mu.iter().sum();
    if total != v.d() as i64 {
        return Err(Error::Margin(format!("{v} sums to {} but {mu:?} sums to {total}", v.d())));
    }
    let len = v.n().max(mu.len());
    let (mut a, mut b) = (0i64, 0i64);
    for i in 0..len {
        a += v.parts().get(i).copied().unwrap_or(0) as i64;
        b += mu.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Diagonal of `s_{lambda,alpha} = ⊕ alpha_i D(lambda_i)`, `D(k) = sum_{i<k} t^{-2i} E_ii`.
pub fn build_semisimple(lambda: &JordanData, s: &SemisimpleParam) -> Result<Vec<BigRational>> {
    check_lengths(lambda, s)?;
    let t2 = &s.t * &s.t;
    let mut out = Vec::with_capacity(lambda.d());
    for (&p, a) in lambda.lambda.iter().zip(&s.alphas) {
        let block: Vec<BigRational> = (0..p as i64).map(|i| a * s.t_pow(-2 * i)).collect();
        // s x s^{-1} = t^2 x on the Jordan block: s_k / s_{k+1} = t^2
        for w in block.windows(2) {
            assert_eq!(&w[0] / &w[1], t2, "conjugation identity");
        }
        out.extend(block);
    }
    Ok(out)
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        rational(n)
    }

    fn partitions(d: u32, max: u32) -> Vec<Vec<u32>> {
        if d == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=d.min(max)).rev() {
            for mut rest in partitions(d - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn dual_examples() {
        let j = |l: &[u32], n| JordanData::new(l.to_vec(), n).unwrap();
        assert_eq!(dual_partition(&j(&[1, 1, 1], 3)), vec![3, 0, 0]);
        assert_eq!(dual_partition(&j(&[2, 1], 4)), vec![2, 1, 0, 0]);
        assert_eq!(dual_partition(&j(&[3], 4)), vec![1, 1, 1, 0]);
    }

    #[test]
    fn dual_is_involutive() {
        for d in 0..=6 {
            for n in 1..=6 {
                for lam in partitions(d, n) {
                    if lam.len() > n as usize {
                        continue;
                    }
                    let jd = JordanData::new(lam.clone(), n as usize).unwrap();
                    let dual = dual_partition(&jd);
                    assert_eq!(dual.iter().sum::<u32>(), d);
                    assert!(dual.windows(2).all(|w| w[0] >= w[1]));
                    let parts: Vec<u32> = dual.into_iter().filter(|&p| p > 0).collect();
                    let back = dual_partition(&JordanData::new(parts, n as usize).unwrap());
                    let mut padded = lam.clone();
                    padded.resize(n as usize, 0);
                    assert_eq!(back, padded);
                }
            }
        }
    }

    #[test]
    fn invalid_jordan_data() {
        assert!(JordanData::new(vec![1, 2], 3).is_err());
        assert!(JordanData::new(vec![4], 3).is_err());
        assert!(JordanData::new(vec![2, 0], 3).is_err());
    }

    #[test]
    fn drinfeld_two_one() {
        let lam = JordanData::new(vec![2, 1], 3).unwrap();
        let s = SemisimpleParam::new(vec![r(2), r(3)], r(5)).unwrap();
        let p = drinfeld_polys(&lam, &s).unwrap();
        // P_1 = z - t^{-1} s_2^{-1}, P_2 = z - s_1^{-1}
        assert_eq!(p.polys[0], linear(BigRational::new(1.into(), 15.into())));
        assert_eq!(p.polys[1], linear(BigRational::new(1.into(), 2.into())));
        let dual = dual_partition(&lam);
        for (i, poly) in p.polys.iter().enumerate() {
            assert_eq!(poly.degree().unwrap() as u32, dual[i] - dual[i + 1]);
        }
    }

    #[test]
    fn fundamental_case() {
        for n in 2..=6usize {
            for d in 1..n as u32 {
                let lam = JordanData::new(vec![d], n).unwrap();
                let s = SemisimpleParam::new(vec![r(7)], BigRational::new(3.into(), 2.into())).unwrap();
                let p = drinfeld_polys(&lam, &s).unwrap();
                let expect = s.t_pow(d as i64 - 2) / r(7);
                for (i, poly) in p.polys.iter().enumerate() {
                    if i + 1 == d as usize {
                        assert_eq!(poly, &linear(expect.clone()));
                    } else {
                        assert!(poly.is_one());
                    }
                }
                let f = fundamental_factors(&lam, &s).unwrap();
                assert_eq!(f, vec![(d, expect)]);
                assert_eq!(polys_of_factors(n, &f), p);
            }
        }
    }

    #[test]
    fn fundamental_examples() {
        let s = SemisimpleParam::new(vec![r(2), r(3)], r(5)).unwrap();
        let f = fundamental_factors(&JordanData::new(vec![2, 1], 3).unwrap(), &s).unwrap();
        assert_eq!(f, vec![(2, BigRational::new(1.into(), 2.into())), (1, BigRational::new(1.into(), 15.into()))]);
        let one = SemisimpleParam::new(vec![r(2)], r(5)).unwrap();
        assert!(fundamental_factors(&JordanData::new(vec![3], 3).unwrap(), &one).is_err());
        assert!(drinfeld_polys(&JordanData::new(vec![3], 3).unwrap(), &s).is_err());
    }

    #[test]
    fn empty_products_are_one() {
        let lam = JordanData::new(vec![1, 1], 3).unwrap();
        let s = SemisimpleParam::new(vec![r(2), r(3)], r(5)).unwrap();
        let p = drinfeld_polys(&lam, &s).unwrap();
        // dual (2, 0, 0): both blocks feed P_1
        assert_eq!(p.polys[0].degree(), Some(2));
        assert!(p.polys[1].is_one());
    }

    #[test]
    fn dominance_examples() {
        let c = |p: &[u32]| Composition::new(p.to_vec());
        assert!(dominance(&c(&[2, 1, 0]), &[2, 1, 0]).unwrap());
        assert!(dominance(&c(&[1, 1, 1]), &[2, 1, 0]).unwrap());
        assert!(!dominance(&c(&[3, 0, 0]), &[2, 1, 0]).unwrap());
        assert!(dominance(&c(&[1, 1]), &[1, 0]).is_err());
    }

    #[test]
    fn dominance_is_partial_order() {
        let all = Composition::all(3, 4);
        let vec = |v: &Composition| v.parts().iter().map(|&p| p as i64).collect::<Vec<_>>();
        for a in &all {
            assert!(dominance(a, &vec(a)).unwrap());
            for b in &all {
                let ab = dominance(a, &vec(b)).unwrap();
                if ab && dominance(b, &vec(a)).unwrap() {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if ab && dominance(b, &vec(c)).unwrap() {
                        assert!(dominance(a, &vec(c)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn semisimple_examples() {
        let t = r(5);
        let c = r(3);
        let s = SemisimpleParam::new(vec![c.clone()], t.clone()).unwrap();
        assert_eq!(build_semisimple(&JordanData::new(vec![1], 2).unwrap(), &s).unwrap(), vec![c.clone()]);
        assert_eq!(build_semisimple(&JordanData::new(vec![2], 2).unwrap(), &s).unwrap(), vec![c.clone(), &c / r(25)]);
        let s2 = SemisimpleParam::new(vec![r(2), r(3)], t).unwrap();
        assert_eq!(build_semisimple(&JordanData::new(vec![2, 1], 3).unwrap(), &s2).unwrap(), vec![r(2), BigRational::new(2.into(), 25.into()), r(3)]);
    }

    #[test]
    fn root_of_unity_guard() {
        assert!(matches!(SemisimpleParam::new(vec![r(1)], r(-1)), Err(Error::RootOfUnity(_, 2))));
        assert!(SemisimpleParam::new(vec![r(1)], r(1)).is_err());
        assert!(SemisimpleParam::new(vec![r(0)], r(2)).is_err());
        assert!(SemisimpleParam::new(vec![r(1)], r(0)).is_err());
    }
}
