use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flagcomb::Composition;
use crate::laurent::{LaurentPoly, Monomial};
use crate::qcoeff::QRat;

const EXP_RANGE: i32 = 2;

/// Sorts the exponents inside each segment, giving the orbit representative.
fn canonical(v: &Composition, mut e: Vec<i32>) -> Vec<i32> {
    for i in 0..v.n() {
        e[v.segment(i)].sort_unstable();
    }
    e
}

/// Sum of the distinct monomials in the `S_v`-orbit of `x^e`.
pub fn orbit_sum(v: &Composition, e: &[i32]) -> LaurentPoly {
    let mut orbit: BTreeSet<Vec<i32>> = BTreeSet::new();
    orbit.insert(Vec::new());
    for i in 0..v.n() {
        let seg = &e[v.segment(i)];
        let perms: BTreeSet<Vec<i32>> = seg.iter().copied().permutations(seg.len()).collect();
        orbit = orbit.iter().cartesian_product(perms.iter()).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
    }
    LaurentPoly::from_terms(v.d(), orbit.into_iter().map(|m| (Monomial(m), QRat::one())))
}

/// Orbit representatives with exponents in `[-2, 2]`, by total degree `sum |e|` then lexicographically.
pub fn orbit_representatives(v: &Composition) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = (0..v.d())
        .map(|_| -EXP_RANGE..=EXP_RANGE)
        .multi_cartesian_product()
        .filter(|e| canonical(v, e.clone()) == *e)
        .collect();
    if v.d() == 0 {
        out.push(Vec::new());
    }
    out.sort_by_key(|e| (e.iter().map(|x| x.abs()).sum::<i32>(), e.clone()));
    out
}

fn mix_seed(seed: u64, v: &Composition) -> u64 {
    v.parts().iter().fold(seed ^ 0x9E37_79B9_7F4A_7C15, |h, &p| (h ^ u64::from(p)).wrapping_mul(0x0100_0000_01B3).rotate_left(17))
}

/// `count` invariant test polynomials in `R^(v)`: the first `ceil(count/2)`
/// orbit sums, then seeded random combinations of orbit sums.
pub fn sample_polys(v: &Composition, count: usize, seed: u64) -> Vec<LaurentPoly> {
    let reps = orbit_representatives(v);
    let fixed = count.div_ceil(2);
    let mut out: Vec<LaurentPoly> = reps.iter().cycle().take(fixed).map(|e| orbit_sum(v, e)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, v));
    while out.len() < count {
        let mut p = LaurentPoly::zero(v.d());
        for _ in 0..rng.gen_range(1..=3) {
            let e: Vec<i32> = (0..v.d()).map(|_| rng.gen_range(-EXP_RANGE..=EXP_RANGE)).collect();
            let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let c = QRat::from_int(c).mul_q_pow(rng.gen_range(-1..=1));
            p = &p + &orbit_sum(v, &canonical(v, e)).scale(&c);
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetrize::is_invariant;

    #[test]
    fn first_sample_is_one() {
        let v = Composition::new(alloc::vec![2, 1]);
        let s = sample_polys(&v, 8, 42);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], LaurentPoly::one(3));
        assert!(s.iter().all(|p| is_invariant(p, &v.segments())));
        assert_eq!(s, sample_polys(&v, 8, 42));
        assert_ne!(s[4..], sample_polys(&v, 8, 43)[4..]);
    }

    #[test]
    fn orbit_sums() {
        let v = Composition::new(alloc::vec![2]);
        let p = orbit_sum(&v, &[0, 1]);
        assert_eq!(p, &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1));
        assert_eq!(orbit_sum(&v, &[1, 1]), &LaurentPoly::var(2, 0) * &LaurentPoly::var(2, 1));
    }

    #[test]
    fn empty_weight() {
        let v = Composition::new(alloc::vec![0, 0]);
        let s = sample_polys(&v, 3, 1);
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|p| p.as_constant().is_some()));
    }
}
