//! Coset symmetrizers `S_I^J` and invariance tests.
//!
//! For partitions `I`, `J` of `{0, .., d-1}` the symmetrizer sends an
//! `S_I ∩ S_J`-invariant `f` to `sum sigma(f)` over representatives `sigma` of
//! `S_J / (S_I ∩ S_J)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::flagcomb::SegPartition;
use crate::laurent::{LaurentPoly, StructuredFraction};

/// Ways to split `pool` into consecutive-in-order subsets of the given sizes.
fn ordered_splits(pool: &[usize], sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if sizes.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in pool.iter().copied().combinations(sizes[0]) {
        let rest: Vec<usize> = pool.iter().copied().filter(|k| !first.contains(k)).collect();
        for mut tail in ordered_splits(&rest, &sizes[1..]) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// One representative per left coset of `S_I ∩ S_J` in `S_J`: the permutation
/// mapping every piece of the meet increasingly onto its image. Sorted
/// lexicographically, so the identity comes first.
pub fn coset_reps(i: &SegPartition, j: &SegPartition) -> Vec<Vec<usize>> {
    let d = j.d;
    let meet = i.meet(j);
    let jl = j.labels();
    let mut per_piece: Vec<Vec<Vec<(Vec<usize>, Vec<usize>)>>> = Vec::new();
    for (s, piece) in j.pieces.iter().enumerate() {
        if piece.is_empty() {
            continue;
        }
        let subs: Vec<&Vec<usize>> = meet.pieces.iter().filter(|p| jl[p[0]] == s).collect();
        let sizes: Vec<usize> = subs.iter().map(|p| p.len()).collect();
        let options = ordered_splits(piece, &sizes)
            .into_iter()
            .map(|targets| subs.iter().map(|p| (*p).clone()).zip(targets).collect())
            .collect();
        per_piece.push(options);
    }
    let mut out: Vec<Vec<usize>> = per_piece
        .iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut sigma: Vec<usize> = (0..d).collect();
            for maps in choice {
                for (src, dst) in maps {
                    for (a, b) in src.iter().zip(dst) {
                        sigma[*a] = *b;
                    }
                }
            }
            sigma
        })
        .collect();
    if per_piece.is_empty() {
        out.push((0..d).collect());
    }
    out.sort();
    out
}

/// Transpositions of consecutive elements inside each piece; they generate `S_I`.
pub fn adjacent_transpositions(i: &SegPartition) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in &i.pieces {
        for w in p.windows(2) {
            let mut s: Vec<usize> = (0..i.d).collect();
            s.swap(w[0], w[1]);
            out.push(s);
        }
    }
    out
}

pub fn is_invariant(f: &LaurentPoly, i: &SegPartition) -> bool {
    adjacent_transpositions(i).iter().all(|s| &f.permute_unchecked(s) == f)
}

pub fn is_invariant_fraction(f: &StructuredFraction, i: &SegPartition) -> bool {
    adjacent_transpositions(i).iter().all(|s| f.sub(&f.permute_unchecked(s)).is_zero())
}

fn check_sizes(d: usize, i: &SegPartition, j: &SegPartition) -> Result<()> {
    if i.d != d || j.d != d {
        return Err(Error::VarCount(d, if i.d != d { i.d } else { j.d }));
    }
    Ok(())
}

/// `S_I^J(f)` for a Laurent polynomial.
pub fn symmetrize_poly(f: &LaurentPoly, i: &SegPartition, j: &SegPartition) -> Result<LaurentPoly> {
    check_sizes(f.nvars(), i, j)?;
    if !is_invariant(f, &i.meet(j)) {
        return Err(Error::NotInvariant(format!("{} under S_I ∩ S_J", f.pretty())));
    }
    let mut acc = LaurentPoly::zero(f.nvars());
    for s in coset_reps(i, j) {
        acc = &acc + &f.permute_unchecked(&s);
    }
    Ok(acc)
}

/// `S_I^J(f)` for a structured fraction, summed over a common denominator.
pub fn symmetrize(f: &StructuredFraction, i: &SegPartition, j: &SegPartition) -> Result<StructuredFraction> {
    check_sizes(f.nvars(), i, j)?;
    if !is_invariant_fraction(f, &i.meet(j)) {
        return Err(Error::NotInvariant(format!("{} under S_I ∩ S_J", f.pretty())));
    }
    Ok(sum_over(f, &coset_reps(i, j)))
}

/// `sum sigma(f)` over the given permutations, without checks.
pub fn sum_over(f: &StructuredFraction, perms: &[Vec<usize>]) -> StructuredFraction {
    let mut acc = StructuredFraction::zero(f.nvars());
    for s in perms {
        acc = acc.add(&f.permute_unchecked(s));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{theta_ratio, Monomial};
    use crate::perm;
    use crate::qcoeff::{qint, QRat};
    use rand::{Rng, SeedableRng};

    fn part(d: usize, pieces: &[&[usize]]) -> SegPartition {
        SegPartition::new(d, pieces.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn x(d: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(d, i)
    }

    #[test]
    fn coset_examples() {
        let full = SegPartition::full(2);
        let disc = SegPartition::discrete(2);
        assert_eq!(coset_reps(&full, &full), vec![vec![0, 1]]);
        assert_eq!(coset_reps(&disc, &full), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(coset_reps(&part(2, &[&[0, 1], &[]]), &disc), vec![vec![0, 1]]);
    }

    #[test]
    fn coset_counts() {
        // |S_J| / |S_I ∩ S_J|
        let fact = |k: usize| (1..=k).product::<usize>();
        let i = part(5, &[&[0, 3], &[1], &[2, 4]]);
        let j = part(5, &[&[0, 1, 2], &[3, 4]]);
        let meet = i.meet(&j);
        let expect = j.pieces.iter().map(|p| fact(p.len())).product::<usize>()
            / meet.pieces.iter().map(|p| fact(p.len())).product::<usize>();
        let reps = coset_reps(&i, &j);
        assert_eq!(reps.len(), expect);
        // distinct cosets: no two representatives differ by an element of the meet group
        let h: Vec<Vec<usize>> = perm::all(5).into_iter().filter(|s| meet.pieces.iter().all(|p| p.iter().all(|k| p.contains(&s[*k])))).collect();
        for (a, b) in reps.iter().tuple_combinations() {
            let ainv = perm::inverse(a);
            assert!(!h.contains(&perm::compose(&ainv, b)));
        }
    }

    #[test]
    fn symmetrize_examples() {
        let full = SegPartition::full(2);
        let disc = SegPartition::discrete(2);
        assert_eq!(symmetrize_poly(&LaurentPoly::one(2), &full, &full).unwrap(), LaurentPoly::one(2));
        assert_eq!(symmetrize_poly(&x(2, 0), &disc, &full).unwrap(), &x(2, 0) + &x(2, 1));
        // 1 / (1 - x2/x1) = x1 / (x1 - x2)
        let f = StructuredFraction::over_binomial(x(2, 0), &QRat::one(), 0, &QRat::one(), 1).unwrap();
        assert_eq!(symmetrize(&f, &disc, &full).unwrap().to_poly().unwrap(), LaurentPoly::one(2));
        assert!(symmetrize_poly(&x(2, 0), &full, &full).is_err());
    }

    #[test]
    fn invariance_examples() {
        let full = SegPartition::full(2);
        assert!(is_invariant(&(&x(2, 0) + &x(2, 1)), &full));
        assert!(!is_invariant(&x(2, 0), &full));
        let f = &(&x(2, 0) * &x(2, 1).pow(2)) + &(&x(2, 0).pow(2) * &x(2, 1));
        assert!(is_invariant(&f, &full));
    }

    #[test]
    fn theta_sum_is_quantum_integer() {
        for m in 1..=5usize {
            let mut f = StructuredFraction::one(m);
            for j in 1..m {
                let th = theta_ratio(m, 1, (&QRat::q_pow(1), &Monomial::var(m, 0)), (&QRat::one(), &Monomial::var(m, j))).unwrap();
                f = f.mul(&th);
            }
            let rest: Vec<usize> = (1..m).collect();
            let i = part(m, &[&[0], &rest]);
            let s = symmetrize(&f, &i, &SegPartition::full(m)).unwrap();
            assert!(is_invariant_fraction(&s, &SegPartition::full(m)));
            assert_eq!(s.to_poly().unwrap(), LaurentPoly::constant(m, qint(m as i64)), "m={m}");
        }
    }

    #[test]
    fn representative_choice_does_not_matter() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let i = part(4, &[&[0, 1], &[2], &[3]]);
        let j = SegPartition::full(4);
        let f = &(&x(4, 0) * &x(4, 1)) + &x(4, 2).pow(2);
        let meet = i.meet(&j);
        let h: Vec<Vec<usize>> = perm::all(4).into_iter().filter(|s| meet.pieces.iter().all(|p| p.iter().all(|k| p.contains(&s[*k])))).collect();
        let base = symmetrize_poly(&f, &i, &j).unwrap();
        for _ in 0..5 {
            let reps: Vec<Vec<usize>> = coset_reps(&i, &j).iter().map(|s| perm::compose(s, &h[rng.gen_range(0..h.len())])).collect();
            let mut acc = LaurentPoly::zero(4);
            for s in &reps {
                acc = &acc + &f.permute_vars(s).unwrap();
            }
            assert_eq!(acc, base);
        }
        assert!(is_invariant(&base, &j));
    }

    #[test]
    fn transitivity_through_refinement() {
        let disc = SegPartition::discrete(3);
        let mid = part(3, &[&[0, 1], &[2]]);
        let full = SegPartition::full(3);
        let f = &(&x(3, 0).pow(2) * &x(3, 1)) + &x(3, 2);
        let one_step = symmetrize_poly(&f, &disc, &full).unwrap();
        let two_step = symmetrize_poly(&symmetrize_poly(&f, &disc, &mid).unwrap(), &mid, &full).unwrap();
        assert_eq!(one_step, two_step);
    }
}
