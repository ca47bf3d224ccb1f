//! Permutations of `{0, .., d-1}` in one-line notation: `sigma[k]` is the image of `k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::error::{Error, Result};

pub fn identity(d: usize) -> Vec<usize> {
    (0..d).collect()
}

pub fn validate(sigma: &[usize], d: usize) -> Result<()> {
    if sigma.len() != d {
        return Err(Error::InvalidPermutation(format!("length {} for {} variables", sigma.len(), d)));
    }
    let mut seen = vec![false; d];
    for &s in sigma {
        if s >= d || seen[s] {
            return Err(Error::InvalidPermutation(format!("{sigma:?}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// `(tau . sigma)(k) = tau(sigma(k))`.
pub fn compose(tau: &[usize], sigma: &[usize]) -> Vec<usize> {
    sigma.iter().map(|&s| tau[s]).collect()
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        inv[s] = k;
    }
    inv
}

/// All of `S_d` in lexicographic order.
pub fn all(d: usize) -> Vec<Vec<usize>> {
    (0..d).permutations(d).collect()
}

pub fn inversions(sigma: &[usize]) -> usize {
    sigma.iter().tuple_combinations().filter(|(a, b)| a > b).count()
}

/// Bruhat order via the tableau criterion: for every prefix length, the
/// sorted prefix of `sigma` is componentwise at most that of `tau`.
pub fn bruhat_leq(sigma: &[usize], tau: &[usize]) -> bool {
    assert_eq!(sigma.len(), tau.len());
    (1..sigma.len()).all(|i| {
        let a = sigma[..i].iter().copied().sorted();
        let b = tau[..i].iter().copied().sorted();
        a.zip(b).all(|(x, y)| x <= y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bruhat_extremes() {
        let e = identity(3);
        let w0 = vec![2, 1, 0];
        for s in all(3) {
            assert!(bruhat_leq(&e, &s));
            assert!(bruhat_leq(&s, &w0));
        }
        assert!(!bruhat_leq(&[1, 0, 2], &[0, 2, 1]));
    }

    #[test]
    fn bruhat_agrees_with_reflection_closure() {
        // sigma <= tau iff tau is reachable from sigma by transpositions that
        // increase the inversion count
        let d = 4;
        let perms = all(d);
        let idx = |p: &Vec<usize>| perms.iter().position(|x| x == p).unwrap();
        let n = perms.len();
        let mut reach = vec![vec![false; n]; n];
        for (a, p) in perms.iter().enumerate() {
            reach[a][a] = true;
            for (i, j) in (0..d).tuple_combinations() {
                let mut r = p.clone();
                r.swap(i, j);
                if inversions(&r) > inversions(p) {
                    reach[a][idx(&r)] = true;
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if reach[a][k] && reach[k][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                assert_eq!(bruhat_leq(&perms[a], &perms[b]), reach[a][b], "{:?} {:?}", perms[a], perms[b]);
            }
        }
    }

    #[test]
    fn inverse_and_compose() {
        let s = vec![2, 0, 1];
        assert_eq!(compose(&s, &inverse(&s)), identity(3));
        assert!(validate(&[0, 2], 2).is_err());
    }
}
