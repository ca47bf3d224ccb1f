use alloc::format;
use alloc::vec::Vec;

use super::composition::Composition;
use super::matrix::{contingency_tables, IntMatrix, ThreeArray};
use super::order::order_leq;
use crate::error::{Error, Result};

fn check_margins(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a.n() != b.n() || a.col_sums() != b.row_sums() {
        return Err(Error::Margin(format!("column sums of {a} differ from row sums of {b}")));
    }
    Ok(())
}

/// All 3-arrays `T` with `T_12 = A` and `T_23 = B`, sorted.
pub fn enumerate_3arrays(a: &IntMatrix, b: &IntMatrix) -> Vec<ThreeArray> {
    let n = a.n();
    if n != b.n() || a.col_sums() != b.row_sums() {
        return Vec::new();
    }
    // for each middle index j, the slice (i, k) -> t_ijk has row sums a_{.j}
    // and column sums b_{j.}
    let slices: Vec<Vec<Vec<Vec<u32>>>> = (0..n)
        .map(|j| {
            let rows: Vec<u32> = (0..n).map(|i| a.get(i, j)).collect();
            let cols: Vec<u32> = (0..n).map(|k| b.get(j, k)).collect();
            contingency_tables(&rows, &cols)
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = alloc::vec![0usize; n];
    if slices.iter().any(|s| s.is_empty()) {
        return out;
    }
    loop {
        let mut t = ThreeArray::zero(n);
        for (j, &c) in choice.iter().enumerate() {
            let tab = &slices[j][c];
            for i in 0..n {
                for k in 0..n {
                    t.set(i, j, k, tab[i][k]);
                }
            }
        }
        out.push(t);
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < slices[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Tuples `0 <= s_k <= caps_k` with `sum s = total`.
fn bounded_tuples(caps: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(caps: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let k = cur.len();
        if k == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left.min(caps[k]) {
            cur.push(x);
            rec(caps, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, total, &mut Vec::new(), &mut out);
    out
}

/// The bijection `S(A, B) -> T(A, B)` for `A = E_{h,h+1}(v, a)`.
pub fn lemma9_tuples(h: usize, a: &IntMatrix, b: &IntMatrix) -> Result<Vec<(Vec<u32>, ThreeArray)>> {
    let n = a.n();
    let off = a.off_diagonal();
    if h + 1 >= n || off.iter().any(|&p| p != (h, h + 1)) {
        return Err(Error::NotElementary(format!("{a} is not of the form E_{{{},{}}}(v, a)", h + 1, h + 2)));
    }
    check_margins(a, b)?;
    let total = a.get(h, h + 1);
    let caps: Vec<u32> = (0..n).map(|k| b.get(h + 1, k)).collect();
    let mut out = Vec::new();
    for s in bounded_tuples(&caps, total) {
        let mut t = ThreeArray::zero(n);
        for i in 0..n {
            for k in 0..n {
                if i == h + 1 {
                    t.set(i, i, k, b.get(i, k) - s[k]);
                    t.set(h, h + 1, k, s[k]);
                } else {
                    t.set(i, i, k, b.get(i, k));
                }
            }
        }
        out.push((s, t));
    }
    Ok(out)
}

/// `A o B` by enumerating `M(A, B)` and checking that the maximum is unique.
pub fn compose_brute(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    check_margins(a, b)?;
    let mut cands: Vec<IntMatrix> = enumerate_3arrays(a, b).iter().map(|t| t.t13()).collect();
    cands.sort();
    cands.dedup();
    if cands.is_empty() {
        return Err(Error::EmptyThreeArrays);
    }
    let top: Vec<&IntMatrix> = cands.iter().filter(|c| cands.iter().all(|x| order_leq(x, c))).collect();
    match top.as_slice() {
        [c] => Ok((*c).clone()),
        _ => Err(Error::NonUniqueMaximum(format!("{a} o {b}: {} candidates, none dominating", cands.len()))),
    }
}

/// Closed forms: diagonal factors, and elementary `A` with the largest
/// (upper) or smallest (lower) nonzero column in the adjacent row of `B`
/// carrying at least `a`.
pub fn compose_closed(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    if a.n() != b.n() || a.col_sums() != b.row_sums() {
        return None;
    }
    if a.is_diagonal() {
        return Some(b.clone());
    }
    if b.is_diagonal() {
        return Some(a.clone());
    }
    let (h, j, _, amt) = a.as_elementary()?;
    let n = b.n();
    let l = if j == h + 1 {
        (0..n).rev().find(|&k| b.get(j, k) != 0)?
    } else {
        (0..n).find(|&k| b.get(j, k) != 0)?
    };
    if b.get(j, l) < amt {
        return None;
    }
    let mut c = b.clone();
    c.set(h, l, c.get(h, l) + amt);
    c.set(j, l, c.get(j, l) - amt);
    Some(c)
}

/// `A o B`: closed form when available, brute force otherwise.
pub fn compose(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    check_margins(a, b)?;
    match compose_closed(a, b) {
        Some(c) => Ok(c),
        None => compose_brute(a, b),
    }
}

/// `E_{h,h+1}`-type helper used by tests and the decomposition.
pub(crate) fn elementary_from(rows: &Composition, h: usize, j: usize, a: u32) -> Option<IntMatrix> {
    // row sums of E_{hj}(u, a) are u + a e_h
    let mut u = rows.parts().to_vec();
    if u[h] < a {
        return None;
    }
    u[h] -= a;
    Some(IntMatrix::elementary(h, j, &Composition::new(u), a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Every pair of margin-compatible `n x n` matrices with total `d`.
    fn pairs(n: usize, d: usize) -> Vec<(IntMatrix, IntMatrix)> {
        let all = IntMatrix::all(n, d);
        let mut out = Vec::new();
        for a in &all {
            for b in &all {
                if a.col_sums() == b.row_sums() {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn three_array_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        let ts = enumerate_3arrays(&a, &b);
        assert_eq!(ts.len(), 2);
        for t in &ts {
            assert_eq!((t.t12(), t.t23()), (a.clone(), b.clone()));
        }
        assert!(enumerate_3arrays(&a, &m(&[&[2, 0], &[0, 1]])).is_empty());

        let v = Composition::new(vec![2, 1]);
        let b = m(&[&[1, 1], &[1, 0]]);
        let ts = enumerate_3arrays(&IntMatrix::diag(&v), &b);
        assert_eq!(ts.len(), 1);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(ts[0].get(i, j, k), if i == j { b.get(j, k) } else { 0 });
                }
            }
        }
    }

    #[test]
    fn lemma9_example() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        let ts = lemma9_tuples(0, &a, &b).unwrap();
        let got: Vec<(Vec<u32>, IntMatrix)> = ts.iter().map(|(s, t)| (s.clone(), t.t13())).collect();
        assert!(got.contains(&(vec![1, 0], m(&[&[2, 0], &[0, 1]]))));
        assert!(got.contains(&(vec![0, 1], m(&[&[1, 1], &[1, 0]]))));
        assert_eq!(got.len(), 2);

        let v = Composition::new(vec![1, 2]);
        let ts = lemma9_tuples(0, &IntMatrix::diag(&v), &IntMatrix::diag(&v)).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].0, vec![0, 0]);
        assert_eq!(ts[0].1.t13(), IntMatrix::diag(&v));

        assert!(lemma9_tuples(0, &m(&[&[0, 1], &[1, 0]]), &b).is_err());
    }

    #[test]
    fn lemma9_matches_enumeration() {
        for n in 2..=3 {
            for d in 0..=4 {
                for (a, b) in pairs(n, d) {
                    for h in 0..n - 1 {
                        let Ok(ts) = lemma9_tuples(h, &a, &b) else { continue };
                        let mut from_s: Vec<ThreeArray> = ts.iter().map(|(_, t)| t.clone()).collect();
                        from_s.sort();
                        assert_eq!(from_s, enumerate_3arrays(&a, &b), "{a} {b}");
                        for (s, t) in &ts {
                            let mut c = b.clone();
                            for (k, &sk) in s.iter().enumerate() {
                                c.set(h, k, c.get(h, k) + sk);
                                c.set(h + 1, k, c.get(h + 1, k) - sk);
                            }
                            assert_eq!(t.t13(), c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(compose(&a, &b).unwrap(), m(&[&[1, 1], &[1, 0]]));
        assert_eq!(compose_brute(&a, &b).unwrap(), m(&[&[1, 1], &[1, 0]]));
        assert!(matches!(compose(&a, &a), Err(Error::Margin(_))));

        for (v1, v2, x, y) in [(1, 1, 1, 1), (0, 2, 2, 1), (2, 0, 1, 3)] {
            let a = m(&[&[v1 + y, x], &[0, v2]]);
            let b = m(&[&[v1, y], &[0, v2 + x]]);
            let expect = m(&[&[v1, x + y], &[0, v2]]);
            assert_eq!(compose_brute(&a, &b).unwrap(), expect);
            assert_eq!(compose(&a, &b).unwrap(), expect);
        }
    }

    #[test]
    fn compose_is_maximum() {
        for n in 1..=3 {
            for d in 0..=4 {
                for (a, b) in pairs(n, d) {
                    let c = compose_brute(&a, &b).unwrap();
                    let ms: Vec<IntMatrix> = enumerate_3arrays(&a, &b).iter().map(|t| t.t13()).collect();
                    assert!(ms.contains(&c));
                    assert!(ms.iter().all(|x| order_leq(x, &c)));
                }
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_brute_force() {
        let mut hits = 0;
        for n in 2..=3 {
            for d in 0..=4 {
                for (a, b) in pairs(n, d) {
                    if let Some(c) = compose_closed(&a, &b) {
                        assert_eq!(c, compose_brute(&a, &b).unwrap(), "{a} o {b}");
                        hits += 1;
                    }
                }
            }
        }
        assert!(hits > 100);
    }
}
