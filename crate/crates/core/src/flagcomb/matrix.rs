use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::composition::{Composition, SegPartition};
use crate::error::{Error, Result};

/// A square matrix of non-negative integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, entries: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(String::from("matrix must be square")));
        }
        Ok(IntMatrix { n, entries: rows.iter().flatten().copied().collect() })
    }

    pub fn diag(v: &Composition) -> Self {
        let mut m = IntMatrix::zero(v.n());
        for i in 0..v.n() {
            m.set(i, i, v.part(i));
        }
        m
    }

    /// `E_{ij}(v, a) = diag(v) + a E_{ij}`.
    pub fn elementary(i: usize, j: usize, v: &Composition, a: u32) -> Self {
        let mut m = IntMatrix::diag(v);
        m.set(i, j, m.get(i, j) + a);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.entries[i * self.n + j] = x;
    }

    /// Adds `delta` to entry `(i, j)`; `None` if it would go negative.
    pub fn add_at(&self, i: usize, j: usize, delta: i64) -> Option<IntMatrix> {
        let x = self.get(i, j) as i64 + delta;
        if x < 0 {
            return None;
        }
        let mut m = self.clone();
        m.set(i, j, x as u32);
        Some(m)
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&x| x as usize).sum()
    }

    pub fn row_sums(&self) -> Composition {
        Composition::new((0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect())
    }

    pub fn col_sums(&self) -> Composition {
        Composition::new((0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Nonzero off-diagonal positions.
    pub fn off_diagonal(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.get(i, j) != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Some((i, j, v, a))` when `self = E_{ij}(v, a)` with `|i - j| = 1`, `a > 0`.
    pub fn as_elementary(&self) -> Option<(usize, usize, Composition, u32)> {
        match self.off_diagonal().as_slice() {
            &[(i, j)] if i.abs_diff(j) == 1 => {
                let v = Composition::new((0..self.n).map(|k| self.get(k, k)).collect());
                Some((i, j, v, self.get(i, j)))
            }
            _ => None,
        }
    }

    /// `l(C) = sum_{i != j} binom(|i-j|+1, 2) c_ij`.
    pub fn length(&self) -> u64 {
        let mut l = 0u64;
        for (i, j) in self.off_diagonal() {
            let k = i.abs_diff(j) as u64 + 1;
            l += k * (k - 1) / 2 * self.get(i, j) as u64;
        }
        l
    }

    /// Entry-wise reversal of both indices, `(i, j) -> (n-1-i, n-1-j)`.
    pub fn reversed(&self) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(n - 1 - i, n - 1 - j, self.get(i, j));
            }
        }
        m
    }

    /// The blocks `[A]_{ij}`: consecutive 0-based segments of sizes `a_ij`, laid
    /// out in right-lexicographic order `(0,0), (1,0), .., (n-1,0), (0,1), ..`.
    pub fn blocks(&self) -> Blocks {
        let n = self.n;
        let mut cells = vec![Vec::new(); n * n];
        let mut next = 0;
        for j in 0..n {
            for i in 0..n {
                let a = self.get(i, j) as usize;
                cells[i * n + j] = (next..next + a).collect();
                next += a;
            }
        }
        Blocks { n, d: next, cells }
    }

    /// All `n x n` matrices with entry total `d`.
    pub fn all(n: usize, d: usize) -> Vec<IntMatrix> {
        Composition::all(n * n, d).into_iter().map(|c| IntMatrix { n, entries: c.parts().to_vec() }).collect()
    }

    /// All matrices with the given row and column sums.
    pub fn with_margins(rows: &Composition, cols: &Composition) -> Vec<IntMatrix> {
        let n = rows.n();
        contingency_tables(rows.parts(), cols.parts())
            .into_iter()
            .map(|t| IntMatrix { n, entries: t.into_iter().flatten().collect() })
            .collect()
    }

    pub fn parse(s: &str) -> Result<IntMatrix> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("[[")
            .and_then(|x| x.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("expected [[..],..], got {s:?}")))?;
        let rows = inner
            .split("],[")
            .map(|r| {
                r.split(',')
                    .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad matrix entry {x:?}"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(&rows)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows().iter().enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Tables with the given row sums and column sums, row-major.
pub fn contingency_tables(rows: &[u32], cols: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn fill_row(target: u32, caps: &[u32], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == caps.len() {
            if target <= caps[k] {
                cur.push(target);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let rest: u32 = caps[k + 1..].iter().sum();
        let lo = target.saturating_sub(rest);
        for x in lo..=target.min(caps[k]) {
            cur.push(x);
            fill_row(target - x, caps, k + 1, cur, out);
            cur.pop();
        }
    }
    fn rec(rows: &[u32], caps: &mut Vec<u32>, acc: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if acc.len() == rows.len() {
            if caps.iter().all(|&c| c == 0) {
                out.push(acc.clone());
            }
            return;
        }
        let mut choices = Vec::new();
        fill_row(rows[acc.len()], caps, 0, &mut Vec::new(), &mut choices);
        for row in choices {
            for (c, x) in caps.iter_mut().zip(&row) {
                *c -= x;
            }
            acc.push(row.clone());
            rec(rows, caps, acc, out);
            acc.pop();
            for (c, x) in caps.iter_mut().zip(&row) {
                *c += x;
            }
        }
    }
    let mut out = Vec::new();
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return out;
    }
    if rows.is_empty() {
        out.push(Vec::new());
        return out;
    }
    if cols.is_empty() {
        return out;
    }
    rec(rows, &mut cols.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// The blocks `[A]_{ij}` of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    n: usize,
    d: usize,
    cells: Vec<Vec<usize>>,
}

impl Blocks {
    pub fn block(&self, i: usize, j: usize) -> &[usize] {
        &self.cells[i * self.n + j]
    }

    /// All `n^2` blocks, indexed `i * n + j`.
    pub fn partition(&self) -> SegPartition {
        SegPartition { d: self.d, pieces: self.cells.clone() }
    }

    /// `A_1`: row unions `A_{1i} = U_j [A]_{ij}`.
    pub fn rows(&self) -> SegPartition {
        let pieces = (0..self.n)
            .map(|i| {
                let mut p: Vec<usize> = (0..self.n).flat_map(|j| self.block(i, j).iter().copied()).collect();
                p.sort_unstable();
                p
            })
            .collect();
        SegPartition { d: self.d, pieces }
    }

    /// `A_2`: column unions `A_{2j} = U_i [A]_{ij}`.
    pub fn cols(&self) -> SegPartition {
        let pieces = (0..self.n)
            .map(|j| {
                let mut p: Vec<usize> = (0..self.n).flat_map(|i| self.block(i, j).iter().copied()).collect();
                p.sort_unstable();
                p
            })
            .collect();
        SegPartition { d: self.d, pieces }
    }
}

/// An `n x n x n` array of non-negative integers, `t[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThreeArray {
    n: usize,
    t: Vec<u32>,
}

impl ThreeArray {
    pub fn zero(n: usize) -> Self {
        ThreeArray { n, t: vec![0; n * n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.t[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: u32) {
        self.t[(i * self.n + j) * self.n + k] = x;
    }

    fn marginal(&self, f: impl Fn(usize, usize, usize) -> (usize, usize)) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (r, c) = f(i, j, k);
                    m.set(r, c, m.get(r, c) + self.get(i, j, k));
                }
            }
        }
        m
    }

    pub fn t12(&self) -> IntMatrix {
        self.marginal(|i, j, _| (i, j))
    }

    pub fn t23(&self) -> IntMatrix {
        self.marginal(|_, j, k| (j, k))
    }

    pub fn t13(&self) -> IntMatrix {
        self.marginal(|i, _, k| (i, k))
    }

    /// The slices `t[i]` as matrices, first index outermost.
    pub fn slices(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, j, k)).collect()).collect()).collect()
    }
}

/// `perm_to_matrix`: `m_ij = #{a in [v]_i : sigma(a) in [w]_j}`.
pub fn perm_to_matrix(sigma: &[usize], v: &Composition, w: &Composition) -> Result<IntMatrix> {
    if v.d() != w.d() || v.n() != w.n() {
        return Err(Error::Margin(format!("compositions {v} and {w} have different sizes")));
    }
    crate::perm::validate(sigma, v.d())?;
    let wl = w.segments().labels();
    let n = v.n();
    let mut m = IntMatrix::zero(n);
    for i in 0..n {
        for a in v.segment(i) {
            let j = wl[sigma[a]];
            m.set(i, j, m.get(i, j) + 1);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn perm_matrices() {
        let v = Composition::new(vec![1, 1]);
        assert_eq!(perm_to_matrix(&[0, 1], &v, &v).unwrap(), IntMatrix::diag(&v));
        assert_eq!(perm_to_matrix(&[1, 0], &v, &v).unwrap(), m(&[&[0, 1], &[1, 0]]));
        let v2 = Composition::new(vec![2, 0]);
        assert_eq!(perm_to_matrix(&[0, 1], &v2, &v).unwrap(), m(&[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn block_layout() {
        let v = Composition::new(vec![2, 1]);
        let b = IntMatrix::diag(&v).blocks();
        assert_eq!(b.block(0, 0), &[0, 1]);
        assert_eq!(b.block(1, 1), &[2]);
        assert!(b.block(0, 1).is_empty());

        let b = m(&[&[1, 1], &[0, 0]]).blocks();
        assert_eq!((b.block(0, 0), b.block(1, 0), b.block(0, 1), b.block(1, 1)), (&[0][..], &[][..], &[1][..], &[][..]));

        let b = m(&[&[1, 0], &[1, 1]]).blocks();
        assert_eq!((b.block(0, 0), b.block(1, 0), b.block(0, 1), b.block(1, 1)), (&[0][..], &[1][..], &[][..], &[2][..]));
        assert_eq!(b.rows().pieces, vec![vec![0], vec![1, 2]]);
        assert_eq!(b.cols().pieces, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn lengths() {
        assert_eq!(IntMatrix::diag(&Composition::new(vec![2, 1])).length(), 0);
        assert_eq!(IntMatrix::elementary(0, 1, &Composition::new(vec![1, 1]), 1).length(), 1);
        assert_eq!(m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]).length(), 3);
    }

    #[test]
    fn contingency_counts() {
        // 2x2 tables with margins (2,1),(1,2): two of them
        assert_eq!(contingency_tables(&[2, 1], &[1, 2]).len(), 2);
        assert!(contingency_tables(&[1], &[2]).is_empty());
        for t in IntMatrix::with_margins(&Composition::new(vec![2, 1, 1]), &Composition::new(vec![1, 1, 2])) {
            assert_eq!(t.row_sums(), Composition::new(vec![2, 1, 1]));
            assert_eq!(t.col_sums(), Composition::new(vec![1, 1, 2]));
        }
    }

    #[test]
    fn parse_round_trip() {
        let a = m(&[&[1, 1], &[1, 0]]);
        assert_eq!(IntMatrix::parse(&format!("{a}")).unwrap(), a);
        assert_eq!(format!("{a}"), "[[1,1],[1,0]]");
        assert!(IntMatrix::parse("[[1,2],[3]]").is_err());
    }
}
