use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An ordered tuple `(v_1, .., v_n)` of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn d(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts[i]
    }

    /// `v_1 + .. + v_i`; `prefix(0) = 0`, `prefix(n) = d`.
    pub fn prefix(&self, i: usize) -> usize {
        self.parts[..i].iter().map(|&p| p as usize).sum()
    }

    /// The 0-based index range of the `i`-th segment (0-based `i`).
    pub fn segment(&self, i: usize) -> core::ops::Range<usize> {
        self.prefix(i)..self.prefix(i + 1)
    }

    pub fn segments(&self) -> SegPartition {
        SegPartition { d: self.d(), pieces: (0..self.n()).map(|i| self.segment(i).collect()).collect() }
    }

    /// `v + e_i - e_j`, or `None` if a part would become negative.
    pub fn shifted(&self, i: usize, j: usize) -> Option<Composition> {
        if i == j {
            return Some(self.clone());
        }
        if self.parts[j] == 0 {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] += 1;
        parts[j] -= 1;
        Some(Composition { parts })
    }

    /// All compositions of `d` into `n` parts, in lexicographic order.
    pub fn all(n: usize, d: usize) -> Vec<Composition> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(Composition { parts: cur.clone() });
                cur.pop();
                return;
            }
            for p in 0..=left {
                cur.push(p);
                rec(n, left - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Composition { parts: Vec::new() });
            }
            return out;
        }
        rec(n, d as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// An ordered list of disjoint subsets of `{0, .., d-1}` covering it; empty
/// pieces are allowed. Each piece is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegPartition {
    pub d: usize,
    pub pieces: Vec<Vec<usize>>,
}

impl SegPartition {
    pub fn new(d: usize, mut pieces: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; d];
        for p in pieces.iter_mut() {
            p.sort_unstable();
            for &k in p.iter() {
                if k >= d || seen[k] {
                    return Err(Error::Precondition(format!("pieces are not a partition of {d} points")));
                }
                seen[k] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition(format!("pieces do not cover all {d} points")));
        }
        Ok(SegPartition { d, pieces })
    }

    /// The partition into singletons.
    pub fn discrete(d: usize) -> Self {
        SegPartition { d, pieces: (0..d).map(|k| vec![k]).collect() }
    }

    /// The one-piece partition.
    pub fn full(d: usize) -> Self {
        SegPartition { d, pieces: vec![(0..d).collect()] }
    }

    /// Piece index of every point.
    pub fn labels(&self) -> Vec<usize> {
        let mut lab = vec![0; self.d];
        for (r, p) in self.pieces.iter().enumerate() {
            for &k in p {
                lab[k] = r;
            }
        }
        lab
    }

    /// Nonempty intersections `I_r \cap J_s`, the pieces of `S_I \cap S_J`.
    pub fn meet(&self, other: &SegPartition) -> SegPartition {
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let c: Vec<usize> = a.iter().copied().filter(|k| b.contains(k)).collect();
                if !c.is_empty() {
                    pieces.push(c);
                }
            }
        }
        SegPartition { d: self.d, pieces }
    }

    /// True if every piece of `self` lies inside a piece of `coarser`.
    pub fn refines(&self, coarser: &SegPartition) -> bool {
        let lab = coarser.labels();
        self.pieces.iter().all(|p| p.windows(2).all(|w| lab[w[0]] == lab[w[1]]))
    }
}
