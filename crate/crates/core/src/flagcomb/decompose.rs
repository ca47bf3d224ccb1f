use alloc::vec;
use alloc::vec::Vec;

use super::compose::{compose, elementary_from};
use super::composition::Composition;
use super::matrix::IntMatrix;
use crate::error::Result;

/// One induction step `C = A o B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStep {
    pub current: IntMatrix,
    pub a: IntMatrix,
    pub b: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Factors `G_1, .., G_m`; `C = G_1 o (G_2 o (.. o G_m))`.
    pub factors: Vec<IntMatrix>,
    pub steps: Vec<DecompositionStep>,
}

impl Decomposition {
    /// Right-nested recomposition of the factors.
    pub fn recompose(&self) -> Result<IntMatrix> {
        let mut it = self.factors.iter().rev();
        let mut acc = it.next().expect("at least one factor").clone();
        for g in it {
            acc = compose(g, &acc)?;
        }
        Ok(acc)
    }
}

/// One step of the induction: `(A, B)` with `A` elementary and `A o B = C`.
/// `None` if `l(C) <= 1`.
pub fn split_step(c: &IntMatrix) -> Option<(IntMatrix, IntMatrix)> {
    if c.length() <= 1 {
        return None;
    }
    let n = c.n();
    let rows = c.row_sums();
    let upper: Vec<(usize, usize)> = c.off_diagonal().into_iter().filter(|&(i, j)| i < j).collect();
    let (h, l, j) = if !upper.is_empty() {
        // right-lexicographic maximum: largest column, then largest row
        let &(h, l) = upper.iter().max_by_key(|&&(i, j)| (j, i)).unwrap();
        (h, l, h + 1)
    } else {
        // mirrored rule for lower-triangular C
        let &(h, l) = c.off_diagonal().iter().min_by_key(|&&(i, j)| (j, i)).unwrap();
        (h, l, h - 1)
    };
    let amt = c.get(h, l);
    let mut b = c.clone();
    b.set(j, l, b.get(j, l) + amt);
    b.set(h, l, 0);
    let a = elementary_from(&rows, h, j, amt).expect("row sum covers the moved entry");
    debug_assert!(n == b.n());
    Some((a, b))
}

/// Splits `E_{hj}(u, a)` into `a` factors of type `E_{hj}(., 1)`.
pub fn split_elementary(g: &IntMatrix) -> Vec<IntMatrix> {
    let Some((h, j, u, a)) = g.as_elementary() else {
        return vec![g.clone()];
    };
    (0..a)
        .map(|k| {
            let mut p = u.parts().to_vec();
            p[h] += a - 1 - k;
            p[j] += k;
            IntMatrix::elementary(h, j, &Composition::new(p), 1)
        })
        .collect()
}

/// Writes `C` as a right-nested composition of diagonal matrices and
/// matrices of type `E_{i,i+-1}(u, 1)`.
pub fn generator_decomposition(c: &IntMatrix) -> Decomposition {
    let mut factors = Vec::new();
    let mut steps = Vec::new();
    let mut cur = c.clone();
    while let Some((a, b)) = split_step(&cur) {
        steps.push(DecompositionStep { current: cur.clone(), a: a.clone(), b: b.clone() });
        factors.extend(split_elementary(&a));
        cur = b;
    }
    factors.extend(split_elementary(&cur));
    Decomposition { factors, steps }
}
