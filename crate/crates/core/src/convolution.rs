//! The graded convolution product on `⊕_A R^(A)` in the cases with explicit
//! formulas: pull-back and push-forward along the two projections, products
//! with a diagonal factor, with an elementary factor, and the Grassmannian
//! product of two elementary classes in the same position.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flagcomb::{compose, Composition, IntMatrix, SegPartition};
use crate::laurent::{LaurentPoly, StructuredFraction};
use crate::perm;
use crate::qcoeff::QRat;
use crate::symmetrize::{is_invariant, symmetrize};

/// An element of `R^(A)`: a polynomial invariant under `S_[A]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    matrix: IntMatrix,
    value: LaurentPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Rows,
    Cols,
}

impl GradedClass {
    pub fn new(matrix: IntMatrix, value: LaurentPoly) -> Result<Self> {
        if value.nvars() != matrix.total() {
            return Err(Error::VarCount(matrix.total(), value.nvars()));
        }
        if !is_invariant(&value, &matrix.blocks().partition()) {
            return Err(Error::NotInvariant(format!("{} under the blocks of {}", value.pretty(), matrix)));
        }
        Ok(GradedClass { matrix, value })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }
}

fn side_partition(a: &IntMatrix, side: Side) -> SegPartition {
    let b = a.blocks();
    match side {
        Side::Rows => b.rows(),
        Side::Cols => b.cols(),
    }
}

/// `rho_A^{A_i *}`: the inclusion `R^(A_i) ⊂ R^(A)`.
pub fn pullback(f: &LaurentPoly, a: &IntMatrix, side: Side) -> Result<GradedClass> {
    if f.nvars() != a.total() {
        return Err(Error::VarCount(a.total(), f.nvars()));
    }
    if !is_invariant(f, &side_partition(a, side)) {
        return Err(Error::NotInvariant(format!("{} under A_{}", f.pretty(), if side == Side::Rows { 1 } else { 2 })));
    }
    GradedClass::new(a.clone(), f.clone())
}

/// The factor `prod (1 - x_s/x_t)^{-1}` of the push-forward.
pub fn pushforward_kernel(a: &IntMatrix, side: Side) -> StructuredFraction {
    let n = a.n();
    let d = a.total();
    let b = a.blocks();
    let mut acc = StructuredFraction::one(d);
    for j in 0..n {
        for k in 0..n {
            for l in k + 1..n {
                let (ss, ts) = match side {
                    Side::Rows => (b.block(j, l), b.block(j, k)),
                    Side::Cols => (b.block(l, j), b.block(k, j)),
                };
                for &s in ss {
                    for &t in ts {
                        // (1 - x_s/x_t)^{-1} = x_t / (x_t - x_s)
                        let f = StructuredFraction::over_binomial(LaurentPoly::var(d, t), &QRat::one(), t, &QRat::one(), s)
                            .expect("distinct variables");
                        acc = acc.mul(&f);
                    }
                }
            }
        }
    }
    acc
}

/// `Rp_{i,A *}(f) = S_A^{A_i}(f prod (1 - x_s/x_t)^{-1})`.
pub fn pushforward(f: &GradedClass, side: Side) -> Result<LaurentPoly> {
    let a = &f.matrix;
    let kernel = pushforward_kernel(a, side).mul_poly(&f.value);
    let out = symmetrize(&kernel, &a.blocks().partition(), &side_partition(a, side))?.to_poly()?;
    debug_assert!(is_invariant(&out, &side_partition(a, side)));
    Ok(out)
}

/// Sends the segments `[v]_i` increasingly onto the row unions `B_{1i}`.
fn row_relabeling(v: &Composition, b: &IntMatrix) -> Vec<usize> {
    let rows = b.blocks().rows();
    let mut sigma = Vec::with_capacity(v.d());
    for i in 0..v.n() {
        sigma.extend(rows.pieces[i].iter().copied());
    }
    sigma
}

/// `f * g = f g` for `f` in `R^(v)`, `diag(v) o B = B`.
pub fn star_diag(v: &Composition, f: &LaurentPoly, g: &GradedClass) -> Result<GradedClass> {
    let b = &g.matrix;
    if b.row_sums() != *v {
        return Err(Error::Margin(format!("row sums of {b} are {}, not {v}", b.row_sums())));
    }
    if !is_invariant(f, &v.segments()) {
        return Err(Error::NotInvariant(format!("{} under S_{v}", f.pretty())));
    }
    let fb = f.permute_vars(&row_relabeling(v, b))?;
    GradedClass::new(b.clone(), &fb * &g.value)
}

/// Data of an elementary product: the target `A o B` and the relabeling `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryProduct {
    pub target: IntMatrix,
    pub w: Vec<usize>,
    /// `(source block, target block)` pairs `w` must respect setwise.
    pub conditions: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Checks the hypotheses for `A = E_{h,h+-1}(v, a)` and builds `w`, mapping
/// every source block increasingly onto its target set.
pub fn elementary_product(a: &IntMatrix, b: &IntMatrix) -> Result<ElementaryProduct> {
    let (h, j, _, amt) = a
        .as_elementary()
        .ok_or_else(|| Error::NotElementary(format!("{a} is not of the form E_{{i,i+-1}}(v, a)")))?;
    let n = a.n();
    if a.col_sums() != b.row_sums() {
        return Err(Error::Precondition(format!("column sums of {a} differ from row sums of {b}")));
    }
    let upper = j == h + 1;
    let l = if upper { (0..n).rev().find(|&k| b.get(j, k) != 0) } else { (0..n).find(|&k| b.get(j, k) != 0) };
    let Some(l) = l else {
        return Err(Error::Precondition(format!("row {} of {b} is zero", j + 1)));
    };
    if b.get(j, l) < amt {
        return Err(Error::Precondition(format!("b_{{{},{}}} = {} is smaller than a = {amt}", j + 1, l + 1, b.get(j, l))));
    }
    if b.get(h, l) != 0 {
        return Err(Error::Precondition(format!("b_{{{},{}}} = {} is not zero", h + 1, l + 1, b.get(h, l))));
    }
    let mut c = b.clone();
    c.set(h, l, amt);
    c.set(j, l, b.get(j, l) - amt);
    let ab = a.blocks();
    let cb = c.blocks();
    let crow = cb.rows();
    let mut conditions = Vec::new();
    let mut hh: Vec<usize> = (0..n).filter(|&k| k != l).flat_map(|k| cb.block(h, k).iter().copied()).collect();
    hh.sort_unstable();
    conditions.push((ab.block(h, h).to_vec(), hh));
    conditions.push((ab.block(h, j).to_vec(), cb.block(h, l).to_vec()));
    for i in (0..n).filter(|&i| i != h) {
        conditions.push((ab.block(i, i).to_vec(), crow.pieces[i].clone()));
    }
    let mut w = alloc::vec![usize::MAX; c.total()];
    for (src, dst) in &conditions {
        for (s, t) in src.iter().zip(dst) {
            w[*s] = *t;
        }
    }
    perm::validate(&w, c.total())?;
    // S_C must lie in S_B, and w S_C w^{-1} in S_A
    if !cb.partition().refines(&b.blocks().partition()) {
        return Err(Error::Precondition(format!("blocks of {c} do not refine those of {b}")));
    }
    let winv = perm::inverse(&w);
    let alab = ab.partition().labels();
    if cb.partition().pieces.iter().any(|p| p.windows(2).any(|x| alab[winv[x[0]]] != alab[winv[x[1]]])) {
        return Err(Error::Precondition(String::from("relabeling does not conjugate S_(A o B) into S_A")));
    }
    Ok(ElementaryProduct { target: c, w, conditions })
}

/// `f * g = w(f) g` in `R^(A o B)` for elementary `A`.
pub fn star_elem(f: &GradedClass, g: &GradedClass) -> Result<GradedClass> {
    let p = elementary_product(&f.matrix, &g.matrix)?;
    star_elem_with(f, g, &p.w)
}

/// As [`star_elem`] with a caller-supplied relabeling `w`.
pub fn star_elem_with(f: &GradedClass, g: &GradedClass, w: &[usize]) -> Result<GradedClass> {
    let p = elementary_product(&f.matrix, &g.matrix)?;
    debug_assert_eq!(Ok(p.target.clone()), compose(&f.matrix, &g.matrix));
    for (src, dst) in &p.conditions {
        if src.iter().any(|s| !dst.contains(&w[*s])) {
            return Err(Error::Precondition(String::from("relabeling does not match the block conditions")));
        }
    }
    let fw = f.value.permute_vars(w)?;
    GradedClass::new(p.target, &fw * &g.value)
}

/// All permutations satisfying the block conditions (small `d` only).
pub fn valid_relabelings(a: &IntMatrix, b: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let p = elementary_product(a, b)?;
    Ok(perm::all(p.target.total())
        .into_iter()
        .filter(|w| p.conditions.iter().all(|(src, dst)| src.iter().all(|s| dst.contains(&w[*s]))))
        .collect())
}

/// The matrices of the Grassmannian product:
/// `A = E_{i,i+1}(v + b e_i, a)`, `B = E_{i,i+1}(v + a e_{i+1}, b)`, `A o B = E_{i,i+1}(v, a + b)`.
pub fn grassmann_matrices(i: usize, v: &Composition, a: u32, b: u32) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    if i + 1 >= v.n() {
        return Err(Error::Precondition(format!("index {} needs at least {} parts", i + 1, i + 2)));
    }
    let mut va = v.parts().to_vec();
    va[i] += b;
    let mut vb = v.parts().to_vec();
    vb[i + 1] += a;
    Ok((
        IntMatrix::elementary(i, i + 1, &Composition::new(va), a),
        IntMatrix::elementary(i, i + 1, &Composition::new(vb), b),
        IntMatrix::elementary(i, i + 1, v, a + b),
    ))
}

/// `prod_{s in I_2} prod_{t in I_3} (q^2 x_t - x_s) / (x_t - x_s)`.
pub fn grassmann_kernel(d: usize, i2: &[usize], i3: &[usize]) -> StructuredFraction {
    let q2 = QRat::q_pow(2);
    let mut acc = StructuredFraction::one(d);
    for &s in i2 {
        for &t in i3 {
            let num = &LaurentPoly::var(d, t).scale(&q2) - &LaurentPoly::var(d, s);
            acc = acc.mul(&StructuredFraction::over_binomial(num, &QRat::one(), t, &QRat::one(), s).expect("distinct"));
        }
    }
    acc
}

/// The kernel as displayed, `prod (1 - q^2 x_t/x_s) / (1 - x_s/x_t)`.
pub fn grassmann_kernel_displayed(d: usize, i2: &[usize], i3: &[usize]) -> StructuredFraction {
    let q2 = QRat::q_pow(2);
    let mut acc = StructuredFraction::one(d);
    for &s in i2 {
        for &t in i3 {
            // (x_s - q^2 x_t)/x_s * x_t/(x_t - x_s)
            let mut mono = crate::laurent::Monomial::one(d);
            mono.0[t] += 1;
            mono.0[s] -= 1;
            let num = &(&LaurentPoly::var(d, s) - &LaurentPoly::var(d, t).scale(&q2)) * &LaurentPoly::term(mono, QRat::one());
            acc = acc.mul(&StructuredFraction::over_binomial(num, &QRat::one(), t, &QRat::one(), s).expect("distinct"));
        }
    }
    acc
}

/// Product of `f` in `R^(A)` and `g` in `R^(B)` for the Grassmannian pair,
/// `S_{I_2 x I_3}^{I_2 ∪ I_3}(f g K)` with `K` the normalized kernel.
pub fn star_grassmann(i: usize, v: &Composition, a: u32, b: u32, f: &LaurentPoly, g: &LaurentPoly) -> Result<GradedClass> {
    let (am, bm, cm) = grassmann_matrices(i, v, a, b)?;
    let fa = GradedClass::new(am.clone(), f.clone())?;
    let gb = GradedClass::new(bm.clone(), g.clone())?;
    let d = cm.total();
    let i2 = bm.blocks().block(i, i + 1).to_vec();
    let i3 = am.blocks().block(i, i + 1).to_vec();
    let fg = &fa.value * &gb.value;
    let kernel = grassmann_kernel(d, &i2, &i3).mul_poly(&fg);
    let mut src: Vec<Vec<usize>> = (0..d).filter(|k| !i2.contains(k) && !i3.contains(k)).map(|k| alloc::vec![k]).collect();
    let mut dst = src.clone();
    src.push(i2.clone());
    src.push(i3.clone());
    let mut union = i2.clone();
    union.extend(&i3);
    dst.push(union);
    let src = SegPartition::new(d, src)?;
    let dst = SegPartition::new(d, dst)?;
    let out = symmetrize(&kernel, &src, &dst)?.to_poly()?;
    GradedClass::new(cm, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::gauss_p;

    fn m(rows: &[&[u32]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn x(d: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(d, i)
    }

    fn elementary_symmetric_sum(d: usize) -> LaurentPoly {
        (0..d).fold(LaurentPoly::zero(d), |acc, k| &acc + &x(d, k))
    }

    #[test]
    fn pushforward_examples() {
        let a = m(&[&[1, 1], &[0, 0]]);
        let push = |f: LaurentPoly| pushforward(&GradedClass::new(a.clone(), f).unwrap(), Side::Rows).unwrap();
        assert_eq!(push(LaurentPoly::one(2)), LaurentPoly::one(2));
        assert_eq!(push(x(2, 0)), &x(2, 0) + &x(2, 1));
        assert_eq!(push(x(2, 1)), LaurentPoly::zero(2));
    }

    #[test]
    fn pullback_examples() {
        let a = m(&[&[1, 1], &[0, 0]]);
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!(pullback(&s, &a, Side::Rows).unwrap().value(), &s);
        assert!(pullback(&x(2, 0), &a, Side::Rows).is_err());
        assert_eq!(pullback(&LaurentPoly::one(2), &a, Side::Cols).unwrap().value(), &LaurentPoly::one(2));
    }

    #[test]
    fn push_pull_on_diagonal() {
        let v = Composition::new(alloc::vec![2, 1]);
        let a = IntMatrix::diag(&v);
        let f = &(&x(3, 0) * &x(3, 1)) + &x(3, 2).pow(3);
        for side in [Side::Rows, Side::Cols] {
            let c = pullback(&f, &a, side).unwrap();
            assert_eq!(pushforward(&c, side).unwrap(), f);
        }
    }

    #[test]
    fn star_diag_examples() {
        let v = Composition::new(alloc::vec![2, 1]);
        let b = m(&[&[1, 1], &[1, 0]]);
        let g = GradedClass::new(b.clone(), x(3, 1).pow(2)).unwrap();
        assert_eq!(star_diag(&v, &LaurentPoly::one(3), &g).unwrap(), g);
        let s = elementary_symmetric_sum(3);
        assert_eq!(star_diag(&v, &s, &g).unwrap().value(), &(&s * g.value()));
        // x1 x2 is a function of the first segment, which sits at rows {1, 3}
        let out = star_diag(&v, &(&x(3, 0) * &x(3, 1)), &GradedClass::new(b.clone(), LaurentPoly::one(3)).unwrap()).unwrap();
        assert_eq!(out.value(), &(&x(3, 0) * &x(3, 2)));

        let bad = GradedClass::new(m(&[&[1, 0], &[1, 0]]), LaurentPoly::one(2)).unwrap();
        assert!(matches!(star_diag(&Composition::new(alloc::vec![2, 0]), &LaurentPoly::one(2), &bad), Err(Error::Margin(_))));
        assert!(star_diag(&Composition::new(alloc::vec![1, 1]), &LaurentPoly::one(2), &bad).is_ok());
    }

    #[test]
    fn star_elem_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        let c = m(&[&[1, 1], &[1, 0]]);
        let one = |mm: &IntMatrix| GradedClass::new(mm.clone(), LaurentPoly::one(3)).unwrap();
        assert_eq!(star_elem(&one(&a), &one(&b)).unwrap(), one(&c));
        let s = elementary_symmetric_sum(3);
        let g = GradedClass::new(b.clone(), s.clone()).unwrap();
        assert_eq!(star_elem(&one(&a), &g).unwrap().value(), &s);
        // the [A]_{12} variable is x2; it lands in [A o B]_{12} = {x3}
        let f = GradedClass::new(a.clone(), x(3, 1)).unwrap();
        let out = star_elem(&f, &one(&b)).unwrap();
        assert_eq!(out.matrix(), &c);
        assert_eq!(out.value(), &x(3, 2));
    }

    #[test]
    fn star_elem_preconditions() {
        let a = m(&[&[1, 1], &[0, 1]]);
        // b_{hl} != 0
        assert!(star_elem(
            &GradedClass::new(a.clone(), LaurentPoly::one(3)).unwrap(),
            &GradedClass::new(m(&[&[0, 1], &[1, 1]]), LaurentPoly::one(3)).unwrap()
        )
        .is_err());
        // not elementary
        let anti = m(&[&[0, 1], &[1, 0]]);
        assert!(elementary_product(&anti, &anti).is_err());
    }

    /// All pairs where the elementary product applies, `n <= 3`, `d <= 4`.
    fn applicable_pairs() -> Vec<(IntMatrix, IntMatrix)> {
        let mut out = Vec::new();
        for n in 2..=3 {
            for d in 1..=4 {
                let all = IntMatrix::all(n, d);
                for a in all.iter().filter(|a| a.as_elementary().is_some()) {
                    for b in &all {
                        if elementary_product(a, b).is_ok() {
                            out.push((a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn star_elem_grading_and_relabeling_choice() {
        let pairs = applicable_pairs();
        assert!(pairs.len() > 50);
        let mut lower = 0;
        for (a, b) in pairs {
            let p = elementary_product(&a, &b).unwrap();
            assert_eq!(p.target, crate::flagcomb::compose_brute(&a, &b).unwrap(), "{a} {b}");
            let (h, j, _, _) = a.as_elementary().unwrap();
            if j < h {
                lower += 1;
            }
            // a non-symmetric f in R^(A): power of the first variable of each block
            let d = a.total();
            let ab = a.blocks();
            let mut f = LaurentPoly::one(d);
            for (r, piece) in ab.partition().pieces.iter().enumerate() {
                let sym = piece.iter().fold(LaurentPoly::zero(d), |acc, &k| &acc + &x(d, k));
                f = &f * &sym.pow(1 + (r % 3) as u32);
            }
            let fa = GradedClass::new(a.clone(), f).unwrap();
            let gb = GradedClass::new(b.clone(), LaurentPoly::one(d)).unwrap();
            let base = star_elem(&fa, &gb).unwrap();
            if d <= 3 {
                for w in valid_relabelings(&a, &b).unwrap() {
                    assert_eq!(star_elem_with(&fa, &gb, &w).unwrap(), base);
                }
            }
        }
        assert!(lower > 0);
    }

    #[test]
    fn grassmann_gives_gauss_polynomial() {
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                if a + b > 4 {
                    continue;
                }
                let v = Composition::new(alloc::vec![0, 0]);
                let d = (a + b) as usize;
                let out = star_grassmann(0, &v, a, b, &LaurentPoly::one(d), &LaurentPoly::one(d)).unwrap();
                assert_eq!(out.value(), &LaurentPoly::constant(d, gauss_p(a, b)), "a={a} b={b}");
                assert_eq!(out.matrix(), &m(&[&[0, a + b], &[0, 0]]));
            }
        }
    }

    #[test]
    fn grassmann_with_invariant_factor() {
        let v = Composition::new(alloc::vec![0, 1, 1]);
        let (am, _, _) = grassmann_matrices(0, &v, 1, 2).unwrap();
        let d = am.total();
        let ab = am.blocks();
        // symmetric in I_2 ∪ I_3 and in every other block
        let mut f = LaurentPoly::one(d);
        let mut union: Vec<usize> = ab.block(0, 1).to_vec();
        let (_, bm, _) = grassmann_matrices(0, &v, 1, 2).unwrap();
        union.extend(bm.blocks().block(0, 1));
        let e1 = union.iter().fold(LaurentPoly::zero(d), |acc, &k| &acc + &x(d, k));
        f = &f * &e1;
        let out = star_grassmann(0, &v, 1, 2, &f, &LaurentPoly::one(d)).unwrap();
        assert_eq!(out.value(), &f.scale(&gauss_p(1, 2)));
    }

    #[test]
    fn displayed_kernel_differs_by_monomials() {
        // (q^2 x_t - x_s)/(x_t - x_s) = (-x_s/x_t) (1 - q^2 x_t/x_s)/(1 - x_s/x_t)
        let d = 3;
        let (i2, i3) = (alloc::vec![0], alloc::vec![1, 2]);
        let norm = grassmann_kernel(d, &i2, &i3);
        let disp = grassmann_kernel_displayed(d, &i2, &i3);
        let mut mono = crate::laurent::Monomial::one(d);
        mono.0[0] = 2;
        mono.0[1] = -1;
        mono.0[2] = -1;
        let scaled = disp.mul_poly(&LaurentPoly::term(mono, QRat::one()));
        assert!(norm.sub(&scaled).is_zero());
    }
}
