//! The representation of the quantum affine algebra on `⊕_v R^(v)`, `R^(v)`
//! the `S_v`-invariant Laurent polynomials in `d` variables.
//!
//! Currents act by `X(z) = sum_k X_k z^{-k}`. `E_i` moves one variable from
//! segment `i + 1` to segment `i`, `F_i` the other way, and `K^±_i` act by
//! multiplication with the expansions of a product of theta factors at
//! `z = ∞` and `z = 0`.

mod operators;
mod samples;
mod verify;

use alloc::collections::BTreeMap;

pub use operators::{
    apply_e, apply_f, h_poly, h_poly_printed, k_coeff, k_factors, k_series, power_sum_matrix, ratio_factors, ratio_series, CartanData, Sign,
};
pub use samples::{orbit_representatives, orbit_sum, sample_polys};
pub use verify::{
    check_window, relation_checks, verify_relation, verify_unit, verify_units, Check, Combination, Evaluator, Failure, Op, Relation, Report,
};

use crate::error::Result;
use crate::flagcomb::Composition;
use crate::laurent::LaurentPoly;

/// An element of `⊕_v R^(v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightVector(pub BTreeMap<Composition, LaurentPoly>);

impl WeightVector {
    pub fn single(v: Composition, f: LaurentPoly) -> Self {
        let mut m = BTreeMap::new();
        if !f.is_zero() {
            m.insert(v, f);
        }
        WeightVector(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, v: Composition, f: LaurentPoly) {
        let e = self.0.entry(v.clone()).or_insert_with(|| LaurentPoly::zero(f.nvars()));
        *e = &*e + &f;
        if e.is_zero() {
            self.0.remove(&v);
        }
    }

    fn map(&self, op: impl Fn(&Composition, &LaurentPoly) -> Result<Option<(Composition, LaurentPoly)>>) -> Result<Self> {
        let mut out = WeightVector::default();
        for (v, f) in &self.0 {
            if let Some((w, g)) = op(v, f)? {
                out.push(w, g);
            }
        }
        Ok(out)
    }

    pub fn e(&self, i: usize, k: i64) -> Result<Self> {
        self.map(|v, f| apply_e(i, k, v, f))
    }

    pub fn f(&self, i: usize, k: i64) -> Result<Self> {
        self.map(|v, f| apply_f(i, k, v, f))
    }

    pub fn k(&self, i: usize, sign: Sign, l: usize) -> Result<Self> {
        self.map(|v, f| Ok(Some((v.clone(), &k_coeff(i, sign, l, v)? * f))))
    }
}
