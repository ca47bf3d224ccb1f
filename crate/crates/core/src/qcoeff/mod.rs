//! Exact arithmetic in `Q(q)` and quantum-integer combinatorics.

mod poly;
mod qrat;
mod quantum;

pub use poly::QPoly;
pub use qrat::QRat;
pub use quantum::{cyclotomic, det, eval_q, gauss_p, qfact, qint, root_of_unity_order, CYCLOTOMIC_BOUND};
