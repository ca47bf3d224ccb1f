//! Compositions, matrices with margins, 3-arrays, the order on matrices, the
//! composition `A o B`, block partitions and the generator decomposition.

mod compose;
mod composition;
mod decompose;
mod matrix;
mod order;

pub use compose::{compose, compose_brute, compose_closed, enumerate_3arrays, lemma9_tuples};
pub use composition::{Composition, SegPartition};
pub use decompose::{generator_decomposition, split_elementary, split_step, Decomposition, DecompositionStep};
pub use matrix::{contingency_tables, perm_to_matrix, Blocks, IntMatrix, ThreeArray};
pub use order::order_leq;
