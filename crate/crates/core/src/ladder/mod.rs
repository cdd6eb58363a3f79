//! Operator algebra on `P̂_N`: the total derivative `D̂`, the reduction
//! operator `R̂`, and the constructions of `F_N` and the current `J_N`.

mod opvector;
mod phi;
mod reduction;
mod words;

pub use opvector::{rotate_diag, DiagOp, OpVector};
pub use phi::{pi0_reduce, PhiPoly};
pub use reduction::{compute_a, compute_f, compute_j, kernel_check, kernel_vector, CurrentExpr};
pub use words::{
    alpha_cross_check, double_factorial, enumerate_words, verify_word_expansion, word_expansion, AlphaMismatch, Letter,
    Word, WordCheck, WordExpansion,
};
