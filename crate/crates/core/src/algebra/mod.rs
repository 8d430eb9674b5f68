//! gl_n in the defining representation: basis conventions, dense matrices,
//! and tensor arithmetic on gl_n⊗gl_n and gl_n⊗gl_n⊗gl_n.
//!
//! Basis conventions, with `α = λ_k − λ_l`:
//!
//! ```text
//! H_k = e_kk    E_α = e_kl    H_α = e_kk − e_ll    K_α = e_kk + e_ll
//! ```
//!
//! Indices are zero-based in code; display strings are one-based.

mod basis;
mod matrix;
mod scalar;
mod tensor;

pub use basis::{basis_element, expand, reconstruct, BasisKind, Root};
pub use matrix::{GlMatrix, Matrix};
pub use scalar::{rational, rational_from_f64, Field, Scalar};
pub use tensor::{
    bracket_action, cybe_residual, swap_factors, tensor_product, Slot, ThreeTensor, TwoTensor,
};
