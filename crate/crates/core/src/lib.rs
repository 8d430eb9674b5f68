//! Lax matrices and classical r-matrices of the degenerate (rational,
//! hyperbolic, trigonometric) Calogero–Moser models on gl_n.
//!
//! The crate builds every object the construction needs and checks the
//! identities that relate them:
//!
//! - [`lax`]: the Lax matrix, Hamiltonian, Poisson tensor `{L₁, L₂}` and the flow.
//! - [`rmatrix`]: the q-dependent r-matrix family, the gauge potentials that
//!   flatten it, the rational gauge matrix φ(q) and the constant r-matrix R′.
//! - [`frobenius`]: R′ as an element of `F_n ∧ F_n` for the Frobenius
//!   subalgebra of matrices with vanishing last row.
//! - [`sampling`]: seeded random regular phase points.
//!
//! Dense numerical checks run in `f64`/`Complex64`; integer-valued objects
//! (R′, the Yang–Baxter residual, the Frobenius data) are checked exactly.

pub mod algebra;
pub mod error;
pub mod frobenius;
pub mod lax;
pub mod potentials;
pub mod rmatrix;
pub mod sampling;

pub use error::{Error, Result};
