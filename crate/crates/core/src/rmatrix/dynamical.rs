use num_complex::Complex64;

use super::cartan::{extend_simple_c, CartanMap};
use crate::algebra::{bracket_action, swap_factors, GlMatrix, Matrix, Root, Slot, TwoTensor};
use crate::error::{Error, Result};
use crate::lax::{build_lax, lax_poisson_tensor, pair_table, PhasePoint};
use crate::potentials::PotentialKind;

/// Choice of the Cartan map `α ↦ C_α`.
#[derive(Clone, Debug, PartialEq)]
pub enum CMode {
    /// `C_α = −H_α`
    CaseI,
    /// `C_α = H_α`
    CaseII,
    /// Values on the simple roots, extended by [`extend_simple_c`].
    General(Vec<Vec<f64>>),
}

/// Choice of the `1 ⊗ Q(q)` term.
#[derive(Clone, Debug, PartialEq)]
pub enum QMode {
    Zero,
    /// `Q(q) = (1/n) Σ_α w_α E_α`, which puts `R` in `sl_n ⊗ sl_n`.
    SlnProjection,
    /// A fixed user-supplied `Q`.
    Constant(GlMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixConfig {
    pub kind: PotentialKind,
    pub c_mode: CMode,
    pub q_mode: QMode,
    pub omega: f64,
}

impl RMatrixConfig {
    pub fn new(kind: PotentialKind, c_mode: CMode) -> Self {
        Self {
            kind,
            c_mode,
            q_mode: QMode::Zero,
            omega: 0.0,
        }
    }

    pub fn with_q_mode(mut self, q_mode: QMode) -> Self {
        self.q_mode = q_mode;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn cartan_map(&self, n: usize) -> Result<CartanMap> {
        match &self.c_mode {
            CMode::CaseI => Ok(CartanMap::case_one(n)),
            CMode::CaseII => Ok(CartanMap::case_two(n)),
            CMode::General(simple) => extend_simple_c(simple, n),
        }
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The dynamical r-matrix
///
/// ```text
/// R(q) = Σ_α (w′_α/w_α) E_α⊗E_{−α} + ½ Σ_α w_α (C_α − K_α)⊗E_α + 1⊗Q(q)
/// ```
pub fn build_dynamical_r(
    q: &[f64],
    cfg: &RMatrixConfig,
    c: &CartanMap,
) -> Result<TwoTensor<Complex64>> {
    let n = q.len();
    if c.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.dim(),
        });
    }
    let table = pair_table(q, cfg.kind)?;
    let mut r = TwoTensor::zeros(n);
    for root in Root::all(n) {
        let (k, l) = (root.k(), root.l());
        let pv = table[k][l].expect("off-diagonal pair");
        let e = Matrix::unit(n, k, l);
        r.add_product(&real(pv.log_derivative()), &e, &Matrix::unit(n, l, k));
        let mut ck = c.matrix(root).map(|&x| real(x));
        ck[(k, k)] -= 1.0;
        ck[(l, l)] -= 1.0;
        r.add_product(&real(0.5 * pv.w), &ck, &e);
    }
    let q_term = match &cfg.q_mode {
        QMode::Zero => None,
        QMode::SlnProjection => Some(Matrix::from_fn(n, |k, l| {
            table[k][l].map_or(real(0.0), |pv| real(pv.w / n as f64))
        })),
        QMode::Constant(m) => {
            if m.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
            Some(m.clone())
        }
    };
    if let Some(qm) = q_term {
        r.add_product(&real(1.0), &Matrix::identity(n), &qm);
    }
    Ok(r)
}

/// `{L₁,L₂} − [R₁₂, L₁] + [R₂₁, L₂]` with `L₁ = L⊗1`, `L₂ = 1⊗L`.
pub fn rmatrix_residual_tensor(
    x: &PhasePoint,
    r: &TwoTensor<Complex64>,
    kind: PotentialKind,
) -> Result<TwoTensor<Complex64>> {
    r.ensure_same_dim(x.dim())?;
    let l = build_lax(x, kind)?;
    let poisson = lax_poisson_tensor(x, kind)?;
    let r21 = swap_factors(r);
    Ok(poisson - bracket_action(r, &l, Slot::First)? + bracket_action(&r21, &l, Slot::Second)?)
}

/// Largest entry of [`rmatrix_residual_tensor`].
pub fn rmatrix_residual(
    x: &PhasePoint,
    r: &TwoTensor<Complex64>,
    kind: PotentialKind,
) -> Result<f64> {
    Ok(rmatrix_residual_tensor(x, r, kind)?.max_abs())
}

/// Same residual with the Poisson tensor's sign flipped, `−{L₁,L₂} − …`.
///
/// Used to detect a bracket-convention mismatch.
pub fn rmatrix_residual_flipped(
    x: &PhasePoint,
    r: &TwoTensor<Complex64>,
    kind: PotentialKind,
) -> Result<f64> {
    let poisson = lax_poisson_tensor(x, kind)?;
    let t = rmatrix_residual_tensor(x, r, kind)?;
    Ok((t - poisson.scale(&real(2.0))).max_abs())
}
