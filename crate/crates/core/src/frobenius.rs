//! The Frobenius subalgebra `F_n ⊂ gl_n` of matrices with vanishing last row,
//! its functional `Λ_n(T) = tr(J_n T)` with `J_n = Σ e_{k+1,k}`, and the
//! expansion of R′ in `F_n ∧ F_n`.
//!
//! Wedge convention: `T_a ∧ T_b = T_a⊗T_b − T_b⊗T_a`, summed over all ordered
//! pairs with an antisymmetric coefficient matrix `M`. Under it
//! `M⁻¹ = κ · G` with `G_ab = Λ_n([T_a, T_b])`, and `κ` is measured, not assumed.
//!
//! Everything here is exact: integers for the basis and `G`, rationals for `M`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{swap_factors, Matrix, Scalar, TwoTensor};
use crate::error::{Error, Result};
use crate::rmatrix::constant_r;

/// Ordered basis `T_a = e_kl`, `k < n − 1` (zero-based), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBasis {
    n: usize,
    elements: Vec<(usize, usize)>,
}

impl FrobeniusBasis {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Zero-based `(k, l)` of each `T_a = e_kl`.
    pub fn indices(&self) -> &[(usize, usize)] {
        &self.elements
    }

    pub fn matrices<T: Scalar>(&self) -> Vec<Matrix<T>> {
        self.elements
            .iter()
            .map(|&(k, l)| Matrix::unit(self.n, k, l))
            .collect()
    }

    /// Position of `e_kl` in the basis, if it belongs to `F_n`.
    pub fn position(&self, k: usize, l: usize) -> Option<usize> {
        (k + 1 < self.n && l < self.n).then(|| k * self.n + l)
    }
}

pub fn frobenius_basis(n: usize) -> Result<FrobeniusBasis> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("F_n needs n ≥ 2, got {n}")));
    }
    let elements = (0..n - 1)
        .flat_map(|k| (0..n).map(move |l| (k, l)))
        .collect();
    Ok(FrobeniusBasis { n, elements })
}

/// `J_n = Σ_k e_{k+1,k}`.
pub fn principal_nilpotent(n: usize) -> Matrix<i64> {
    Matrix::from_fn(n, |i, j| i64::from(i == j + 1))
}

/// `Λ_n(T) = tr(J_n T)`.
pub fn lambda_functional<T: Scalar>(t: &Matrix<T>) -> T {
    let n = t.dim();
    // (J T)_{ii} = T_{i−1, i}
    (1..n).fold(T::zero(), |acc, i| acc + t[(i - 1, i)].clone())
}

/// Same as [`lambda_functional`] with a dimension check.
pub fn lambda_functional_checked<T: Scalar>(t: &Matrix<T>, n: usize) -> Result<T> {
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    Ok(lambda_functional(t))
}

/// `G_ab = Λ_n([T_a, T_b])`.
pub fn coboundary_matrix(basis: &FrobeniusBasis) -> Matrix<i64> {
    let mats = basis.matrices::<i64>();
    Matrix::from_fn(basis.len(), |a, b| {
        lambda_functional(&(mats[a].matmul(&mats[b]) - mats[b].matmul(&mats[a])))
    })
}

/// Antisymmetric `M` with `R′ = Σ_{a,b} M_ab (T_a⊗T_b − T_b⊗T_a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionMatrix {
    pub n: usize,
    pub m: Matrix<BigRational>,
}

pub fn expansion_matrix(rp: &TwoTensor<i64>, basis: &FrobeniusBasis) -> Result<ExpansionMatrix> {
    let n = basis.dim();
    rp.ensure_same_dim(n)?;
    if rp
        .nonzero_entries()
        .iter()
        .any(|&((i, _, k, _), _)| i == n - 1 || k == n - 1)
    {
        return Err(Error::NotInFrobenius);
    }
    if !(rp.clone() + swap_factors(rp)).is_zero() {
        return Err(Error::NotAntisymmetric);
    }
    let idx = basis.indices();
    // the double sum counts T_a⊗T_b once from M_ab and once from −M_ba
    let m = Matrix::from_fn(basis.len(), |a, b| {
        let ((i, j), (k, l)) = (idx[a], idx[b]);
        BigRational::new(rp[(i, j, k, l)].into(), 2.into())
    });
    Ok(ExpansionMatrix { n, m })
}

/// `Σ_{a,b} M_ab (T_a⊗T_b − T_b⊗T_a)`.
pub fn reconstruct_from_expansion(
    m: &ExpansionMatrix,
    basis: &FrobeniusBasis,
) -> TwoTensor<BigRational> {
    let mut out = TwoTensor::<BigRational>::zeros(basis.dim());
    let idx = basis.indices();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            let c = &m.m[(a, b)];
            if c.is_zero() {
                continue;
            }
            let ((i, j), (k, l)) = (idx[a], idx[b]);
            out[(i, j, k, l)] = out[(i, j, k, l)].clone() + c.clone();
            out[(k, l, i, j)] = out[(k, l, i, j)].clone() - c.clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusCheck {
    pub n: usize,
    pub m: ExpansionMatrix,
    pub gram: Matrix<i64>,
    /// `None` when `M` is singular.
    pub m_inverse: Option<Matrix<BigRational>>,
    /// Least-squares scalar with `M⁻¹ ≈ κ G`.
    pub kappa: Option<BigRational>,
    /// `‖M⁻¹ − κ G‖_max`.
    pub residual: Option<BigRational>,
}

impl FrobeniusCheck {
    pub fn invertible(&self) -> bool {
        self.m_inverse.is_some()
    }

    pub fn passed(&self) -> bool {
        self.residual.as_ref().is_some_and(Zero::is_zero)
    }
}

pub fn frobenius_inverse_check(n: usize) -> Result<FrobeniusCheck> {
    let basis = frobenius_basis(n)?;
    let m = expansion_matrix(&constant_r(n), &basis)?;
    let gram = coboundary_matrix(&basis);
    let g = gram.map(|&x| BigRational::from_i64(x));
    let m_inverse = m.m.inverse().ok();
    let (kappa, residual) = match &m_inverse {
        None => (None, None),
        Some(inv) => {
            let dot = |x: &Matrix<BigRational>, y: &Matrix<BigRational>| {
                x.as_slice()
                    .iter()
                    .zip(y.as_slice())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            };
            let gg = dot(&g, &g);
            if gg.is_zero() {
                return Err(Error::Internal("coboundary matrix vanishes".into()));
            }
            let kappa = dot(inv, &g) / gg;
            let diff = inv.clone() - g.scale(&kappa);
            let residual = diff
                .as_slice()
                .iter()
                .map(|x| x.abs())
                .fold(BigRational::zero(), |acc, x| if x > acc { x } else { acc });
            (Some(kappa), Some(residual))
        }
    };
    Ok(FrobeniusCheck {
        n,
        m,
        gram,
        m_inverse,
        kappa,
        residual,
    })
}
