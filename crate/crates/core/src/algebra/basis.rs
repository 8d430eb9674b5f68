use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Root `λ_k − λ_l` of gl_n, stored with zero-based `k ≠ l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    k: usize,
    l: usize,
}

impl Root {
    pub fn new(k: usize, l: usize, n: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        if l >= n {
            return Err(Error::IndexOutOfRange { index: l, n });
        }
        if k == l {
            return Err(Error::DegenerateRoot { index: k });
        }
        Ok(Self { k, l })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn l(self) -> usize {
        self.l
    }

    pub fn negate(self) -> Self {
        Self {
            k: self.l,
            l: self.k,
        }
    }

    /// `α(H)` for a diagonal matrix given by its diagonal.
    pub fn eval<T: Scalar>(self, diag: &[T]) -> T {
        diag[self.k].clone() - diag[self.l].clone()
    }

    /// Simple root `λ_i − λ_{i+1}`.
    pub fn simple(i: usize) -> Self {
        Self { k: i, l: i + 1 }
    }

    pub fn is_positive(self) -> bool {
        self.k < self.l
    }

    /// All n(n−1) roots, ordered row-major by `(k, l)`.
    pub fn all(n: usize) -> impl Iterator<Item = Root> {
        (0..n).flat_map(move |k| (0..n).filter(move |&l| l != k).map(move |l| Root { k, l }))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}−λ{}", self.k + 1, self.l + 1)
    }
}

/// Named gl_n elements attached to a Cartan index or a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `H_k = e_kk`
    Cartan(usize),
    /// `E_α = e_kl`
    RootVector(Root),
    /// `H_α = e_kk − e_ll`
    CorootH(Root),
    /// `K_α = e_kk + e_ll`
    CorootK(Root),
}

pub fn basis_element<T: Scalar>(kind: BasisKind, n: usize) -> Result<Matrix<T>> {
    let check = |r: Root| Root::new(r.k, r.l, n);
    Ok(match kind {
        BasisKind::Cartan(k) => {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
            Matrix::unit(n, k, k)
        }
        BasisKind::RootVector(r) => {
            let r = check(r)?;
            Matrix::unit(n, r.k, r.l)
        }
        BasisKind::CorootH(r) => {
            let r = check(r)?;
            Matrix::unit(n, r.k, r.k) - Matrix::unit(n, r.l, r.l)
        }
        BasisKind::CorootK(r) => {
            let r = check(r)?;
            Matrix::unit(n, r.k, r.k) + Matrix::unit(n, r.l, r.l)
        }
    })
}

/// Coefficients of `m` in the basis `{H_k} ∪ {E_α}`: the diagonal first, then
/// the roots in [`Root::all`] order.
pub fn expand<T: Scalar>(m: &Matrix<T>) -> (Vec<T>, Vec<(Root, T)>) {
    let n = m.dim();
    let cartan = (0..n).map(|k| m[(k, k)].clone()).collect();
    let roots = Root::all(n).map(|r| (r, m[(r.k, r.l)].clone())).collect();
    (cartan, roots)
}

/// Inverse of [`expand`].
pub fn reconstruct<T: Scalar>(n: usize, cartan: &[T], roots: &[(Root, T)]) -> Result<Matrix<T>> {
    let mut m = Matrix::zeros(n);
    if cartan.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cartan.len(),
        });
    }
    for (k, c) in cartan.iter().enumerate() {
        m = m + basis_element::<T>(BasisKind::Cartan(k), n)?.scale(c);
    }
    for (r, c) in roots {
        m = m + basis_element::<T>(BasisKind::RootVector(*r), n)?.scale(c);
    }
    Ok(m)
}
