use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_complex::Complex64;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Tensor slot in gl_n ⊗ gl_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

/// Element of gl_n ⊗ gl_n.
///
/// Entry `(i, j, k, l)` is the coefficient of `e_ij ⊗ e_kl` (zero-based).
/// As an operator on C^n ⊗ C^n this is the n²×n² matrix with row `(i, k)`
/// and column `(j, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTensor<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> TwoTensor<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n.pow(4)],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TwoTensor<U> {
        TwoTensor {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Adds `s · (a ⊗ b)` in place.
    pub fn add_product(&mut self, s: &T, a: &Matrix<T>, b: &Matrix<T>) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let x = &a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let sx = s.clone() * x.clone();
                for k in 0..n {
                    for l in 0..n {
                        let y = &b[(k, l)];
                        if y.is_zero() {
                            continue;
                        }
                        let o = self.offset(i, j, k, l);
                        self.data[o] = self.data[o].clone() + sx.clone() * y.clone();
                    }
                }
            }
        }
    }

    /// Nonzero entries as `((i, j, k, l), value)`, in index order.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize, usize, usize), T)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = &self[(i, j, k, l)];
                        if !v.is_zero() {
                            out.push(((i, j, k, l), v.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `a` from the left in the given slot: `(a⊗1)·T` or `(1⊗a)·T`.
    pub fn left_multiply(&self, slot: Slot, a: &Matrix<T>) -> Self {
        let n = self.n;
        match slot {
            Slot::First => Self::from_fn(n, |i, j, k, l| {
                (0..n).fold(T::zero(), |acc, m| {
                    acc + a[(i, m)].clone() * self[(m, j, k, l)].clone()
                })
            }),
            Slot::Second => Self::from_fn(n, |i, j, k, l| {
                (0..n).fold(T::zero(), |acc, m| {
                    acc + a[(k, m)].clone() * self[(i, j, m, l)].clone()
                })
            }),
        }
    }

    /// Multiplies by `a` from the right in the given slot: `T·(a⊗1)` or `T·(1⊗a)`.
    pub fn right_multiply(&self, slot: Slot, a: &Matrix<T>) -> Self {
        let n = self.n;
        match slot {
            Slot::First => Self::from_fn(n, |i, j, k, l| {
                (0..n).fold(T::zero(), |acc, m| {
                    acc + self[(i, m, k, l)].clone() * a[(m, j)].clone()
                })
            }),
            Slot::Second => Self::from_fn(n, |i, j, k, l| {
                (0..n).fold(T::zero(), |acc, m| {
                    acc + self[(i, j, k, m)].clone() * a[(m, l)].clone()
                })
            }),
        }
    }

    /// Operator product `self · other` on C^n ⊗ C^n.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other.n)?;
        let n = self.n;
        Ok(Self::from_fn(n, |i, j, k, l| {
            let mut acc = T::zero();
            for a in 0..n {
                for b in 0..n {
                    acc = acc + self[(i, a, k, b)].clone() * other[(a, j, b, l)].clone();
                }
            }
            acc
        }))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Partial trace over the first slot, `Σ_i T(i,i,·,·)`.
    pub fn trace_first(&self) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(n, |k, l| {
            (0..n).fold(T::zero(), |acc, i| acc + self[(i, i, k, l)].clone())
        })
    }

    /// Partial trace over the second slot, `Σ_k T(·,·,k,k)`.
    pub fn trace_second(&self) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| acc + self[(i, j, k, k)].clone())
        })
    }

    pub(crate) fn ensure_same_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }
}

impl TwoTensor<i64> {
    pub fn to_complex(&self) -> TwoTensor<Complex64> {
        self.map(|&x| Complex64::new(x as f64, 0.0))
    }
}

impl<T> Index<(usize, usize, usize, usize)> for TwoTensor<T> {
    type Output = T;
    fn index(&self, (i, j, k, l): (usize, usize, usize, usize)) -> &T {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }
}

impl<T> IndexMut<(usize, usize, usize, usize)> for TwoTensor<T> {
    fn index_mut(&mut self, (i, j, k, l): (usize, usize, usize, usize)) -> &mut T {
        let n = self.n;
        &mut self.data[((i * n + j) * n + k) * n + l]
    }
}

macro_rules! elementwise {
    ($ty:ident, $tr:ident, $f:ident, $op:tt) => {
        impl<T: Scalar> $tr for $ty<T> {
            type Output = Self;
            fn $f(self, rhs: Self) -> Self {
                assert_eq!(self.n, rhs.n, "tensor dimension mismatch");
                Self {
                    n: self.n,
                    data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
    };
}

elementwise!(TwoTensor, Add, add, +);
elementwise!(TwoTensor, Sub, sub, -);
elementwise!(ThreeTensor, Add, add, +);
elementwise!(ThreeTensor, Sub, sub, -);

impl<T: Scalar> Neg for TwoTensor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            n: self.n,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

/// `a ⊗ b`.
pub fn tensor_product<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<TwoTensor<T>> {
    a.ensure_same_dim(b)?;
    Ok(TwoTensor::from_fn(a.dim(), |i, j, k, l| {
        a[(i, j)].clone() * b[(k, l)].clone()
    }))
}

/// Exchanges the two tensor factors (R₁₂ ↦ R₂₁).
pub fn swap_factors<T: Scalar>(t: &TwoTensor<T>) -> TwoTensor<T> {
    TwoTensor::from_fn(t.n, |i, j, k, l| t[(k, l, i, j)].clone())
}

/// Commutator of `t` with `a` acting in `slot`: `[T, a⊗1]` or `[T, 1⊗a]`.
pub fn bracket_action<T: Scalar>(
    t: &TwoTensor<T>,
    a: &Matrix<T>,
    slot: Slot,
) -> Result<TwoTensor<T>> {
    t.ensure_same_dim(a.dim())?;
    Ok(t.right_multiply(slot, a) - t.left_multiply(slot, a))
}

/// Element of gl_n ⊗ gl_n ⊗ gl_n.
///
/// Entry `(i1, j1, i2, j2, i3, j3)` is the coefficient of
/// `e_{i1 j1} ⊗ e_{i2 j2} ⊗ e_{i3 j3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTensor<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> ThreeTensor<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n.pow(6)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }
}

impl<T> Index<[usize; 6]> for ThreeTensor<T> {
    type Output = T;
    fn index(&self, idx: [usize; 6]) -> &T {
        let o = idx.iter().fold(0, |acc, &x| acc * self.n + x);
        &self.data[o]
    }
}

impl<T> IndexMut<[usize; 6]> for ThreeTensor<T> {
    fn index_mut(&mut self, idx: [usize; 6]) -> &mut T {
        let n = self.n;
        let o = idx.iter().fold(0, |acc, &x| acc * n + x);
        &mut self.data[o]
    }
}

/// Left side of the classical Yang–Baxter equation,
/// `[R₁₂, R₁₃] + [R₁₂, R₂₃] + [R₁₃, R₂₃]`, with its largest entry magnitude.
pub fn cybe_residual<T: Scalar>(r: &TwoTensor<T>) -> (ThreeTensor<T>, f64) {
    let n = r.n;
    let mut out = ThreeTensor::zeros(n);
    for i1 in 0..n {
        for j1 in 0..n {
            for i2 in 0..n {
                for j2 in 0..n {
                    for i3 in 0..n {
                        for j3 in 0..n {
                            let mut acc = T::zero();
                            for m in 0..n {
                                // R12 R13 - R13 R12
                                acc = acc + r[(i1, m, i2, j2)].clone() * r[(m, j1, i3, j3)].clone()
                                    - r[(i1, m, i3, j3)].clone() * r[(m, j1, i2, j2)].clone();
                                // R12 R23 - R23 R12
                                acc = acc + r[(i1, j1, i2, m)].clone() * r[(m, j2, i3, j3)].clone()
                                    - r[(i2, m, i3, j3)].clone() * r[(i1, j1, m, j2)].clone();
                                // R13 R23 - R23 R13
                                acc = acc + r[(i1, j1, i3, m)].clone() * r[(i2, j2, m, j3)].clone()
                                    - r[(i2, j2, i3, m)].clone() * r[(i1, j1, m, j3)].clone();
                            }
                            out[[i1, j1, i2, j2, i3, j3]] = acc;
                        }
                    }
                }
            }
        }
    }
    let max = out.max_abs();
    (out, max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize, l: usize) -> Matrix<i64> {
        Matrix::unit(n, k, l)
    }

    #[test]
    fn product_of_identities() {
        let t = tensor_product(&Matrix::<i64>::identity(2), &Matrix::identity(2)).unwrap();
        for ((i, j, k, l), v) in t.nonzero_entries() {
            assert!(i == j && k == l);
            assert_eq!(v, 1);
        }
        assert_eq!(t.nonzero_entries().len(), 4);
    }

    #[test]
    fn product_of_units() {
        let t = tensor_product(&e(2, 0, 0), &e(2, 0, 1)).unwrap();
        assert_eq!(t.nonzero_entries(), vec![((0, 0, 0, 1), 1)]);
        let t = tensor_product(&e(2, 0, 1).scale(&2), &e(2, 1, 0).scale(&3)).unwrap();
        assert_eq!(t.nonzero_entries(), vec![((0, 1, 1, 0), 6)]);
    }

    #[test]
    fn product_dimension_mismatch() {
        assert!(tensor_product(&e(2, 0, 0), &e(3, 0, 0)).is_err());
        let t = TwoTensor::<i64>::zeros(2);
        assert!(bracket_action(&t, &e(3, 0, 0), Slot::First).is_err());
    }

    #[test]
    fn swap_of_product() {
        let a = e(3, 0, 2).scale(&5) + e(3, 1, 1);
        let b = e(3, 2, 0) - e(3, 1, 2);
        assert_eq!(
            swap_factors(&tensor_product(&a, &b).unwrap()),
            tensor_product(&b, &a).unwrap()
        );
    }

    #[test]
    fn swap_of_antisymmetric_is_negation() {
        let t = tensor_product(&e(2, 0, 0), &e(2, 0, 1)).unwrap()
            - tensor_product(&e(2, 0, 1), &e(2, 0, 0)).unwrap();
        assert_eq!(swap_factors(&t), -t);
    }

    #[test]
    fn bracket_on_decomposable() {
        let a = e(3, 0, 1) + e(3, 2, 2).scale(&2);
        let b = e(3, 1, 0);
        let c = e(3, 1, 2) - e(3, 0, 0);
        let t = tensor_product(&a, &b).unwrap();
        let lhs = bracket_action(&t, &c, Slot::First).unwrap();
        let rhs = tensor_product(&a.commutator(&c).unwrap(), &b).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = bracket_action(&t, &c, Slot::Second).unwrap();
        let rhs = tensor_product(&a, &b.commutator(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_with_identity_vanishes() {
        let t = tensor_product(&(e(3, 0, 1) + e(3, 2, 0)), &e(3, 1, 1)).unwrap();
        assert!(bracket_action(&t, &Matrix::identity(3), Slot::First)
            .unwrap()
            .is_zero());
        let t = tensor_product(&e(2, 0, 0), &e(2, 0, 1)).unwrap();
        assert!(bracket_action(&t, &e(2, 0, 1), Slot::Second)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cybe_of_zero() {
        let (_, r) = cybe_residual(&TwoTensor::<i64>::zeros(3));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn partial_traces() {
        let t = tensor_product(&e(2, 0, 0), &e(2, 0, 1)).unwrap();
        assert_eq!(t.trace_first(), e(2, 0, 1));
        assert!(t.trace_second().is_zero());
    }
}
