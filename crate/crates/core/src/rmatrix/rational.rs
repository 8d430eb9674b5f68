//! The rational case: the gauge matrix φ(q), the constant r-matrix R′, and
//! closed forms of the case-I data generic over the scalar field so they can
//! be evaluated exactly at rational points.

use num_complex::Complex64;

use super::gauge::{build_gauge_potential, GaugeCase, FD_STEP};
use crate::algebra::{Field, GlMatrix, Matrix, Scalar, TwoTensor};
use crate::error::{Error, Result};
use crate::potentials::{PotentialKind, SINGULARITY_GUARD};

/// Index quadruple `(a, b, c, d)` of R′, one-based.
pub type Quadruple = (usize, usize, usize, usize);

/// Coefficients of `Π_{l∈others} (1 + q_l t)`: entry `m` is the elementary
/// symmetric polynomial `e_m` of `others`.
fn elementary_symmetric<T: Scalar>(others: impl Iterator<Item = T>) -> Vec<T> {
    let mut coeffs = vec![T::one()];
    for x in others {
        coeffs.push(T::zero());
        for m in (1..coeffs.len()).rev() {
            coeffs[m] = coeffs[m].clone() + x.clone() * coeffs[m - 1].clone();
        }
    }
    coeffs
}

fn check_distinct<T: Scalar>(q: &[T], guard: f64) -> Result<()> {
    for k in 0..q.len() {
        for l in k + 1..q.len() {
            let d = (q[k].clone() - q[l].clone()).magnitude();
            if d == 0.0 || d < guard {
                return Err(Error::CoincidentCoordinates { k, l });
            }
        }
    }
    Ok(())
}

/// `φ_jk(q) = e_{n−j}(q with q_k omitted)`; the last row is all ones.
pub fn phi_matrix<T: Scalar>(q: &[T]) -> Result<Matrix<T>> {
    check_distinct(q, 0.0)?;
    let n = q.len();
    let columns: Vec<Vec<T>> = (0..n)
        .map(|k| {
            elementary_symmetric(
                q.iter()
                    .enumerate()
                    .filter(|&(l, _)| l != k)
                    .map(|(_, x)| x.clone()),
            )
        })
        .collect();
    Ok(Matrix::from_fn(n, |j, k| columns[k][n - 1 - j].clone()))
}

/// φ(q) at a real point, guarded against near-coincident coordinates.
pub fn build_phi(q: &[f64]) -> Result<GlMatrix> {
    check_distinct(q, SINGULARITY_GUARD)?;
    Ok(GlMatrix::from_real(&phi_matrix(q)?))
}

/// `Π_{j<k} (q_k − q_j)`.
pub fn vandermonde_product<T: Scalar>(q: &[T]) -> T {
    let mut acc = T::one();
    for k in 0..q.len() {
        for j in 0..k {
            acc = acc * (q[k].clone() - q[j].clone());
        }
    }
    acc
}

/// `max_k ‖∂_k φ(q) + φ(q) A_k(q)‖_max` for the rational case-I potentials.
pub fn phi_gauge_check(q: &[f64]) -> Result<f64> {
    let n = q.len();
    let phi = build_phi(q)?;
    let a = build_gauge_potential(q, PotentialKind::Rational, GaugeCase::I, 0.0)?;
    let mut worst = 0.0f64;
    for k in 0..n {
        let h = FD_STEP * q[k].abs().max(1.0);
        let mut plus = q.to_vec();
        plus[k] += h;
        let mut minus = q.to_vec();
        minus[k] -= h;
        let d =
            (build_phi(&plus)? - build_phi(&minus)?).scale(&Complex64::new(1.0 / (2.0 * h), 0.0));
        worst = worst.max((d + phi.matmul(&a[k])).max_abs());
    }
    Ok(worst)
}

/// `∂_k φ(q) + φ(q) A_k(q)` for each `k`, with `∂_k` the central difference of
/// step `h` and `A_k` the case-I rational closed form.
///
/// Every entry of φ is affine in each single coordinate, so the central
/// difference is the exact derivative for any `h`; in an exact field the
/// result vanishes identically.
pub fn phi_gauge_defect<T: Field>(q: &[T], h: &T) -> Result<Vec<Matrix<T>>> {
    let phi = phi_matrix(q)?;
    let a = rational_case_one_gauge(q)?;
    let two_h = h.clone() + h.clone();
    (0..q.len())
        .map(|k| {
            let mut plus = q.to_vec();
            plus[k] = plus[k].clone() + h.clone();
            let mut minus = q.to_vec();
            minus[k] = minus[k].clone() - h.clone();
            let diff = phi_matrix(&plus)? - phi_matrix(&minus)?;
            let d = diff.map(|x| x.clone() / two_h.clone());
            Ok(d + phi.matmul(&a[k]))
        })
        .collect()
}

/// The index set
/// `S = {a + c + 1 = b + d, 1 ≤ b ≤ a < n, b ≤ c < n, 1 ≤ d ≤ n}`, ordered lexicographically.
pub fn constant_r_index_set(n: usize) -> Vec<Quadruple> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..=a {
            for c in b..n {
                // d is fixed by the sum rule
                let Some(d) = (a + c + 1).checked_sub(b) else {
                    continue;
                };
                if (1..=n).contains(&d) {
                    out.push((a, b, c, d));
                }
            }
        }
    }
    out
}

/// `R′ = Σ_{(a,b,c,d)∈S} (e_ab ⊗ e_cd − e_cd ⊗ e_ab)` with integer entries.
/// Zero for `n < 2`.
pub fn constant_r(n: usize) -> TwoTensor<i64> {
    let mut r = TwoTensor::zeros(n);
    for (a, b, c, d) in constant_r_index_set(n) {
        r[(a - 1, b - 1, c - 1, d - 1)] += 1;
        r[(c - 1, d - 1, a - 1, b - 1)] -= 1;
    }
    r
}

/// Case-I rational `R(q)` in closed form:
/// `Σ_{k≠l} (w′_kl/w_kl) e_kl⊗e_lk − w_kl e_kk⊗e_kl` with `w = 1/ξ`, `w′/w = −1/ξ`.
pub fn rational_case_one_r<T: Field>(q: &[T]) -> Result<TwoTensor<T>> {
    check_distinct(q, 0.0)?;
    let n = q.len();
    let mut r = TwoTensor::<T>::zeros(n);
    for k in 0..n {
        for l in (0..n).filter(|&l| l != k) {
            let w = T::one() / (q[k].clone() - q[l].clone());
            r[(k, l, l, k)] = r[(k, l, l, k)].clone() - w.clone();
            r[(k, k, k, l)] = r[(k, k, k, l)].clone() - w;
        }
    }
    Ok(r)
}

/// Case-I rational `A_k(q) = Σ_{l≠k} (w_kl e_kl − (w′_lk/w_lk) e_ll)` in closed form.
pub fn rational_case_one_gauge<T: Field>(q: &[T]) -> Result<Vec<Matrix<T>>> {
    check_distinct(q, 0.0)?;
    let n = q.len();
    Ok((0..n)
        .map(|k| {
            let mut a = Matrix::zeros(n);
            for l in (0..n).filter(|&l| l != k) {
                a[(k, l)] = T::one() / (q[k].clone() - q[l].clone());
                a[(l, l)] = T::one() / (q[l].clone() - q[k].clone());
            }
            a
        })
        .collect())
}

/// The constant r-matrix obtained by gauging the case-I rational `R(q)` with `φ(q)`,
/// evaluated in the scalar field of `q`.
pub fn gauged_rational_r<T: Field>(q: &[T]) -> Result<TwoTensor<T>> {
    let r = rational_case_one_r(q)?;
    let a = rational_case_one_gauge(q)?;
    super::gauge::gauge_transform_r(&phi_matrix(q)?, &r, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational, swap_factors};
    use num_rational::BigRational;

    #[test]
    fn phi_two_particles() {
        let phi = phi_matrix(&[3.0, 5.0]).unwrap();
        assert_eq!(phi.rows(), vec![vec![5.0, 3.0], vec![1.0, 1.0]]);
        assert!((phi.determinant() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn phi_determinant_three() {
        let q: Vec<BigRational> = [1, 2, 4].iter().map(|&x| rational(x, 1)).collect();
        let phi = phi_matrix(&q).unwrap();
        assert_eq!(phi.determinant(), rational(6, 1));
        assert_eq!(vandermonde_product(&q), rational(6, 1));
    }

    #[test]
    fn phi_last_row_ones() {
        for n in 1..=6 {
            let q: Vec<f64> = (0..n).map(|i| 0.3 + 1.7 * i as f64).collect();
            let phi = phi_matrix(&q).unwrap();
            for k in 0..n {
                assert_eq!(phi[(n - 1, k)], 1.0);
            }
        }
    }

    #[test]
    fn phi_rejects_coincident() {
        assert!(matches!(
            build_phi(&[1.0, 2.0, 1.0]),
            Err(Error::CoincidentCoordinates { k: 0, l: 2 })
        ));
    }

    #[test]
    fn index_set_small() {
        assert!(constant_r_index_set(1).is_empty());
        assert!(constant_r(1).is_zero());
        assert_eq!(constant_r_index_set(2), vec![(1, 1, 1, 2)]);
        assert_eq!(
            constant_r_index_set(3),
            vec![(1, 1, 1, 2), (1, 1, 2, 3), (2, 1, 1, 3), (2, 2, 2, 3)]
        );
        assert_eq!(constant_r(3).nonzero_entries().len(), 8);
    }

    #[test]
    fn constant_r_antisymmetric() {
        for n in 1..=6 {
            let r = constant_r(n);
            assert!((r.clone() + swap_factors(&r)).is_zero());
        }
    }

    #[test]
    fn single_particle_phi_check() {
        assert_eq!(phi_gauge_check(&[0.4]).unwrap(), 0.0);
    }

    #[test]
    fn exact_phi_gauge_defect_vanishes() {
        let q: Vec<BigRational> = vec![
            rational(1, 3),
            rational(-2, 1),
            rational(5, 7),
            rational(9, 4),
        ];
        for m in phi_gauge_defect(&q, &rational(1, 10)).unwrap() {
            assert!(m.is_zero());
        }
        let f = phi_gauge_defect(&[0.3, 1.7, 2.2], &1e-3).unwrap();
        assert!(f.iter().all(|m| m.max_abs() < 1e-9));
    }

    #[test]
    fn exact_gauged_r_at_rational_point() {
        let q: Vec<BigRational> = vec![rational(1, 3), rational(-2, 1), rational(5, 7)];
        let rp = gauged_rational_r(&q).unwrap();
        assert_eq!(rp, constant_r(3).map(|&x| BigRational::from_i64(x)));
    }
}
