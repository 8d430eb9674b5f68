use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::{rational_from_f64, Matrix, Root, Scalar};
use crate::error::{Error, Result};

const TRACE_TOL: f64 = 1e-12;

/// Assignment `α ↦ C_α` of traceless diagonal matrices to the roots of gl_n.
///
/// Each value is stored as its diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanMap {
    n: usize,
    /// Indexed by `k * n + l`; the diagonal slots `k == l` are unused.
    values: Vec<Vec<f64>>,
}

impl CartanMap {
    pub fn from_fn(n: usize, mut f: impl FnMut(Root) -> Vec<f64>) -> Self {
        let mut values = vec![vec![0.0; n]; n * n];
        for r in Root::all(n) {
            values[r.k() * n + r.l()] = f(r);
        }
        Self { n, values }
    }

    /// `C_α ≡ 0`.
    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| vec![0.0; n])
    }

    /// `C_α = s · H_α` for every root.
    pub fn scaled_coroot(n: usize, s: f64) -> Self {
        Self::from_fn(n, |r| {
            let mut d = vec![0.0; n];
            d[r.k()] = s;
            d[r.l()] = -s;
            d
        })
    }

    /// `C_α = −H_α`.
    pub fn case_one(n: usize) -> Self {
        Self::scaled_coroot(n, -1.0)
    }

    /// `C_α = H_α`.
    pub fn case_two(n: usize) -> Self {
        Self::scaled_coroot(n, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn diag(&self, root: Root) -> &[f64] {
        &self.values[root.k() * self.n + root.l()]
    }

    pub fn matrix(&self, root: Root) -> Matrix<f64> {
        Matrix::diagonal(self.diag(root))
    }

    /// `max_α ‖C_{−α} + C_α‖`.
    pub fn antisymmetry_residual(&self) -> f64 {
        Root::all(self.n)
            .flat_map(|r| {
                self.diag(r)
                    .iter()
                    .zip(self.diag(r.negate()))
                    .map(|(a, b)| (a + b).abs())
            })
            .fold(0.0, f64::max)
    }

    /// `max_{α,β} |β(C_α) − α(C_β)|`.
    pub fn pairing_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in Root::all(self.n) {
            for b in Root::all(self.n) {
                worst = worst.max((b.eval(self.diag(a)) - a.eval(self.diag(b))).abs());
            }
        }
        worst
    }

    /// `max_α |tr C_α|`.
    pub fn trace_residual(&self) -> f64 {
        Root::all(self.n)
            .map(|r| self.diag(r).iter().sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

/// Cartan matrix of `sl_n` in the simple-root basis: `A_ij = α_i(H_{α_j})`.
fn cartan_matrix(n: usize) -> Matrix<BigRational> {
    Matrix::from_fn(n - 1, |i, j| {
        BigRational::from_i64(if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        })
    })
}

fn exact(x: f64) -> Result<BigRational> {
    rational_from_f64(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

/// Extends values given on the simple roots `λ_i − λ_{i+1}` to every root.
///
/// For each positive root `α`, `C_α` is the traceless diagonal matrix solving
/// `α_i(C_α) = α(C_{α_i})` for all simple `α_i`, expressed in the coroot basis
/// `{H_{α_j}}`. The solve runs in exact rational arithmetic on the (dyadic)
/// input values, so the result is the correctly rounded exact extension.
/// Negative roots follow from `C_{−α} = −C_α`. The simple values
/// must themselves satisfy `α_j(C_{α_i}) = α_i(C_{α_j})`.
pub fn extend_simple_c(simple_values: &[Vec<f64>], n: usize) -> Result<CartanMap> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    if simple_values.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: simple_values.len(),
        });
    }
    for v in simple_values {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let scale = v.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if v.iter().sum::<f64>().abs() > TRACE_TOL * scale {
            return Err(Error::InvalidParameter(
                "simple-root value is not traceless".into(),
            ));
        }
    }
    for i in 0..n.saturating_sub(1) {
        for j in i + 1..n - 1 {
            let a = Root::simple(j).eval(&simple_values[i]);
            let b = Root::simple(i).eval(&simple_values[j]);
            let scale = a.abs().max(b.abs()).max(1.0);
            if (a - b).abs() > TRACE_TOL * scale {
                return Err(Error::AsymmetricSimplePairing {
                    i,
                    j,
                    residual: (a - b).abs(),
                });
            }
        }
    }

    let pairing = cartan_matrix(n.max(2));
    let simple_exact = simple_values
        .iter()
        .map(|v| v.iter().map(|&x| exact(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut positive = std::collections::HashMap::new();
    for root in Root::all(n).filter(|r| r.is_positive()) {
        let rhs = simple_exact
            .iter()
            .map(|v| root.eval(v))
            .collect::<Vec<_>>();
        let coeffs = pairing
            .solve(&rhs)
            .map_err(|_| Error::Internal("Cartan matrix is singular".into()))?;
        let mut diag = vec![BigRational::from_i64(0); n];
        for (j, c) in coeffs.into_iter().enumerate() {
            diag[j] = diag[j].clone() + c.clone();
            diag[j + 1] = diag[j + 1].clone() - c;
        }
        let diag = diag
            .iter()
            .map(|x| {
                x.to_f64()
                    .ok_or_else(|| Error::Internal("extension overflowed f64".into()))
            })
            .collect::<Result<Vec<f64>>>()?;
        positive.insert(root, diag);
    }
    Ok(CartanMap::from_fn(n, |r| {
        if r.is_positive() {
            positive[&r].clone()
        } else {
            positive[&r.negate()].iter().map(|x| -x).collect()
        }
    }))
}
