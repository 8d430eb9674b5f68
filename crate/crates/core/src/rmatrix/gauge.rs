use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::cartan::CartanMap;
use super::dynamical::{build_dynamical_r, CMode, QMode, RMatrixConfig};
use crate::algebra::{bracket_action, Field, GlMatrix, Matrix, Root, Slot, TwoTensor};
use crate::error::{Error, Result};
use crate::lax::pair_table;
use crate::potentials::PotentialKind;

/// Relative central-difference step: `h_k = FD_STEP · max(1, |q_k|)`.
pub const FD_STEP: f64 = 1e-6;

/// Guard distance from coincident coordinates along gauge integration paths.
pub const PATH_GUARD: f64 = 1e-6;

/// RK4 steps per straight segment in [`integrate_gauge`].
pub const DEFAULT_GAUGE_STEPS: usize = 1000;

/// The two Cartan-map families that admit a flattening gauge potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeCase {
    I,
    II,
}

impl GaugeCase {
    pub fn c_mode(self) -> CMode {
        match self {
            Self::I => CMode::CaseI,
            Self::II => CMode::CaseII,
        }
    }
}

impl fmt::Display for GaugeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::II => "II",
        })
    }
}

impl FromStr for GaugeCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(Self::I),
            "II" | "ii" | "2" => Ok(Self::II),
            other => Err(Error::InvalidParameter(format!(
                "unknown gauge case `{other}`"
            ))),
        }
    }
}

/// Gauge potentials `A_k(q)`, `k = 1..n`, for one case and constant `Ω`:
///
/// ```text
/// A_k = Σ_l Ψ_k^l H_l + Σ_α w_α b_k^α E_α
/// b_k^{λ_m−λ_l} = δ_km + Ω  (case I),  δ_kl + Ω  (case II)
/// Ψ_k^l = ∓ w′(q_l − q_k) / w(q_l − q_k),  Ψ_k^k = 0
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeField {
    pub kind: PotentialKind,
    pub case: GaugeCase,
    pub omega: f64,
}

impl GaugeField {
    pub fn new(kind: PotentialKind, case: GaugeCase, omega: f64) -> Self {
        Self { kind, case, omega }
    }

    pub fn evaluate(&self, q: &[f64]) -> Result<Vec<GlMatrix>> {
        let n = q.len();
        let table = pair_table(q, self.kind)?;
        let sign = match self.case {
            GaugeCase::I => -1.0,
            GaugeCase::II => 1.0,
        };
        Ok((0..n)
            .map(|k| {
                let mut a = GlMatrix::zeros(n);
                for l in (0..n).filter(|&l| l != k) {
                    let pv = table[l][k].expect("off-diagonal pair");
                    a[(l, l)] = Complex64::new(sign * pv.log_derivative(), 0.0);
                }
                for root in Root::all(n) {
                    let (m, l) = (root.k(), root.l());
                    let delta = match self.case {
                        GaugeCase::I => k == m,
                        GaugeCase::II => k == l,
                    };
                    let b = f64::from(u8::from(delta)) + self.omega;
                    let w = table[m][l].expect("off-diagonal pair").w;
                    a[(m, l)] = Complex64::new(w * b, 0.0);
                }
                a
            })
            .collect())
    }
}

pub fn build_gauge_potential(
    q: &[f64],
    kind: PotentialKind,
    case: GaugeCase,
    omega: f64,
) -> Result<Vec<GlMatrix>> {
    GaugeField::new(kind, case, omega).evaluate(q)
}

fn fd_step(q: &[f64], k: usize) -> f64 {
    FD_STEP * q[k].abs().max(1.0)
}

fn shifted(q: &[f64], k: usize, h: f64) -> Vec<f64> {
    let mut out = q.to_vec();
    out[k] += h;
    out
}

/// Central difference of a matrix-valued function of `q` along `q_k`.
fn fd_matrix(
    q: &[f64],
    k: usize,
    f: impl Fn(&[f64]) -> Result<Vec<GlMatrix>>,
) -> Result<Vec<GlMatrix>> {
    let h = fd_step(q, k);
    let plus = f(&shifted(q, k, h))?;
    let minus = f(&shifted(q, k, -h))?;
    let scale = Complex64::new(1.0 / (2.0 * h), 0.0);
    Ok(plus
        .into_iter()
        .zip(minus)
        .map(|(p, m)| (p - m).scale(&scale))
        .collect())
}

fn fd_tensor(
    q: &[f64],
    k: usize,
    f: impl Fn(&[f64]) -> Result<TwoTensor<Complex64>>,
) -> Result<TwoTensor<Complex64>> {
    let h = fd_step(q, k);
    let plus = f(&shifted(q, k, h))?;
    let minus = f(&shifted(q, k, -h))?;
    Ok((plus - minus).scale(&Complex64::new(1.0 / (2.0 * h), 0.0)))
}

/// `max_{k,l} ‖∂_k A_l − ∂_l A_k + [A_l, A_k]‖_max`, derivatives by central differences.
pub fn curvature_residual(
    q: &[f64],
    kind: PotentialKind,
    case: GaugeCase,
    omega: f64,
) -> Result<f64> {
    let field = GaugeField::new(kind, case, omega);
    let n = q.len();
    let a = field.evaluate(q)?;
    let da = (0..n)
        .map(|k| fd_matrix(q, k, |x| field.evaluate(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for k in 0..n {
        for l in 0..n {
            let curv = da[k][l].clone() - da[l][k].clone() + a[l].commutator(&a[k])?;
            worst = worst.max(curv.max_abs());
        }
    }
    Ok(worst)
}

fn gauge_case_for(cfg: &RMatrixConfig) -> Result<GaugeCase> {
    if cfg.q_mode != QMode::Zero {
        return Err(Error::Unsupported(
            "the flattening gauge potentials require Q = 0".into(),
        ));
    }
    match cfg.c_mode {
        CMode::CaseI => Ok(GaugeCase::I),
        CMode::CaseII => Ok(GaugeCase::II),
        CMode::General(_) => Err(Error::Unsupported(
            "no flattening gauge potential exists for a general Cartan map".into(),
        )),
    }
}

/// Per-`k` tensors of
///
/// ```text
/// ∂_k R + Σ_l ∂_l A_k ⊗ H_l + [R, A_k⊗1 + 1⊗A_k] + Σ_l A_l ⊗ [H_l, A_k]
/// ```
///
/// where `R` is built from `c` and the gauge family is selected by `cfg.c_mode`.
pub fn gauge_condition_tensors(
    q: &[f64],
    cfg: &RMatrixConfig,
    c: &CartanMap,
) -> Result<Vec<TwoTensor<Complex64>>> {
    let case = gauge_case_for(cfg)?;
    let n = q.len();
    let field = GaugeField::new(cfg.kind, case, cfg.omega);
    let r = build_dynamical_r(q, cfg, c)?;
    let a = field.evaluate(q)?;
    let da = (0..n)
        .map(|l| fd_matrix(q, l, |x| field.evaluate(x)))
        .collect::<Result<Vec<_>>>()?;
    let h: Vec<GlMatrix> = (0..n).map(|l| Matrix::unit(n, l, l)).collect();
    (0..n)
        .map(|k| {
            let mut t = fd_tensor(q, k, |x| build_dynamical_r(x, cfg, c))?;
            let one = Complex64::new(1.0, 0.0);
            for l in 0..n {
                t.add_product(&one, &da[l][k], &h[l]);
                t.add_product(&one, &a[l], &h[l].commutator(&a[k])?);
            }
            t = t
                + bracket_action(&r, &a[k], Slot::First)?
                + bracket_action(&r, &a[k], Slot::Second)?;
            Ok(t)
        })
        .collect()
}

/// Largest entry over `k` of [`gauge_condition_tensors`].
pub fn gauge_condition_residual(q: &[f64], cfg: &RMatrixConfig, c: &CartanMap) -> Result<f64> {
    Ok(gauge_condition_tensors(q, cfg, c)?
        .iter()
        .map(TwoTensor::max_abs)
        .fold(0.0, f64::max))
}

/// `R′ = (g⊗g)(R + Σ_k A_k⊗H_k)(g⊗g)⁻¹`.
pub fn gauge_transform_r<T: Field>(
    g: &Matrix<T>,
    r: &TwoTensor<T>,
    a: &[Matrix<T>],
) -> Result<TwoTensor<T>> {
    let n = g.dim();
    r.ensure_same_dim(n)?;
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let ginv = g.inverse()?;
    let mut x = r.clone();
    for (k, ak) in a.iter().enumerate() {
        ak.ensure_same_dim(g)?;
        x.add_product(&T::one(), ak, &Matrix::unit(n, k, k));
    }
    Ok(x.left_multiply(Slot::First, g)
        .left_multiply(Slot::Second, g)
        .right_multiply(Slot::First, &ginv)
        .right_multiply(Slot::Second, &ginv))
}

fn path_guard(q: &[f64], kind: PotentialKind, s: f64) -> Result<()> {
    let n = q.len();
    for k in 0..n {
        for l in k + 1..n {
            if kind.singularity_distance(q[k] - q[l]) < PATH_GUARD {
                return Err(Error::PathSingular { s, k, l });
            }
        }
    }
    Ok(())
}

/// Solves `dg/ds = −g · Σ_k q̇_k A_k(q(s))` along a piecewise-linear path with
/// `g = 1` at the first vertex. The path parameter runs over `[0, segments]`.
pub fn integrate_gauge_path(
    path: &[Vec<f64>],
    kind: PotentialKind,
    case: GaugeCase,
    omega: f64,
    steps_per_segment: usize,
) -> Result<GlMatrix> {
    let Some(first) = path.first() else {
        return Err(Error::InvalidParameter("empty gauge path".into()));
    };
    let n = first.len();
    if let Some(bad) = path.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    if steps_per_segment == 0 {
        return Err(Error::InvalidParameter(
            "need at least one step per segment".into(),
        ));
    }
    let field = GaugeField::new(kind, case, omega);
    let mut g = GlMatrix::identity(n);
    path_guard(first, kind, 0.0)?;
    for (seg, pair) in path.windows(2).enumerate() {
        let (start, end) = (&pair[0], &pair[1]);
        let velocity: Vec<f64> = start.iter().zip(end).map(|(a, b)| b - a).collect();
        if velocity.iter().all(|&v| v == 0.0) {
            continue;
        }
        let generator = |s: f64| -> Result<GlMatrix> {
            let q: Vec<f64> = start
                .iter()
                .zip(&velocity)
                .map(|(a, v)| a + s * v)
                .collect();
            path_guard(&q, kind, seg as f64 + s)?;
            let a = field.evaluate(&q)?;
            let mut out = GlMatrix::zeros(n);
            for (ak, v) in a.iter().zip(&velocity) {
                out = out + ak.scale(&Complex64::new(-v, 0.0));
            }
            Ok(out)
        };
        let ds = 1.0 / steps_per_segment as f64;
        let half = Complex64::new(ds / 2.0, 0.0);
        let full = Complex64::new(ds, 0.0);
        for step in 0..steps_per_segment {
            let s = step as f64 * ds;
            let (m0, m1, m2) = (generator(s)?, generator(s + ds / 2.0)?, generator(s + ds)?);
            let k1 = g.matmul(&m0);
            let k2 = (g.clone() + k1.scale(&half)).matmul(&m1);
            let k3 = (g.clone() + k2.scale(&half)).matmul(&m1);
            let k4 = (g.clone() + k3.scale(&full)).matmul(&m2);
            let incr =
                k1 + k2.scale(&Complex64::new(2.0, 0.0)) + k3.scale(&Complex64::new(2.0, 0.0)) + k4;
            g = g + incr.scale(&Complex64::new(ds / 6.0, 0.0));
        }
    }
    Ok(g)
}

/// [`integrate_gauge_path`] along the straight segment from `q_start` to `q_end`.
pub fn integrate_gauge(
    q_start: &[f64],
    q_end: &[f64],
    kind: PotentialKind,
    case: GaugeCase,
    omega: f64,
) -> Result<GlMatrix> {
    integrate_gauge_path(
        &[q_start.to_vec(), q_end.to_vec()],
        kind,
        case,
        omega,
        DEFAULT_GAUGE_STEPS,
    )
}
