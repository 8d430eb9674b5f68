//! Lax matrix, Hamiltonian, the Poisson tensor `{L₁, L₂}` and the Hamiltonian flow.
//!
//! The canonical bracket is `{p_k, q_l} = δ_kl`, so for functions of the phase
//! point `{f, g} = Σ_k (∂f/∂p_k ∂g/∂q_k − ∂f/∂q_k ∂g/∂p_k)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{GlMatrix, Matrix, Scalar, TwoTensor};
use crate::error::{Error, Result};
use crate::potentials::{potential_values, PairValues, PotentialKind};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    q: Vec<f64>,
    p: Vec<f64>,
}

impl PhasePoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::DimensionMismatch {
                expected: q.len(),
                found: p.len(),
            });
        }
        if q.is_empty() {
            return Err(Error::InvalidParameter(
                "phase point needs at least one particle".into(),
            ));
        }
        if q.iter().chain(&p).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "phase point has non-finite entries".into(),
            ));
        }
        Ok(Self { q, p })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn total_momentum(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Fails with the first pair that violates the potential's domain guard.
    pub fn check_regular(&self, kind: PotentialKind) -> Result<()> {
        pair_table(&self.q, kind).map(|_| ())
    }
}

/// `PairValues` for every ordered pair `(k, l)`, `k ≠ l`, at `ξ = q_k − q_l`.
pub fn pair_table(q: &[f64], kind: PotentialKind) -> Result<Vec<Vec<Option<PairValues>>>> {
    let n = q.len();
    let mut table = vec![vec![None; n]; n];
    for k in 0..n {
        for l in 0..n {
            if k == l {
                continue;
            }
            let xi = q[k] - q[l];
            let pv = potential_values(kind, xi).map_err(|_| Error::SingularPair { k, l, xi })?;
            table[k][l] = Some(pv);
        }
    }
    Ok(table)
}

/// `L_kl = p_k δ_kl + i (1 − δ_kl) w(q_k − q_l)`.
pub fn build_lax(x: &PhasePoint, kind: PotentialKind) -> Result<GlMatrix> {
    let table = pair_table(&x.q, kind)?;
    Ok(Matrix::from_fn(x.dim(), |k, l| match table[k][l] {
        None => Complex64::new(x.p[k], 0.0),
        Some(pv) => I * pv.w,
    }))
}

/// `h = ½ Σ p_k² + Σ_{k<l} v(q_k − q_l)`.
pub fn hamiltonian(x: &PhasePoint, kind: PotentialKind) -> Result<f64> {
    let table = pair_table(&x.q, kind)?;
    let kinetic = 0.5 * x.p.iter().map(|p| p * p).sum::<f64>();
    let n = x.dim();
    let potential: f64 = (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
        .map(|(k, l)| table[k][l].map_or(0.0, |pv| pv.v))
        .sum();
    Ok(kinetic + potential)
}

/// `∂L/∂q_m`: entries `i w′(q_k − q_l)(δ_km − δ_lm)` off the diagonal.
fn lax_q_derivative(table: &[Vec<Option<PairValues>>], m: usize) -> GlMatrix {
    let n = table.len();
    Matrix::from_fn(n, |k, l| match table[k][l] {
        Some(pv) if k == m => I * pv.dw,
        Some(pv) if l == m => -(I * pv.dw),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// `{L₁, L₂} = Σ_k (H_k ⊗ ∂L/∂q_k − ∂L/∂q_k ⊗ H_k)`.
pub fn lax_poisson_tensor(x: &PhasePoint, kind: PotentialKind) -> Result<TwoTensor<Complex64>> {
    let n = x.dim();
    let table = pair_table(&x.q, kind)?;
    let one = Complex64::new(1.0, 0.0);
    let mut t = TwoTensor::zeros(n);
    for m in 0..n {
        let h = Matrix::unit(n, m, m);
        let dq = lax_q_derivative(&table, m);
        t.add_product(&one, &h, &dq);
        t.add_product(&-one, &dq, &h);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&PhasePoint> {
        self.states.last()
    }
}

/// Time derivative `(q̇, ṗ)` with `q̇_k = p_k`, `ṗ_k = −Σ_{l≠k} v′(q_k − q_l)`.
fn vector_field(q: &[f64], p: &[f64], kind: PotentialKind) -> Result<(Vec<f64>, Vec<f64>)> {
    let table = pair_table(q, kind)?;
    let n = q.len();
    let force = (0..n)
        .map(|k| {
            -(0..n)
                .filter_map(|l| table[k][l].map(|pv| pv.dv()))
                .sum::<f64>()
        })
        .collect();
    Ok((p.to_vec(), force))
}

fn axpy(y: &[f64], a: f64, x: &[f64]) -> Vec<f64> {
    y.iter().zip(x).map(|(y, x)| y + a * x).collect()
}

fn rk4_step(q: &[f64], p: &[f64], dt: f64, kind: PotentialKind) -> Result<(Vec<f64>, Vec<f64>)> {
    let (k1q, k1p) = vector_field(q, p, kind)?;
    let (k2q, k2p) = vector_field(&axpy(q, dt / 2.0, &k1q), &axpy(p, dt / 2.0, &k1p), kind)?;
    let (k3q, k3p) = vector_field(&axpy(q, dt / 2.0, &k2q), &axpy(p, dt / 2.0, &k2p), kind)?;
    let (k4q, k4p) = vector_field(&axpy(q, dt, &k3q), &axpy(p, dt, &k3p), kind)?;
    let combine = |y: &[f64], a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
        (0..y.len())
            .map(|i| y[i] + dt / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]))
            .collect()
    };
    Ok((
        combine(q, &k1q, &k2q, &k3q, &k4q),
        combine(p, &k1p, &k2p, &k3p, &k4p),
    ))
}

/// The pair whose `w` changed sign between two configurations, if any.
///
/// `w` changes sign only across the singular locus, so a flip means a
/// step jumped over it.
fn crossed_pair(before: &[f64], after: &[f64], kind: PotentialKind) -> Option<(usize, usize)> {
    let n = before.len();
    let sign = |q: &[f64], k: usize, l: usize| match kind {
        PotentialKind::Trigonometric { a } => (a * (q[k] - q[l])).sin().signum(),
        _ => (q[k] - q[l]).signum(),
    };
    (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
        .find(|&(k, l)| sign(before, k, l) != sign(after, k, l))
}

/// Fixed-step RK4 integration of Hamilton's equations for `h`.
pub fn integrate_flow(
    x0: &PhasePoint,
    kind: PotentialKind,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {dt}"
        )));
    }
    x0.check_regular(kind)?;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(x0.clone());
    let (mut q, mut p) = (x0.q.clone(), x0.p.clone());
    for step in 1..=steps {
        let abort = |(k, l): (usize, usize)| Error::FlowAborted { step, k, l };
        let (nq, np) = rk4_step(&q, &p, dt, kind).map_err(|e| match e {
            Error::SingularPair { k, l, .. } => abort((k.min(l), k.max(l))),
            other => other,
        })?;
        if let Some(pair) = crossed_pair(&q, &nq, kind) {
            return Err(abort(pair));
        }
        let next = PhasePoint::new(nq, np).map_err(|_| abort((0, 0)))?;
        next.check_regular(kind).map_err(|e| match e {
            Error::SingularPair { k, l, .. } => abort((k.min(l), k.max(l))),
            other => other,
        })?;
        q.clone_from(&next.q);
        p.clone_from(&next.p);
        times.push(step as f64 * dt);
        states.push(next);
    }
    Ok(Trajectory { times, states })
}

/// `tr L^m` for `m = 1..=n`.
pub fn power_traces(l: &GlMatrix) -> Vec<Complex64> {
    let n = l.dim();
    let mut acc = Matrix::identity(n);
    (1..=n)
        .map(|_| {
            acc = acc.matmul(l);
            acc.trace()
        })
        .collect()
}

/// Largest deviation of `tr L(t)^m` from its initial value over the trajectory.
pub fn spectral_drift(traj: &Trajectory, kind: PotentialKind) -> Result<f64> {
    let Some(first) = traj.states.first() else {
        return Ok(0.0);
    };
    let reference = power_traces(&build_lax(first, kind)?);
    let mut drift = 0.0f64;
    for x in &traj.states[1..] {
        let traces = power_traces(&build_lax(x, kind)?);
        for (a, b) in traces.iter().zip(&reference) {
            drift = drift.max((a - b).magnitude());
        }
    }
    Ok(drift)
}

/// Largest deviation of the sorted eigenvalues of `L(t)` from those of `L(0)`.
pub fn eigenvalue_drift(traj: &Trajectory, kind: PotentialKind) -> Result<f64> {
    let Some(first) = traj.states.first() else {
        return Ok(0.0);
    };
    let reference = hermitian_eigenvalues(&build_lax(first, kind)?);
    let mut drift = 0.0f64;
    for x in &traj.states[1..] {
        let ev = hermitian_eigenvalues(&build_lax(x, kind)?);
        for (a, b) in ev.iter().zip(&reference) {
            drift = drift.max((a - b).abs());
        }
    }
    Ok(drift)
}

/// Largest relative deviation of `h` from its initial value, measured
/// against `max(|h(0)|, 1)`.
pub fn energy_drift(traj: &Trajectory, kind: PotentialKind) -> Result<f64> {
    let Some(first) = traj.states.first() else {
        return Ok(0.0);
    };
    let h0 = hamiltonian(first, kind)?;
    let scale = h0.abs().max(1.0);
    let mut drift = 0.0f64;
    for x in &traj.states[1..] {
        drift = drift.max((hamiltonian(x, kind)? - h0).abs() / scale);
    }
    Ok(drift)
}

/// Largest deviation of `Σ p_k` from its initial value.
pub fn momentum_drift(traj: &Trajectory) -> f64 {
    let Some(first) = traj.states.first() else {
        return 0.0;
    };
    let p0 = first.total_momentum();
    traj.states
        .iter()
        .map(|x| (x.total_momentum() - p0).abs())
        .fold(0.0, f64::max)
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(l: &GlMatrix) -> Vec<f64> {
    let n = l.dim();
    let m = DMatrix::from_fn(n, n, |i, j| l[(i, j)]);
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lax_two_particles() {
        let x = PhasePoint::new(vec![1.0, 0.0], vec![0.0, 0.0]).unwrap();
        let l = build_lax(&x, PotentialKind::Rational).unwrap();
        assert_eq!(
            l.rows(),
            vec![vec![c(0., 0.), c(0., 1.)], vec![c(0., -1.), c(0., 0.)]]
        );
        let ev = hermitian_eigenvalues(&l);
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn momenta_only_on_diagonal() {
        let kind = PotentialKind::hyperbolic(0.7).unwrap();
        let a = build_lax(
            &PhasePoint::new(vec![0.3, 1.1], vec![5.0, 7.0]).unwrap(),
            kind,
        )
        .unwrap();
        let b = build_lax(
            &PhasePoint::new(vec![0.3, 1.1], vec![0.0, 0.0]).unwrap(),
            kind,
        )
        .unwrap();
        assert_eq!(a[(0, 0)], c(5.0, 0.0));
        assert_eq!(a[(1, 1)], c(7.0, 0.0));
        assert_eq!(a[(0, 1)], b[(0, 1)]);
        assert_eq!(a[(1, 0)], b[(1, 0)]);
    }

    #[test]
    fn lax_three_particles() {
        let x = PhasePoint::new(vec![0.0, 1.0, 3.0], vec![0.0; 3]).unwrap();
        let l = build_lax(&x, PotentialKind::Rational).unwrap();
        assert_abs_diff_eq!(l[(0, 1)].im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l[(0, 2)].im, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l[(1, 2)].im, -0.5, epsilon = 1e-15);
        assert_eq!(l.conj_transpose(), l);
    }

    #[test]
    fn hamiltonian_values() {
        let x = PhasePoint::new(vec![1.0, 0.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(hamiltonian(&x, PotentialKind::Rational).unwrap(), 1.0);
        let x = PhasePoint::new(vec![1.0, 0.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(hamiltonian(&x, PotentialKind::Rational).unwrap(), 13.5);
        let far = PhasePoint::new(vec![1e9, 0.0, -1e9], vec![1.0, 2.0, 0.5]).unwrap();
        assert_abs_diff_eq!(
            hamiltonian(&far, PotentialKind::Rational).unwrap(),
            2.625,
            epsilon = 1e-15
        );
    }

    #[test]
    fn poisson_tensor_single_entry() {
        let x = PhasePoint::new(vec![1.0, 0.0], vec![0.3, -0.2]).unwrap();
        let t = lax_poisson_tensor(&x, PotentialKind::Rational).unwrap();
        assert_abs_diff_eq!(t[(0, 0, 0, 1)].re, 0.0);
        assert_abs_diff_eq!(t[(0, 0, 0, 1)].im, -1.0, epsilon = 1e-15);
        for k in 0..2 {
            for l in 0..2 {
                assert_eq!(t[(k, k, l, l)], c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn singular_pair_is_named() {
        let x = PhasePoint::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]).unwrap();
        assert!(matches!(
            build_lax(&x, PotentialKind::Rational),
            Err(Error::SingularPair { k: 1, l: 2, .. })
        ));
    }

    #[test]
    fn free_particle() {
        let x = PhasePoint::new(vec![0.5], vec![2.0]).unwrap();
        let traj = integrate_flow(&x, PotentialKind::Rational, 0.01, 100).unwrap();
        let last = traj.last().unwrap();
        assert_abs_diff_eq!(last.q()[0], 2.5, epsilon = 1e-12);
        assert_eq!(last.p()[0], 2.0);
        assert_eq!(spectral_drift(&traj, PotentialKind::Rational).unwrap(), 0.0);
    }

    #[test]
    fn head_on_collision_aborts() {
        let x = PhasePoint::new(vec![0.0, 1.0], vec![1000.0, -1000.0]).unwrap();
        let err = integrate_flow(&x, PotentialKind::Rational, 1e-3, 100).unwrap_err();
        assert!(
            matches!(err, Error::FlowAborted { k: 0, l: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn bad_time_step() {
        let x = PhasePoint::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert!(integrate_flow(&x, PotentialKind::Rational, 0.0, 10).is_err());
        assert!(integrate_flow(&x, PotentialKind::Rational, -1e-3, 10).is_err());
    }
}
