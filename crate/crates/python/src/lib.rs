//! Python bindings for `cmr-core`.
//!
//! Matrices cross the boundary as nested lists (rows first), complex entries
//! as Python `complex`, exact rationals as `fractions.Fraction`.

use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cmr_core::algebra::{cybe_residual, Matrix};
use cmr_core::frobenius::frobenius_inverse_check;
use cmr_core::lax::{
    self, eigenvalue_drift, energy_drift, integrate_flow, momentum_drift, spectral_drift,
};
use cmr_core::potentials::{self, PotentialKind};
use cmr_core::rmatrix::{self, CMode, GaugeCase, QMode, RMatrixConfig};

create_exception!(
    cmrpy,
    CmrError,
    PyException,
    "Raised when a cmr-core operation fails."
);

fn err(e: cmr_core::Error) -> PyErr {
    CmrError::new_err(e.to_string())
}

/// A nonzero tensor entry `((i, j, k, l), coefficient)` labelling `e_ij ⊗ e_kl`.
type Entry<T> = ((usize, usize, usize, usize), T);

fn rows<T: cmr_core::algebra::Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    m.rows()
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.to_string(),))
}

/// A pair potential: `rational`, `hyperbolic` or `trigonometric` with coupling `a`.
#[pyclass(frozen, skip_from_py_object, module = "cmrpy")]
#[derive(Clone)]
pub struct Potential {
    kind: PotentialKind,
}

#[pymethods]
impl Potential {
    #[new]
    #[pyo3(signature = (name = "rational", a = 1.0))]
    fn new(name: &str, a: f64) -> PyResult<Self> {
        Ok(Self {
            kind: PotentialKind::from_name(name, a).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.kind.name()
    }

    #[getter]
    fn coupling(&self) -> Option<f64> {
        self.kind.coupling()
    }

    /// `(v, w, w')` at `xi`.
    fn values(&self, xi: f64) -> PyResult<(f64, f64, f64)> {
        let v = potentials::potential_values(self.kind, xi).map_err(err)?;
        Ok((v.v, v.w, v.dw))
    }

    fn __repr__(&self) -> String {
        match self.kind.coupling() {
            Some(a) => format!("Potential('{}', a={a})", self.kind.name()),
            None => format!("Potential('{}')", self.kind.name()),
        }
    }
}

/// A point `(q, p)` of phase space.
#[pyclass(frozen, skip_from_py_object, module = "cmrpy")]
#[derive(Clone)]
pub struct PhasePoint {
    inner: lax::PhasePoint,
}

#[pymethods]
impl PhasePoint {
    #[new]
    #[pyo3(signature = (q, p = None))]
    fn new(q: Vec<f64>, p: Option<Vec<f64>>) -> PyResult<Self> {
        let p = p.unwrap_or_else(|| vec![0.0; q.len()]);
        Ok(Self {
            inner: lax::PhasePoint::new(q, p).map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> Vec<f64> {
        self.inner.q().to_vec()
    }

    #[getter]
    fn p(&self) -> Vec<f64> {
        self.inner.p().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    fn lax(&self, potential: &Potential) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(rows(
            &lax::build_lax(&self.inner, potential.kind).map_err(err)?,
        ))
    }

    fn hamiltonian(&self, potential: &Potential) -> PyResult<f64> {
        lax::hamiltonian(&self.inner, potential.kind).map_err(err)
    }

    /// Sorted eigenvalues of the Hermitian Lax matrix.
    fn spectrum(&self, potential: &Potential) -> PyResult<Vec<f64>> {
        let l = lax::build_lax(&self.inner, potential.kind).map_err(err)?;
        Ok(lax::hermitian_eigenvalues(&l))
    }

    fn __repr__(&self) -> String {
        format!("PhasePoint(q={:?}, p={:?})", self.inner.q(), self.inner.p())
    }
}

fn gauge_case(case: &str) -> PyResult<GaugeCase> {
    match case {
        "I" | "i" | "1" => Ok(GaugeCase::I),
        "II" | "ii" | "2" => Ok(GaugeCase::II),
        other => Err(CmrError::new_err(format!(
            "unknown case `{other}`, expected I or II"
        ))),
    }
}

/// Dynamical r-matrix settings: the Cartan map (`case` I, II, or values on
/// the simple roots), the `1 ⊗ Q` term (`zero` or `sln`) and the shift `omega`.
#[pyclass(frozen, skip_from_py_object, module = "cmrpy")]
#[derive(Clone)]
pub struct RMatrix {
    config: RMatrixConfig,
}

#[pymethods]
impl RMatrix {
    #[new]
    #[pyo3(signature = (potential, case = "I", simple_c = None, q_mode = "zero", omega = 0.0))]
    fn new(
        potential: &Potential,
        case: &str,
        simple_c: Option<Vec<Vec<f64>>>,
        q_mode: &str,
        omega: f64,
    ) -> PyResult<Self> {
        let c_mode = match simple_c {
            Some(values) => CMode::General(values),
            None => gauge_case(case)?.c_mode(),
        };
        let q_mode = match q_mode {
            "zero" => QMode::Zero,
            "sln" => QMode::SlnProjection,
            other => {
                return Err(CmrError::new_err(format!(
                    "unknown q_mode `{other}`, expected zero or sln"
                )))
            }
        };
        Ok(Self {
            config: RMatrixConfig::new(potential.kind, c_mode)
                .with_q_mode(q_mode)
                .with_omega(omega),
        })
    }

    /// Nonzero entries `((i, j, k, l), coefficient)` of `R(q)`, zero-based,
    /// where `(i, j, k, l)` labels `e_ij ⊗ e_kl`.
    fn entries(&self, q: Vec<f64>) -> PyResult<Vec<Entry<Complex64>>> {
        let c = self.config.cartan_map(q.len()).map_err(err)?;
        let r = rmatrix::build_dynamical_r(&q, &self.config, &c).map_err(err)?;
        Ok(r.nonzero_entries())
    }

    /// Largest entry of `{L₁, L₂} − [R₁₂, L₁] + [R₂₁, L₂]` at `x`.
    fn residual(&self, x: &PhasePoint) -> PyResult<f64> {
        let c = self.config.cartan_map(x.inner.dim()).map_err(err)?;
        let r = rmatrix::build_dynamical_r(x.inner.q(), &self.config, &c).map_err(err)?;
        rmatrix::rmatrix_residual(&x.inner, &r, self.config.kind).map_err(err)
    }

    /// Largest defect of the gauge condition tying `R` to its potentials.
    fn gauge_condition_residual(&self, q: Vec<f64>) -> PyResult<f64> {
        let c = self.config.cartan_map(q.len()).map_err(err)?;
        rmatrix::gauge_condition_residual(&q, &self.config, &c).map_err(err)
    }
}

#[pyfunction]
fn lax_matrix(x: &PhasePoint, potential: &Potential) -> PyResult<Vec<Vec<Complex64>>> {
    x.lax(potential)
}

#[pyfunction]
fn hamiltonian(x: &PhasePoint, potential: &Potential) -> PyResult<f64> {
    x.hamiltonian(potential)
}

/// Gauge potentials `A_k(q)`, one matrix per coordinate.
#[pyfunction]
#[pyo3(signature = (q, potential, case = "I", omega = 0.0))]
fn gauge_potential(
    q: Vec<f64>,
    potential: &Potential,
    case: &str,
    omega: f64,
) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let a = rmatrix::build_gauge_potential(&q, potential.kind, gauge_case(case)?, omega)
        .map_err(err)?;
    Ok(a.iter().map(rows).collect())
}

/// Finite-difference curvature `max ‖∂_k A_l − ∂_l A_k + [A_k, A_l]‖`.
#[pyfunction]
#[pyo3(signature = (q, potential, case = "I", omega = 0.0))]
fn curvature_residual(q: Vec<f64>, potential: &Potential, case: &str, omega: f64) -> PyResult<f64> {
    rmatrix::curvature_residual(&q, potential.kind, gauge_case(case)?, omega).map_err(err)
}

#[pyfunction]
fn phi(q: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(&rmatrix::phi_matrix(&q).map_err(err)?))
}

/// `det φ(q)` and the product `Π_{j<k} (q_k − q_j)`.
#[pyfunction]
fn phi_determinant(q: Vec<f64>) -> PyResult<(f64, f64)> {
    let m = rmatrix::phi_matrix(&q).map_err(err)?;
    Ok((m.determinant(), rmatrix::vandermonde_product(&q)))
}

/// `max_k ‖∂_k φ + φ A_k‖` for the rational case-I potentials.
#[pyfunction]
fn phi_gauge_check(q: Vec<f64>) -> PyResult<f64> {
    rmatrix::phi_gauge_check(&q).map_err(err)
}

/// One-based quadruples `(a, b, c, d)` of the constant r-matrix.
#[pyfunction]
fn constant_r_index_set(n: usize) -> Vec<(usize, usize, usize, usize)> {
    rmatrix::constant_r_index_set(n)
}

/// Nonzero integer entries `((i, j, k, l), coefficient)`, zero-based.
#[pyfunction]
fn constant_r(n: usize) -> Vec<Entry<i64>> {
    rmatrix::constant_r(n).nonzero_entries()
}

/// Largest entry of the classical Yang–Baxter expression of the constant r-matrix.
#[pyfunction]
fn constant_r_cybe(n: usize) -> f64 {
    cybe_residual(&rmatrix::constant_r(n)).1
}

/// Exact Frobenius data: `kappa` with `M⁻¹ ≈ κ G`, the residual
/// `‖M⁻¹ − κ G‖_max` as fractions (`None` when `M` is singular), and `passed`.
#[pyfunction]
fn frobenius_check<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let check = frobenius_inverse_check(n).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("invertible", check.invertible())?;
    out.set_item("passed", check.passed())?;
    out.set_item(
        "kappa",
        check.kappa.as_ref().map(|k| fraction(py, k)).transpose()?,
    )?;
    out.set_item(
        "residual",
        check
            .residual
            .as_ref()
            .map(|r| fraction(py, r))
            .transpose()?,
    )?;
    Ok(out)
}

/// Integrates the flow and returns the final point and the conservation drifts.
#[pyfunction]
#[pyo3(signature = (x, potential, dt = 1e-3, steps = 1000))]
fn simulate<'py>(
    py: Python<'py>,
    x: &PhasePoint,
    potential: &Potential,
    dt: f64,
    steps: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let kind = potential.kind;
    let traj = integrate_flow(&x.inner, kind, dt, steps).map_err(err)?;
    let out = PyDict::new(py);
    let last = traj.last().cloned().map(|inner| PhasePoint { inner });
    out.set_item("last", last)?;
    out.set_item("energy_drift", energy_drift(&traj, kind).map_err(err)?)?;
    out.set_item(
        "eigenvalue_drift",
        eigenvalue_drift(&traj, kind).map_err(err)?,
    )?;
    out.set_item(
        "power_trace_drift",
        spectral_drift(&traj, kind).map_err(err)?,
    )?;
    out.set_item("momentum_drift", momentum_drift(&traj))?;
    Ok(out)
}

/// Adds every class, function and the exception type to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CmrError", m.py().get_type::<CmrError>())?;
    m.add_class::<Potential>()?;
    m.add_class::<PhasePoint>()?;
    m.add_class::<RMatrix>()?;
    m.add_function(wrap_pyfunction!(lax_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_potential, m)?)?;
    m.add_function(wrap_pyfunction!(curvature_residual, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(phi_gauge_check, m)?)?;
    m.add_function(wrap_pyfunction!(constant_r_index_set, m)?)?;
    m.add_function(wrap_pyfunction!(constant_r, m)?)?;
    m.add_function(wrap_pyfunction!(constant_r_cybe, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_check, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}

/// Calogero–Moser Lax matrices, r-matrices and the constant r-matrix.
#[pymodule]
fn cmrpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
