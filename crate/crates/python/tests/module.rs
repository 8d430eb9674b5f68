//! Loads the bindings into an embedded interpreter and exercises them from Python.

use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "cmrpy").unwrap();
        cmrpy::register(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("cmrpy", m).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.display(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn lax_matrix_is_hermitian_with_momenta_on_the_diagonal() {
    run(c"
x = cmrpy.PhasePoint([0.0, 0.7, 1.9], [0.3, -0.1, 0.5])
pot = cmrpy.Potential('hyperbolic', 0.8)
L = x.lax(pot)
for k in range(3):
    assert L[k][k] == complex(x.p[k], 0.0)
    for l in range(3):
        assert abs(L[k][l] - L[l][k].conjugate()) < 1e-15
assert len(x.spectrum(pot)) == 3
");
}

#[test]
fn rmatrix_residual_and_gauge_checks() {
    run(c"
x = cmrpy.PhasePoint([0.1, 0.9, 2.2], [1.0, 0.0, -0.4])
for name in ['rational', 'hyperbolic', 'trigonometric']:
    pot = cmrpy.Potential(name, 0.5)
    for case in ['I', 'II']:
        r = cmrpy.RMatrix(pot, case=case)
        assert r.residual(x) < 1e-12, (name, case)
        assert r.gauge_condition_residual(x.q) < 1e-6, (name, case)
        assert cmrpy.curvature_residual(x.q, pot, case) < 1e-6, (name, case)
assert cmrpy.phi_gauge_check([0.0, 1.0, 3.0]) < 1e-6
");
}

#[test]
fn constant_r_and_frobenius_data() {
    run(c"
from fractions import Fraction
assert cmrpy.constant_r_index_set(3) == [(1, 1, 1, 2), (1, 1, 2, 3), (2, 1, 1, 3), (2, 2, 2, 3)]
assert cmrpy.constant_r_cybe(4) == 0.0
f = cmrpy.frobenius_check(3)
assert f['passed'] and f['kappa'] == Fraction(-2) and f['residual'] == 0
det, prod = cmrpy.phi_determinant([1.0, 2.0, 4.0])
assert abs(det - 6.0) < 1e-12 and prod == 6.0
");
}

#[test]
fn errors_surface_as_cmr_error() {
    run(c"
for bad in [lambda: cmrpy.Potential('elliptic'),
            lambda: cmrpy.Potential('hyperbolic', -1.0),
            lambda: cmrpy.PhasePoint([0.0, 1.0], [1.0]),
            lambda: cmrpy.phi([1.0, 1.0])]:
    try:
        bad()
    except cmrpy.CmrError:
        pass
    else:
        raise AssertionError('expected CmrError')
");
}

#[test]
fn simulate_reports_drifts() {
    run(c"
pot = cmrpy.Potential()
out = cmrpy.simulate(cmrpy.PhasePoint([1.0, 0.0], [0.3, -0.3]), pot, dt=1e-3, steps=2000)
assert out['energy_drift'] < 1e-8 and out['eigenvalue_drift'] < 1e-7
assert out['last'].n == 2
");
}
