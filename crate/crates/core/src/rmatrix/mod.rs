//! Dynamical r-matrices of the degenerate models, the gauge potentials that
//! flatten them, and the constant r-matrix of the rational case.

mod cartan;
mod dynamical;
mod gauge;
mod rational;

pub use cartan::{extend_simple_c, CartanMap};
pub use dynamical::{
    build_dynamical_r, rmatrix_residual, rmatrix_residual_flipped, rmatrix_residual_tensor, CMode,
    QMode, RMatrixConfig,
};
pub use gauge::{
    build_gauge_potential, curvature_residual, gauge_condition_residual, gauge_condition_tensors,
    gauge_transform_r, integrate_gauge, integrate_gauge_path, GaugeCase, GaugeField,
    DEFAULT_GAUGE_STEPS, FD_STEP, PATH_GUARD,
};
pub use rational::{
    build_phi, constant_r, constant_r_index_set, gauged_rational_r, phi_gauge_check,
    phi_gauge_defect, phi_matrix, rational_case_one_gauge, rational_case_one_r,
    vandermonde_product, Quadruple,
};
