//! Special functions: erfc, Jacobi theta and its logarithmic derivative,
//! the modified theta Θ, the Ξ series and the discrete normal law.

mod discrete;
mod erfc;
mod theta;

pub use discrete::{dn_cgf_Y, dn_cgf_Y_theta, dn_pmf, DiscreteGaussian};
pub use erfc::erfc;
pub use theta::{
    jacobi_theta, log_jacobi_theta, log_theta_prime, modified_theta, modified_theta_dx,
    modified_theta_via_jacobi, xi_series, xi_series_phi0_via_theta, ThetaArg,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("theta series needs {0} terms; Im τ too small")]
    ConvergenceFailure(usize),
    #[error("theta vanishes at the requested point")]
    PoleError,
    #[error("parameter out of range: {0}")]
    Domain(String),
}
