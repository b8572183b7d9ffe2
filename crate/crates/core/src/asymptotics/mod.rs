//! Closed-form large-n predictions: edge and bulk densities, the weighted
//! Szegő kernel of the gap, two-point asymptotics and CGF coefficients.
//!
//! Normal derivatives `∂_n` at the gap edges are taken as `+∂_r` in the edge
//! density predictors (see [`edge`]); CGF boundary terms use the outward
//! normal of the droplet.

mod cgf;
mod edge;
mod twopoint;

pub use cgf::{
    cgf_coefficients_analytic, cgf_predict_radial, cgf_prediction_radial, circle_mean, equilibrium_integral,
    CgfPrediction,
};
pub use edge::{
    predict_bulk, predict_density_gap_inner, predict_density_gap_outer_edge,
    predict_density_outer_boundary, EdgeComponents, EdgePrediction,
};
pub use twopoint::{predict_two_point, szego_gap, TwoPointMode};

use thiserror::Error;

use crate::droplet::DropletError;
use crate::quad::QuadError;
use crate::specfun::SpecfunError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("outside the domain of the expansion: {0}")]
    Domain(String),
    #[error("Szegő series diverges: |z w̄| = {0} outside (r1², r2²)")]
    Divergence(f64),
    #[error("coincident angles on the r1 circle")]
    AngleCoincidence,
    #[error("points do not fit the requested mode: {0}")]
    ModeMismatch(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Droplet(#[from] DropletError),
}
