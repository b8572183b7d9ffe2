//! Exact finite-n engine and asymptotic predictors for two-dimensional
//! β = 2 Coulomb gases with a radially symmetric potential whose droplet
//! has an annular spectral gap.
//!
//! The crate is organised bottom-up:
//!
//! * [`potential`] radial potentials `q(r)`, their Laplacian and test functions,
//! * [`droplet`] annular droplet geometry and gap constants,
//! * [`specfun`] erfc, Jacobi theta, modified theta, the discrete Gaussian,
//! * [`kernel`] weighted-monomial norms and the exact correlation kernel,
//! * [`asymptotics`] closed-form edge, bulk, two-point and CGF predictions,
//! * [`statistics`] exact CGF routes and an exact sampler.

pub mod asymptotics;
pub mod droplet;
pub mod kernel;
pub mod potential;
pub mod quad;
pub mod specfun;
pub mod statistics;

pub(crate) mod par;
pub(crate) mod poly;

pub use droplet::{solve_droplet, DropletGeometry, GapParams, NDependentGapState};
pub use kernel::{KernelEvaluation, WeightTable};
pub use potential::{PerturbedPotential, RadialPotential, RadialTestFunction};
