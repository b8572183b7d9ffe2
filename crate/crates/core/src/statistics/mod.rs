//! Fluctuations of radial linear statistics: two exact CGF routes, an exact
//! sampler of the ensemble and empirical estimators.
//!
//! For a rotation-invariant determinantal ensemble the moduli |z_j| are
//! independent with densities ∝ r^{2j+1}e^{−nq(r)}, j = 0..n−1, and the
//! angles are i.i.d. uniform. Both the product CGF and the sampler rest on
//! this.

mod sampler;

pub use sampler::{sample, sample_with_tables, SampleBatch, SamplerTables};

use thiserror::Error;

use crate::asymptotics::{equilibrium_integral, AsymptoticsError};
use crate::droplet::DropletGeometry;
use crate::kernel::{KernelError, WeightTable};
use crate::potential::{PerturbedPotential, RadialPotential, RadialTestFunction};
use crate::quad::{gauss_legendre, integrate_with_breaks, QuadError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatisticsError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error("sampler table build failed: {0}")]
    TableBuildFailure(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgfRoute {
    Product,
    Ward,
    Predicted,
    Empirical,
}

impl CgfRoute {
    pub fn name(self) -> &'static str {
        match self {
            CgfRoute::Product => "product",
            CgfRoute::Ward => "ward",
            CgfRoute::Predicted => "predicted",
            CgfRoute::Empirical => "empirical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CgfCurve {
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub route: CgfRoute,
}

fn perturbed(lam: &RadialTestFunction, p: &RadialPotential, n: usize, s: f64) -> PerturbedPotential {
    PerturbedPotential::new(p.clone(), lam.clone(), s, n)
}

/// log E e^{t·fluct λ} as Σ_j log(I_j(t)/I_j(0)) − t n σ(λ).
pub fn exact_cgf_product(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
    t: f64,
) -> Result<f64, StatisticsError> {
    Ok(exact_cgf_product_curve(lam, p, geometry, n, &[t])?.values[0])
}

/// The product route on a grid of t, sharing the unperturbed table.
pub fn exact_cgf_product_curve(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
    ts: &[f64],
) -> Result<CgfCurve, StatisticsError> {
    let base = WeightTable::build_with_window(&perturbed(lam, p, n, 0.0), None, 0.0)?;
    let sigma = equilibrium_integral(lam, p, geometry)?;
    let mut values = Vec::with_capacity(ts.len());
    for &t in ts {
        if t == 0.0 {
            values.push(0.0);
            continue;
        }
        let tab = WeightTable::build_with_window(&perturbed(lam, p, n, t), None, 0.0)?;
        let sum: f64 = tab.log_norms.iter().zip(&base.log_norms).map(|(a, b)| a - b).sum();
        values.push(sum - t * n as f64 * sigma);
    }
    Ok(CgfCurve { t_grid: ts.to_vec(), values, route: CgfRoute::Product })
}

/// ∫ λ R̃_{n,sλ} dA − nσ(λ), the s-derivative of the CGF.
fn ward_integrand(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
    s: f64,
    sigma: f64,
) -> Result<f64, StatisticsError> {
    let tab = WeightTable::build_with_window(&perturbed(lam, p, n, s), None, 0.0)?;
    let (lo, hi) = lam.support();
    let hi = hi.min(tab.support_radius());
    if hi <= lo {
        return Ok(-(n as f64) * sigma);
    }
    let mut breaks = lam.breakpoints();
    for &(a, b) in &geometry.annuli {
        breaks.extend([a, b]);
    }
    breaks.sort_by(f64::total_cmp);
    let v = integrate_with_breaks(
        |r| 2.0 * r * lam.value(r) * tab.one_point_radial(r),
        lo,
        hi,
        &breaks,
        1e-12,
        1e-12,
    )?;
    Ok(v.value - n as f64 * sigma)
}

/// The Ward-identity route: F(t) = ∫₀^t ds ∫ λ (R̃_{n,sλ} − nΔQ·1_S) dA, with
/// Gauss–Legendre in s and a fresh table per node.
pub fn exact_cgf_ward(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
    t: f64,
    s_steps: usize,
) -> Result<f64, StatisticsError> {
    if s_steps < 8 {
        return Err(StatisticsError::Invalid(format!("s_steps = {s_steps} < 8")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let sigma = equilibrium_integral(lam, p, geometry)?;
    let (x, w) = gauss_legendre(s_steps);
    let mut total = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let s = 0.5 * t * (xi + 1.0);
        total += wi * ward_integrand(lam, p, geometry, n, s, sigma)?;
    }
    Ok(0.5 * t * total)
}

/// E_n[fluct λ] = F'(0), from the unperturbed 1-point function.
pub fn exact_mean_fluct(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
) -> Result<f64, StatisticsError> {
    let sigma = equilibrium_integral(lam, p, geometry)?;
    ward_integrand(lam, p, geometry, n, 0.0, sigma)
}

/// Per-sample Σ_j λ(|z_j|) − nσ(λ).
pub fn empirical_fluct(
    batch: &SampleBatch,
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
) -> Result<Vec<f64>, StatisticsError> {
    let shift = batch.n as f64 * equilibrium_integral(lam, p, geometry)?;
    Ok((0..batch.count)
        .map(|i| batch.moduli(i).iter().map(|&r| lam.value(r)).sum::<f64>() - shift)
        .collect())
}

/// log of the sample mean of e^{t·x}.
pub fn empirical_cgf(values: &[f64], t: f64) -> f64 {
    let logs: Vec<f64> = values.iter().map(|v| t * v).collect();
    crate::quad::log_sum_exp(&logs) - (values.len() as f64).ln()
}

/// Sample mean and its standard error.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}
