use std::f64::consts::PI;

use num_complex::Complex64;

use super::AsymptoticsError;
use crate::droplet::{DropletGeometry, GapParams, NDependentGapState};
use crate::potential::{RadialPotential, RadialTestFunction};
use crate::specfun::{erfc, log_theta_prime, ThetaArg};

/// The √n bracket split into its named pieces, each already multiplied by
/// the common prefactor √(nΔQ)/(√(2π) r)·e^{−t²}.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EdgeComponents {
    pub curvature: f64,
    pub normal_derivative: f64,
    /// Constant shift plus the (log θ)' oscillation.
    pub theta: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePrediction {
    /// nΔQ·erfc(±t)/2.
    pub leading: f64,
    pub subleading: f64,
    pub total: f64,
    pub components: EdgeComponents,
}

impl EdgePrediction {
    fn assemble(leading: f64, components: EdgeComponents) -> Self {
        let c = components;
        let subleading = c.curvature + c.normal_derivative + c.theta + c.lambda;
        EdgePrediction { leading, subleading, total: leading + subleading, components }
    }
}

fn check_t(t: f64, n: usize) -> Result<(), AsymptoticsError> {
    let lim = (n as f64).ln();
    if !(t.abs() <= lim) {
        return Err(AsymptoticsError::Domain(format!("|t| = {} > log n = {lim}", t.abs())));
    }
    Ok(())
}

// √π t erfc(t) e^{t²}, bounded for large positive t.
fn scaled_erfc(t: f64) -> f64 {
    if t > 25.0 {
        // asymptotic: erfc(t)e^{t²} ≈ 1/(t√π)(1 − 1/(2t²) + 3/(4t⁴))
        let t2 = t * t;
        1.0 - 0.5 / t2 + 0.75 / (t2 * t2)
    } else {
        PI.sqrt() * t * erfc(t) * (t * t).exp()
    }
}

/// Shared (log θ)' term: the argument Bn/2 is reduced to x(n) by periodicity.
fn theta_term(gp: &GapParams, state: &NDependentGapState, s: f64, lam: &RadialTestFunction) -> Result<f64, AsymptoticsError> {
    let l = gp.log_ratio();
    let arg = state.alpha + s * (lam.value(gp.r1) - lam.value(gp.r2)) / (2.0 * l);
    let lp = log_theta_prime(ThetaArg::real(arg, PI / l)?)?.re;
    Ok(gp.alpha_shift() + lp / (2.0 * l))
}

/// 𝓔_n at z = r1 + t/√(2nΔQ(r1)) in the potential q − sλ/n.
pub fn predict_density_gap_inner(
    gp: &GapParams,
    state: &NDependentGapState,
    t: f64,
    s: f64,
    lam: &RadialTestFunction,
) -> Result<EdgePrediction, AsymptoticsError> {
    let n = state.n;
    check_t(t, n)?;
    let (r, dq) = (gp.r1, gp.dq1);
    let nd = n as f64 * dq;
    let pre = nd.sqrt() / ((2.0 * PI).sqrt() * r) * (-t * t).exp();
    let l = gp.log_ratio();
    let jump = (lam.value(gp.r1) - lam.value(gp.r2)) / l;
    let kappa = r * gp.dr_dq1 / dq;
    let comps = EdgeComponents {
        curvature: pre * (t * t - 2.0) / 6.0,
        normal_derivative: pre * kappa * (0.5 * scaled_erfc(t) - (2.0 * t * t + 5.0) / 12.0),
        theta: pre * theta_term(gp, state, s, lam)?,
        lambda: pre * 0.5 * s * (r * lam.deriv(r) + jump),
    };
    Ok(EdgePrediction::assemble(nd * erfc(t) / 2.0, comps))
}

/// 𝓔_n at z = r2 + t/√(2nΔQ(r2)); the gap lies on the side t < 0.
///
/// The ΔQ-gradient term uses `∂_rΔQ(r2)`. This is the sign that reproduces
/// the exact kernel; with the outward normal of the droplet (−∂_r) the
/// residual grows like √n.
pub fn predict_density_gap_outer_edge(
    gp: &GapParams,
    state: &NDependentGapState,
    t: f64,
    s: f64,
    lam: &RadialTestFunction,
) -> Result<EdgePrediction, AsymptoticsError> {
    let n = state.n;
    check_t(t, n)?;
    let (r, dq) = (gp.r2, gp.dq2);
    let nd = n as f64 * dq;
    let pre = nd.sqrt() / ((2.0 * PI).sqrt() * r) * (-t * t).exp();
    let l = gp.log_ratio();
    let jump = (lam.value(gp.r1) - lam.value(gp.r2)) / l;
    let kappa = r * gp.dr_dq2 / dq;
    let comps = EdgeComponents {
        curvature: pre * (2.0 - t * t) / 6.0,
        normal_derivative: pre * kappa * (0.5 * scaled_erfc_neg(t) + (2.0 * t * t + 5.0) / 12.0),
        theta: -pre * theta_term(gp, state, s, lam)?,
        lambda: -pre * 0.5 * s * (r * lam.deriv(r) + jump),
    };
    Ok(EdgePrediction::assemble(nd * erfc(-t) / 2.0, comps))
}

// √π t erfc(−t) e^{t²} = −(√π (−t) erfc(−t) e^{t²}).
fn scaled_erfc_neg(t: f64) -> f64 {
    -scaled_erfc(-t)
}

/// R_n at z = b_N + t/√(2nΔQ(b_N)) on the outer boundary (no oscillation).
pub fn predict_density_outer_boundary(
    p: &RadialPotential,
    geometry: &DropletGeometry,
    t: f64,
    n: usize,
) -> Result<EdgePrediction, AsymptoticsError> {
    check_t(t, n)?;
    let r = geometry.outer_radius;
    let dq = p.lap(r);
    let nd = n as f64 * dq;
    let pre = nd.sqrt() / ((2.0 * PI).sqrt() * r) * (-t * t).exp();
    let kappa = r * p.dr_lap(r) / dq;
    let comps = EdgeComponents {
        curvature: pre * (t * t - 2.0) / 6.0,
        normal_derivative: pre * kappa * (0.5 * scaled_erfc(t) - (2.0 * t * t + 5.0) / 12.0),
        theta: 0.0,
        lambda: 0.0,
    };
    Ok(EdgePrediction::assemble(nd * erfc(t) / 2.0, comps))
}

/// nΔQ(z) + ½Δlog ΔQ(z) − sΔλ(z), valid at distance ≥ δ_n from ∂S.
pub fn predict_bulk(
    p: &RadialPotential,
    geometry: &DropletGeometry,
    z: Complex64,
    n: usize,
    s: f64,
    lam: &RadialTestFunction,
) -> Result<f64, AsymptoticsError> {
    let r = z.norm();
    let delta = crate::kernel::delta_n(n);
    if !geometry.in_droplet(r) || geometry.boundary_distance(r) < delta {
        return Err(AsymptoticsError::Domain(format!("r = {r} is not in the bulk (δ_n = {delta})")));
    }
    let lll = if r == 0.0 {
        // Δ of a smooth radial f at 0 is f''(0)/2; use a tiny offset.
        p.lap_log_lap(1e-8)
    } else {
        p.lap_log_lap(r)
    };
    Ok(n as f64 * p.lap(r) + 0.5 * lll - s * lam.lap(r))
}
