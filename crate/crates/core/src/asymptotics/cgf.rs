use std::f64::consts::PI;

use num_complex::Complex64;

use super::AsymptoticsError;
use crate::droplet::{gap_state, DropletGeometry};
use crate::potential::{RadialPotential, RadialTestFunction};
use crate::quad::integrate_with_breaks;
use crate::specfun::{dn_cgf_Y, DiscreteGaussian};

const CIRCLE_NODES: usize = 64;

/// Mean of f over the circle |z| = r (64-point trapezoid, exact for radial f).
pub fn circle_mean<F: Fn(Complex64) -> f64>(f: F, r: f64) -> f64 {
    (0..CIRCLE_NODES)
        .map(|k| f(Complex64::from_polar(r, 2.0 * PI * k as f64 / CIRCLE_NODES as f64)))
        .sum::<f64>()
        / CIRCLE_NODES as f64
}

/// Predicted CGF t·e + t²v/2 + 𝓕_n(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgfPrediction {
    pub e: f64,
    pub v: f64,
    /// Law of X_n and the jump c = λ(r1) − λ(r2); None when there is no oscillation.
    pub osc: Option<(DiscreteGaussian, f64)>,
    pub n: usize,
}

impl CgfPrediction {
    /// 𝓕_n(t) = log E e^{tc(X_n − α)}.
    pub fn osc(&self, t: f64) -> f64 {
        match &self.osc {
            Some((d, c)) => dn_cgf_Y(d, *c, t),
            None => 0.0,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        t * self.e + 0.5 * t * t * self.v + self.osc(t)
    }
}

fn droplet_integral<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    geometry: &DropletGeometry,
) -> Result<f64, AsymptoticsError> {
    let mut total = 0.0;
    for &(a, b) in &geometry.annuli {
        total += integrate_with_breaks(&f, a, b, breaks, 1e-14, 1e-12)?.value;
    }
    Ok(total)
}

/// σ(f) = ∫_S f ΔQ dA = 2∫_S f(r)ΔQ(r) r dr.
pub fn equilibrium_integral(
    f: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
) -> Result<f64, AsymptoticsError> {
    droplet_integral(|r| 2.0 * r * f.value(r) * p.lap(r), &f.breakpoints(), geometry)
}

/// e_f and v_f of the Gaussian limit for a radial test function.
///
/// e_f = ½∫_S f Δlog ΔQ dA + (1/8π)∮ ∂_n f − (1/8π)∮ f ∂_nΔQ/ΔQ with the
/// outward normal of S, v_f = −∫_S fΔf dA.
pub fn cgf_coefficients_analytic(
    f: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
) -> Result<CgfPrediction, AsymptoticsError> {
    let breaks = f.breakpoints();
    let bulk = droplet_integral(|r| r * f.value(r) * p.lap_log_lap(r), &breaks, geometry)?;
    let mut boundary = 0.0;
    for c in geometry.boundaries(p) {
        let dn_f = circle_mean(|z| c.normal_sign * f.deriv(z.norm()), c.radius);
        let dn_log = circle_mean(|z| f.value(z.norm()) * c.normal_sign * c.dr_dq / c.dq, c.radius);
        boundary += 2.0 * PI * c.radius * (dn_f - dn_log) / (8.0 * PI);
    }
    let v = -droplet_integral(|r| 2.0 * r * f.value(r) * f.lap(r), &breaks, geometry)?;
    Ok(CgfPrediction { e: bulk + boundary, v, osc: None, n: 0 })
}

/// Full prediction for a radial λ across the gap: e_λ + ê_λ, v_λ + v̂_λ and 𝓕_n.
pub fn cgf_prediction_radial(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
) -> Result<CgfPrediction, AsymptoticsError> {
    let base = cgf_coefficients_analytic(lam, p, geometry)?;
    let gp = geometry.gap()?;
    let (l1, l2) = (lam.value(gp.r1), lam.value(gp.r2));
    let e_hat = (l1 - l2) * (gp.dq2 / gp.dq1).ln() / (4.0 * gp.log_ratio());
    let v_hat = 0.5 * (gp.r1 * l1 * lam.deriv(gp.r1) - gp.r2 * l2 * lam.deriv(gp.r2));
    let st = gap_state(gp, n);
    let osc = if l1 != l2 {
        Some((DiscreteGaussian::new(st.alpha, gp.u)?, l1 - l2))
    } else {
        None
    };
    Ok(CgfPrediction { e: base.e + e_hat, v: base.v + v_hat, osc, n })
}

/// log E e^{t·fluct λ} ≈ t(e_λ + ê_λ) + t²/2(v_λ + v̂_λ) + 𝓕_n(t), for |t| ≤ log n.
pub fn cgf_predict_radial(
    lam: &RadialTestFunction,
    p: &RadialPotential,
    geometry: &DropletGeometry,
    n: usize,
    t: f64,
) -> Result<f64, AsymptoticsError> {
    if t.abs() > (n as f64).ln() {
        return Err(AsymptoticsError::Domain(format!("|t| = {} > log n", t.abs())));
    }
    Ok(cgf_prediction_radial(lam, p, geometry, n)?.value(t))
}
