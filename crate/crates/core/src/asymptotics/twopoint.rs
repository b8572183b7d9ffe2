use std::f64::consts::PI;

use num_complex::Complex64;

use super::AsymptoticsError;
use crate::droplet::{GapParams, NDependentGapState};
use crate::potential::RadialPotential;
use crate::specfun::xi_series;

/// Placement regime for [`predict_two_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoPointMode {
    /// z, w near the gap with ||z| − |w|| bounded below.
    General,
    /// z = (r1 + t/√(2nΔQ(r1)))e^{iθ₁}, w = (r2 + s/√(2nΔQ(r2)))e^{iθ₂}.
    R1R2,
    /// Both points near the r1 circle, distinct angles.
    R1R1,
}

// log of the ℓ-th denominator r1^{e}/√ΔQ1 + r2^{e}/√ΔQ2, e = 2ℓ+1−2x.
fn log_den(gp: &GapParams, x: f64, l: f64) -> f64 {
    let e = 2.0 * l + 1.0 - 2.0 * x;
    let a = e * gp.r1.ln() - 0.5 * gp.dq1.ln();
    let b = e * gp.r2.ln() - 0.5 * gp.dq2.ln();
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn interior_sum(gp: &GapParams, x: f64, zw: Complex64) -> Result<Complex64, AsymptoticsError> {
    let (lr, phi) = (zw.norm().ln(), zw.arg());
    let r1sq = gp.r1 * gp.r1;
    let r2sq = gp.r2 * gp.r2;
    let modulus = zw.norm();
    if !(modulus > r1sq && modulus < r2sq) {
        return Err(AsymptoticsError::Divergence(modulus));
    }
    // Terms are log-concave in ℓ; start at the largest and walk outwards.
    let term = |l: f64| (l * lr - log_den(gp, x, l), l * phi);
    let mut l0 = 0.0;
    let mut best = term(0.0).0;
    for dir in [1.0, -1.0] {
        let mut l = dir;
        while term(l).0 > best {
            best = term(l).0;
            l0 = l;
            l += dir;
        }
    }
    let shift = term(l0).0;
    let mut sum = Complex64::from_polar(1.0, term(l0).1);
    for dir in [1.0, -1.0] {
        let mut l = l0 + dir;
        loop {
            let (lm, ph) = term(l);
            let v = (lm - shift).exp();
            sum += Complex64::from_polar(v, ph);
            if v < 1e-17 {
                break;
            }
            if (l - l0).abs() > 1e7 {
                return Err(AsymptoticsError::Divergence(modulus));
            }
            l += dir;
        }
    }
    Ok(sum * shift.exp() / (2.0 * PI))
}

/// The n-weighted Szegő kernel 𝒮^G(z, w; n) of the gap.
///
/// For r1 < |z|, |w| < r2 this sums the two-sided series. When both points
/// lie on the r1 circle the Abel-summed form is returned instead.
pub fn szego_gap(gp: &GapParams, state: &NDependentGapState, z: Complex64, w: Complex64) -> Result<Complex64, AsymptoticsError> {
    let tol = 1e-12 * gp.r1;
    let on_r1 = (z.norm() - gp.r1).abs() < tol && (w.norm() - gp.r1).abs() < tol;
    if on_r1 {
        return szego_r1_circle(gp, state, z.arg() - w.arg());
    }
    interior_sum(gp, state.x, z * w.conj())
}

/// (1/2π)(√ΔQ(r1)/r1) r1^{2x} (1/(e^{iφ} − 1) + Ξ(x, φ; ρ, a)).
fn szego_r1_circle(gp: &GapParams, state: &NDependentGapState, phi: f64) -> Result<Complex64, AsymptoticsError> {
    let phi = phi.rem_euclid(2.0 * PI);
    if phi.abs() < 1e-12 || (2.0 * PI - phi).abs() < 1e-12 {
        return Err(AsymptoticsError::AngleCoincidence);
    }
    let x = state.x;
    let pole = 1.0 / (Complex64::from_polar(1.0, phi) - 1.0);
    let xi = xi_series(x, phi, gp.rho, gp.a0)?;
    let pre = gp.dq1.sqrt() / gp.r1 * gp.r1.powf(2.0 * x) / (2.0 * PI);
    Ok((pole + xi) * pre)
}

/// 𝒮^G continued analytically to ζ = z w̄/r1² near the unit circle:
/// C[1/(ζ − 1) + Σ_{ℓ≥0} ζ^ℓ/(1 + a⁻¹ρ^{−(2ℓ−2x+1)}) − Σ_{ℓ<0} ζ^ℓ/(1 + aρ^{2ℓ−2x+1})]
/// with C = (1/2π)(√ΔQ(r1)/r1) r1^{2x}. On |ζ| = 1 this is the Abel-summed form.
fn szego_r1_continued(gp: &GapParams, x: f64, zeta: Complex64) -> Result<Complex64, AsymptoticsError> {
    if (zeta - 1.0).norm() < 1e-12 {
        return Err(AsymptoticsError::AngleCoincidence);
    }
    let (lr, la) = (gp.rho.ln(), gp.a0.ln());
    let logistic = |w: f64| if w >= 0.0 { 1.0 / (1.0 + (-w).exp()) } else { w.exp() / (1.0 + w.exp()) };
    let mut sum = 1.0 / (zeta - 1.0);
    let mut pw = Complex64::new(1.0, 0.0);
    let mut l = 0.0;
    loop {
        let v = logistic(la + (2.0 * l - 2.0 * x + 1.0) * lr);
        sum += pw * v;
        if 2.0 * l - 2.0 * x + 1.0 > 0.0 && (pw * v).norm() < 1e-17 {
            break;
        }
        if l > 1e6 {
            return Err(AsymptoticsError::Divergence(zeta.norm()));
        }
        pw *= zeta;
        l += 1.0;
    }
    let inv = 1.0 / zeta;
    let mut pw = inv;
    let mut l = -1.0;
    loop {
        let v = logistic(-la - (2.0 * l - 2.0 * x + 1.0) * lr);
        sum -= pw * v;
        if (pw * v).norm() < 1e-17 {
            break;
        }
        if l < -1e6 {
            return Err(AsymptoticsError::Divergence(zeta.norm()));
        }
        pw *= inv;
        l -= 1.0;
    }
    let pre = gp.dq1.sqrt() / gp.r1 * gp.r1.powf(2.0 * x) / (2.0 * PI);
    Ok(sum * pre)
}

/// Leading-order K_n(z, w) in the canonical monomial gauge.
///
/// In `R1R2` and `R1R1` modes the microscopic offsets are read off the radii
/// of z and w, and 𝒮^G is evaluated at the points themselves (for `R1R1`
/// through its continuation off the r1 circle, which removes an O(1/√n)
/// phase error). `General` uses (z w̄)^m e^{nA} e^{−n(q(|z|)+q(|w|))/2}, which
/// equals the (Q(r1), Q(r2)) normalisation because A = q(r_k) − B log r_k.
pub fn predict_two_point(
    p: &RadialPotential,
    gp: &GapParams,
    state: &NDependentGapState,
    z: Complex64,
    w: Complex64,
    mode: TwoPointMode,
) -> Result<Complex64, AsymptoticsError> {
    let n = state.n as f64;
    let m = state.m as f64;
    let x = state.x;
    let root = (2.0 * PI * n).sqrt();
    let dth = z.arg() - w.arg();
    let delta = crate::kernel::delta_n(state.n);
    match mode {
        TwoPointMode::General => {
            let (rz, rw) = (z.norm(), w.norm());
            let near = |r: f64| r > gp.r1 - delta && r < gp.r2 + delta;
            if !near(rz) || !near(rw) {
                return Err(AsymptoticsError::ModeMismatch("points must lie within δ_n of the gap".into()));
            }
            let sg = interior_sum(gp, x, z * w.conj())?;
            let log_mag = m * (rz.ln() + rw.ln()) + n * gp.a - 0.5 * n * (p.q(rz) + p.q(rw));
            Ok(root * sg * Complex64::from_polar(log_mag.exp(), m * dth))
        }
        TwoPointMode::R1R2 => {
            let t = (z.norm() - gp.r1) * (2.0 * n * gp.dq1).sqrt();
            let s = (w.norm() - gp.r2) * (2.0 * n * gp.dq2).sqrt();
            if t.abs() > n.ln() || s.abs() > n.ln() {
                return Err(AsymptoticsError::ModeMismatch("z must be near r1 and w near r2".into()));
            }
            let sg = interior_sum(gp, x, z * w.conj())?;
            let mag = (gp.r1 * gp.r2).powf(-x) * (-0.5 * (t * t + s * s)).exp();
            Ok(root * sg * Complex64::from_polar(mag, m * dth))
        }
        TwoPointMode::R1R1 => {
            let c = (2.0 * n * gp.dq1).sqrt();
            let t = (z.norm() - gp.r1) * c;
            let s = (w.norm() - gp.r1) * c;
            if t.abs() > n.ln() || s.abs() > n.ln() {
                return Err(AsymptoticsError::ModeMismatch("both points must be near r1".into()));
            }
            let sg = szego_r1_continued(gp, x, z * w.conj() / (gp.r1 * gp.r1))?;
            let mag = gp.r1.powf(-2.0 * x) * (-0.5 * (t * t + s * s)).exp();
            Ok(root * sg * Complex64::from_polar(mag, m * dth))
        }
    }
}
