use std::f64::consts::PI;

use super::theta::{log_jacobi_theta, ThetaArg};
use super::SpecfunError;

/// The discrete normal law dN(α, u): P(X = k) = u^{(k−α)²/2} / I(α, u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteGaussian {
    pub alpha: f64,
    pub u: f64,
    /// log I(α, u).
    pub log_normalizer: f64,
}

// Sum of exp(expo(k)) over all integers k for a concave quadratic exponent
// with maximum near `centre`, in shifted log space.
fn log_sum_quadratic<F: Fn(f64) -> f64>(expo: F, centre: f64) -> f64 {
    let k0 = centre.round();
    let m = expo(k0);
    let mut s = 1.0;
    for dir in [1.0, -1.0] {
        let mut k = k0 + dir;
        loop {
            let v = (expo(k) - m).exp();
            s += v;
            if v < 1e-17 * s && ((k - centre) * dir) > 0.0 {
                break;
            }
            k += dir;
        }
    }
    m + s.ln()
}

impl DiscreteGaussian {
    pub fn new(alpha: f64, u: f64) -> Result<Self, SpecfunError> {
        if !(u > 0.0 && u < 1.0) || !alpha.is_finite() {
            return Err(SpecfunError::Domain(format!("need 0 < u < 1, got u={u}, α={alpha}")));
        }
        let h = -0.5 * u.ln();
        let log_normalizer = log_sum_quadratic(|k| -h * (k - alpha) * (k - alpha), alpha);
        Ok(DiscreteGaussian { alpha, u, log_normalizer })
    }

    /// −½ log u, the Gaussian curvature of the log-pmf.
    fn h(&self) -> f64 {
        -0.5 * self.u.ln()
    }

    pub fn log_pmf(&self, k: i64) -> f64 {
        let d = k as f64 - self.alpha;
        -self.h() * d * d - self.log_normalizer
    }

    /// Integers carrying all but ~1e-17 of the mass.
    pub fn effective_range(&self) -> (i64, i64) {
        let w = (40.0 / self.h()).sqrt().ceil() + 1.0;
        ((self.alpha - w).floor() as i64, (self.alpha + w).ceil() as i64)
    }

    pub fn mean(&self) -> f64 {
        let (lo, hi) = self.effective_range();
        (lo..=hi).map(|k| k as f64 * self.log_pmf(k).exp()).sum()
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        let (lo, hi) = self.effective_range();
        (lo..=hi).map(|k| (k as f64 - mu).powi(2) * self.log_pmf(k).exp()).sum()
    }
}

pub fn dn_pmf(d: &DiscreteGaussian, k: i64) -> f64 {
    d.log_pmf(k).exp()
}

/// log E e^{tc(X−α)} by direct summation.
#[allow(non_snake_case)]
pub fn dn_cgf_Y(d: &DiscreteGaussian, c: f64, t: f64) -> f64 {
    if t == 0.0 || c == 0.0 {
        return 0.0;
    }
    let h = d.h();
    let a = d.alpha;
    let tc = t * c;
    log_sum_quadratic(|k| -h * (k - a) * (k - a) + tc * (k - a), a + tc / (2.0 * h)) - d.log_normalizer
}

/// The same CGF through theta functions, with L = −½ log u:
/// t²c²/(4L) + log θ(α + tc/(2L); iπ/L) − log θ(α; iπ/L).
#[allow(non_snake_case)]
pub fn dn_cgf_Y_theta(d: &DiscreteGaussian, c: f64, t: f64) -> Result<f64, SpecfunError> {
    let l = d.h();
    let tau = PI / l;
    let num = log_jacobi_theta(ThetaArg::real(d.alpha + t * c / (2.0 * l), tau)?)?.re;
    let den = log_jacobi_theta(ThetaArg::real(d.alpha, tau)?)?.re;
    Ok(t * t * c * c / (4.0 * l) + num - den)
}
