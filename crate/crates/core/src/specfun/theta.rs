use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecfunError;

const MAX_TERMS: usize = 1_000_000;

/// Argument of θ(z; τ); τ must lie on the positive imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaArg {
    pub z: Complex64,
    pub tau: Complex64,
}

impl ThetaArg {
    pub fn new(z: Complex64, tau: Complex64) -> Result<Self, SpecfunError> {
        if !(tau.im > 0.0) || tau.re != 0.0 {
            return Err(SpecfunError::Domain(format!("τ = {tau} must be purely imaginary with Im τ > 0")));
        }
        Ok(ThetaArg { z, tau })
    }

    /// Real z and τ = i·t.
    pub fn real(x: f64, t: f64) -> Result<Self, SpecfunError> {
        Self::new(Complex64::new(x, 0.0), Complex64::new(0.0, t))
    }
}

// Σ_ℓ (2πiℓ)^p e^{2πiℓz} e^{−πℓ²T} for p = 0, 1, returned as
// (shift, S0, S1) with θ = e^{shift}·S0 and θ' = e^{shift}·S1.
fn theta_sums(a: &ThetaArg) -> Result<(f64, Complex64, Complex64), SpecfunError> {
    let t = a.tau.im;
    let (x, y) = (a.z.re, a.z.im);
    // |term ℓ| = exp(−2πℓy − πTℓ²), maximal near ℓ* = −y/T.
    let expo = |l: f64| -2.0 * PI * l * y - PI * t * l * l;
    let l0 = (-y / t).round();
    let shift = expo(l0);
    let term = |l: f64| {
        let m = (expo(l) - shift).exp();
        let ph = 2.0 * PI * l * x;
        Complex64::new(m * ph.cos(), m * ph.sin())
    };
    let mut s0 = term(l0);
    let mut s1 = s0 * Complex64::new(0.0, 2.0 * PI * l0);
    let mut k = 1usize;
    loop {
        if k > MAX_TERMS {
            return Err(SpecfunError::ConvergenceFailure(k));
        }
        let kf = k as f64;
        let (tp, tm) = (term(l0 + kf), term(l0 - kf));
        s0 += tp + tm;
        s1 += tp * Complex64::new(0.0, 2.0 * PI * (l0 + kf)) + tm * Complex64::new(0.0, 2.0 * PI * (l0 - kf));
        // Terms decay like a Gaussian in k once past the centre; the first
        // neglected pair bounds the tail up to a factor close to 1.
        let mag = tp.norm().max(tm.norm()) * (1.0 + 2.0 * PI * (l0.abs() + kf));
        if mag < 1e-17 * s0.norm().max(1e-300) && k >= 2 {
            break;
        }
        k += 1;
    }
    Ok((shift, s0, s1))
}

/// θ(z; τ) = Σ_ℓ e^{2πiℓz} e^{πiℓ²τ}.
pub fn jacobi_theta(a: ThetaArg) -> Result<Complex64, SpecfunError> {
    let (shift, s0, _) = theta_sums(&a)?;
    Ok(s0 * shift.exp())
}

/// Principal log θ(z; τ), safe when θ itself would overflow.
pub fn log_jacobi_theta(a: ThetaArg) -> Result<Complex64, SpecfunError> {
    let (shift, s0, _) = theta_sums(&a)?;
    if s0.norm() < 1e-300 {
        return Err(SpecfunError::PoleError);
    }
    Ok(s0.ln() + shift)
}

/// θ'(z; τ)/θ(z; τ), derivative in z.
pub fn log_theta_prime(a: ThetaArg) -> Result<Complex64, SpecfunError> {
    let (_, s0, s1) = theta_sums(&a)?;
    if s0.norm() < 1e-300 {
        return Err(SpecfunError::PoleError);
    }
    Ok(s1 / s0)
}

fn check_rho_a(rho: f64, a: f64) -> Result<(), SpecfunError> {
    if !(rho > 0.0 && rho < 1.0) || !(a > 0.0) {
        return Err(SpecfunError::Domain(format!("need 0 < ρ < 1 and a > 0, got ρ={rho}, a={a}")));
    }
    Ok(())
}

// Σ_{j≥0} f(j) for a summand decaying geometrically once j + offset > 0.
fn geometric_sum<F: Fn(f64) -> f64>(f: F, offset: f64) -> f64 {
    let mut s = 0.0;
    let mut j = 0.0;
    loop {
        let v = f(j);
        s += v;
        if j + offset > 0.0 && v.abs() <= 1e-17 * s.abs().max(1e-300) {
            break;
        }
        if j > 1e6 {
            break;
        }
        j += 1.0;
    }
    s
}

/// Θ(x; ρ, a) = x(x−1)log ρ + x log a + Σ_{j≥0} log(1 + aρ^{2(j+x)})
/// + Σ_{j≥0} log(1 + a⁻¹ρ^{2(j+1−x)}).
pub fn modified_theta(x: f64, rho: f64, a: f64) -> Result<f64, SpecfunError> {
    check_rho_a(rho, a)?;
    let (lr, la) = (rho.ln(), a.ln());
    let s1 = geometric_sum(|j| ln1p_exp(la + 2.0 * (j + x) * lr), x);
    let s2 = geometric_sum(|j| ln1p_exp(-la + 2.0 * (j + 1.0 - x) * lr), 1.0 - x);
    Ok(x * (x - 1.0) * lr + x * la + s1 + s2)
}

/// ∂ₓΘ(x; ρ, a) from the term-wise differentiated series.
pub fn modified_theta_dx(x: f64, rho: f64, a: f64) -> Result<f64, SpecfunError> {
    check_rho_a(rho, a)?;
    let (lr, la) = (rho.ln(), a.ln());
    let s1 = geometric_sum(|j| logistic(la + 2.0 * (j + x) * lr), x);
    let s2 = geometric_sum(|j| logistic(-la + 2.0 * (j + 1.0 - x) * lr), 1.0 - x);
    Ok((2.0 * x - 1.0) * lr + la + 2.0 * lr * (s1 - s2))
}

/// Right-hand side of the Θ–θ identity:
/// ½log(πaρ^{−1/2}/log ρ⁻¹) + (log a)²/(4 log ρ⁻¹) − Σ_{j≥1} log(1 − ρ^{2j})
/// + log θ(x + log(aρ)/(2 log ρ); πi/log ρ⁻¹).
pub fn modified_theta_via_jacobi(x: f64, rho: f64, a: f64) -> Result<f64, SpecfunError> {
    check_rho_a(rho, a)?;
    let l = -rho.ln();
    let la = a.ln();
    let euler = geometric_sum(|j| (-(rho.powf(2.0 * (j + 1.0)))).ln_1p(), 1.0);
    let arg = ThetaArg::real(x + (a * rho).ln() / (2.0 * rho.ln()), PI / l)?;
    let lt = log_jacobi_theta(arg)?.re;
    Ok(0.5 * (PI * a * rho.powf(-0.5) / l).ln() + la * la / (4.0 * l) - euler + lt)
}

/// Ξ(x, φ; ρ, a) = Σ_{ℓ≥0} e^{iφℓ}/(1 + a⁻¹ρ^{−(2ℓ−2x+1)})
/// − Σ_{ℓ≤−1} e^{iφℓ}/(1 + aρ^{2ℓ−2x+1}).
pub fn xi_series(x: f64, phi: f64, rho: f64, a: f64) -> Result<Complex64, SpecfunError> {
    check_rho_a(rho, a)?;
    let (lr, la) = (rho.ln(), a.ln());
    let mut s = Complex64::new(0.0, 0.0);
    let mut l = 0.0;
    loop {
        // 1/(1 + e^w), w = −log a − (2ℓ−2x+1) log ρ
        let v = logistic(la + (2.0 * l - 2.0 * x + 1.0) * lr);
        s += Complex64::from_polar(v, phi * l);
        if 2.0 * l - 2.0 * x + 1.0 > 0.0 && v < 1e-17 {
            break;
        }
        l += 1.0;
    }
    let mut l = -1.0;
    loop {
        // 1/(1 + aρ^e) with e = 2ℓ−2x+1 < 0 for ℓ ≤ −1, x ≥ 0
        let v = logistic(-la - (2.0 * l - 2.0 * x + 1.0) * lr);
        s -= Complex64::from_polar(v, phi * l);
        if 2.0 * l - 2.0 * x + 1.0 < 0.0 && v < 1e-17 {
            break;
        }
        l -= 1.0;
    }
    Ok(s)
}

/// Closed form of Ξ(x, 0; ρ, a) through (log θ)', with L = log ρ⁻¹:
/// [(log θ)'(x + log a/(2L); πi/L) + 2xL + log a] / (2L).
///
/// Follows from writing Ξ(x, 0) as (∂Θ(½ − x) − (2y − 1)log ρ − log a)/(2 log ρ)
/// with y = ½ − x and differentiating the Θ–θ identity; θ' is odd.
pub fn xi_series_phi0_via_theta(x: f64, rho: f64, a: f64) -> Result<f64, SpecfunError> {
    check_rho_a(rho, a)?;
    let l = -rho.ln();
    let la = a.ln();
    let arg = ThetaArg::real(x + la / (2.0 * l), PI / l)?;
    let lp = log_theta_prime(arg)?.re;
    Ok((lp + 2.0 * x * l + la) / (2.0 * l))
}

/// log(1 + e^w) without overflow.
fn ln1p_exp(w: f64) -> f64 {
    if w > 36.0 {
        w + (-w).exp().ln_1p()
    } else {
        w.exp().ln_1p()
    }
}

/// e^w/(1 + e^w).
fn logistic(w: f64) -> f64 {
    if w >= 0.0 {
        1.0 / (1.0 + (-w).exp())
    } else {
        let e = w.exp();
        e / (1.0 + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_basic() {
        let v = jacobi_theta(ThetaArg::real(0.0, 10.0).unwrap()).unwrap();
        assert!((v.re - 1.0).abs() < 1e-13);
        let z = Complex64::new(0.23, -0.4);
        let t = Complex64::new(0.0, 0.7);
        let a = jacobi_theta(ThetaArg::new(z, t).unwrap()).unwrap();
        let b = jacobi_theta(ThetaArg::new(z + 1.0, t).unwrap()).unwrap();
        let c = jacobi_theta(ThetaArg::new(-z, t).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm());
        assert!((a - c).norm() < 1e-13 * a.norm());
        assert!(ThetaArg::real(0.0, -1.0).is_err());
    }

    #[test]
    fn theta_direct_sum_oracle() {
        let direct: f64 = (-50..=50)
            .map(|l: i32| {
                let l = l as f64;
                (2.0 * PI * l * 0.3).cos() * (-PI * l * l * 2.0).exp()
            })
            .sum();
        let v = jacobi_theta(ThetaArg::real(0.3, 2.0).unwrap()).unwrap();
        assert!((v.re - direct).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn log_derivative_fd() {
        let h = 1e-6;
        let f = |x: f64| log_jacobi_theta(ThetaArg::real(x, 2.0).unwrap()).unwrap().re;
        let fd = (f(0.3 + h) - f(0.3 - h)) / (2.0 * h);
        let v = log_theta_prime(ThetaArg::real(0.3, 2.0).unwrap()).unwrap();
        assert!((v.re - fd).abs() < 1e-8);
        assert!(log_theta_prime(ThetaArg::real(0.0, 1.3).unwrap()).unwrap().norm() < 1e-14);
    }
}
