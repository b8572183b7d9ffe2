use std::f64::consts::PI;

use coulombgap::quad::integrate;
use coulombgap::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn erfc_against_quadrature_oracle() {
    // erfc(t) = (2/√π)∫_t^∞ e^{−s²} ds; truncate at t + 30 where the tail is < e^{−900}.
    for &t in &[-3.0, -1.2, -0.3, 0.1, 0.49, 0.51, 1.0, 1.7, 2.0, 3.5, 6.0, 9.0] {
        let oracle = 2.0 / PI.sqrt()
            * integrate(|s: f64| (-s * s).exp(), t, t.max(0.0) + 30.0, 0.0, 1e-15)
                .unwrap()
                .value;
        let v = erfc(t);
        assert!((v / oracle - 1.0).abs() < 1e-14, "t={t}: {v} vs {oracle}");
    }
    assert!((erfc(1.0) - 0.157_299_207).abs() < 1e-9);
}

#[test]
fn theta_modular_relation() {
    // θ(z/τ; −1/τ) = e^{πiz²/τ}√(−iτ)·θ(z;τ) for τ = it.
    let mut max: f64 = 0.0;
    for i in 0..100 {
        let t = 0.3 + 4.7 * ((i * 37 % 100) as f64 / 99.0);
        let z = Complex64::new(((i * 13) % 17) as f64 / 17.0 - 0.5, ((i * 7) % 11) as f64 / 22.0 - 0.25);
        let tau = Complex64::new(0.0, t);
        let lhs = jacobi_theta(ThetaArg::new(z / tau, -1.0 / tau).unwrap()).unwrap();
        let rhs = (Complex64::i() * PI * z * z / tau).exp()
            * (-Complex64::i() * tau).sqrt()
            * jacobi_theta(ThetaArg::new(z, tau).unwrap()).unwrap();
        max = max.max((lhs - rhs).norm() / rhs.norm());
    }
    assert!(max < 1e-10, "modular residual {max:e}");
}

#[test]
fn modified_theta_matches_jacobi_form() {
    let mut max: f64 = 0.0;
    for &x in &[0.05, 0.3, 0.5, 0.71, 0.95] {
        for &rho in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            for &a in &[0.3, 0.8, 1.0, 1.6, 3.0] {
                let l = modified_theta(x, rho, a).unwrap();
                let r = modified_theta_via_jacobi(x, rho, a).unwrap();
                max = max.max((l - r).abs());
            }
        }
    }
    assert!(max < 1e-10, "Lemma residual {max:e}");
}

#[test]
fn modified_theta_continuous_and_derivative() {
    let (rho, a) = (0.4, 1.3);
    let mut prev = modified_theta(0.0, rho, a).unwrap();
    for k in 1..=1000 {
        let x = k as f64 * 1e-3;
        let v = modified_theta(x, rho, a).unwrap();
        assert!((v - prev).abs() < 5e-3);
        prev = v;
    }
    let h = 1e-5;
    for &x in &[0.1, 0.45, 0.8] {
        let fd = (modified_theta(x + h, rho, a).unwrap() - modified_theta(x - h, rho, a).unwrap()) / (2.0 * h);
        assert!((fd - modified_theta_dx(x, rho, a).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn xi_phi0_identity_and_direct_oracle() {
    let mut max: f64 = 0.0;
    for &x in &[0.1, 0.5, 0.9] {
        for &rho in &[0.2, 0.5, 0.8] {
            for &a in &[0.5, 1.0, 2.2] {
                let s = xi_series(x, 0.0, rho, a).unwrap();
                let t = xi_series_phi0_via_theta(x, rho, a).unwrap();
                max = max.max((s.re - t).abs() + s.im.abs());
            }
        }
    }
    assert!(max < 1e-10, "Ξ residual {max:e}");

    // 200-term direct summation.
    let (x, phi, rho, a): (f64, f64, f64, f64) = (0.5, 1.0, 0.5, 1.0);
    let mut direct = Complex64::new(0.0, 0.0);
    for l in 0..200 {
        let l = l as f64;
        direct += Complex64::from_polar(1.0 / (1.0 + rho.powf(-(2.0 * l - 2.0 * x + 1.0)) / a), phi * l);
    }
    for l in 1..200 {
        let l = -(l as f64);
        direct -= Complex64::from_polar(1.0 / (1.0 + a * rho.powf(2.0 * l - 2.0 * x + 1.0)), phi * l);
    }
    let v = xi_series(x, phi, rho, a).unwrap();
    assert!((v - direct).norm() < 1e-14);
}

#[test]
fn brock_form_matches_direct_sum() {
    let mut max: f64 = 0.0;
    for i in 0..60 {
        let alpha = (i as f64 * 0.137) % 1.7 - 0.3;
        let rho: f64 = 0.15 + 0.7 * ((i * 29 % 60) as f64 / 59.0);
        let c = ((i * 11) % 7) as f64 * 0.4 - 1.2;
        let t = ((i * 5) % 9) as f64 * 0.25 - 1.0;
        let d = DiscreteGaussian::new(alpha, rho * rho).unwrap();
        max = max.max((dn_cgf_Y(&d, c, t) - dn_cgf_Y_theta(&d, c, t).unwrap()).abs());
    }
    assert!(max < 1e-9, "brock residual {max:e}");
}

proptest! {
    #[test]
    fn theta_even_and_periodic(x in -2.0f64..2.0, y in -0.5f64..0.5, t in 0.3f64..5.0) {
        let z = Complex64::new(x, y);
        let tau = Complex64::new(0.0, t);
        let a = jacobi_theta(ThetaArg::new(z, tau).unwrap()).unwrap();
        let b = jacobi_theta(ThetaArg::new(-z, tau).unwrap()).unwrap();
        let c = jacobi_theta(ThetaArg::new(z + 1.0, tau).unwrap()).unwrap();
        prop_assert!((a - b).norm() <= 1e-13 * a.norm().max(1.0));
        prop_assert!((a - c).norm() <= 1e-12 * a.norm().max(1.0));
        let lp = log_theta_prime(ThetaArg::new(z, tau).unwrap()).unwrap();
        let lq = log_theta_prime(ThetaArg::new(z + 1.0, tau).unwrap()).unwrap();
        prop_assert!((lp - lq).norm() <= 1e-9 * lp.norm().max(1.0));
    }

    #[test]
    fn xi_conjugate_symmetry(x in 0.0f64..1.0, phi in -3.0f64..3.0, rho in 0.1f64..0.9, a in 0.2f64..5.0) {
        let p = xi_series(x, phi, rho, a).unwrap();
        let m = xi_series(x, -phi, rho, a).unwrap();
        prop_assert!((p - m.conj()).norm() < 1e-12 * p.norm().max(1.0));
    }

    #[test]
    fn discrete_gaussian_laws(alpha in -3.0f64..3.0, u in 0.01f64..0.95, c in -2.0f64..2.0) {
        let d = DiscreteGaussian::new(alpha, u).unwrap();
        let lo = (alpha - 40.0).floor() as i64;
        let hi = (alpha + 40.0).ceil() as i64;
        let total: f64 = (lo..=hi).map(|k| dn_pmf(&d, k)).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let h = 1e-3;
        for &t in &[-1.0, 0.0, 0.7] {
            let second = dn_cgf_Y(&d, c, t + h) - 2.0 * dn_cgf_Y(&d, c, t) + dn_cgf_Y(&d, c, t - h);
            prop_assert!(second >= -1e-10);
        }
        let slope = (dn_cgf_Y(&d, c, 1e-6) - dn_cgf_Y(&d, c, -1e-6)) / 2e-6;
        prop_assert!((slope - c * (d.mean() - alpha)).abs() < 1e-9);
    }
}
