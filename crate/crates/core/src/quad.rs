//! Adaptive Gauss–Kronrod quadrature, Gauss–Legendre rules and bracketed
//! root finding.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("quadrature tolerance not met after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    QuadratureFailure {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },
    #[error("non-finite integrand value at x = {0}")]
    NonFinite(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("no sign change in bracket [{0}, {1}]")]
    NoBracket(f64, f64),
    #[error("root iteration did not converge")]
    NoConvergence,
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

pub const MAX_SUBDIVISIONS: usize = 10_000;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// One GK21 panel: (kronrod estimate, error estimate, ∫|f| estimate).
fn qk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite(c));
    }
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = fc.abs() * WGK[10];
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for k in 0..10 {
        let dx = h * XGK[k];
        let (x1, x2) = (c - dx, c + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadError::NonFinite(x1));
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite(x2));
        }
        fv1[k] = f1;
        fv2[k] = f2;
        resk += WGK[k] * (f1 + f2);
        resabs += WGK[k] * (f1.abs() + f2.abs());
        if k % 2 == 1 {
            resg += WG[k / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for k in 0..10 {
        resasc += WGK[k] * ((fv1[k] - reskh).abs() + (fv2[k] - reskh).abs());
    }
    let result = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0f64).min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((result, err, resabs))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive GK21 over `[a, b]` split first at `breaks`; stops when the total
/// error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral, QuadError> {
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(|x, y| x.total_cmp(y));
    pts.dedup();
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut err = 0.0;
    let mut total_abs = 0.0;
    let mut evals = 0;
    for w in pts.windows(2) {
        let (v, e, ab) = qk21(&f, w[0], w[1])?;
        evals += 21;
        total += v;
        err += e;
        total_abs += ab;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
            abs: ab,
        });
    }
    let mut subdivisions = 0;
    // Below ~100 eps·∫|f| the error estimate is pure round-off.
    while err > abs_tol.max(rel_tol * total.abs()).max(100.0 * f64::EPSILON * total_abs) {
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(QuadError::QuadratureFailure {
                subdivisions,
                estimate: total,
                error: err,
            });
        }
        let p = heap.pop().expect("panel heap never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // Interval exhausted at machine resolution; accept it.
            heap.push(Panel { error: 0.0, ..p });
            err = heap.iter().map(|q| q.error).sum();
            subdivisions += 1;
            continue;
        }
        let (v1, e1, ab1) = qk21(&f, p.a, m)?;
        let (v2, e2, ab2) = qk21(&f, m, p.b)?;
        evals += 42;
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        total_abs += ab1 + ab2 - p.abs;
        heap.push(Panel {
            a: p.a,
            b: m,
            value: v1,
            error: e1,
            abs: ab1,
        });
        heap.push(Panel {
            a: m,
            b: p.b,
            value: v2,
            error: e2,
            abs: ab2,
        });
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // Refresh running sums against drift.
            total = heap.iter().map(|q| q.value).sum();
            err = heap.iter().map(|q| q.error).sum();
            total_abs = heap.iter().map(|q| q.abs).sum();
        }
    }
    Ok(Integral {
        value: heap.iter().map(|q| q.value).sum(),
        error: err,
        evaluations: evals,
    })
}

pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral, QuadError> {
    integrate_with_breaks(f, a, b, &[], abs_tol, rel_tol)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            return (vec![0.0], vec![2.0]);
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Bracketed root: bisection down to `bisect_width`, then safeguarded Newton
/// (falls back to bisection whenever a step leaves the bracket).
pub fn bisect_newton<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    bisect_width: f64,
    tol: f64,
) -> Result<f64, RootError>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoBracket(lo, hi));
    }
    while hi - lo > bisect_width {
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == flo.signum() {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let mut xn = if d != 0.0 { x - fx / d } else { f64::NAN };
        if !(xn > lo && xn < hi) {
            xn = 0.5 * (lo + hi);
        }
        if (xn - x).abs() <= tol * x.abs().max(1.0) || hi - lo <= tol * x.abs().max(1.0) {
            return Ok(xn);
        }
        x = xn;
    }
    Err(RootError::NoConvergence)
}

/// log(Σ exp(v_i)) without overflow.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + values.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 1e-14, 1e-14).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn gk_peaked_gaussian() {
        let s = 1e-3;
        let r = integrate_with_breaks(
            |x: f64| (-(x - 0.3) * (x - 0.3) / (2.0 * s * s)).exp(),
            0.0,
            1.0,
            &[0.3],
            0.0,
            1e-13,
        )
        .unwrap();
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((r.value / exact - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gl_integrates_degree_2n_minus_1() {
        for n in [1, 2, 5, 8, 16, 31] {
            let (x, w) = gauss_legendre(n);
            let deg = 2 * n - 1;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "n={n}");
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn root_of_cubic() {
        let r = bisect_newton(|x| x * x * x - 2.0, |x| 3.0 * x * x, 0.0, 2.0, 1e-6, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
        assert!(bisect_newton(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0, 1e-6, 1e-15).is_err());
    }

    #[test]
    fn lse() {
        let v = [1000.0, 1000.0];
        assert!((log_sum_exp(&v) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }
}
