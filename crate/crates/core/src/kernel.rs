//! Exact finite-n engine: weighted-monomial norms, peak points, Laplace
//! coefficients, the 1-point function and the correlation kernel.
//!
//! For the rotation-invariant ensemble with weight `e^{−n q̃}` the monomials
//! `z^j` are orthogonal and
//!
//! ```text
//! I_j = ‖z^j e^{−n q̃/2}‖² = 2∫₀^∞ r^{2j+1} e^{−n q(r) + sλ(r)} dr,
//! K_n(z, w) = Σ_{j<n} z^j w̄^j e^{−n(q̃(|z|) + q̃(|w|))/2} / I_j.
//! ```
//!
//! Each `log I_j` is computed around its own peaks, so nothing underflows
//! for n in the thousands.

use num_complex::Complex64;
use thiserror::Error;

use crate::droplet::GapParams;
use crate::par;
use crate::potential::PerturbedPotential;
use crate::quad::{bisect_newton, integrate, log_sum_exp, QuadError, RootError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("peak point not found: {0}")]
    RootNotFound(#[from] RootError),
    #[error("|z| = {r} is not within δ_n = {delta} of the gap")]
    OutOfWindow { r: f64, delta: f64 },
    #[error("weight table was built without gap data")]
    NoGapWindow,
    #[error("index {j} outside the window of the table")]
    IndexOutOfRange { j: usize },
}

/// Drop contributions below e^{−CUT} relative to the dominant peak.
const CUT: f64 = 60.0;
const GRID: usize = 4096;

/// Gap-window data attached to a table: indices with |τ − B/2| ≤ Cδ_n.
#[derive(Debug, Clone, PartialEq)]
pub struct GapWindow {
    pub gap: GapParams,
    pub window_c: f64,
    pub delta_n: f64,
    pub j_lo: usize,
    pub j_hi: usize,
    /// (r_{1,j}, r_{2,j}) for j in j_lo..=j_hi; None when the weight has no
    /// peak near one of the edges (small j with a wide window).
    pub peaks: Vec<Option<(f64, f64)>>,
    /// (log c₁(j,n), log c₂(j,n)) for the same j.
    pub log_laplace_c: Vec<Option<(f64, f64)>>,
}

impl GapWindow {
    pub fn contains(&self, j: usize) -> bool {
        j >= self.j_lo && j <= self.j_hi
    }
}

/// Norm data for one index j.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexNorm {
    pub log_norm: f64,
    /// Radial regions carrying all but e^{−60} of the mass, one per peak.
    pub regions: Vec<(f64, f64)>,
    /// Local maxima of the integrand r^{2j+1}e^{−nq̃} that were retained.
    pub peaks: Vec<f64>,
}

/// Per-index log-norms for a (potential, λ, s, n) configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub n: usize,
    pub pp: PerturbedPotential,
    pub log_norms: Vec<f64>,
    pub index: Vec<IndexNorm>,
    pub window: Option<GapWindow>,
}

/// Evaluation of K_n(z, w) = value·e^{log_scale}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEvaluation {
    pub z: Complex64,
    pub w: Complex64,
    pub value: Complex64,
    pub log_scale: f64,
    pub n: usize,
    pub s: f64,
}

impl KernelEvaluation {
    pub fn to_complex(&self) -> Complex64 {
        self.value * self.log_scale.exp()
    }
}

/// δ_n = log n / √n.
pub fn delta_n(n: usize) -> f64 {
    let nf = n as f64;
    nf.ln() / nf.sqrt()
}

// Precomputed Ψ(r) = nΦ(r) − s·rλ'(r); the integrand G_j has
// G_j'(r) = ((2j+1) − Ψ(r))/r.
struct Profile<'a> {
    pp: &'a PerturbedPotential,
    grid: Vec<f64>,
    psi: Vec<f64>,
}

impl<'a> Profile<'a> {
    fn new(pp: &'a PerturbedPotential) -> Self {
        let p = &pp.base;
        let mut rmax = p.outer_scale();
        while p.phi(rmax) < 3.0 || p.lap(rmax) <= 0.0 {
            rmax *= 1.5;
        }
        let (_, hi) = pp.bump.support();
        if hi.is_finite() && pp.s != 0.0 {
            rmax = rmax.max(1.05 * hi);
        }
        let grid: Vec<f64> = (1..=GRID).map(|i| rmax * i as f64 / GRID as f64).collect();
        let psi = grid.iter().map(|&r| Self::psi_at(pp, r)).collect();
        Profile { pp, grid, psi }
    }

    fn psi_at(pp: &PerturbedPotential, r: f64) -> f64 {
        let mut v = pp.n as f64 * pp.base.phi(r);
        if pp.s != 0.0 {
            v -= pp.s * r * pp.bump.deriv(r);
        }
        v
    }

    fn dpsi_at(&self, r: f64) -> f64 {
        let pp = self.pp;
        let mut v = pp.n as f64 * 4.0 * r * pp.base.lap(r);
        if pp.s != 0.0 {
            let [_, d1, d2] = pp.bump.eval3(r);
            v -= pp.s * (d1 + r * d2);
        }
        v
    }

    /// log integrand G_j(r) = (2j+1)log r − n q̃(r) + log 2.
    fn g(&self, j: usize, r: f64) -> f64 {
        (2 * j + 1) as f64 * r.ln() - self.pp.n_qt(r) + std::f64::consts::LN_2
    }

    fn crossing(&self, level: f64, a: f64, b: f64) -> Result<f64, RootError> {
        bisect_newton(
            |r| Self::psi_at(self.pp, r) - level,
            |r| self.dpsi_at(r),
            a,
            b,
            1e-9 * b,
            1e-15,
        )
    }

    /// Local maxima (upward crossings of Ψ through 2j+1) and minima between them.
    fn critical_points(&self, j: usize) -> Result<(Vec<f64>, Vec<f64>), RootError> {
        let level = (2 * j + 1) as f64;
        let mut maxima = Vec::new();
        let mut minima = Vec::new();
        // Ψ(0) = 0 < level, so the integrand increases from r = 0.
        let mut prev_r = 0.0;
        let mut prev_v = 0.0 - level;
        for (i, &r) in self.grid.iter().enumerate() {
            let v = self.psi[i] - level;
            if prev_v < 0.0 && v >= 0.0 {
                maxima.push(self.crossing(level, prev_r, r)?);
            } else if prev_v >= 0.0 && v < 0.0 {
                minima.push(self.crossing(level, prev_r, r)?);
            }
            prev_r = r;
            prev_v = v;
        }
        Ok((maxima, minima))
    }

    /// Solve G_j(r) = target on [a, b] where G_j is monotone.
    fn level_cut(&self, j: usize, target: f64, a: f64, b: f64) -> f64 {
        let f = |r: f64| self.g(j, r) - target;
        let (mut lo, mut hi) = (a, b);
        let flo = f(lo);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if (f(m) > 0.0) == (flo > 0.0) {
                lo = m;
            } else {
                hi = m;
            }
            if hi - lo < 1e-13 * b {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    fn index_norm(&self, j: usize) -> Result<IndexNorm, KernelError> {
        let (maxima, minima) = self.critical_points(j)?;
        let gvals: Vec<f64> = maxima.iter().map(|&r| self.g(j, r)).collect();
        let gmax = gvals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let floor = gmax - CUT;
        let mut regions = Vec::new();
        let mut peaks = Vec::new();
        for (k, &pk) in maxima.iter().enumerate() {
            if gvals[k] < floor {
                continue;
            }
            // Neighbouring minima bound the monotone stretches around the peak.
            let left_min = minima.iter().copied().filter(|&m| m < pk).fold(0.0, f64::max);
            let right_min = minima.iter().copied().filter(|&m| m > pk).fold(f64::INFINITY, f64::min);
            let lo = if left_min > 0.0 && self.g(j, left_min) >= floor {
                left_min
            } else {
                // G → −∞ at 0, so a cut always exists on (left_min, pk).
                let a = if left_min > 0.0 { left_min } else { pk * 1e-300f64.max(1e-12) };
                if self.g(j, a) >= floor {
                    0.0
                } else {
                    self.level_cut(j, floor, a, pk)
                }
            };
            let hi = if right_min.is_finite() && self.g(j, right_min) >= floor {
                right_min
            } else {
                let mut b = if right_min.is_finite() { right_min } else { pk * 1.5 + 1e-3 };
                while self.g(j, b) >= floor {
                    b = pk + 2.0 * (b - pk);
                }
                self.level_cut(j, floor, pk, b)
            };
            regions.push((lo, hi));
            peaks.push(pk);
        }
        // Absolute accuracy target relative to the Laplace estimate of the total.
        let est: f64 = peaks
            .iter()
            .map(|&pk| {
                let g2 = self.dpsi_at(pk) / pk;
                (self.g(j, pk) - gmax).exp() * (2.0 * std::f64::consts::PI / g2.max(1e-300)).sqrt()
            })
            .sum();
        let mut total = 0.0;
        for (&(lo, hi), &pk) in regions.iter().zip(&peaks) {
            let f = |r: f64| if r <= 0.0 { 0.0 } else { (self.g(j, r) - gmax).exp() };
            total += integrate(&f, lo, pk, 1e-14 * est, 0.0)?.value;
            total += integrate(&f, pk, hi, 1e-14 * est, 0.0)?.value;
        }
        Ok(IndexNorm {
            log_norm: gmax + total.ln(),
            regions,
            peaks,
        })
    }
}

impl WeightTable {
    /// Build the table; with `gap`, the window constant is calibrated by
    /// [`calibrate_window_c`].
    pub fn build(pp: &PerturbedPotential, gap: Option<&GapParams>) -> Result<Self, KernelError> {
        let c = match gap {
            Some(g) => calibrate_window_c(pp, g)?,
            None => DEFAULT_WINDOW_C,
        };
        Self::build_with_window(pp, gap, c)
    }

    pub fn build_with_window(
        pp: &PerturbedPotential,
        gap: Option<&GapParams>,
        window_c: f64,
    ) -> Result<Self, KernelError> {
        let prof = Profile::new(pp);
        let index: Vec<IndexNorm> = par::map_range(pp.n, |j| prof.index_norm(j))
            .into_iter()
            .collect::<Result<_, _>>()?;
        let log_norms = index.iter().map(|x| x.log_norm).collect();
        let window = match gap {
            Some(g) => Some(build_window(pp, g, window_c)?),
            None => None,
        };
        Ok(WeightTable {
            n: pp.n,
            pp: pp.clone(),
            log_norms,
            index,
            window,
        })
    }

    /// Radius beyond which every index carries less than e^{−60} of its mass.
    pub fn support_radius(&self) -> f64 {
        self.index
            .iter()
            .flat_map(|x| x.regions.iter().map(|r| r.1))
            .fold(0.0, f64::max)
    }

    /// log of each term |p̃_j(r)|²/‖p̃_j‖² at radius r.
    fn log_terms(&self, r: f64, js: std::ops::Range<usize>) -> Vec<f64> {
        let base = -self.pp.n_qt(r);
        let lr = r.ln();
        js.map(|j| {
            let pw = if j == 0 { 0.0 } else { 2.0 * j as f64 * lr };
            pw + base - self.log_norms[j]
        })
        .collect()
    }

    /// R̃_n at radius r.
    pub fn one_point_radial(&self, r: f64) -> f64 {
        log_sum_exp(&self.log_terms(r, 0..self.n)).exp()
    }

    /// log R̃_n at radius r.
    pub fn log_one_point_radial(&self, r: f64) -> f64 {
        log_sum_exp(&self.log_terms(r, 0..self.n))
    }
}

/// R̃_n(z) = K̃_n(z, z).
pub fn one_point(table: &WeightTable, z: Complex64) -> f64 {
    table.one_point_radial(z.norm())
}

/// K̃_n(z, w) in the canonical monomial gauge.
pub fn two_point(table: &WeightTable, z: Complex64, w: Complex64) -> KernelEvaluation {
    let (rz, rw) = (z.norm(), w.norm());
    let dphi = z.arg() - w.arg();
    let base = -0.5 * (table.pp.n_qt(rz) + table.pp.n_qt(rw));
    let lzw = rz.ln() + rw.ln();
    let logs: Vec<f64> = (0..table.n)
        .map(|j| {
            let pw = if j == 0 { 0.0 } else { j as f64 * lzw };
            pw + base - table.log_norms[j]
        })
        .collect();
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut value = Complex64::new(0.0, 0.0);
    for (j, l) in logs.iter().enumerate() {
        value += Complex64::from_polar((l - m).exp(), j as f64 * dphi);
    }
    KernelEvaluation {
        z,
        w,
        value,
        log_scale: m,
        n: table.n,
        s: table.pp.s,
    }
}

/// R̃_n^G(z): the 1-point sum restricted to the gap window.
pub fn truncated_gap_one_point(table: &WeightTable, z: Complex64) -> Result<f64, KernelError> {
    let win = table.window.as_ref().ok_or(KernelError::NoGapWindow)?;
    let r = z.norm();
    let g = &win.gap;
    let dist = if r < g.r1 {
        g.r1 - r
    } else if r > g.r2 {
        r - g.r2
    } else {
        0.0
    };
    if dist >= win.delta_n {
        return Err(KernelError::OutOfWindow { r, delta: win.delta_n });
    }
    Ok(log_sum_exp(&table.log_terms(r, win.j_lo..win.j_hi + 1)).exp())
}

pub const DEFAULT_WINDOW_C: f64 = 4.0;
const WINDOW_CANDIDATES: [f64; 4] = [4.0, 6.0, 8.0, 10.0];
const CALIBRATION_N: usize = 100;

fn window_range(n: usize, b: f64, c: f64) -> (usize, usize) {
    let nf = n as f64;
    let d = delta_n(n);
    let lo = ((b / 2.0 - c * d) * nf).ceil().max(0.0) as usize;
    let hi = (((b / 2.0 + c * d) * nf).floor().max(0.0) as usize).min(n - 1);
    (lo.min(hi), hi)
}

/// Smallest C in {4, 6, 8, 10} for which doubling C changes R̃_n^G on ∂G by
/// less than 1e−10 relative, at n = 100.
pub fn calibrate_window_c(pp: &PerturbedPotential, gap: &GapParams) -> Result<f64, KernelError> {
    let cal = PerturbedPotential::new(pp.base.clone(), pp.bump.clone(), pp.s, CALIBRATION_N);
    let prof = Profile::new(&cal);
    let norms: Vec<f64> = par::map_range(CALIBRATION_N, |j| prof.index_norm(j).map(|x| x.log_norm))
        .into_iter()
        .collect::<Result<_, _>>()?;
    let partial = |r: f64, c: f64| {
        let (lo, hi) = window_range(CALIBRATION_N, gap.b, c);
        let base = -cal.n_qt(r);
        let v: Vec<f64> = (lo..=hi)
            .map(|j| if j == 0 { 0.0 } else { 2.0 * j as f64 * r.ln() } + base - norms[j])
            .collect();
        log_sum_exp(&v)
    };
    for &c in &WINDOW_CANDIDATES {
        let ok = [gap.r1, gap.r2]
            .iter()
            .all(|&r| (partial(r, c) - partial(r, 2.0 * c)).abs() < 1e-10);
        if ok {
            return Ok(c);
        }
    }
    Ok(*WINDOW_CANDIDATES.last().unwrap())
}

fn build_window(pp: &PerturbedPotential, gap: &GapParams, c: f64) -> Result<GapWindow, KernelError> {
    let n = pp.n;
    let (j_lo, j_hi) = window_range(n, gap.b, c);
    let mut peaks = Vec::new();
    let mut logc = Vec::new();
    for j in j_lo..=j_hi {
        let pk = match peak_points(pp, gap, j) {
            Ok(pk) => pk,
            Err(KernelError::RootNotFound(_)) => {
                peaks.push(None);
                logc.push(None);
                continue;
            }
            Err(e) => return Err(e),
        };
        let tau = j as f64 / n as f64;
        let lc = |r: f64| {
            let h = r.ln() + pp.s * pp.bump.value(r);
            let g = pp.base.q(r) - 2.0 * tau * r.ln();
            let g2 = pp.base.d2q(r) + 2.0 * tau / (r * r);
            std::f64::consts::LN_2 + h - 0.5 * g2.ln() - n as f64 * g
        };
        peaks.push(Some(pk));
        logc.push(Some((lc(pk.0), lc(pk.1))));
    }
    Ok(GapWindow {
        gap: *gap,
        window_c: c,
        delta_n: delta_n(n),
        j_lo,
        j_hi,
        peaks,
        log_laplace_c: logc,
    })
}

/// The roots of g_j'(r) = 0 (i.e. rq'(r) = 2j/n) nearest r1 and r2, each on
/// an increasing branch of rq'.
pub fn peak_points(pp: &PerturbedPotential, gap: &GapParams, j: usize) -> Result<(f64, f64), KernelError> {
    let tau = j as f64 / pp.n as f64;
    let p = &pp.base;
    let width = 0.2 * (gap.r2 - gap.r1);
    let find = |rk: f64| -> Result<f64, KernelError> {
        let a = (rk - width).max(1e-6 * rk);
        let b = rk + width;
        let steps = 256;
        let f = |r: f64| p.phi(r) - 2.0 * tau;
        let mut best: Option<f64> = None;
        let mut prev = (a, f(a));
        for i in 1..=steps {
            let r = a + (b - a) * i as f64 / steps as f64;
            let v = f(r);
            if prev.1 < 0.0 && v >= 0.0 {
                let root = bisect_newton(f, |r| 4.0 * r * p.lap(r), prev.0, r, 1e-9, 1e-15)?;
                if best.map_or(true, |x| (x - rk).abs() > (root - rk).abs()) {
                    best = Some(root);
                }
            }
            prev = (r, v);
        }
        best.ok_or(KernelError::RootNotFound(RootError::NoBracket(a, b)))
    };
    Ok((find(gap.r1)?, find(gap.r2)?))
}
