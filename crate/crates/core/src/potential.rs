//! Radially symmetric external potentials `Q(z) = q(|z|)` and radial test
//! functions.
//!
//! Conventions: `dA = dx dy / π`, `Δ = ∂∂̄ = (∂²_x + ∂²_y)/4`. For a radial
//! function `f(r)` this gives `Δf = (f'' + f'/r)/4`, and `∫ f dA = 2∫ f r dr`.

use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("radius must be positive, got {0}")]
    Domain(f64),
    #[error("potential does not grow faster than 2 log r: {0}")]
    Growth(String),
    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),
    #[error("invalid tabulated profile: {0}")]
    InvalidTable(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Profile {
    /// q(r) = Σ c_k r^{2k}; `q` is the same polynomial expanded in r.
    Even {
        coeffs: Vec<f64>,
        q: Poly,
        dq: Poly,
        d2q: Poly,
        d3q: Poly,
        lap: Poly,
        dlap: Poly,
        d2lap: Poly,
    },
    /// Uniform grid samples of q, interpolated by local 6-point Lagrange.
    Tabulated { r0: f64, h: f64, values: Vec<f64> },
}

/// A radial potential, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPotential {
    profile: Profile,
}

impl RadialPotential {
    /// `q(r) = Σ_{k≥1} coeffs[k-1] · r^{2k}`.
    pub fn from_coeffs(coeffs: &[f64]) -> Result<Self, PotentialError> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(PotentialError::Growth("need finite coefficients".into()));
        }
        let mut c = vec![0.0; 2 * coeffs.len() + 1];
        for (k, &a) in coeffs.iter().enumerate() {
            c[2 * (k + 1)] = a;
        }
        let q = Poly::new(c);
        let dq = q.derivative();
        let d2q = dq.derivative();
        let d3q = d2q.derivative();
        // ΔQ = Σ k² c_k r^{2k-2}
        let mut lc = vec![0.0; 2 * coeffs.len() - 1];
        for (k, &a) in coeffs.iter().enumerate() {
            let k1 = (k + 1) as f64;
            lc[2 * k] = k1 * k1 * a;
        }
        let lap = Poly::new(lc);
        let dlap = lap.derivative();
        let d2lap = dlap.derivative();
        let p = RadialPotential {
            profile: Profile::Even {
                coeffs: coeffs.to_vec(),
                q,
                dq,
                d2q,
                d3q,
                lap,
                dlap,
                d2lap,
            },
        };
        p.check_growth()?;
        Ok(p)
    }

    /// The Ginibre potential `q(r) = r²`.
    pub fn ginibre() -> Self {
        Self::from_coeffs(&[1.0]).expect("r² grows")
    }

    /// `q(r) = 1.8 r² − 0.8 r⁴ + 0.1 r⁶`, whose droplet has one annular gap.
    pub fn sextic_example() -> Self {
        Self::from_coeffs(&[1.8, -0.8, 0.1]).expect("sextic grows")
    }

    /// Tabulated profile on the uniform grid `r0 + i·h`. Reduced precision:
    /// derivatives come from 5-point stencils of the interpolant.
    pub fn tabulated(r0: f64, h: f64, values: Vec<f64>) -> Result<Self, PotentialError> {
        if values.len() < 8 || !(h > 0.0) || !(r0 >= 0.0) {
            return Err(PotentialError::InvalidTable("need ≥ 8 points and h > 0".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PotentialError::InvalidTable("non-finite sample".into()));
        }
        let p = RadialPotential {
            profile: Profile::Tabulated { r0, h, values },
        };
        p.check_growth()?;
        Ok(p)
    }

    pub fn is_reduced_precision(&self) -> bool {
        matches!(self.profile, Profile::Tabulated { .. })
    }

    /// Coefficients `c_k` for polynomial potentials.
    pub fn coeffs(&self) -> Option<&[f64]> {
        match &self.profile {
            Profile::Even { coeffs, .. } => Some(coeffs),
            Profile::Tabulated { .. } => None,
        }
    }

    /// Byte encoding of the defining data, for content-addressed caches.
    pub fn fingerprint(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let (tag, data): (u8, Vec<f64>) = match &self.profile {
            Profile::Even { coeffs, .. } => (0, coeffs.clone()),
            Profile::Tabulated { r0, h, values } => (1, [*r0, *h].into_iter().chain(values.iter().copied()).collect()),
        };
        out.push(tag);
        for v in data {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// A radius beyond which the growth term dominates.
    pub fn outer_scale(&self) -> f64 {
        match &self.profile {
            Profile::Even { coeffs, .. } => {
                let kk = coeffs.len();
                let top = coeffs[kk - 1].abs();
                let mut s: f64 = 1.0;
                for (k, c) in coeffs.iter().enumerate().take(kk - 1) {
                    if *c != 0.0 && top > 0.0 {
                        s = s.max((c.abs() / top).powf(1.0 / (2.0 * (kk - 1 - k) as f64)));
                    }
                }
                s
            }
            Profile::Tabulated { r0, h, values } => 0.5 * (r0 + h * (values.len() - 1) as f64),
        }
    }

    fn check_growth(&self) -> Result<(), PotentialError> {
        if let Profile::Even { coeffs, .. } = &self.profile {
            if *coeffs.last().unwrap() <= 0.0 {
                return Err(PotentialError::Growth("leading coefficient must be positive".into()));
            }
        }
        let r0 = self.outer_scale();
        let r1 = match &self.profile {
            Profile::Even { .. } => 10.0 * r0,
            Profile::Tabulated { r0: a, h, values } => a + h * (values.len() - 1) as f64,
        };
        let g = |r: f64| self.q(r) - 2.0 * r.ln();
        if g(r1) > g(r0) + 1.0 {
            Ok(())
        } else {
            Err(PotentialError::Growth(format!(
                "q(R) - 2log R = {} not above {} + 1",
                g(r1),
                g(r0)
            )))
        }
    }

    fn tab_interp(r0: f64, h: f64, v: &[f64], r: f64) -> f64 {
        let n = v.len();
        let last = r0 + h * (n - 1) as f64;
        if r > last {
            // Quadratic continuation from the end of the table.
            let d1 = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
            let d2 = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
            let d = r - last;
            return v[n - 1] + d1 * d + 0.5 * d2.max(0.0) * d * d;
        }
        let s = ((r - r0) / h).max(0.0);
        let i0 = (s.floor() as isize - 2).clamp(0, n as isize - 6) as usize;
        let mut acc = 0.0;
        for i in i0..i0 + 6 {
            let mut l = 1.0;
            for k in i0..i0 + 6 {
                if k != i {
                    l *= (s - k as f64) / (i as f64 - k as f64);
                }
            }
            acc += l * v[i];
        }
        acc
    }

    fn stencil(&self, r: f64, order: u8) -> f64 {
        let h = 1e-3 * r.max(1e-2);
        let f = |x: f64| self.q(x);
        match order {
            1 => (f(r - 2.0 * h) - 8.0 * f(r - h) + 8.0 * f(r + h) - f(r + 2.0 * h)) / (12.0 * h),
            2 => {
                (-f(r - 2.0 * h) + 16.0 * f(r - h) - 30.0 * f(r) + 16.0 * f(r + h) - f(r + 2.0 * h))
                    / (12.0 * h * h)
            }
            _ => (-f(r - 2.0 * h) + 2.0 * f(r - h) - 2.0 * f(r + h) + f(r + 2.0 * h)) / (-2.0 * h.powi(3)),
        }
    }

    /// q(r); defined for r ≥ 0 (unchecked).
    pub fn q(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { q, .. } => q.eval(r),
            Profile::Tabulated { r0, h, values } => Self::tab_interp(*r0, *h, values, r),
        }
    }

    pub fn dq(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { dq, .. } => dq.eval(r),
            Profile::Tabulated { .. } => self.stencil(r, 1),
        }
    }

    pub fn d2q(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { d2q, .. } => d2q.eval(r),
            Profile::Tabulated { .. } => self.stencil(r, 2),
        }
    }

    pub fn d3q(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { d3q, .. } => d3q.eval(r),
            Profile::Tabulated { .. } => self.stencil(r, 3),
        }
    }

    /// Φ(r) = r q'(r), twice the cumulative mass function on the droplet.
    pub fn phi(&self, r: f64) -> f64 {
        r * self.dq(r)
    }

    /// ΔQ at radius r (unchecked; polynomial profiles are exact at r = 0).
    pub fn lap(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { lap, .. } => lap.eval(r),
            Profile::Tabulated { .. } => 0.25 * (self.dq(r) / r + self.d2q(r)),
        }
    }

    /// ∂_r ΔQ, from 4∂_rΔQ = q''/r − q'/r² + q'''.
    pub fn dr_lap(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { dlap, .. } => dlap.eval(r),
            Profile::Tabulated { .. } => {
                0.25 * (self.d2q(r) / r - self.dq(r) / (r * r) + self.d3q(r))
            }
        }
    }

    /// ∂²_r ΔQ.
    pub fn d2r_lap(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Even { d2lap, .. } => d2lap.eval(r),
            Profile::Tabulated { .. } => {
                let h = 1e-3 * r.max(1e-2);
                (self.dr_lap(r + h) - self.dr_lap(r - h)) / (2.0 * h)
            }
        }
    }

    /// Δ log ΔQ for the radial function log ΔQ.
    pub fn lap_log_lap(&self, r: f64) -> f64 {
        let d = self.lap(r);
        let d1 = self.dr_lap(r) / d;
        let d2 = self.d2r_lap(r) / d - d1 * d1;
        0.25 * (d2 + d1 / r)
    }
}

/// q(r) with domain check.
pub fn eval_q(p: &RadialPotential, r: f64) -> Result<f64, PotentialError> {
    check_r(r)?;
    Ok(p.q(r))
}

/// ΔQ(r) with domain check.
pub fn laplacian(p: &RadialPotential, r: f64) -> Result<f64, PotentialError> {
    check_r(r)?;
    Ok(p.lap(r))
}

fn check_r(r: f64) -> Result<(), PotentialError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(PotentialError::Domain(r))
    }
}

/// Shape of a radial test function.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunctionKind {
    /// λ ≡ 0.
    Zero,
    /// λ ≡ c on all of (0, ∞); only meaningful for the exact routes.
    Constant(f64),
    /// `P(r)·χ(r)` with χ a C⁶ smoothstep: 0 outside `[lo, hi]`, 1 on
    /// `[plateau_lo, plateau_hi]`. With `lo = plateau_lo = 0` the function
    /// equals `P` near the origin.
    Bump { poly: Vec<f64>, lo: f64, plateau_lo: f64, plateau_hi: f64, hi: f64 },
    /// `P(r)·((r−lo)(hi−r))³/((hi−lo)/2)⁶` on `[lo, hi]`, 0 elsewhere.
    Poly { poly: Vec<f64>, lo: f64, hi: f64 },
}

/// A radial test function λ with two continuous derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTestFunction {
    kind: TestFunctionKind,
    p: Poly,
    dp: Poly,
    d2p: Poly,
}

// C⁶ smoothstep S(x) = x⁷ Σ_{k=0}^{6} C(6+k,k) C(13,6−k) (−x)^k on [0, 1].
fn smoothstep() -> &'static (Poly, Poly, Poly) {
    static CELL: std::sync::OnceLock<(Poly, Poly, Poly)> = std::sync::OnceLock::new();
    CELL.get_or_init(build_smoothstep)
}

fn build_smoothstep() -> (Poly, Poly, Poly) {
    let binom = |n: u64, k: u64| -> f64 {
        let mut r = 1.0;
        for i in 0..k {
            r = r * (n - i) as f64 / (i + 1) as f64;
        }
        r
    };
    let mut c = vec![0.0; 14];
    for k in 0..=6u64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        c[7 + k as usize] = sign * binom(6 + k, k) * binom(13, 6 - k);
    }
    let s = Poly::new(c);
    let d1 = s.derivative();
    let d2 = d1.derivative();
    (s, d1, d2)
}

impl RadialTestFunction {
    pub fn new(kind: TestFunctionKind) -> Result<Self, PotentialError> {
        let bad = |m: &str| Err(PotentialError::InvalidTestFunction(m.into()));
        let poly = match &kind {
            TestFunctionKind::Zero => vec![0.0],
            TestFunctionKind::Constant(c) => vec![*c],
            TestFunctionKind::Bump { poly, lo, plateau_lo, plateau_hi, hi } => {
                if !(0.0 <= *lo && lo <= plateau_lo && plateau_lo < plateau_hi && plateau_hi < hi) {
                    return bad("bump needs 0 ≤ lo ≤ plateau_lo < plateau_hi < hi");
                }
                if lo == plateau_lo && *lo > 0.0 {
                    return bad("bump with lo > 0 needs a rising edge (lo < plateau_lo)");
                }
                poly.clone()
            }
            TestFunctionKind::Poly { poly, lo, hi } => {
                if !(0.0 <= *lo && lo < hi) {
                    return bad("poly needs 0 ≤ lo < hi");
                }
                poly.clone()
            }
        };
        if poly.is_empty() || poly.iter().any(|c| !c.is_finite()) {
            return bad("polynomial factor must be non-empty and finite");
        }
        let p = Poly::new(poly);
        let dp = p.derivative();
        let d2p = dp.derivative();
        Ok(RadialTestFunction { kind, p, dp, d2p })
    }

    pub fn zero() -> Self {
        Self::new(TestFunctionKind::Zero).unwrap()
    }

    pub fn kind(&self) -> &TestFunctionKind {
        &self.kind
    }

    /// `[r_lo, r_hi]` containing the support (`hi = ∞` for constants).
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            TestFunctionKind::Zero => (0.0, 0.0),
            TestFunctionKind::Constant(_) => (0.0, f64::INFINITY),
            TestFunctionKind::Bump { lo, hi, .. } | TestFunctionKind::Poly { lo, hi, .. } => (*lo, *hi),
        }
    }

    /// Radii where the profile switches pieces (useful quadrature breakpoints).
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            TestFunctionKind::Zero | TestFunctionKind::Constant(_) => vec![],
            TestFunctionKind::Bump { lo, plateau_lo, plateau_hi, hi, .. } => {
                vec![*lo, *plateau_lo, *plateau_hi, *hi]
            }
            TestFunctionKind::Poly { lo, hi, .. } => vec![*lo, *hi],
        }
    }

    /// (λ, λ', λ'') at r.
    pub fn eval3(&self, r: f64) -> [f64; 3] {
        match &self.kind {
            TestFunctionKind::Zero => [0.0; 3],
            TestFunctionKind::Constant(c) => [*c, 0.0, 0.0],
            TestFunctionKind::Bump { lo, plateau_lo, plateau_hi, hi, .. } => {
                if r <= *lo && *lo > 0.0 || r >= *hi {
                    return [0.0; 3];
                }
                let (chi, dchi, d2chi) = if r < *plateau_lo {
                    let w = plateau_lo - lo;
                    let x = (r - lo) / w;
                    let (s, d1, d2) = smoothstep();
                    (s.eval(x), d1.eval(x) / w, d2.eval(x) / (w * w))
                } else if r <= *plateau_hi {
                    (1.0, 0.0, 0.0)
                } else {
                    let w = hi - plateau_hi;
                    let x = (hi - r) / w;
                    let (s, d1, d2) = smoothstep();
                    (s.eval(x), -d1.eval(x) / w, d2.eval(x) / (w * w))
                };
                let (p, dp, d2p) = (self.p.eval(r), self.dp.eval(r), self.d2p.eval(r));
                [p * chi, dp * chi + p * dchi, d2p * chi + 2.0 * dp * dchi + p * d2chi]
            }
            TestFunctionKind::Poly { lo, hi, .. } => {
                if r <= *lo || r >= *hi {
                    return [0.0; 3];
                }
                let norm = ((hi - lo) / 2.0).powi(6);
                let g = (r - lo) * (hi - r);
                let dg = hi + lo - 2.0 * r;
                let w = g.powi(3) / norm;
                let dw = 3.0 * g * g * dg / norm;
                let d2w = (6.0 * g * dg * dg - 6.0 * g * g) / norm;
                let (p, dp, d2p) = (self.p.eval(r), self.dp.eval(r), self.d2p.eval(r));
                [p * w, dp * w + p * dw, d2p * w + 2.0 * dp * dw + p * d2w]
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval3(r)[0]
    }

    pub fn deriv(&self, r: f64) -> f64 {
        self.eval3(r)[1]
    }

    /// Δλ = (λ'' + λ'/r)/4.
    pub fn lap(&self, r: f64) -> f64 {
        let [_, d1, d2] = self.eval3(r);
        if r == 0.0 {
            // λ'(r)/r → λ''(0) for smooth radial profiles.
            return 0.5 * d2;
        }
        0.25 * (d2 + d1 / r)
    }
}

/// `q̃ = q − sλ/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedPotential {
    pub base: RadialPotential,
    pub bump: RadialTestFunction,
    pub s: f64,
    pub n: usize,
}

impl PerturbedPotential {
    pub fn new(base: RadialPotential, bump: RadialTestFunction, s: f64, n: usize) -> Self {
        PerturbedPotential { base, bump, s, n }
    }

    pub fn unperturbed(base: RadialPotential, n: usize) -> Self {
        Self::new(base, RadialTestFunction::zero(), 0.0, n)
    }

    /// `n·q̃(r) = n q(r) − sλ(r)`, unchecked.
    pub fn n_qt(&self, r: f64) -> f64 {
        let l = if self.s == 0.0 { 0.0 } else { self.s * self.bump.value(r) };
        self.n as f64 * self.base.q(r) - l
    }

    pub fn qt(&self, r: f64) -> f64 {
        self.n_qt(r) / self.n as f64
    }
}

/// q(r) − sλ(r)/n with domain check.
pub fn eval_perturbed(pp: &PerturbedPotential, r: f64) -> Result<f64, PotentialError> {
    check_r(r)?;
    Ok(pp.base.q(r) - pp.s * pp.bump.value(r) / pp.n as f64)
}
