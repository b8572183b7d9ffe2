//! Annular droplet geometry, gap constants and the obstacle function.
//!
//! Writing `φ(s) = q(eˢ)`, the obstacle function of a radial potential is the
//! largest convex minorant of `φ` whose slope stays in `[0, 2]`; the droplet
//! is its contact set. A lower convex hull on a log grid locates the gaps,
//! then every gap is refined by a bracketed solve in the slope `B`.

use thiserror::Error;

use crate::potential::RadialPotential;
use crate::quad::{bisect_newton, integrate, QuadError, RootError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DropletError {
    #[error("droplet has no bounded gap")]
    NoGap,
    #[error("ΔQ = {value} ≤ 0 at boundary radius {radius}")]
    NonPositiveLaplacian { radius: f64, value: f64 },
    #[error("{0} gaps found; only one bounded gap is supported")]
    MultiGapUnsupported(usize),
    #[error("Frostman inequality violated at r = {radius} (Q − Q̌ = {defect:e})")]
    FrostmanViolation { radius: f64, defect: f64 },
    #[error("radius {0} outside the gap")]
    Domain(f64),
    #[error("equilibrium mass overshoots 1 by {0:e}")]
    MassOvershoot(f64),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Constants attached to one annular gap `r1 < |z| < r2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapParams {
    pub r1: f64,
    pub r2: f64,
    /// B = r1 q'(r1) = r2 q'(r2) = 2σ(|z| ≤ r1).
    pub b: f64,
    /// A = q(r1) − B log r1, so that V = A + B log r in the gap.
    pub a: f64,
    pub rho: f64,
    pub u: f64,
    /// 𝒞 = ½(1/(r1²ΔQ(r1)) − 1/(r2²ΔQ(r2))).
    pub c_lemma: f64,
    pub dq1: f64,
    pub dq2: f64,
    /// ∂_rΔQ at r1 and r2.
    pub dr_dq1: f64,
    pub dr_dq2: f64,
    /// √(ΔQ(r2)/ΔQ(r1)).
    pub a0: f64,
}

impl GapParams {
    fn new(p: &RadialPotential, r1: f64, r2: f64, b: f64) -> Self {
        let (dq1, dq2) = (p.lap(r1), p.lap(r2));
        GapParams {
            r1,
            r2,
            b,
            a: p.q(r1) - b * r1.ln(),
            rho: r1 / r2,
            u: (r1 / r2).powi(2),
            c_lemma: 0.5 * (1.0 / (r1 * r1 * dq1) - 1.0 / (r2 * r2 * dq2)),
            dq1,
            dq2,
            dr_dq1: p.dr_lap(r1),
            dr_dq2: p.dr_lap(r2),
            a0: (dq2 / dq1).sqrt(),
        }
    }

    /// log(r2/r1).
    pub fn log_ratio(&self) -> f64 {
        (self.r2 / self.r1).ln()
    }

    /// log(ΔQ(r2)/ΔQ(r1)) / (4 log(r2/r1)), the shift from x(n) to α(n).
    pub fn alpha_shift(&self) -> f64 {
        (self.dq2 / self.dq1).ln() / (4.0 * self.log_ratio())
    }

    pub fn contains(&self, r: f64) -> bool {
        r > self.r1 && r < self.r2
    }
}

/// The n-dependent splitting Bn/2 = m + x and α = x + log(ΔQ2/ΔQ1)/(4 log(r2/r1)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NDependentGapState {
    pub n: usize,
    pub m: i64,
    pub x: f64,
    pub alpha: f64,
}

impl NDependentGapState {
    pub fn from_b(b: f64, n: usize, alpha_shift: f64) -> Self {
        let half = b * n as f64 / 2.0;
        let m = half.floor();
        let x = half - m;
        NDependentGapState {
            n,
            m: m as i64,
            x,
            alpha: x + alpha_shift,
        }
    }
}

pub fn gap_state(gp: &GapParams, n: usize) -> NDependentGapState {
    NDependentGapState::from_b(gp.b, n, gp.alpha_shift())
}

/// A boundary circle of the droplet with outward normal `normal_sign·∂_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCircle {
    pub radius: f64,
    pub normal_sign: f64,
    pub dq: f64,
    pub dr_dq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DropletGeometry {
    /// Annuli (a_j, b_j), increasing; a_0 = 0 for a disk.
    pub annuli: Vec<(f64, f64)>,
    pub outer_radius: f64,
    pub gaps: Vec<GapParams>,
    pub robin_gamma: f64,
    /// min(Q − Q̌) over the off-droplet grid points of the Frostman check.
    pub frostman_margin: f64,
    /// max |Q − Q̌| over grid points on the droplet.
    pub frostman_contact_defect: f64,
}

impl DropletGeometry {
    /// The unique bounded gap.
    pub fn gap(&self) -> Result<&GapParams, DropletError> {
        self.gaps.first().ok_or(DropletError::NoGap)
    }

    pub fn in_droplet(&self, r: f64) -> bool {
        self.annuli.iter().any(|&(a, b)| r >= a && r <= b)
    }

    /// Boundary circles with their outward normals (out of the droplet).
    pub fn boundaries(&self, p: &RadialPotential) -> Vec<BoundaryCircle> {
        let mut v = Vec::new();
        for &(a, b) in &self.annuli {
            if a > 0.0 {
                v.push(BoundaryCircle { radius: a, normal_sign: -1.0, dq: p.lap(a), dr_dq: p.dr_lap(a) });
            }
            v.push(BoundaryCircle { radius: b, normal_sign: 1.0, dq: p.lap(b), dr_dq: p.dr_lap(b) });
        }
        v
    }

    /// Distance from radius r to the droplet boundary.
    pub fn boundary_distance(&self, r: f64) -> f64 {
        self.annuli
            .iter()
            .flat_map(|&(a, b)| {
                let da = if a > 0.0 { (r - a).abs() } else { f64::INFINITY };
                [da, (r - b).abs()]
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Q̌(r) = γ − 2U^σ(r).
    pub fn obstacle(&self, p: &RadialPotential, r: f64) -> Result<f64, DropletError> {
        Ok(self.robin_gamma - 2.0 * log_potential(self, p, r)?)
    }
}

/// U^σ(r) = −∫ log max(r, s) dμ(s), dμ = 2sΔQ(s)·1_S ds.
fn log_potential(g: &DropletGeometry, p: &RadialPotential, r: f64) -> Result<f64, QuadError> {
    let mut u = 0.0;
    for &(a, b) in &g.annuli {
        let inner = (a, b.min(r));
        if inner.1 > inner.0 {
            let m = integrate(|s| 2.0 * s * p.lap(s), inner.0, inner.1, 1e-15, 1e-14)?.value;
            u -= r.ln() * m;
        }
        let outer = (a.max(r), b);
        if outer.1 > outer.0 {
            u -= integrate(|s| 2.0 * s * p.lap(s) * s.ln(), outer.0, outer.1, 1e-15, 1e-14)?.value;
        }
    }
    Ok(u)
}

/// σ({|z| ≤ r}) = 2∫₀^r ΔQ·1_S s ds.
pub fn equilibrium_mass(g: &DropletGeometry, p: &RadialPotential, r: f64) -> Result<f64, DropletError> {
    let mut m = 0.0;
    for &(a, b) in &g.annuli {
        let hi = b.min(r);
        if hi > a {
            m += integrate(|s| 2.0 * s * p.lap(s), a, hi, 1e-15, 1e-14)?.value;
        }
    }
    if m > 1.0 + 1e-8 {
        return Err(DropletError::MassOvershoot(m - 1.0));
    }
    Ok(m.clamp(0.0, 1.0))
}

/// V(r) = A + B log r for r in [r1, r2].
pub fn obstacle_in_gap(gp: &GapParams, r: f64) -> Result<f64, DropletError> {
    let tol = 1e-12 * gp.r2;
    if !(r >= gp.r1 - tol && r <= gp.r2 + tol) {
        return Err(DropletError::Domain(r));
    }
    Ok(gp.a + gp.b * r.ln())
}

const SCAN_POINTS: usize = 2048;

/// Maximal intervals on which ΔQ > 0 (Φ = rq' increasing), from a scan.
fn ascending_branches(p: &RadialPotential, grid: &[f64]) -> Result<Vec<(f64, f64)>, RootError> {
    let mut out = Vec::new();
    let mut start: Option<f64> = if p.lap(grid[0]) > 0.0 { Some(0.0) } else { None };
    for w in grid.windows(2) {
        let (l0, l1) = (p.lap(w[0]), p.lap(w[1]));
        if (l0 > 0.0) != (l1 > 0.0) {
            let root = bisect_newton(|r| p.lap(r), |r| p.dr_lap(r), w[0], w[1], 1e-9, 1e-15)?;
            if l1 > 0.0 {
                start = Some(root);
            } else if let Some(s) = start.take() {
                out.push((s, root));
            }
        }
    }
    if let Some(s) = start {
        out.push((s, f64::INFINITY));
    }
    Ok(out)
}

/// Solve Φ(r) = level on an ascending branch.
fn invert_phi(p: &RadialPotential, branch: (f64, f64), level: f64) -> Result<f64, RootError> {
    let lo = branch.0;
    let mut hi = branch.1;
    if !hi.is_finite() {
        hi = lo.max(1.0);
        while p.phi(hi) < level {
            hi *= 2.0;
        }
    }
    bisect_newton(
        |r| p.phi(r) - level,
        |r| 4.0 * r * p.lap(r),
        lo,
        hi,
        1e-6 * hi.max(1e-3),
        1e-15,
    )
}

fn branch_of(branches: &[(f64, f64)], r: f64) -> Option<(f64, f64)> {
    branches.iter().copied().find(|&(a, b)| r >= a && r <= b)
}

/// Refine a gap whose endpoints lie on the ascending branches `b1`, `b2`.
fn refine_gap(
    p: &RadialPotential,
    b1: (f64, f64),
    b2: (f64, f64),
) -> Result<(f64, f64, f64), DropletError> {
    // Admissible slopes: both inverses must exist.
    let phi_end = |b: (f64, f64)| if b.1.is_finite() { p.phi(b.1) } else { f64::INFINITY };
    let blo = p.phi(b1.0).max(p.phi(b2.0));
    let bhi = phi_end(b1).min(phi_end(b2)).min(2.0);
    let resid = |bb: f64| -> Result<(f64, f64, f64), DropletError> {
        let r1 = invert_phi(p, b1, bb)?;
        let r2 = invert_phi(p, b2, bb)?;
        Ok((p.q(r2) - p.q(r1) - bb * (r2 / r1).ln(), r1, r2))
    };
    // R(B) is strictly decreasing: dR/dB = −log(r2/r1).
    let eps = 1e-12 * (bhi - blo).abs().max(1e-12);
    let (mut lo, mut hi) = (blo + eps, bhi - eps);
    let (rlo, _, _) = resid(lo)?;
    let (rhi, _, _) = resid(hi)?;
    if !(rlo > 0.0 && rhi < 0.0) {
        return Err(DropletError::Root(RootError::NoBracket(lo, hi)));
    }
    while hi - lo > 1e-6 {
        let m = 0.5 * (lo + hi);
        if resid(m)?.0 > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let mut bb = 0.5 * (lo + hi);
    for _ in 0..50 {
        let (r, r1, r2) = resid(bb)?;
        let step = r / (r2 / r1).ln();
        let next = (bb + step).clamp(lo, hi);
        if (next - bb).abs() < 1e-15 * bb.abs().max(1.0) {
            bb = next;
            break;
        }
        bb = next;
    }
    let (_, r1, r2) = resid(bb)?;
    Ok((r1, r2, bb))
}

/// Determine the droplet of `p`. Potentials without a bounded gap produce a
/// geometry with `gaps` empty (see [`DropletGeometry::gap`]).
pub fn solve_droplet(p: &RadialPotential) -> Result<DropletGeometry, DropletError> {
    // Radial range comfortably past the outer boundary.
    let mut rmax = 2.0 * p.outer_scale();
    while p.phi(rmax) < 3.0 || p.lap(rmax) <= 0.0 {
        rmax *= 1.5;
    }
    let rmin = 1e-6 * rmax;
    let (smin, smax) = (rmin.ln(), rmax.ln());
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| (smin + (smax - smin) * i as f64 / (SCAN_POINTS - 1) as f64).exp())
        .collect();
    let branches = ascending_branches(p, &grid)?;

    // Inner hole: global minimiser of q away from 0.
    let (imin, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, p.q(r)))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let a0 = if imin == 0 || p.q(grid[imin]) >= p.q(grid[0]) - 1e-14 {
        0.0
    } else {
        let br = branch_of(&branches, grid[imin]).ok_or(DropletError::NonPositiveLaplacian {
            radius: grid[imin],
            value: p.lap(grid[imin]),
        })?;
        invert_phi(p, br, 0.0)?
    };

    // Outer radius: global minimiser of q − 2 log r.
    let (iout, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, p.q(r) - 2.0 * r.ln()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let br = branch_of(&branches, grid[iout]).ok_or(DropletError::NonPositiveLaplacian {
        radius: grid[iout],
        value: p.lap(grid[iout]),
    })?;
    let b_n = invert_phi(p, br, 2.0)?;

    // Lower convex hull of φ(s) = q(eˢ) on [log a0, log b_N].
    let s_lo = if a0 > 0.0 { a0.ln() } else { smin };
    let s_hi = b_n.ln();
    let hull_n = 4 * SCAN_POINTS;
    let pts: Vec<(f64, f64)> = (0..hull_n)
        .map(|i| {
            let s = s_lo + (s_hi - s_lo) * i as f64 / (hull_n - 1) as f64;
            (s, p.q(s.exp()))
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let (o, a) = (pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]]);
            let b = pts[i];
            let cross = (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let scale = pts.iter().map(|x| x.1.abs()).fold(1.0, f64::max);
    let mut raw_gaps = Vec::new();
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        if j - i < 3 {
            continue;
        }
        let slope = (pts[j].1 - pts[i].1) / (pts[j].0 - pts[i].0);
        let lift = (i + 1..j)
            .map(|k| pts[k].1 - (pts[i].1 + slope * (pts[k].0 - pts[i].0)))
            .fold(0.0, f64::max);
        if lift > 1e-10 * scale {
            raw_gaps.push((pts[i].0.exp(), pts[j].0.exp()));
        }
    }
    if raw_gaps.len() > 1 {
        return Err(DropletError::MultiGapUnsupported(raw_gaps.len()));
    }

    let mut gaps = Vec::new();
    for &(g1, g2) in &raw_gaps {
        let nonpos = |r: f64| DropletError::NonPositiveLaplacian { radius: r, value: p.lap(r) };
        let b1 = branch_of(&branches, g1).ok_or_else(|| nonpos(g1))?;
        let b2 = branch_of(&branches, g2).ok_or_else(|| nonpos(g2))?;
        let (r1, r2, bb) = refine_gap(p, b1, b2)?;
        gaps.push(GapParams::new(p, r1, r2, bb));
    }

    let mut annuli = Vec::new();
    let mut left = a0;
    for g in &gaps {
        annuli.push((left, g.r1));
        left = g.r2;
    }
    annuli.push((left, b_n));
    for &(a, b) in &annuli {
        for r in [a, b] {
            if r > 0.0 && p.lap(r) <= 0.0 {
                return Err(DropletError::NonPositiveLaplacian { radius: r, value: p.lap(r) });
            }
        }
    }

    let mut geom = DropletGeometry {
        annuli,
        outer_radius: b_n,
        gaps,
        robin_gamma: 0.0,
        frostman_margin: f64::INFINITY,
        frostman_contact_defect: 0.0,
    };
    geom.robin_gamma = p.q(b_n) + 2.0 * log_potential(&geom, p, b_n)?;
    frostman_check(&mut geom, p)?;
    Ok(geom)
}

fn frostman_check(g: &mut DropletGeometry, p: &RadialPotential) -> Result<(), DropletError> {
    let rmax = 1.5 * g.outer_radius;
    let npts = 1000;
    let mut margin = f64::INFINITY;
    let mut contact: f64 = 0.0;
    for i in 1..=npts {
        let r = rmax * i as f64 / npts as f64;
        let d = p.q(r) - g.obstacle(p, r)?;
        if g.in_droplet(r) {
            contact = contact.max(d.abs());
        } else {
            if d < -1e-8 {
                return Err(DropletError::FrostmanViolation { radius: r, defect: d });
            }
            margin = margin.min(d);
        }
    }
    if contact > 1e-8 {
        return Err(DropletError::FrostmanViolation { radius: f64::NAN, defect: -contact });
    }
    g.frostman_margin = margin;
    g.frostman_contact_defect = contact;
    Ok(())
}
