use coulombgap::asymptotics::{predict_density_gap_inner, predict_density_gap_outer_edge, predict_density_outer_boundary};
use coulombgap::droplet::gap_state;
use coulombgap::{solve_droplet, DropletGeometry, PerturbedPotential, RadialPotential, RadialTestFunction, WeightTable};
use wasm_bindgen::prelude::*;

const MAX_N: usize = 2000;

/// Geometry summary; gap fields are NaN when the droplet has no gap.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub outer_radius: f64,
    pub has_gap: bool,
    pub r1: f64,
    pub r2: f64,
    pub b: f64,
    pub a: f64,
    pub rho: f64,
    pub u: f64,
    pub c: f64,
}

fn setup(coeffs: &[f64]) -> Result<(RadialPotential, DropletGeometry), String> {
    let p = RadialPotential::from_coeffs(coeffs).map_err(|e| e.to_string())?;
    let g = solve_droplet(&p).map_err(|e| e.to_string())?;
    Ok((p, g))
}

fn check_n(n: usize) -> Result<(), String> {
    if !(10..=MAX_N).contains(&n) {
        return Err(format!("n must be in 10..={MAX_N}"));
    }
    Ok(())
}

fn table(p: &RadialPotential, n: usize) -> Result<WeightTable, String> {
    WeightTable::build_with_window(&PerturbedPotential::unperturbed(p.clone(), n), None, 4.0).map_err(|e| e.to_string())
}

pub fn droplet_summary(coeffs: &[f64]) -> Result<Summary, String> {
    let (_, g) = setup(coeffs)?;
    let nan = f64::NAN;
    let mut s = Summary { outer_radius: g.outer_radius, has_gap: false, r1: nan, r2: nan, b: nan, a: nan, rho: nan, u: nan, c: nan };
    if let Some(gp) = g.gaps.first() {
        s = Summary { has_gap: true, r1: gp.r1, r2: gp.r2, b: gp.b, a: gp.a, rho: gp.rho, u: gp.u, c: gp.c_lemma, ..s };
    }
    Ok(s)
}

pub fn edge_profile(coeffs: &[f64], n: usize, edge: &str, t_lo: f64, t_hi: f64, points: usize) -> Result<Vec<f64>, String> {
    check_n(n)?;
    if !(2..=2000).contains(&points) || !(t_lo < t_hi) {
        return Err("need t_lo < t_hi and 2..=2000 points".into());
    }
    let (p, g) = setup(coeffs)?;
    let zero = RadialTestFunction::zero();
    let gp = match edge {
        "outer" => None,
        "r1" | "r2" => Some(*g.gap().map_err(|e| e.to_string())?),
        _ => return Err(format!("unknown edge `{edge}`")),
    };
    let r0 = match (edge, &gp) {
        ("r1", Some(gp)) => gp.r1,
        ("r2", Some(gp)) => gp.r2,
        _ => g.outer_radius,
    };
    let scale = (2.0 * n as f64 * p.lap(r0)).sqrt();
    let tab = table(&p, n)?;
    let st = gp.as_ref().map(|gp| gap_state(gp, n));
    let mut out = Vec::with_capacity(3 * points);
    for k in 0..points {
        let t = t_lo + (t_hi - t_lo) * k as f64 / (points - 1) as f64;
        let r = r0 + t / scale;
        if r <= 0.0 {
            continue;
        }
        let pred = match (edge, &gp, &st) {
            ("r1", Some(gp), Some(st)) => predict_density_gap_inner(gp, st, t, 0.0, &zero),
            ("r2", Some(gp), Some(st)) => predict_density_gap_outer_edge(gp, st, t, 0.0, &zero),
            _ => predict_density_outer_boundary(&p, &g, t, n),
        }
        .map(|e| e.total)
        .unwrap_or(f64::NAN);
        out.extend([t, tab.one_point_radial(r), pred]);
    }
    Ok(out)
}

pub fn edge_series(coeffs: &[f64], n_lo: usize, n_hi: usize, step: usize) -> Result<Vec<f64>, String> {
    check_n(n_lo)?;
    check_n(n_hi)?;
    if step == 0 || n_hi < n_lo || (n_hi - n_lo) / step > 400 {
        return Err("need n_lo ≤ n_hi, step > 0 and at most 400 points".into());
    }
    let (p, g) = setup(coeffs)?;
    let gp = *g.gap().map_err(|e| e.to_string())?;
    let zero = RadialTestFunction::zero();
    let mut out = Vec::new();
    for n in (n_lo..=n_hi).step_by(step) {
        let nd = n as f64 * gp.dq1;
        let exact = table(&p, n)?.one_point_radial(gp.r1);
        let pred = predict_density_gap_inner(&gp, &gap_state(&gp, n), 0.0, 0.0, &zero).map_err(|e| e.to_string())?;
        out.extend([n as f64, (exact - nd / 2.0) / nd.sqrt(), exact - pred.total]);
    }
    Ok(out)
}
