use std::f64::consts::PI;

use coulombgap::asymptotics::{
    cgf_prediction_radial, predict_density_gap_inner, predict_density_gap_outer_edge, predict_density_outer_boundary,
    predict_two_point, AsymptoticsError, TwoPointMode,
};
use coulombgap::droplet::{gap_state, DropletError, GapParams};
use coulombgap::kernel::{two_point, KernelError};
use coulombgap::potential::{PerturbedPotential, RadialTestFunction};
use coulombgap::specfun::*;
use coulombgap::statistics::{
    empirical_fluct, exact_cgf_product_curve, exact_cgf_ward, sample_with_tables, SamplerTables, StatisticsError,
};
use coulombgap::{solve_droplet, DropletGeometry, WeightTable};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{parse_grid, parse_n_list, LambdaSpec, RunConfig};
use crate::output::{Cell, Sink, Table};
use crate::{CliError, Command, Edge, Mode, Placement, Route, Status, Suite};

const WINDOW_C: f64 = 4.0;

fn droplet_err(e: DropletError) -> CliError {
    match e {
        DropletError::NoGap => CliError::Usage("this command needs a potential whose droplet has a gap".into()),
        e => CliError::Numerical(format!("droplet solver: {e}")),
    }
}

fn asym_err(e: AsymptoticsError) -> CliError {
    match e {
        AsymptoticsError::Droplet(d) => droplet_err(d),
        AsymptoticsError::Domain(_)
        | AsymptoticsError::Divergence(_)
        | AsymptoticsError::AngleCoincidence
        | AsymptoticsError::ModeMismatch(_) => CliError::Usage(e.to_string()),
        e => CliError::Numerical(e.to_string()),
    }
}

fn stat_err(e: StatisticsError) -> CliError {
    match e {
        StatisticsError::Asymptotics(a) => asym_err(a),
        StatisticsError::Invalid(m) => CliError::Usage(m),
        e => CliError::Numerical(e.to_string()),
    }
}

fn kern_err(e: KernelError) -> CliError {
    CliError::Numerical(e.to_string())
}

fn num_err(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn geometry(cfg: &RunConfig) -> Result<DropletGeometry, CliError> {
    solve_droplet(&cfg.potential).map_err(droplet_err)
}

fn gap(g: &DropletGeometry) -> Result<GapParams, CliError> {
    g.gap().copied().map_err(droplet_err)
}

fn pick_n(flag: Option<usize>, cfg: &RunConfig, default: usize) -> Result<usize, CliError> {
    let n = flag.or_else(|| cfg.n_list.as_ref().map(|v| v[0])).unwrap_or(default);
    if n < 10 {
        return Err(CliError::Usage(format!("n = {n} < 10")));
    }
    Ok(n)
}

fn pick_grid(flag: Option<&str>, cfg: &RunConfig, default: &str) -> Result<Vec<f64>, CliError> {
    match flag {
        Some(s) => parse_grid(s),
        None => Ok(cfg.t_grid.clone().unwrap_or_else(|| parse_grid(default).expect("default grid"))),
    }
}

fn pick_lambda(flag: Option<&str>, cfg: &RunConfig, g: &DropletGeometry) -> Result<RadialTestFunction, CliError> {
    match flag {
        Some(s) => LambdaSpec::parse(s)?.resolve(g),
        None => cfg.lambda.resolve(g),
    }
}

fn table(pp: &PerturbedPotential) -> Result<WeightTable, CliError> {
    WeightTable::build_with_window(pp, None, WINDOW_C).map_err(kern_err)
}

pub fn dispatch(cmd: Command, cfg: &mut RunConfig, sink: &Sink) -> Result<Status, CliError> {
    match cmd {
        Command::Analyze { n } => {
            if let Some(s) = n {
                cfg.n_list = Some(parse_n_list(&s)?);
            }
            analyze(cfg, sink)
        }
        Command::Density { n, t_grid, edge, mode, s, lambda } => {
            let n = pick_n(n, cfg, 100)?;
            let ts = pick_grid(t_grid.as_deref(), cfg, "-2:2:0.25")?;
            let s = s.unwrap_or(cfg.s);
            density(cfg, sink, n, &ts, edge, mode, s, lambda.as_deref())
        }
        Command::Kernel2pt { n, t_grid, placement, w_offset, dtheta, mode } => {
            let n = pick_n(n, cfg, 100)?;
            kernel2pt(cfg, sink, n, t_grid.as_deref(), placement, w_offset, dtheta, mode)
        }
        Command::Cgf { n, t, routes, lambda, ward_steps } => {
            let n = pick_n(n, cfg, 50)?;
            let ts = pick_grid(t.as_deref(), cfg, "-1:1:0.25")?;
            cgf(cfg, sink, n, &ts, &routes, lambda.as_deref(), ward_steps)
        }
        Command::Sample { n, count, seed, lambda } => {
            let n = pick_n(n, cfg, 100)?;
            sample(cfg, sink, n, count, seed.unwrap_or(cfg.seed), lambda.as_deref())
        }
        Command::Verify { suite, n } => {
            let ns = match n {
                Some(s) => Some(parse_n_list(&s)?),
                None => cfg.n_list.clone(),
            };
            verify(cfg, sink, suite, ns)
        }
    }
}

fn analyze(cfg: &RunConfig, sink: &Sink) -> Result<Status, CliError> {
    let g = geometry(cfg)?;
    let mut t = Table::new(["quantity", "value"]);
    let mut row = |q: String, v: f64| t.push(vec![Cell::Text(q), Cell::Num(v)]);
    for (k, &(a, b)) in g.annuli.iter().enumerate() {
        row(format!("annulus_{k}_inner"), a);
        row(format!("annulus_{k}_outer"), b);
    }
    row("outer_radius".into(), g.outer_radius);
    row("gamma".into(), g.robin_gamma);
    row("gap_count".into(), g.gaps.len() as f64);
    match g.gaps.first() {
        Some(gp) => {
            for (q, v) in [
                ("r1", gp.r1),
                ("r2", gp.r2),
                ("B", gp.b),
                ("A", gp.a),
                ("rho", gp.rho),
                ("u", gp.u),
                ("C", gp.c_lemma),
                ("dq_r1", gp.dq1),
                ("dq_r2", gp.dq2),
            ] {
                row(q.into(), v);
            }
            for &n in cfg.n_list.as_deref().unwrap_or(&[100, 200, 400]) {
                let st = gap_state(gp, n);
                row(format!("x_n{n}"), st.x);
                row(format!("alpha_n{n}"), st.alpha);
                row(format!("m_n{n}"), st.m as f64);
            }
        }
        None => eprintln!(
            "coulombgap: no gap: the droplet is {} with outer radius {}",
            if g.annuli.first().is_some_and(|a| a.0 == 0.0) { "a disk" } else { "a single annulus" },
            g.outer_radius
        ),
    }
    sink.emit("analyze", &t)?;
    Ok(Status::Ok)
}

#[allow(clippy::too_many_arguments)]
fn density(
    cfg: &RunConfig,
    sink: &Sink,
    n: usize,
    ts: &[f64],
    edge: Edge,
    mode: Mode,
    s: f64,
    lambda: Option<&str>,
) -> Result<Status, CliError> {
    let p = &cfg.potential;
    let g = geometry(cfg)?;
    let lam = if s != 0.0 { pick_lambda(lambda, cfg, &g)? } else { RadialTestFunction::zero() };
    if s != 0.0 && edge == Edge::Outer && mode.predicted() {
        return Err(CliError::Usage("the outer-boundary prediction is for s = 0 only".into()));
    }
    let gp = if edge == Edge::Outer { None } else { Some(gap(&g)?) };
    let r0 = match (edge, &gp) {
        (Edge::R1, Some(gp)) => gp.r1,
        (Edge::R2, Some(gp)) => gp.r2,
        _ => g.outer_radius,
    };
    let scale = (2.0 * n as f64 * p.lap(r0)).sqrt();
    let radii: Vec<f64> = ts.iter().map(|t| r0 + t / scale).collect();
    if let Some(r) = radii.iter().find(|&&r| r <= 0.0) {
        return Err(CliError::Usage(format!("t-grid reaches radius {r} ≤ 0")));
    }
    let pred: Vec<f64> = if mode.predicted() {
        let st = gp.as_ref().map(|gp| gap_state(gp, n));
        ts.iter()
            .map(|&t| {
                let e = match (edge, &gp, &st) {
                    (Edge::R1, Some(gp), Some(st)) => predict_density_gap_inner(gp, st, t, s, &lam),
                    (Edge::R2, Some(gp), Some(st)) => predict_density_gap_outer_edge(gp, st, t, s, &lam),
                    _ => predict_density_outer_boundary(p, &g, t, n),
                };
                e.map(|e| e.total).map_err(asym_err)
            })
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let exact: Vec<f64> = if mode.exact() {
        let tab = table(&PerturbedPotential::new(p.clone(), lam.clone(), s, n))?;
        radii.par_iter().map(|&r| tab.one_point_radial(r)).collect()
    } else {
        Vec::new()
    };
    let mut header = vec!["t", "z"];
    if mode.exact() {
        header.push("exact");
    }
    if mode.predicted() {
        header.push("predicted");
    }
    if mode == Mode::Both {
        header.push("residual");
    }
    let mut tab = Table::new(header.clone());
    for (i, (&t, &r)) in ts.iter().zip(&radii).enumerate() {
        let mut row = vec![Cell::Num(t), Cell::Num(r)];
        if mode.exact() {
            row.push(Cell::Num(exact[i]));
        }
        if mode.predicted() {
            row.push(Cell::Num(pred[i]));
        }
        if mode == Mode::Both {
            row.push(Cell::Num(exact[i] - pred[i]));
        }
        tab.push(row);
    }
    let csv = sink.emit("density", &tab)?;
    let ys: Vec<&str> = header[2..].iter().copied().filter(|h| *h != "residual").collect();
    sink.plot("density", &csv, "t", &ys, &format!("edge density at {edge:?}, n = {n}"))?;
    Ok(Status::Ok)
}

#[allow(clippy::too_many_arguments)]
fn kernel2pt(
    cfg: &RunConfig,
    sink: &Sink,
    n: usize,
    t_grid: Option<&str>,
    placement: Placement,
    w_offset: f64,
    dtheta: f64,
    mode: Mode,
) -> Result<Status, CliError> {
    let p = &cfg.potential;
    let g = geometry(cfg)?;
    let gp = gap(&g)?;
    let nf = n as f64;
    let (s1, s2) = ((2.0 * nf * gp.dq1).sqrt(), (2.0 * nf * gp.dq2).sqrt());
    let width = gp.r2 - gp.r1;
    let general_default = format!("{}:{}:{}", gp.r1 + 0.2 * width, gp.r1 + 0.8 * width, 0.15 * width);
    let ts = pick_grid(t_grid, cfg, if placement == Placement::General { &general_default } else { "-1:1:0.5" })?;
    let points: Vec<(f64, Complex64, Complex64)> = ts
        .iter()
        .map(|&t| {
            let (rz, rw) = match placement {
                Placement::R1r2 => (gp.r1 + t / s1, gp.r2 + w_offset / s2),
                Placement::R1r1 => (gp.r1 + t / s1, gp.r1 + w_offset / s1),
                Placement::General => (t, if w_offset == 0.0 { gp.r1 + 0.5 * width } else { w_offset }),
            };
            (t, Complex64::from_polar(rz, dtheta), Complex64::new(rw, 0.0))
        })
        .collect();
    if points.iter().any(|(_, z, w)| z.norm() <= 0.0 || w.re <= 0.0) {
        return Err(CliError::Usage("placement gives a non-positive radius".into()));
    }
    let tp_mode = match placement {
        Placement::R1r2 => TwoPointMode::R1R2,
        Placement::R1r1 => TwoPointMode::R1R1,
        Placement::General => TwoPointMode::General,
    };
    let st = gap_state(&gp, n);
    let pred: Vec<Complex64> = if mode.predicted() {
        points
            .iter()
            .map(|&(_, z, w)| predict_two_point(p, &gp, &st, z, w, tp_mode).map_err(asym_err))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let exact: Vec<Complex64> = if mode.exact() {
        let tab = table(&PerturbedPotential::unperturbed(p.clone(), n))?;
        points.par_iter().map(|&(_, z, w)| two_point(&tab, z, w).to_complex()).collect()
    } else {
        Vec::new()
    };
    let mut header = vec!["t", "z_re", "z_im", "w_re", "w_im"];
    if mode.exact() {
        header.extend(["exact_re", "exact_im"]);
    }
    if mode.predicted() {
        header.extend(["predicted_re", "predicted_im"]);
    }
    let mut tab = Table::new(header.clone());
    for (i, &(t, z, w)) in points.iter().enumerate() {
        let mut row: Vec<Cell> = vec![t.into(), z.re.into(), z.im.into(), w.re.into(), w.im.into()];
        if mode.exact() {
            row.extend([exact[i].re.into(), exact[i].im.into()]);
        }
        if mode.predicted() {
            row.extend([pred[i].re.into(), pred[i].im.into()]);
        }
        tab.push(row);
    }
    let csv = sink.emit("kernel2pt", &tab)?;
    sink.plot("kernel2pt", &csv, "t", &header[5..], &format!("K_n(z, w), {placement:?}, n = {n}"))?;
    Ok(Status::Ok)
}

fn cgf(
    cfg: &RunConfig,
    sink: &Sink,
    n: usize,
    ts: &[f64],
    routes: &[Route],
    lambda: Option<&str>,
    ward_steps: usize,
) -> Result<Status, CliError> {
    let p = &cfg.potential;
    let g = geometry(cfg)?;
    let lam = pick_lambda(lambda, cfg, &g)?;
    let order = [Route::Product, Route::Ward, Route::Predicted];
    let chosen: Vec<Route> = order.iter().copied().filter(|r| routes.contains(r)).collect();
    if chosen.is_empty() {
        return Err(CliError::Usage("no CGF route selected".into()));
    }
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for r in &chosen {
        let v = match r {
            Route::Product => exact_cgf_product_curve(&lam, p, &g, n, ts).map_err(stat_err)?.values,
            Route::Ward => ts
                .par_iter()
                .map(|&t| exact_cgf_ward(&lam, p, &g, n, t, ward_steps))
                .collect::<Result<_, _>>()
                .map_err(stat_err)?,
            Route::Predicted => {
                let lim = (n as f64).ln();
                if let Some(t) = ts.iter().find(|t| t.abs() > lim) {
                    return Err(CliError::Usage(format!("predicted route needs |t| ≤ log n = {lim:.4}; got {t}")));
                }
                let pr = cgf_prediction_radial(&lam, p, &g, n).map_err(asym_err)?;
                ts.iter().map(|&t| pr.value(t)).collect()
            }
        };
        cols.push(v);
    }
    let names: Vec<&str> = chosen
        .iter()
        .map(|r| match r {
            Route::Product => "product",
            Route::Ward => "ward",
            Route::Predicted => "predicted",
        })
        .collect();
    let mut tab = Table::new(std::iter::once("t").chain(names.iter().copied()));
    for (i, &t) in ts.iter().enumerate() {
        // F(0) = 0 by definition; do not print round-off there.
        let mut row = vec![Cell::Num(t)];
        row.extend(cols.iter().map(|c| Cell::Num(if t == 0.0 { 0.0 } else { c[i] })));
        tab.push(row);
    }
    let csv = sink.emit("cgf", &tab)?;
    sink.plot("cgf", &csv, "t", &names, &format!("log E exp(t fluct λ), n = {n}"))?;
    Ok(Status::Ok)
}

fn sample(
    cfg: &RunConfig,
    sink: &Sink,
    n: usize,
    count: usize,
    seed: u64,
    lambda: Option<&str>,
) -> Result<Status, CliError> {
    if count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let g = geometry(cfg)?;
    let lam = pick_lambda(lambda, cfg, &g)?;
    let tabs = SamplerTables::build(&cfg.potential, n).map_err(stat_err)?;
    let batch = sample_with_tables(&tabs, count, seed);
    let fl = empirical_fluct(&batch, &lam, &cfg.potential, &g).map_err(stat_err)?;
    let mut tab = Table::new(["sample", "fluct"]);
    for (i, v) in fl.iter().enumerate() {
        tab.push(vec![Cell::Int(i as i64), Cell::Num(*v)]);
    }
    sink.emit("sample", &tab)?;
    if sink.svg {
        eprintln!("coulombgap: sample has no plot");
    }
    Ok(Status::Ok)
}

struct Check {
    name: String,
    n: Option<usize>,
    residual: f64,
    bound: f64,
    pass: bool,
}

impl Check {
    fn below(name: &str, n: Option<usize>, residual: f64, bound: f64) -> Self {
        Check { name: name.into(), n, residual, bound, pass: residual.abs() <= bound }
    }
}

fn specfun_checks() -> Result<Vec<Check>, CliError> {
    let mut lemma: f64 = 0.0;
    for &x in &[0.05, 0.3, 0.5, 0.71, 0.95] {
        for &rho in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            for &a in &[0.3, 0.8, 1.0, 1.6, 3.0] {
                let l = modified_theta(x, rho, a).map_err(num_err)?;
                let r = modified_theta_via_jacobi(x, rho, a).map_err(num_err)?;
                lemma = lemma.max((l - r).abs());
            }
        }
    }
    let mut dn: f64 = 0.0;
    for i in 0..60 {
        let alpha = (i as f64 * 0.137) % 1.7 - 0.3;
        let rho: f64 = 0.15 + 0.7 * ((i * 29 % 60) as f64 / 59.0);
        let c = ((i * 11) % 7) as f64 * 0.4 - 1.2;
        let t = ((i * 5) % 9) as f64 * 0.25 - 1.0;
        let d = DiscreteGaussian::new(alpha, rho * rho).map_err(num_err)?;
        dn = dn.max((dn_cgf_Y(&d, c, t) - dn_cgf_Y_theta(&d, c, t).map_err(num_err)?).abs());
    }
    let mut modular: f64 = 0.0;
    for i in 0..100 {
        let t = 0.3 + 4.7 * ((i * 37 % 100) as f64 / 99.0);
        let z = Complex64::new(((i * 13) % 17) as f64 / 17.0 - 0.5, ((i * 7) % 11) as f64 / 22.0 - 0.25);
        let tau = Complex64::new(0.0, t);
        let lhs = jacobi_theta(ThetaArg::new(z / tau, -1.0 / tau).map_err(num_err)?).map_err(num_err)?;
        let rhs = (Complex64::i() * PI * z * z / tau).exp()
            * (-Complex64::i() * tau).sqrt()
            * jacobi_theta(ThetaArg::new(z, tau).map_err(num_err)?).map_err(num_err)?;
        modular = modular.max((lhs - rhs).norm() / rhs.norm());
    }
    let mut xi: f64 = 0.0;
    for &x in &[0.1, 0.5, 0.9] {
        for &rho in &[0.2, 0.5, 0.8] {
            for &a in &[0.5, 1.0, 2.2] {
                let s = xi_series(x, 0.0, rho, a).map_err(num_err)?;
                let t = xi_series_phi0_via_theta(x, rho, a).map_err(num_err)?;
                xi = xi.max((s.re - t).abs() + s.im.abs());
            }
        }
    }
    let mut refl: f64 = 0.0;
    for k in 0..=80 {
        let t = -4.0 + 0.1 * k as f64;
        refl = refl.max((erfc(t) + erfc(-t) - 2.0).abs());
    }
    Ok(vec![
        Check::below("specfun.modified_theta_vs_jacobi", None, lemma, 1e-10),
        Check::below("specfun.discrete_gaussian_cgf_vs_theta", None, dn, 1e-9),
        Check::below("specfun.theta_modular", None, modular, 1e-10),
        Check::below("specfun.xi_phi0_vs_theta", None, xi, 1e-10),
        Check::below("specfun.erfc_reflection", None, refl, 1e-14),
    ])
}

struct EdgeRow {
    raw: [Option<f64>; 3],
    res: [Option<f64>; 3],
}

fn edge_checks(cfg: &RunConfig, ns: &[usize], sink: &Sink) -> Result<Vec<Check>, CliError> {
    let p = &cfg.potential;
    let g = geometry(cfg)?;
    let gp = g.gaps.first().copied();
    let zero = RadialTestFunction::zero();
    let rows: Vec<EdgeRow> = ns
        .par_iter()
        .map(|&n| -> Result<EdgeRow, CliError> {
            let nf = n as f64;
            let tab = table(&PerturbedPotential::unperturbed(p.clone(), n))?;
            let mut row = EdgeRow { raw: [None; 3], res: [None; 3] };
            let mut put = |k: usize, r: f64, pred: f64| {
                let exact = tab.one_point_radial(r);
                let nd = nf * p.lap(r);
                row.raw[k] = Some((exact - nd / 2.0) / nd.sqrt());
                row.res[k] = Some(exact - pred);
            };
            if let Some(gp) = &gp {
                let st = gap_state(gp, n);
                put(0, gp.r1, predict_density_gap_inner(gp, &st, 0.0, 0.0, &zero).map_err(asym_err)?.total);
                put(1, gp.r2, predict_density_gap_outer_edge(gp, &st, 0.0, 0.0, &zero).map_err(asym_err)?.total);
            }
            put(2, g.outer_radius, predict_density_outer_boundary(p, &g, 0.0, n).map_err(asym_err)?.total);
            Ok(row)
        })
        .collect::<Result<_, _>>()?;

    let names = ["r1", "r2", "outer"];
    let mut series = Table::new(["n", "raw_r1", "residual_r1", "raw_r2", "residual_r2", "raw_outer", "residual_outer"]);
    for (&n, r) in ns.iter().zip(&rows) {
        let mut cells = vec![Cell::Int(n as i64)];
        for k in 0..3 {
            cells.push(r.raw[k].map_or(Cell::Empty, Cell::Num));
            cells.push(r.res[k].map_or(Cell::Empty, Cell::Num));
        }
        series.push(cells);
    }

    let mut checks = vec![
        Check::below("droplet.frostman_contact", None, g.frostman_contact_defect, 1e-8),
        Check::below("droplet.frostman_violation", None, (-g.frostman_margin).max(0.0), 1e-8),
    ];
    let calib = ns.len().div_ceil(3);
    for (k, name) in names.iter().enumerate() {
        let res: Vec<f64> = rows.iter().filter_map(|r| r.res[k]).collect();
        if res.is_empty() {
            continue;
        }
        let band = 1.5 * res[..calib].iter().map(|r| r.abs()).fold(0.0, f64::max);
        for (&n, r) in ns.iter().zip(&res) {
            checks.push(Check::below(&format!("edge.{name}.residual"), Some(n), *r, band));
        }
        if k < 2 {
            // The raw, unpredicted series should stay of order one without vanishing.
            let amp = rows.iter().filter_map(|r| r.raw[k]).map(f64::abs).fold(0.0, f64::max);
            checks.push(Check {
                name: format!("edge.{name}.raw_amplitude"),
                n: None,
                residual: amp,
                bound: 10.0,
                pass: amp > 1e-2 && amp <= 10.0,
            });
        }
    }

    if let Some(csv) = sink.emit_file("verify_series", &series)? {
        let have: Vec<&str> = if gp.is_some() { vec!["raw_r1", "raw_r2", "raw_outer"] } else { vec!["raw_outer"] };
        sink.plot("verify_raw", &csv, "n", &have, "(R_n(r) - nΔQ/2)/√(nΔQ)")?;
        let have: Vec<&str> =
            if gp.is_some() { vec!["residual_r1", "residual_r2", "residual_outer"] } else { vec!["residual_outer"] };
        sink.plot("verify_residual", &csv, "n", &have, "R_n(r) - predicted edge density")?;
    } else {
        eprintln!("coulombgap: pass --out DIR to also write verify_series.csv");
    }
    Ok(checks)
}

fn verify(cfg: &RunConfig, sink: &Sink, suite: Suite, ns: Option<Vec<usize>>) -> Result<Status, CliError> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::All | Suite::Specfun) {
        checks.extend(specfun_checks()?);
    }
    if matches!(suite, Suite::All | Suite::Edge) {
        let ns = match ns {
            Some(v) => v,
            None => {
                let has_gap = !geometry(cfg)?.gaps.is_empty();
                if has_gap { (30..=120).step_by(10).collect() } else { (50..=400).step_by(50).collect() }
            }
        };
        checks.extend(edge_checks(cfg, &ns, sink)?);
    }
    let mut tab = Table::new(["check", "n", "residual", "bound", "pass"]);
    for c in &checks {
        tab.push(vec![
            Cell::Text(c.name.clone()),
            c.n.map_or(Cell::Empty, |n| Cell::Int(n as i64)),
            Cell::Num(c.residual),
            Cell::Num(c.bound),
            Cell::Bool(c.pass),
        ]);
    }
    sink.emit("verify", &tab)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        eprintln!("coulombgap: {failed} of {} checks failed", checks.len());
        return Ok(Status::ChecksFailed);
    }
    Ok(Status::Ok)
}
