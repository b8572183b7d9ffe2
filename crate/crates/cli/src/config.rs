//! Run configuration: a flat dotted-key TOML file merged with command-line flags.
//!
//! ```toml
//! potential.coeffs = [1.8, -0.8, 0.1]   # q(r) = Σ c_k r^{2k}
//! lambda.kind = "bump"                  # bump | poly
//! lambda.support = [0.12, 1.1]
//! lambda.plateau = [0.22, 0.7]          # bump only
//! lambda.poly = [1.0]                   # optional polynomial factor
//! run.n = [30, 60, 120]
//! run.t_grid = "-2:2:0.25"
//! run.s = 0.0
//! run.seed = 7
//! run.out = "results"
//! run.svg = true
//! ```

use std::path::{Path, PathBuf};

use coulombgap::potential::{RadialPotential, RadialTestFunction, TestFunctionKind};
use coulombgap::DropletGeometry;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    potential: Option<PotentialSection>,
    lambda: Option<LambdaSection>,
    run: Option<RunSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PotentialSection {
    coeffs: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaSection {
    kind: String,
    support: [f64; 2],
    plateau: Option<[f64; 2]>,
    poly: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    n: Option<Vec<usize>>,
    t_grid: Option<String>,
    s: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    svg: Option<bool>,
}

/// Test function as requested; `Gap` is resolved against the droplet.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaSpec {
    /// Smooth bump equal to 1 on the inner disk, cut off inside the gap.
    Gap,
    Explicit(TestFunctionKind),
}

impl LambdaSpec {
    /// `gap`, `bump:LO,PLATEAU_LO,PLATEAU_HI,HI` or `poly:LO,HI`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "gap" {
            return Ok(LambdaSpec::Gap);
        }
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("lambda spec `{s}`: expected gap, bump:.. or poly:..")))?;
        let v = parse_floats(args)?;
        let spec = match (kind, v.as_slice()) {
            ("bump", &[lo, plo, phi, hi]) => {
                TestFunctionKind::Bump { poly: vec![1.0], lo, plateau_lo: plo, plateau_hi: phi, hi }
            }
            ("poly", &[lo, hi]) => TestFunctionKind::Poly { poly: vec![1.0], lo, hi },
            _ => return Err(CliError::Usage(format!("lambda spec `{s}`: wrong kind or number of values"))),
        };
        let spec = LambdaSpec::Explicit(spec);
        spec.check()?;
        Ok(spec)
    }

    fn from_section(l: LambdaSection) -> Result<Self, CliError> {
        let poly = l.poly.unwrap_or_else(|| vec![1.0]);
        let [lo, hi] = l.support;
        let kind = match l.kind.as_str() {
            "bump" => {
                let [plo, phi] = l
                    .plateau
                    .ok_or_else(|| CliError::Usage("lambda.kind = bump needs lambda.plateau".into()))?;
                TestFunctionKind::Bump { poly, lo, plateau_lo: plo, plateau_hi: phi, hi }
            }
            "poly" => TestFunctionKind::Poly { poly, lo, hi },
            other => return Err(CliError::Usage(format!("lambda.kind = `{other}`: expected bump or poly"))),
        };
        let spec = LambdaSpec::Explicit(kind);
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), CliError> {
        if let LambdaSpec::Explicit(k) = self {
            RadialTestFunction::new(k.clone()).map_err(|e| CliError::Usage(format!("lambda: {e}")))?;
        }
        Ok(())
    }

    pub fn resolve(&self, g: &DropletGeometry) -> Result<RadialTestFunction, CliError> {
        let kind = match self {
            LambdaSpec::Explicit(k) => k.clone(),
            LambdaSpec::Gap => {
                let gp = g.gap().map_err(|_| {
                    CliError::Usage("the default lambda needs a gap; set lambda.* or --lambda".into())
                })?;
                let w = gp.r2 - gp.r1;
                TestFunctionKind::Bump {
                    poly: vec![1.0],
                    lo: 0.4 * gp.r1,
                    plateau_lo: 0.7 * gp.r1,
                    plateau_hi: gp.r1 + 0.25 * w,
                    hi: gp.r1 + 0.75 * w,
                }
            }
        };
        RadialTestFunction::new(kind).map_err(|e| CliError::Usage(format!("lambda: {e}")))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub potential: RadialPotential,
    pub lambda: LambdaSpec,
    pub n_list: Option<Vec<usize>>,
    pub t_grid: Option<Vec<f64>>,
    pub s: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: bool,
}

impl RunConfig {
    pub fn defaults() -> Self {
        RunConfig {
            potential: RadialPotential::sextic_example(),
            lambda: LambdaSpec::Gap,
            n_list: None,
            t_grid: None,
            s: 0.0,
            seed: 1,
            out: None,
            svg: false,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: FileConfig = toml::from_str(text).map_err(|e| CliError::Usage(format!("malformed config: {e}")))?;
        let mut cfg = Self::defaults();
        if let Some(p) = file.potential {
            cfg.potential =
                RadialPotential::from_coeffs(&p.coeffs).map_err(|e| CliError::Usage(format!("potential.coeffs: {e}")))?;
        }
        if let Some(l) = file.lambda {
            cfg.lambda = LambdaSpec::from_section(l)?;
        }
        let run = file.run.unwrap_or_default();
        if let Some(ns) = run.n {
            cfg.n_list = Some(check_n_list(ns)?);
        }
        if let Some(t) = run.t_grid {
            cfg.t_grid = Some(parse_grid(&t)?);
        }
        if let Some(s) = run.s {
            if !s.is_finite() {
                return Err(CliError::Usage("run.s must be finite".into()));
            }
            cfg.s = s;
        }
        cfg.seed = run.seed.unwrap_or(cfg.seed);
        cfg.out = run.out;
        cfg.svg = run.svg.unwrap_or(false);
        Ok(cfg)
    }
}

pub fn check_n_list(ns: Vec<usize>) -> Result<Vec<usize>, CliError> {
    if ns.is_empty() {
        return Err(CliError::Usage("n-list is empty".into()));
    }
    if let Some(n) = ns.iter().find(|&&n| n < 10) {
        return Err(CliError::Usage(format!("n = {n} < 10")));
    }
    Ok(ns)
}

fn parse_floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("not a number: `{x}`"))))
        .collect()
}

/// `a:b:step` (inclusive) or a comma list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, step] => {
            let v = parse_floats(&format!("{a},{b},{step}"))?;
            let (a, b, h) = (v[0], v[1], v[2]);
            if !(h > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
                return Err(CliError::Usage(format!("grid `{s}`: need a ≤ b and step > 0")));
            }
            let count = ((b - a) / h + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(CliError::Usage(format!("grid `{s}` has {count} points")));
            }
            (0..count).map(|k| a + k as f64 * h).collect()
        }
        [list] if !list.trim().is_empty() => parse_floats(list)?,
        _ => return Err(CliError::Usage(format!("grid `{s}`: expected a:b:step or a comma list"))),
    };
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("grid `{s}` has non-finite values")));
    }
    Ok(grid)
}

/// `a:b:step` or a comma list of integers, each at least 10.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CliError::Usage("n-list is empty".into()));
    }
    let bad = || CliError::Usage(format!("n-list `{s}`: expected integers"));
    let parts: Vec<&str> = s.split(':').collect();
    let ns = match parts.as_slice() {
        [a, b, step] => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            let h: usize = step.trim().parse().map_err(|_| bad())?;
            if h == 0 {
                return Err(CliError::Usage(format!("n-list `{s}`: step must be positive")));
            }
            (a..=b).step_by(h).collect()
        }
        [list] => list
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<Vec<usize>, _>>()?,
        _ => return Err(bad()),
    };
    check_n_list(ns)
}
