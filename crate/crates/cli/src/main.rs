//! `coulombgap`: exact finite-n computations and asymptotic predictions for
//! radial Coulomb gases with an annular gap, written as CSV.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ChecksFailed,
}

#[derive(Parser, Debug)]
#[command(
    name = "coulombgap",
    version,
    about = "Exact finite-n engine and edge/fluctuation asymptotics for radial 2D Coulomb gases with an annular gap",
    after_help = "All numbers are written with 17 significant digits. Without --out the primary table goes to stdout.\n\
                  Exit codes: 0 ok, 1 verification failure, 2 usage or config error, 3 numerical failure.\n\
                  COULOMBGAP_CACHE overrides the sampler table cache directory."
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Run configuration (flat dotted-key TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for CSV (and SVG) files; created if missing.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Also write SVG line plots next to the CSV files.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Droplet geometry and gap constants. Columns: quantity,value.
    ///
    /// Rows: annulus_K_inner/outer, outer_radius, gamma, gap_count, then for a
    /// gap r1, r2, B, A, rho, u, C, dq_r1, dq_r2 and x_nN, alpha_nN, m_nN for
    /// every n in the n-list.
    Analyze {
        /// n-list: a:b:step or comma list.
        #[arg(long)]
        n: Option<String>,
    },
    /// Edge density, exact and predicted. Columns: t,z,exact,predicted,residual.
    ///
    /// z = r + t/√(2nΔQ(r)) for the chosen edge; residual = exact − predicted.
    /// With --mode exact or predicted only that column follows t,z.
    Density {
        #[arg(long)]
        n: Option<usize>,
        /// a:b:step or comma list.
        #[arg(long = "t-grid", allow_hyphen_values = true)]
        t_grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Edge::R1)]
        edge: Edge,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        /// Perturbation strength s of q − sλ/n.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Two-point kernel K_n(z, w). Columns:
    /// t,z_re,z_im,w_re,w_im,exact_re,exact_im,predicted_re,predicted_im.
    ///
    /// r1r2: z = (r1 + t/√(2nΔQ(r1)))e^{iθ}, w = r2 + o/√(2nΔQ(r2)).
    /// r1r1: z as above, w = r1 + o/√(2nΔQ(r1)).
    /// general: z = t·e^{iθ}, w = o (t and o are radii).
    /// Here θ = --dtheta and o = --w-offset.
    Kernel2pt {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "t-grid", allow_hyphen_values = true)]
        t_grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Placement::R1r2)]
        placement: Placement,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        w_offset: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
        dtheta: f64,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Cumulant generating function of fluct λ. Columns: t,product,ward,predicted.
    ///
    /// Only the requested routes appear, always in this order.
    Cgf {
        #[arg(long)]
        n: Option<usize>,
        /// a:b:step or comma list.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "product,ward,predicted")]
        routes: Vec<Route>,
        #[arg(long)]
        lambda: Option<String>,
        /// Gauss–Legendre nodes in s for the ward route.
        #[arg(long, default_value_t = 24)]
        ward_steps: usize,
    },
    /// Exact samples of fluct λ = Σλ(|z_j|) − nσ(λ). Columns: sample,fluct.
    Sample {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// gap, bump:LO,PLO,PHI,HI or poly:LO,HI.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Verification suite. Columns: check,n,residual,bound,pass.
    ///
    /// `edge` also writes verify_series.csv (with --out) with columns
    /// n,raw_r1,residual_r1,raw_r2,residual_r2,raw_outer,residual_outer,
    /// where raw = (R_n(r) − nΔQ(r)/2)/√(nΔQ(r)) and residual = R_n(r) − 𝓔_n.
    /// Edge bounds are 1.5× the largest |residual| over the first third of
    /// the n-range.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// n-range: a:b:step or comma list.
        #[arg(long)]
        n: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Edge {
    R1,
    R2,
    Outer,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Predicted,
    Both,
}

impl Mode {
    pub fn exact(self) -> bool {
        self != Mode::Predicted
    }
    pub fn predicted(self) -> bool {
        self != Mode::Exact
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Placement {
    R1r2,
    R1r1,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Route {
    Product,
    Ward,
    Predicted,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Suite {
    All,
    Specfun,
    Edge,
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let mut cfg = match &cli.global.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::defaults(),
    };
    if let Some(k) = cli.global.threads {
        if k == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    if cli.global.out.is_some() {
        cfg.out = cli.global.out.clone();
    }
    cfg.svg |= cli.global.svg;
    let sink = output::Sink::new(cfg.out.clone(), cfg.svg)?;
    commands::dispatch(cli.cmd, &mut cfg, &sink)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("coulombgap: {e}");
            ExitCode::from(e.code())
        }
    }
}
