use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Bohnenblust–Hille constants, inequality witnesses and Bohr radius bounds.
#[derive(Debug, Parser, Serialize)]
#[command(name = "bhbounds", version)]
pub struct Cli {
    /// Root seed; every random task derives its own seed from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file. Without it, output goes to `$BHBOUNDS_OUTPUT_DIR` when set, else stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Tables of upper bounds for the BH constants.
    #[command(subcommand)]
    Constants(ConstantsCmd),
    /// Randomized checks of the inequalities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bohr radius bounds.
    #[command(subcommand)]
    Bohr(BohrCmd),
}

impl Command {
    /// `constants-table`, `verify-blei`, ...: used for default file names.
    pub fn slug(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        let (outer, inner) = v.as_object().and_then(|o| o.iter().next()).expect("tagged enum");
        let inner = match inner {
            serde_json::Value::Object(o) => o.keys().next().cloned().unwrap_or_default(),
            serde_json::Value::String(s) => s.clone(),
            _ => String::new(),
        };
        format!("{outer}-{inner}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Field {
    #[value(name = "C")]
    C,
    #[value(name = "R")]
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Pred,
    Half,
    Opt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Character,
    Rademacher,
    Steinhaus,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantsCmd {
    /// Columns m, closed, dfoos, pol_best, k_star for m = 2..=m_max.
    Table(ConstantsTable),
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsTable {
    #[arg(long)]
    pub m_max: usize,
    #[arg(long, value_enum, default_value_t = Field::C)]
    pub field: Field,
    /// k-schedule of the real recursion.
    #[arg(long, value_enum, default_value_t = Schedule::Opt)]
    pub schedule: Schedule,
    /// Anchor order for the real recursion.
    #[arg(long, requires = "anchor_value")]
    pub anchor_m: Option<usize>,
    /// Known upper bound for the real constant at the anchor order.
    #[arg(long, requires = "anchor_m")]
    pub anchor_value: Option<f64>,
    /// JSON bound cache, read and updated in place.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Suite {
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCmd {
    /// Generalized Blei, (p,q,s) Blei and Minkowski embedding on random tensors.
    Blei(Suite),
    /// Row/column mixed inequality on random matrices.
    Dps(Suite),
    /// Hölder interpolation of mixed norms.
    Interp(Suite),
    /// Khintchine inequality by Monte Carlo.
    Khintchine(KhintchineArgs),
    /// Polynomial Khintchine inequality on the torus.
    PolyKhintchine(PolyKhintchineArgs),
    /// Harris' bound for symmetric forms on random polynomials.
    Harris(HarrisArgs),
    /// BH ratio of random forms against the closed-form constant.
    BhRatio(BhRatioArgs),
    /// Growth of the BH ratio in the dimension.
    Probe(ProbeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct KhintchineArgs {
    #[arg(long, default_value = "4/3", value_parser = parse_number)]
    pub p: f64,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Field::C)]
    pub field: Field,
    /// Independent coefficient vectors.
    #[arg(long, default_value_t = 1)]
    pub draws: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct PolyKhintchineArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value = "1", value_parser = parse_number)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub draws: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct HarrisArgs {
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Parts summing to m, e.g. `2,1`. Default: every ordered partition.
    #[arg(long, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub draws: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BhRatioArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ProbeArgs {
    /// Exponents, one per slot; fractions allowed.
    #[arg(long, value_delimiter = ',', default_value = "4/3,4/3", value_parser = parse_number)]
    pub q: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, value_enum, default_value_t = Ensemble::Character)]
    pub ensemble: Ensemble,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BohrCmd {
    /// Certified lower bounds, one row per n.
    Table(BohrTableArgs),
    /// Empirical upper estimate from random-sign polynomials.
    Upper(BohrUpperArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Empirical {
    #[arg(long, default_value_t = 16)]
    pub sign_trials: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
    #[arg(long, default_value_t = 200_000)]
    pub max_monomials: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct BohrTableArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest truncation order tried.
    #[arg(long, default_value_t = 4096)]
    pub m_cap: usize,
    /// Also fill r_upper_emp where the monomial budget allows.
    #[arg(long)]
    pub empirical: bool,
    #[command(flatten)]
    pub effort: Empirical,
}

#[derive(Debug, Args, Serialize)]
pub struct BohrUpperArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub effort: Empirical,
}

/// Decimal or `a/b`.
fn parse_number(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            let b: f64 = b.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
            a / b
        }
        None => s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not a finite number"))
    }
}
