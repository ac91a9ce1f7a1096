//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the report and exit status without touching the process, so the binary is
//! a thin wrapper and tests can drive every command in-process.

mod commands;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lande::exact::HalfInt;
use lande::io::{OutputFormat, RunConfig};

pub mod exit {
    pub const OK: i32 = 0;
    pub const ROUTE_DISAGREEMENT: i32 = 2;
    pub const DEGENERATE_METRIC: i32 = 3;
    pub const CHART: i32 = 4;
    pub const DEGENERATE_GRID: i32 = 5;
    pub const PARSE: i32 = 6;
    pub const INSUFFICIENT_LEVELS: i32 = 7;
    pub const SINGULAR_DESIGN: i32 = 8;
    /// Bad flags or arguments outside the model's domain.
    pub const USAGE: i32 = 64;
}

#[derive(Parser, Debug)]
#[command(name = "lande", version, about = "Fine-structure intervals, Wigner algebra and configuration-space curvature")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Report format; overrides the config file.
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<OutputFormat>,
    /// RunConfig file of key = value lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

/// Comma-separated reals, as one flag value.
#[derive(Clone, Debug, PartialEq)]
pub struct RealList(pub Vec<f64>);

fn parse_list(s: &str) -> Result<RealList, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>().map(RealList)
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ⟨f⟩ for the four tabulated multiplets, checked against the published values.
    Table1,
    /// Scalar curvature of the coupled two-sphere configuration space at one point.
    Curvature(CurvatureArgs),
    /// Fit R(β) ≈ R0 + κ (f(β) - 1) at several couplings.
    Expand(ExpandArgs),
    /// Level energies and interval deviations of one multiplet.
    Predict(PredictArgs),
    /// Least-squares fit of measured multiplets.
    Fit(FitArgs),
    /// ⟨f⟩ for a single level by both routes.
    Fmat(FmatArgs),
    /// Exact Clebsch-Gordan, 3j, 6j and Gaunt values.
    Wigner(WignerArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InertiaArgs {
    #[arg(long = "il")]
    pub i_l: f64,
    #[arg(long = "is")]
    pub i_s: f64,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub inertia: InertiaArgs,
    #[arg(long = "ils-inv", default_value_t = 0.0)]
    pub inv_i_ls: f64,
    /// θ,φ,θ',φ'
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub point: RealList,
    #[arg(long)]
    pub step: Option<f64>,
    /// Include Christoffel symbols and the Ricci tensor.
    #[arg(long)]
    pub full: bool,
    /// Replace the metric with the identity (debugging aid).
    #[arg(long)]
    pub flat: bool,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub inertia: InertiaArgs,
    #[arg(long = "ils-inv-list", value_parser = parse_list, allow_hyphen_values = true)]
    pub inv_list: RealList,
    /// Relative angles in radians; defaults to 9 points spread over (0.2, π - 0.2).
    #[arg(long = "beta-grid", value_parser = parse_list, allow_hyphen_values = true)]
    pub beta_grid: Option<RealList>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Include the sampled (β, R) pairs.
    #[arg(long)]
    pub full: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaChoice {
    Fit,
    Paper,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct PredictArgs {
    #[command(flatten)]
    pub inertia: InertiaArgs,
    #[arg(long = "ils-inv")]
    pub inv_i_ls: f64,
    #[arg(long)]
    pub c: f64,
    #[arg(long = "L")]
    pub l: HalfInt,
    #[arg(long = "S")]
    pub s: HalfInt,
    #[arg(long, value_enum, default_value_t = KappaChoice::Fit)]
    pub kappa: KappaChoice,
    #[arg(long = "hbar-sq", default_value_t = 1.0)]
    pub hbar_sq: f64,
    #[arg(long, default_value = "predicted")]
    pub label: String,
    /// Uncertainty written next to each energy in CSV output.
    #[arg(long, default_value_t = 0.0)]
    pub uncertainty: f64,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Fit only the multiplet with this label.
    #[arg(long)]
    pub select: Option<String>,
    #[arg(long)]
    pub confidence: Option<f64>,
    /// Assumed moments of inertia; with these, c = C/(ħ²κ) is also reported.
    #[arg(long = "il", requires_all = ["i_s", "inv_i_ls"])]
    pub i_l: Option<f64>,
    #[arg(long = "is")]
    pub i_s: Option<f64>,
    #[arg(long = "ils-inv")]
    pub inv_i_ls: Option<f64>,
    #[arg(long, value_enum, default_value_t = KappaChoice::Fit)]
    pub kappa: KappaChoice,
    #[arg(long = "hbar-sq", default_value_t = 1.0)]
    pub hbar_sq: f64,
}

#[derive(Args, Debug)]
pub struct FmatArgs {
    #[arg(long = "L")]
    pub l: HalfInt,
    #[arg(long = "S")]
    pub s: HalfInt,
    #[arg(long = "J")]
    pub j: HalfInt,
}

#[derive(Args, Debug)]
pub struct WignerArgs {
    #[command(subcommand)]
    pub symbol: WignerSymbol,
}

#[derive(Subcommand, Debug)]
pub enum WignerSymbol {
    /// ⟨j1 m1 j2 m2 | J M⟩
    #[command(allow_negative_numbers = true, allow_hyphen_values = true)]
    Cg { j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt },
    /// (j1 j2 j3; m1 m2 m3)
    #[command(name = "3j", allow_negative_numbers = true, allow_hyphen_values = true)]
    ThreeJ { j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt },
    /// {j1 j2 j3; j4 j5 j6}
    #[command(name = "6j", allow_negative_numbers = true, allow_hyphen_values = true)]
    SixJ { j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt },
    /// ∫ Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ
    #[command(allow_negative_numbers = true, allow_hyphen_values = true)]
    Gaunt { l1: i32, m1: i32, l2: i32, m2: i32, l3: i32, m3: i32 },
}

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

/// A report renderable in each output format.
pub struct Report {
    pub json: serde_json::Value,
    pub csv: String,
    pub text: String,
    /// Nonzero when the report is complete but records a failed check.
    pub code: i32,
    pub warning: Option<String>,
}

fn load_config(path: Option<&PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", p.display())))?;
            RunConfig::parse(&text).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", p.display())))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { stdout: rendered, stderr: String::new(), code: exit::OK }
                }
                _ => Outcome { stdout: String::new(), stderr: rendered, code: exit::USAGE },
            };
        }
    };
    let result = load_config(cli.config.as_ref()).and_then(|config| {
        let format = cli.format.unwrap_or(config.output_format);
        commands::dispatch(&cli.command, &config).map(|report| (report, format))
    });
    match result {
        Ok((report, format)) => {
            let stdout = match format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
                OutputFormat::Csv => report.csv,
                OutputFormat::Text => report.text,
            };
            Outcome { stdout, stderr: report.warning.map(|w| w + "\n").unwrap_or_default(), code: report.code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e.message), code: e.code },
    }
}
