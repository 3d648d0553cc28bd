//! Command-line surface. Quantities are dimensionless except `z` and `k`,
//! which are in reciprocal units of each other (`k z` is an angle).

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build a BG or MBG state and write it as pqovs-state-v1 JSON.
    Make,
    /// Propagate a state to the plane z.
    Propagate,
    /// Print the Fourier planes z_m = (2m+1) pi / (2k), one `m<TAB>z` per line.
    Planes,
    /// Fidelity against a target over a line of planes (CSV `z,fidelity,norm`).
    Scan,
    /// Equal two-mode squeeze by --gain.
    Squeeze,
    /// Squeeze by --gain, then propagate to the first Fourier plane.
    Lens,
    /// Radial probability density (CSV `rho,density`).
    Density,
    /// |<target|state>|^2, printed to standard output.
    Fidelity,
    /// Radial field-strength noise <(d rho)^2>, printed to standard output.
    Noise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Bg,
    Mbg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    GaussLegendre,
    BesselZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Unitary,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Bessel-Gauss and perfect quantum optical vortex states: build, propagate,
/// squeeze and measure.
///
/// States are read from --in (or standard input) unless --family is given,
/// in which case they are built from --family/--q/--alpha and the grid flags.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "pqovs", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// State family to build [dimensionless].
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Topological charge [integer].
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub q: i32,
    /// Family parameter alpha [dimensionless].
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Propagation constant [1/length].
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Propagation distance [length].
    #[arg(long, default_value_t = 0.0)]
    pub z: f64,
    /// Squeeze scale factor s; s < 1 compresses [dimensionless].
    #[arg(long, default_value_t = 1.0)]
    pub gain: f64,
    /// Radial grid size [nodes, >= 16].
    #[arg(long, default_value_t = 1024, value_parser = grid_n)]
    pub grid_n: usize,
    /// Radial grid extent; 0 selects alpha*sqrt(2)+10 [dimensionless].
    #[arg(long, default_value_t = 0.0)]
    pub r_max: f64,
    /// Radial quadrature scheme.
    #[arg(long, value_enum, default_value_t = SchemeArg::GaussLegendre)]
    pub scheme: SchemeArg,
    /// First scan plane [length].
    #[arg(long, default_value_t = 0.1)]
    pub z_from: f64,
    /// Last scan plane [length].
    #[arg(long, default_value_t = 3.1)]
    pub z_to: f64,
    /// Number of scan planes [count, >= 2].
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
    /// Largest Fourier-plane index for `planes` [count].
    #[arg(long, default_value_t = 2)]
    pub m_max: u32,
    /// Input state file; `-` or absent reads standard input.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Target state file for `scan` and `fidelity`; `scan` defaults to the
    /// MBG state matching the input's charge and alpha.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Output file; absent or `-` writes standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Table format for `scan` and `density`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Kernel normalization.
    #[arg(long, value_enum, default_value_t = ConventionArg::Unitary)]
    pub convention: ConventionArg,
    /// Report singular planes as errors instead of using the identity/parity limits.
    #[arg(long)]
    pub no_analytic_limit: bool,
}

fn grid_n(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < pqovs_core::states::MIN_NODES {
        return Err(format!(
            "must be at least {}",
            pqovs_core::states::MIN_NODES
        ));
    }
    Ok(n)
}

impl RunConfig {
    /// `r_max` with the automatic default applied.
    pub fn resolved_r_max(&self) -> f64 {
        if self.r_max > 0.0 {
            self.r_max
        } else {
            pqovs_core::states::default_r_max(self.alpha)
        }
    }
}

/// Parses `argv` (without the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(
        std::iter::once("pqovs".into()).chain(argv.into_iter().map(Into::into)),
    )
}
