use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use pqovs_core::lens::{effective_lens, squeeze, SqueezeParams};
use pqovs_core::propagator::{
    fourier_planes, propagate_with, scan_fidelity, Convention, PropagationParams, PropagatorOptions,
};
use pqovs_core::states::{
    density_radial, fidelity, make_bg, make_mbg, radial_noise, GridScheme, GridSpec,
    RadialVortexState,
};
use pqovs_core::Error;

use crate::config::{Command, ConventionArg, FamilyArg, Format, RunConfig, SchemeArg};
use crate::number::g17;
use crate::statefile::{self, StateFileError};

/// Exit status for invalid arguments or input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for numeric failures.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Numeric(e) => write!(f, "numeric failure: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularPlane { .. }
            | Error::OverflowGuard { .. }
            | Error::InterpolationCoverage { .. }
            | Error::Truncation { .. }
            | Error::FlatProfile => CliError::Numeric(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StateFileError> for CliError {
    fn from(e: StateFileError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs `config` against the process's standard streams and returns the
/// exit status; failures are reported as one line on standard error.
pub fn run(config: &RunConfig) -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    match run_with(config, &mut stdin.lock(), &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pqovs: {e}");
            e.exit_code()
        }
    }
}

/// [`run`] with explicit streams.
pub fn run_with(
    config: &RunConfig,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let output = match config.command {
        Command::Planes => {
            let list = fourier_planes(config.k, config.m_max)?;
            let mut s = String::new();
            for p in &list.planes {
                s.push_str(&format!("{}\t{}\n", p.m, g17(p.z)));
            }
            s
        }
        Command::Make => {
            if config.family.is_none() {
                return Err(CliError::Usage("make needs --family".into()));
            }
            statefile::to_json(&source_state(config, stdin)?)
        }
        Command::Propagate => {
            let state = source_state(config, stdin)?;
            let opts = PropagatorOptions {
                convention: match config.convention {
                    ConventionArg::Unitary => Convention::Unitary,
                    ConventionArg::AsPrinted => Convention::AsPrinted,
                },
                analytic_limits: !config.no_analytic_limit,
                ..Default::default()
            };
            let out = propagate_with(&state, &PropagationParams::new(config.k, config.z)?, &opts)?;
            statefile::to_json(&out)
        }
        Command::Squeeze => {
            let state = source_state(config, stdin)?;
            statefile::to_json(&squeeze(&state, &SqueezeParams::new(config.gain)?)?)
        }
        Command::Lens => {
            let state = source_state(config, stdin)?;
            statefile::to_json(&effective_lens(
                &state,
                &SqueezeParams::new(config.gain)?,
                config.k,
            )?)
        }
        Command::Scan => {
            let state = source_state(config, stdin)?;
            let target = match &config.target {
                Some(p) => read_state(p, stdin)?,
                None => {
                    let alpha = state.alpha().ok_or_else(|| {
                        CliError::Usage("scan of a custom state needs --target".into())
                    })?;
                    make_mbg(state.charge(), alpha, Arc::clone(state.grid()))?
                }
            };
            let scan = scan_fidelity(
                &state,
                &target,
                config.k,
                config.z_from,
                config.z_to,
                config.steps,
            )?;
            let cols: [Vec<f64>; 3] = [
                scan.rows.iter().map(|r| r.z).collect(),
                scan.rows.iter().map(|r| r.fidelity).collect(),
                scan.rows.iter().map(|r| r.norm).collect(),
            ];
            table(config.format, &["z", "fidelity", "norm"], &cols)
        }
        Command::Density => {
            let d = density_radial(&source_state(config, stdin)?);
            table(config.format, &["rho", "density"], &[d.radii, d.values])
        }
        Command::Fidelity => {
            let state = source_state(config, stdin)?;
            let path = config
                .target
                .as_ref()
                .ok_or_else(|| CliError::Usage("fidelity needs --target".into()))?;
            let target = read_state(path, stdin)?;
            format!("{}\n", g17(fidelity(&target, &state)?))
        }
        Command::Noise => format!("{}\n", g17(radial_noise(&source_state(config, stdin)?))),
    };
    emit(config.out.as_deref(), &output, stdout)
}

/// The command's input state: built from flags when --family is given,
/// otherwise read from --in or standard input.
fn source_state(config: &RunConfig, stdin: &mut dyn Read) -> Result<RadialVortexState, CliError> {
    let Some(family) = config.family else {
        return match &config.input {
            Some(p) => read_state(p, stdin),
            None => parse_state(&read_all(stdin)?),
        };
    };
    if config.input.is_some() {
        return Err(CliError::Usage(
            "--family and --in are mutually exclusive".into(),
        ));
    }
    let scheme = match config.scheme {
        SchemeArg::GaussLegendre => GridScheme::GaussLegendre,
        SchemeArg::BesselZero => GridScheme::BesselZero,
    };
    let grid = Arc::new(GridSpec::new(
        scheme,
        config.resolved_r_max(),
        config.grid_n,
        config.q.unsigned_abs(),
    )?);
    Ok(match family {
        FamilyArg::Bg => make_bg(config.q, config.alpha, grid)?,
        FamilyArg::Mbg => make_mbg(config.q, config.alpha, grid)?,
    })
}

fn read_state(path: &Path, stdin: &mut dyn Read) -> Result<RadialVortexState, CliError> {
    if path == Path::new("-") {
        return parse_state(&read_all(stdin)?);
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text)
}

fn parse_state(text: &str) -> Result<RadialVortexState, CliError> {
    Ok(statefile::from_json(text)?)
}

fn read_all(stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
    Ok(s)
}

fn table(format: Format, header: &[&str], cols: &[Vec<f64>]) -> String {
    let rows = cols.first().map_or(0, Vec::len);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for i in 0..rows {
                w.write_record(cols.iter().map(|c| g17(c[i])))
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (name, col) in header.iter().zip(cols) {
                obj.insert((*name).to_owned(), serde_json::json!(col));
            }
            let mut s = serde_json::Value::Object(obj).to_string();
            s.push('\n');
            s
        }
    }
}

/// Writes to `path` atomically (temporary file in the same directory, then
/// rename), or to `stdout` when no path or `-` is given.
fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Usage(format!("cannot write output: {e}"));
    match path {
        None => stdout.write_all(text.as_bytes()).map_err(io_err),
        Some(p) if p == Path::new("-") => stdout.write_all(text.as_bytes()).map_err(io_err),
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
            tmp.write_all(text.as_bytes()).map_err(io_err)?;
            tmp.persist(p).map_err(|e| io_err(e.error))?;
            Ok(())
        }
    }
}
