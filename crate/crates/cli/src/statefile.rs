//! `pqovs-state-v1` JSON state files.

use std::sync::Arc;

use pqovs_core::states::{Family, GridScheme, GridSpec, RadialVortexState};
use pqovs_core::Complex64;
use serde::{Deserialize, Serialize};

pub const FORMAT_TAG: &str = "pqovs-state-v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRecord {
    pub scheme: String,
    pub r_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    pub format: String,
    pub charge: i32,
    pub alpha: Option<f64>,
    pub family: String,
    pub grid: GridRecord,
    pub samples: Vec<[f64; 2]>,
}

#[derive(Debug)]
pub enum StateFileError {
    Json(serde_json::Error),
    Invalid(String),
    Core(pqovs_core::Error),
}

impl std::fmt::Display for StateFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateFileError::Json(e) => write!(f, "malformed state file: {e}"),
            StateFileError::Invalid(m) => write!(f, "invalid state file: {m}"),
            StateFileError::Core(e) => write!(f, "invalid state file: {e}"),
        }
    }
}

impl std::error::Error for StateFileError {}

impl From<&RadialVortexState> for StateRecord {
    fn from(s: &RadialVortexState) -> Self {
        let g = s.grid();
        StateRecord {
            format: FORMAT_TAG.to_owned(),
            charge: s.charge(),
            alpha: s.alpha(),
            family: s.family().as_str().to_owned(),
            grid: GridRecord {
                scheme: g.scheme().as_str().to_owned(),
                r_max: g.r_max(),
                n: g.len(),
            },
            samples: s.samples().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl StateRecord {
    /// Rebuilds the grid (Bessel-zero grids use the order `|charge|`) and
    /// validates the state.
    pub fn into_state(self) -> Result<RadialVortexState, StateFileError> {
        if self.format != FORMAT_TAG {
            return Err(StateFileError::Invalid(format!(
                "unknown format tag {:?}",
                self.format
            )));
        }
        let scheme = GridScheme::parse(&self.grid.scheme).ok_or_else(|| {
            StateFileError::Invalid(format!("unknown grid scheme {:?}", self.grid.scheme))
        })?;
        let family = Family::parse(&self.family)
            .ok_or_else(|| StateFileError::Invalid(format!("unknown family {:?}", self.family)))?;
        let grid = GridSpec::new(
            scheme,
            self.grid.r_max,
            self.grid.n,
            self.charge.unsigned_abs(),
        )
        .map_err(StateFileError::Core)?;
        let samples = self
            .samples
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        RadialVortexState::from_parts(self.charge, self.alpha, family, Arc::new(grid), samples)
            .map_err(StateFileError::Core)
    }
}

pub fn to_json(state: &RadialVortexState) -> String {
    let mut s =
        serde_json::to_string(&StateRecord::from(state)).expect("state records always serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<RadialVortexState, StateFileError> {
    serde_json::from_str::<StateRecord>(text)
        .map_err(StateFileError::Json)?
        .into_state()
}
