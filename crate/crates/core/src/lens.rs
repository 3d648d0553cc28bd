//! Equal squeezing of both modes and the "effective lens" built from it.
//!
//! Squeezing both field-strength quadratures by the same factor is an
//! isotropic dilation of the `(E_a, E_b)` plane, so it acts on the radial
//! amplitude only: `R'(rho) = R(rho / s) / s`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::propagator::{propagate, PropagationParams};
use crate::states::interp::Interpolant;
use crate::states::{GridSpec, RadialVortexState};

/// Largest norm fraction allowed to leave the grid during a rescale.
pub const COVERAGE_TOL: f64 = 1e-10;

/// Radial scale factor of an equal two-mode squeeze; `s < 1` compresses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    s: f64,
}

impl SqueezeParams {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(
                "squeeze factor must be positive and finite",
            ));
        }
        Ok(Self { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn inverse(&self) -> Self {
        Self { s: 1.0 / self.s }
    }
}

/// Squeezes onto the input grid.
pub fn squeeze(state: &RadialVortexState, params: &SqueezeParams) -> Result<RadialVortexState> {
    squeeze_onto(state, params, Arc::clone(state.grid()))
}

/// `R'(rho) = R(rho / s) / s` resampled onto `grid`.
///
/// Source values beyond the source grid are taken as zero; if more than
/// [`COVERAGE_TOL`] of the norm would land outside `grid`, the call fails.
pub fn squeeze_onto(
    state: &RadialVortexState,
    params: &SqueezeParams,
    grid: Arc<GridSpec>,
) -> Result<RadialVortexState> {
    let s = params.s;
    let total = state.moment(0);
    if total > 0.0 {
        let lost = state.norm_sq_beyond(grid.r_max() / s) / total;
        if lost > COVERAGE_TOL {
            return Err(Error::InterpolationCoverage {
                lost_fraction: lost,
            });
        }
    }
    if s == 1.0 && *grid == **state.grid() {
        return Ok(state.clone());
    }
    let interp = Interpolant::new(state.grid(), state.samples());
    let inv = 1.0 / s;
    let samples: Vec<_> = grid
        .nodes()
        .iter()
        .map(|&r| interp.eval(r / s) * inv)
        .collect();
    RadialVortexState::from_samples(state.charge(), grid, samples)
}

/// Scaled Fourier transform: the output is the Fourier-plane image of
/// `state`, squeezed by `s`.
///
/// Evaluated as free propagation to the first Fourier plane `z = pi/(2k)`
/// of the input squeezed by `1/s`, which equals the squeezed Fourier image
/// because dilations by `a` in one plane become dilations by `1/a` in the
/// conjugate plane.
pub fn effective_lens(
    state: &RadialVortexState,
    params: &SqueezeParams,
    k: f64,
) -> Result<RadialVortexState> {
    let pre = squeeze(state, &params.inverse())?;
    propagate(&pre, &PropagationParams::new(k, PI / (2.0 * k))?)
}
