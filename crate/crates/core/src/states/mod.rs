//! Radial vortex states `psi(rho, phi) = R(rho) e^{i q phi}` sampled on a
//! radial quadrature grid, with the Bessel-Gauss and modified Bessel-Gauss
//! families and the measurements used to compare them.
//!
//! The angular dependence is never sampled: every state here is an angular
//! monomial, so inner products between different charges vanish identically
//! and the remaining integrals are one-dimensional.

mod grid;
pub(crate) mod interp;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use libm::{exp, log, sqrt};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::specfun;

pub use grid::{default_r_max, make_grid, GridScheme, GridSpec, MIN_NODES};

/// Largest `alpha^2` accepted by the family constructors.
pub const MAX_ALPHA_SQ: f64 = 700.0;

/// `ln(1e14)`: family tails must be below `1e-14` at `r_max`.
const TAIL_LOG: f64 = 32.236_191_301_916_64;

/// Tolerance on the unit norm of named family members.
pub const FAMILY_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Bessel-Gauss vortex state.
    Bg,
    /// Modified Bessel-Gauss (perfect vortex) state.
    Mbg,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Bg => "bg",
            Family::Mbg => "mbg",
            Family::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bg" => Some(Family::Bg),
            "mbg" => Some(Family::Mbg),
            "custom" => Some(Family::Custom),
            _ => None,
        }
    }
}

/// `i^n` for integer `n`.
pub fn i_pow(n: i64) -> C64 {
    match n.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// A charge `q` together with radial samples `R(rho_i)`.
///
/// Immutable after construction; transformations return new states.
#[derive(Debug, Clone)]
pub struct RadialVortexState {
    charge: i32,
    alpha: Option<f64>,
    family: Family,
    grid: Arc<GridSpec>,
    samples: Vec<C64>,
}

impl RadialVortexState {
    /// A custom state from raw samples.
    pub fn from_samples(charge: i32, grid: Arc<GridSpec>, samples: Vec<C64>) -> Result<Self> {
        Self::from_parts(charge, None, Family::Custom, grid, samples)
    }

    /// Reassembles a state, checking the representation invariants. Named
    /// family members must carry an `alpha` and be normalized.
    pub fn from_parts(
        charge: i32,
        alpha: Option<f64>,
        family: Family,
        grid: Arc<GridSpec>,
        samples: Vec<C64>,
    ) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidArgument(
                "sample count differs from grid size",
            ));
        }
        if samples
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidArgument("samples must be finite"));
        }
        if let Some(a) = alpha {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::InvalidArgument("alpha must be positive"));
            }
        }
        let state = Self {
            charge,
            alpha,
            family,
            grid,
            samples,
        };
        if family != Family::Custom {
            if alpha.is_none() {
                return Err(Error::InvalidArgument("family states need alpha"));
            }
            if (state.norm() - 1.0).abs() > FAMILY_NORM_TOL {
                return Err(Error::InvalidArgument("family state is not normalized"));
            }
        }
        Ok(state)
    }

    pub fn charge(&self) -> i32 {
        self.charge
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn grid(&self) -> &Arc<GridSpec> {
        &self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// Same charge and grid, new samples; the result is a custom state.
    pub(crate) fn with_samples(&self, samples: Vec<C64>) -> Self {
        Self {
            charge: self.charge,
            alpha: None,
            family: Family::Custom,
            grid: Arc::clone(&self.grid),
            samples,
        }
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(&self, factor: C64) -> Self {
        self.with_samples(self.samples.iter().map(|&s| s * factor).collect())
    }

    /// `R(rho)` off the grid; zero beyond `r_max`.
    pub fn amplitude_at(&self, rho: f64) -> C64 {
        interp::Interpolant::new(&self.grid, &self.samples).eval(rho)
    }

    /// `sqrt(2 pi sum_i w_i |R_i|^2)`.
    pub fn norm(&self) -> f64 {
        sqrt(self.moment(0))
    }

    /// `<rho^m> = 2 pi sum_i w_i rho_i^m |R_i|^2`.
    pub fn moment(&self, m: i32) -> f64 {
        let g = &self.grid;
        let s: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .zip(&self.samples)
            .map(|((&r, &w), a)| w * libm::pow(r, m as f64) * a.norm_sqr())
            .sum();
        2.0 * PI * s
    }

    /// Norm carried by nodes with `rho > cut`.
    pub(crate) fn norm_sq_beyond(&self, cut: f64) -> f64 {
        let g = &self.grid;
        let s: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .zip(&self.samples)
            .filter(|((&r, _), _)| r > cut)
            .map(|((_, &w), a)| w * a.norm_sqr())
            .sum();
        2.0 * PI * s
    }
}

fn check_family_args(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(
            "alpha must be positive (the alpha -> 0 limit is not taken implicitly)",
        ));
    }
    if alpha * alpha > MAX_ALPHA_SQ {
        return Err(Error::OverflowGuard { alpha });
    }
    Ok(())
}

/// `ln(pi I_q(alpha^2)) - alpha^2`, the log of the scaled normalization.
fn log_scaled_normalization(order: u32, alpha: f64) -> Result<f64> {
    let i_scaled = specfun::bessel_i_scaled(order, alpha * alpha)?;
    if i_scaled <= 0.0 {
        return Err(Error::InvalidArgument(
            "alpha too small for this charge: normalization underflows",
        ));
    }
    Ok(log(PI * i_scaled))
}

fn order_of(q: i32) -> Result<u32> {
    let order = q.unsigned_abs();
    if order > specfun::MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(order)
}

/// Closed-form radial amplitude of a family member, `phase * profile(rho)`.
struct FamilyAmplitude {
    order: u32,
    phase: C64,
    /// `sqrt2 alpha`
    scale: f64,
    log_norm: f64,
    family: Family,
}

impl FamilyAmplitude {
    fn new(family: Family, q: i32, alpha: f64) -> Result<Self> {
        check_family_args(alpha)?;
        let order = order_of(q)?;
        let phase = match family {
            Family::Mbg => i_pow(2 * q as i64 + 1),
            _ => i_pow(q as i64),
        };
        Ok(Self {
            order,
            phase,
            scale: SQRT_2 * alpha,
            log_norm: log_scaled_normalization(order, alpha)?,
            family,
        })
    }

    fn eval(&self, r: f64) -> Result<C64> {
        let v = if self.family == Family::Mbg {
            let i = specfun::bessel_i_scaled(self.order, self.scale * r)?;
            let d = r - self.scale;
            i * exp(-0.5 * d * d - 0.5 * self.log_norm)
        } else {
            let j = specfun::bessel_j_abs(self.order, self.scale * r)?;
            j * exp(-0.5 * r * r - 0.5 * self.log_norm)
        };
        Ok(self.phase * v)
    }

    fn sample(self, q: i32, alpha: f64, grid: Arc<GridSpec>) -> Result<RadialVortexState> {
        let samples = grid
            .nodes()
            .iter()
            .map(|&r| self.eval(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadialVortexState {
            charge: q,
            alpha: Some(alpha),
            family: self.family,
            grid,
            samples,
        })
    }
}

/// Bessel-Gauss amplitude
/// `R(rho) = i^q J_|q|(sqrt2 alpha rho) e^{-(rho^2 - alpha^2)/2} / sqrt(pi I_|q|(alpha^2))`
/// at an arbitrary radius.
///
/// The `e^{alpha^2/2}` factor cancels against the exponential part of
/// `I_|q|(alpha^2)` before anything is exponentiated.
pub fn bg_amplitude(q: i32, alpha: f64, rho: f64) -> Result<C64> {
    FamilyAmplitude::new(Family::Bg, q, alpha)?.eval(rho)
}

/// Modified Bessel-Gauss amplitude
/// `R(rho) = i^{2q+1} I_|q|(sqrt2 alpha rho) e^{-(rho^2 + alpha^2)/2} / sqrt(pi I_|q|(alpha^2))`
/// at an arbitrary radius.
///
/// With scaled Bessel functions the exponent collapses to
/// `-(rho - sqrt2 alpha)^2 / 2`, so no intermediate overflows.
pub fn mbg_amplitude(q: i32, alpha: f64, rho: f64) -> Result<C64> {
    FamilyAmplitude::new(Family::Mbg, q, alpha)?.eval(rho)
}

/// Bessel-Gauss vortex state sampled on `grid`; see [`bg_amplitude`].
pub fn make_bg(q: i32, alpha: f64, grid: Arc<GridSpec>) -> Result<RadialVortexState> {
    let amp = FamilyAmplitude::new(Family::Bg, q, alpha)?;
    let r_max = grid.r_max();
    if r_max * r_max - alpha * alpha < TAIL_LOG {
        return Err(Error::Truncation {
            r_max,
            required: sqrt(alpha * alpha + TAIL_LOG),
        });
    }
    amp.sample(q, alpha, grid)
}

/// Modified Bessel-Gauss (perfect vortex) state sampled on `grid`; see
/// [`mbg_amplitude`].
pub fn make_mbg(q: i32, alpha: f64, grid: Arc<GridSpec>) -> Result<RadialVortexState> {
    let amp = FamilyAmplitude::new(Family::Mbg, q, alpha)?;
    let r_max = grid.r_max();
    let center = SQRT_2 * alpha;
    if r_max <= center || (r_max - center) * (r_max - center) < TAIL_LOG {
        return Err(Error::Truncation {
            r_max,
            required: center + sqrt(TAIL_LOG),
        });
    }
    amp.sample(q, alpha, grid)
}

/// See [`RadialVortexState::norm`].
pub fn norm(state: &RadialVortexState) -> f64 {
    state.norm()
}

/// `<a|b> = 2 pi sum_i w_i conj(A_i) B_i`, exactly zero for different charges.
pub fn overlap(a: &RadialVortexState, b: &RadialVortexState) -> Result<C64> {
    if !Arc::ptr_eq(&a.grid, &b.grid) && *a.grid != *b.grid {
        return Err(Error::GridMismatch);
    }
    if a.charge != b.charge {
        return Ok(C64::new(0.0, 0.0));
    }
    let s: C64 = a
        .grid
        .weights()
        .iter()
        .zip(a.samples.iter().zip(&b.samples))
        .map(|(&w, (x, y))| x.conj() * y * w)
        .sum();
    Ok(s * (2.0 * PI))
}

/// `|<a|b>|^2`, insensitive to global phase.
pub fn fidelity(a: &RadialVortexState, b: &RadialVortexState) -> Result<f64> {
    Ok(overlap(a, b)?.norm_sqr())
}

/// Radial probability density `P(rho) = 2 pi rho |R(rho)|^2` on the grid
/// nodes; integrates to one against the plain weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// Measure-free quadrature weights matching `radii`.
    pub weights: Vec<f64>,
}

impl DensityProfile {
    pub fn total(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * w)
            .sum()
    }
}

pub fn density_radial(state: &RadialVortexState) -> DensityProfile {
    let g = &state.grid;
    let values = g
        .nodes()
        .iter()
        .zip(&state.samples)
        .map(|(&r, a)| 2.0 * PI * r * a.norm_sqr())
        .collect();
    DensityProfile {
        radii: g.nodes().to_vec(),
        values,
        weights: g.plain_weights().to_vec(),
    }
}

/// Location of the density maximum, refined below the grid spacing.
///
/// A quartic through the five samples around the largest one is maximized
/// by golden-section search over the two neighbouring intervals.
pub fn peak_radius(profile: &DensityProfile) -> Result<f64> {
    let n = profile.values.len();
    if n < 3 || n != profile.radii.len() {
        return Err(Error::FlatProfile);
    }
    let imax = profile
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if imax == 0 || imax == n - 1 {
        return Err(Error::FlatProfile);
    }
    let lo = imax.saturating_sub(2);
    let hi = (imax + 2).min(n - 1);
    let xs = &profile.radii[lo..=hi];
    let ys = &profile.values[lo..=hi];
    let poly = |t: f64| -> f64 {
        let mut acc = 0.0;
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis = 1.0;
            for (j, &xj) in xs.iter().enumerate() {
                if j != i {
                    basis *= (t - xj) / (xi - xj);
                }
            }
            acc += yi * basis;
        }
        acc
    };
    let (mut a, mut b) = (profile.radii[imax - 1], profile.radii[imax + 1]);
    let inv_phi = 0.5 * (sqrt(5.0) - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (poly(c), poly(d));
    for _ in 0..200 {
        if b - a <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = poly(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = poly(d);
        }
    }
    Ok(0.5 * (a + b))
}

/// Radial field-strength variance `<rho^2> - <rho>^2`.
pub fn radial_noise(state: &RadialVortexState) -> f64 {
    let m1 = state.moment(1);
    let m2 = state.moment(2);
    (m2 - m1 * m1).max(0.0)
}
