//! Free propagation through a homogeneous medium with a common propagation
//! constant `k` for both modes.
//!
//! The kernel is the two-mode harmonic propagator at angle `theta = k z`:
//!
//! ```text
//! K = c(theta) exp(-i / (2 sin theta) [(rho0^2 + rho^2) cos theta - 2 rho0 rho cos(phi0 - phi)])
//! ```
//!
//! For an angular monomial `R(rho0) e^{i q phi0}` the `phi0` integral is done
//! in closed form (Jacobi-Anger), leaving a chirped Hankel transform of order
//! `|q|` that is evaluated on the state's own radial grid:
//!
//! ```text
//! R_out(rho) = c' e^{-i rho^2 cot(theta)/2}
//!              sum_j w_j R_j e^{-i rho_j^2 cot(theta)/2} J_|q|(rho rho_j / |sin theta|)
//! ```
//!
//! Angles where `|sin theta| < 1/sqrt2` are split into a quarter-period step
//! followed by the remainder. Both pieces then have well-resolved
//! oscillations on the grid, and the composition law of the propagator makes
//! the split exact up to a global phase.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use libm::{cos, fabs, sin};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::specfun;
use crate::states::{i_pow, overlap, RadialVortexState};

const TAU: f64 = 2.0 * PI;

/// Default `|sin(kz)|` below which the analytic limits are used.
pub const EPS_SINGULAR: f64 = 1e-6;

/// Smallest `|sin(kz)|` accepted by [`propagate_bruteforce`].
pub const EPS_SINGULAR_BRUTEFORCE: f64 = 0.05;

/// Smallest angular sample count for [`propagate_bruteforce`].
pub const MIN_PHI_SAMPLES: usize = 128;

/// Propagation constant and distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationParams {
    k: f64,
    z: f64,
}

impl PropagationParams {
    pub fn new(k: f64, z: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidArgument("k must be positive and finite"));
        }
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::InvalidArgument("z must be nonnegative and finite"));
        }
        Ok(Self { k, z })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Fractional transform angle `k z`.
    pub fn theta(&self) -> f64 {
        self.k * self.z
    }
}

/// Normalization of the kernel prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `i / (2 pi sin theta)`: the norm-preserving two-dimensional kernel,
    /// i.e. the product of the principal-branch one-mode factors.
    #[default]
    Unitary,
    /// `(i / (2 pi sin theta))^(1/2)` on the principal branch.
    AsPrinted,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Unitary => "unitary",
            Convention::AsPrinted => "as_printed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "unitary" => Some(Convention::Unitary),
            "as_printed" => Some(Convention::AsPrinted),
            _ => None,
        }
    }

    fn prefactor(self, sin_theta: f64) -> C64 {
        let unitary = C64::new(0.0, 1.0 / (TAU * sin_theta));
        match self {
            Convention::Unitary => unitary,
            Convention::AsPrinted => unitary.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorOptions {
    pub convention: Convention,
    pub eps_singular: f64,
    /// Map near-singular planes to the identity / parity images. When off,
    /// such planes are reported as [`Error::SingularPlane`].
    pub analytic_limits: bool,
}

impl Default for PropagatorOptions {
    fn default() -> Self {
        Self {
            convention: Convention::Unitary,
            eps_singular: EPS_SINGULAR,
            analytic_limits: true,
        }
    }
}

/// The propagator kernel in polar field-strength coordinates.
pub fn kernel(
    rho0: f64,
    phi0: f64,
    rho: f64,
    phi: f64,
    params: &PropagationParams,
    convention: Convention,
) -> Result<C64> {
    let theta = params.theta();
    let (s, c) = (sin(theta), cos(theta));
    if fabs(s) < EPS_SINGULAR {
        return Err(Error::SingularPlane { theta });
    }
    Ok(kernel_at(rho0, phi0, rho, phi, s, c, convention))
}

fn kernel_at(
    rho0: f64,
    phi0: f64,
    rho: f64,
    phi: f64,
    s: f64,
    c: f64,
    convention: Convention,
) -> C64 {
    let bracket = (rho0 * rho0 + rho * rho) * c - 2.0 * rho0 * rho * cos(phi0 - phi);
    let phase = C64::new(0.0, -bracket / (2.0 * s)).exp();
    convention.prefactor(s) * phase
}

/// Propagates with the unitary kernel and default options.
pub fn propagate(
    state: &RadialVortexState,
    params: &PropagationParams,
) -> Result<RadialVortexState> {
    propagate_with(state, params, &PropagatorOptions::default())
}

/// Propagates `state` to the plane `params.z()`.
///
/// The output has the input's charge and grid. At planes with
/// `|sin(kz)| < eps_singular` the result is the identity image (for
/// `kz = 0 mod 2 pi`) or the parity image `(-1)^q psi` (for `kz = pi mod 2 pi`).
pub fn propagate_with(
    state: &RadialVortexState,
    params: &PropagationParams,
    opts: &PropagatorOptions,
) -> Result<RadialVortexState> {
    let theta = params.theta();
    let s = sin(theta);
    if fabs(s) < opts.eps_singular {
        if !opts.analytic_limits {
            return Err(Error::SingularPlane { theta });
        }
        if cos(theta) > 0.0 {
            return Ok(state.clone());
        }
        let sign = if state.charge() % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(state.scaled(C64::new(sign, 0.0)));
    }

    // Reduce to (-pi, pi].
    let mut reduced = theta - TAU * libm::floor(theta / TAU);
    if reduced > PI {
        reduced -= TAU;
    }
    let mut samples = if fabs(sin(reduced)) >= FRAC_1_SQRT_2 {
        chirped_hankel(state, state.samples(), reduced)?
    } else {
        let quarter = if reduced >= 0.0 {
            FRAC_PI_2
        } else {
            -FRAC_PI_2
        };
        let mid = chirped_hankel(state, state.samples(), quarter)?;
        chirped_hankel(state, &mid, reduced - quarter)?
    };

    if opts.convention != Convention::Unitary {
        let ratio = opts.convention.prefactor(s) / Convention::Unitary.prefactor(s);
        for v in &mut samples {
            *v *= ratio;
        }
    }
    Ok(state.with_samples(samples))
}

/// One direct transform at angle `theta` with `|sin theta|` bounded away
/// from zero, unitary normalization.
fn chirped_hankel(state: &RadialVortexState, input: &[C64], theta: f64) -> Result<Vec<C64>> {
    let grid = state.grid();
    let nodes = grid.nodes();
    let weights = grid.weights();
    let n = nodes.len();
    let order = state.charge().unsigned_abs();
    let (s, c) = (sin(theta), cos(theta));
    let half_cot = 0.5 * c / s;
    let inv_abs_s = 1.0 / fabs(s);

    let chirp: Vec<C64> = nodes
        .iter()
        .map(|&r| C64::new(0.0, -half_cot * r * r).exp())
        .collect();
    let weighted: Vec<C64> = (0..n).map(|j| input[j] * chirp[j] * weights[j]).collect();

    // The Bessel matrix J(rho_i rho_j / |s|) is symmetric, so each entry is
    // evaluated once and applied to both rows.
    let mut acc = alloc::vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let ri = nodes[i] * inv_abs_s;
        let mut row = C64::new(0.0, 0.0);
        let wi = weighted[i];
        for j in i..n {
            let b = specfun::bessel_j_abs(order, ri * nodes[j])?;
            row += weighted[j] * b;
            if j != i {
                acc[j] += wi * b;
            }
        }
        acc[i] += row;
    }

    // (i / (2 pi s)) * 2 pi i^|q| sgn(s)^|q|
    let mut pref = i_pow(order as i64 + 1) / s;
    if s < 0.0 && order % 2 == 1 {
        pref = -pref;
    }
    Ok(acc
        .iter()
        .zip(&chirp)
        .map(|(&a, &ch)| a * ch * pref)
        .collect())
}

/// Direct double-quadrature evaluation of the propagation integral at one
/// output point `(rho, phi)`: periodic trapezoid rule over `phi0` with
/// `n_phi` samples, the state's radial grid over `rho0`.
pub fn bruteforce_amplitude(
    state: &RadialVortexState,
    params: &PropagationParams,
    n_phi: usize,
    rho: f64,
    phi: f64,
) -> Result<C64> {
    let theta = params.theta();
    let (s, c) = (sin(theta), cos(theta));
    if fabs(s) < EPS_SINGULAR_BRUTEFORCE {
        return Err(Error::SingularPlane { theta });
    }
    if n_phi < MIN_PHI_SAMPLES {
        return Err(Error::InvalidArgument(
            "bruteforce needs at least 128 angular samples",
        ));
    }
    let grid = state.grid();
    let dphi = TAU / n_phi as f64;
    let q = state.charge() as f64;
    let angular: Vec<(f64, C64)> = (0..n_phi)
        .map(|l| {
            let phi0 = l as f64 * dphi;
            (phi0, C64::new(0.0, q * phi0).exp())
        })
        .collect();
    let mut total = C64::new(0.0, 0.0);
    for ((&r0, &w), &amp) in grid.nodes().iter().zip(grid.weights()).zip(state.samples()) {
        let mut inner = C64::new(0.0, 0.0);
        for &(phi0, e) in &angular {
            inner += kernel_at(r0, phi0, rho, phi, s, c, Convention::Unitary) * e;
        }
        total += inner * amp * w;
    }
    Ok(total * dphi)
}

/// Oracle propagation: [`bruteforce_amplitude`] at `phi = 0` for every
/// grid node.
pub fn propagate_bruteforce(
    state: &RadialVortexState,
    params: &PropagationParams,
    n_phi: usize,
) -> Result<RadialVortexState> {
    let samples = state
        .grid()
        .nodes()
        .iter()
        .map(|&r| bruteforce_amplitude(state, params, n_phi, r, 0.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(state.with_samples(samples))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierPlane {
    pub m: u32,
    pub z: f64,
}

/// Planes `z_m = (2m + 1) pi / (2k)` where propagation is a Fourier
/// transform.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPlaneList {
    pub k: f64,
    pub planes: Vec<FourierPlane>,
}

pub fn fourier_planes(k: f64, m_max: u32) -> Result<FourierPlaneList> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument("k must be positive and finite"));
    }
    let planes = (0..=m_max)
        .map(|m| FourierPlane {
            m,
            z: (2 * m + 1) as f64 * PI / (2.0 * k),
        })
        .collect();
    Ok(FourierPlaneList { k, planes })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub z: f64,
    pub fidelity: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FidelityScan {
    pub rows: Vec<ScanRow>,
}

impl FidelityScan {
    /// Row with the largest fidelity.
    pub fn best(&self) -> Option<&ScanRow> {
        self.rows
            .iter()
            .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
    }
}

/// Evenly spaced planes from `z_from` to `z_to` (inclusive); planes with
/// `|sin(kz)| < eps_singular` are nudged off the singularity.
pub fn scan_planes(k: f64, z_from: f64, z_to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidArgument("scan needs at least 2 steps"));
    }
    if !(z_from.is_finite() && z_to.is_finite() && z_from >= 0.0 && z_to >= 0.0) {
        return Err(Error::InvalidArgument(
            "scan bounds must be finite and nonnegative",
        ));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument("k must be positive and finite"));
    }
    let dz = (z_to - z_from) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let z = z_from + dz * i as f64;
            if fabs(sin(k * z)) < EPS_SINGULAR {
                z + 2.0 * EPS_SINGULAR / k
            } else {
                z
            }
        })
        .collect())
}

/// `|<target | propagate(state, z)>|^2` and the propagated norm on a line
/// of planes.
pub fn scan_fidelity(
    state: &RadialVortexState,
    target: &RadialVortexState,
    k: f64,
    z_from: f64,
    z_to: f64,
    steps: usize,
) -> Result<FidelityScan> {
    let rows = scan_planes(k, z_from, z_to, steps)?
        .into_iter()
        .map(|z| scan_row(state, target, k, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(FidelityScan { rows })
}

/// A single row of [`scan_fidelity`]; rows are independent of each other.
pub fn scan_row(
    state: &RadialVortexState,
    target: &RadialVortexState,
    k: f64,
    z: f64,
) -> Result<ScanRow> {
    let out = propagate(state, &PropagationParams::new(k, z)?)?;
    let fidelity = overlap(target, &out)?.norm_sqr();
    Ok(ScanRow {
        z,
        fidelity,
        norm: out.norm(),
    })
}
