//! Radial quadrature grids over the dimensionless field-strength radius.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, exp, fabs, sqrt};

use crate::error::{Error, Result};
use crate::specfun;

/// Smallest accepted node count.
pub const MIN_NODES: usize = 16;

/// Node placement rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridScheme {
    /// Gauss-Legendre nodes mapped onto `[0, r_max]`.
    GaussLegendre,
    /// Scaled zeros of `J_order`: `rho_i = j_{order,i} r_max / j_{order,n+1}`.
    BesselZero,
}

impl GridScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            GridScheme::GaussLegendre => "gauss_legendre",
            GridScheme::BesselZero => "bessel_zero",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gauss_legendre" => Some(GridScheme::GaussLegendre),
            "bessel_zero" => Some(GridScheme::BesselZero),
            _ => None,
        }
    }
}

/// Radial grid with weights for `int_0^r_max f(rho) rho drho`.
///
/// The radial measure is folded into [`weights`](Self::weights);
/// [`plain_weights`](Self::plain_weights) integrate `f(rho) drho`.
#[derive(Debug, Clone)]
pub struct GridSpec {
    scheme: GridScheme,
    r_max: f64,
    order: u32,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    plain_weights: Vec<f64>,
    /// Barycentric interpolation weights (Gauss-Legendre grids only).
    bary: Vec<f64>,
}

/// Equality is by construction parameters; nodes and weights are a
/// deterministic function of them.
impl PartialEq for GridSpec {
    fn eq(&self, other: &Self) -> bool {
        self.scheme == other.scheme
            && self.nodes.len() == other.nodes.len()
            && self.r_max.to_bits() == other.r_max.to_bits()
            && (self.scheme == GridScheme::GaussLegendre || self.order == other.order)
    }
}

impl GridSpec {
    /// Builds a grid. `order_hint` is the Bessel order used for
    /// [`GridScheme::BesselZero`] node placement and is ignored otherwise.
    pub fn new(scheme: GridScheme, r_max: f64, n: usize, order_hint: u32) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidArgument("r_max must be positive and finite"));
        }
        if n < MIN_NODES {
            return Err(Error::InvalidArgument("grid needs at least 16 nodes"));
        }
        match scheme {
            GridScheme::GaussLegendre => Ok(Self::gauss_legendre(r_max, n)),
            GridScheme::BesselZero => Self::bessel_zero(r_max, n, order_hint),
        }
    }

    /// Default grid for a state with family parameter `alpha`:
    /// 1024 Gauss-Legendre nodes on `[0, alpha sqrt(2) + 10]`.
    pub fn default_for(alpha: f64) -> Result<Self> {
        Self::new(GridScheme::GaussLegendre, default_r_max(alpha), 1024, 0)
    }

    fn gauss_legendre(r_max: f64, n: usize) -> Self {
        let (x, w) = gauss_legendre_unit(n);
        let half = 0.5 * r_max;
        let nodes: Vec<f64> = x.iter().map(|&t| half * (t + 1.0)).collect();
        let plain_weights: Vec<f64> = w.iter().map(|&wi| half * wi).collect();
        let weights = nodes
            .iter()
            .zip(&plain_weights)
            .map(|(&r, &pw)| r * pw)
            .collect();
        let bary = x
            .iter()
            .zip(&w)
            .enumerate()
            .map(|(i, (&t, &wi))| {
                let v = sqrt((1.0 - t * t) * wi);
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        Self {
            scheme: GridScheme::GaussLegendre,
            r_max,
            order: 0,
            nodes,
            weights,
            plain_weights,
            bary,
        }
    }

    fn bessel_zero(r_max: f64, n: usize, order: u32) -> Result<Self> {
        let zeros = specfun::bessel_j_zeros(order, n + 1)?;
        let j_last = zeros[n];
        let scale = r_max / j_last;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut plain_weights = Vec::with_capacity(n);
        for &j in &zeros[..n] {
            let jp = specfun::bessel_j_abs(order + 1, j)?;
            let rho = j * scale;
            let w = 2.0 * r_max * r_max / (j_last * j_last * jp * jp);
            nodes.push(rho);
            weights.push(w);
            plain_weights.push(w / rho);
        }
        Ok(Self {
            scheme: GridScheme::BesselZero,
            r_max,
            order,
            nodes,
            weights,
            plain_weights,
            bary: Vec::new(),
        })
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Bessel order of a [`GridScheme::BesselZero`] grid (0 otherwise).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights for `int f(rho) rho drho`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for `int f(rho) drho`.
    pub fn plain_weights(&self) -> &[f64] {
        &self.plain_weights
    }

    pub(crate) fn barycentric_weights(&self) -> &[f64] {
        &self.bary
    }

    /// Applies the weights to `f(rho)`, i.e. approximates
    /// `int_0^r_max f(rho) rho drho`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * f(r))
            .sum()
    }

    /// Residual of the Gaussian sanity check. The test integrand is
    /// `rho^(2 order) e^{-rho^2}`, whose exact integral against `rho drho`
    /// is `gamma(order + 1, r_max^2) / 2`; Gauss-Legendre grids use order 0.
    pub fn sanity_residual(&self) -> f64 {
        let m = self.order as i32;
        let approx = self.integrate(|r| libm::pow(r * r, m as f64) * exp(-r * r));
        fabs(approx - 0.5 * lower_gamma_int(m as u32, self.r_max * self.r_max))
    }
}

/// `r_max = alpha sqrt(2) + 10`.
pub fn default_r_max(alpha: f64) -> f64 {
    alpha * core::f64::consts::SQRT_2 + 10.0
}

/// Builds a grid; see [`GridSpec::new`].
pub fn make_grid(scheme: GridScheme, r_max: f64, n: usize, order_hint: u32) -> Result<GridSpec> {
    GridSpec::new(scheme, r_max, n, order_hint)
}

/// Lower incomplete gamma `gamma(m + 1, y)` for integer `m`:
/// `m! (1 - e^{-y} sum_{k<=m} y^k / k!)`.
fn lower_gamma_int(m: u32, y: f64) -> f64 {
    let mut term = 1.0;
    let mut partial = 1.0;
    let mut fact = 1.0;
    for k in 1..=m {
        term *= y / k as f64;
        partial += term;
        fact *= k as f64;
    }
    fact * (1.0 - exp(-y) * partial)
}

/// Gauss-Legendre nodes (increasing) and weights on `[-1, 1]`.
pub(crate) fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess for the i-th largest root.
        let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut t = cos(theta) * (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if fabs(dt) <= 2.0 * f64::EPSILON {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, t);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[n - 1 - i] = t;
        x[i] = -t;
        w[n - 1 - i] = weight;
        w[i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}
