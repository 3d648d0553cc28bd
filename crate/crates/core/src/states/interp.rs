//! Off-grid evaluation of sampled radial amplitudes.
//!
//! Gauss-Legendre grids use the barycentric form of the global Legendre
//! interpolant, which converges spectrally for the smooth, Gaussian-tailed
//! amplitudes handled here. Bessel-zero grids use a natural cubic spline.
//! Both return zero beyond `r_max`.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::grid::{GridScheme, GridSpec};

pub(crate) enum Interpolant<'a> {
    Barycentric {
        nodes: &'a [f64],
        bary: &'a [f64],
        values: &'a [C64],
        r_max: f64,
    },
    Spline(CubicSpline),
}

impl<'a> Interpolant<'a> {
    pub(crate) fn new(grid: &'a GridSpec, values: &'a [C64]) -> Self {
        match grid.scheme() {
            GridScheme::GaussLegendre => Interpolant::Barycentric {
                nodes: grid.nodes(),
                bary: grid.barycentric_weights(),
                values,
                r_max: grid.r_max(),
            },
            GridScheme::BesselZero => {
                Interpolant::Spline(CubicSpline::natural(grid.nodes(), values, grid.r_max()))
            }
        }
    }

    pub(crate) fn eval(&self, rho: f64) -> C64 {
        match self {
            Interpolant::Barycentric {
                nodes,
                bary,
                values,
                r_max,
            } => {
                if rho > *r_max || rho < 0.0 {
                    return C64::new(0.0, 0.0);
                }
                barycentric(nodes, bary, values, rho)
            }
            Interpolant::Spline(s) => s.eval(rho),
        }
    }
}

fn barycentric(nodes: &[f64], bary: &[f64], values: &[C64], x: f64) -> C64 {
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for ((&xj, &wj), &fj) in nodes.iter().zip(bary).zip(values) {
        let d = x - xj;
        if d == 0.0 {
            return fj;
        }
        let c = wj / d;
        num += fj * c;
        den += c;
    }
    num / den
}

pub(crate) struct CubicSpline {
    x: Vec<f64>,
    y: Vec<C64>,
    /// Second derivatives at the knots.
    m: Vec<C64>,
    r_max: f64,
}

impl CubicSpline {
    pub(crate) fn natural(x: &[f64], y: &[C64], r_max: f64) -> Self {
        let n = x.len();
        let mut m = alloc::vec![C64::new(0.0, 0.0); n];
        if n > 2 {
            // Tridiagonal solve for interior second derivatives.
            let mut diag = alloc::vec![0.0; n];
            let mut rhs = alloc::vec![C64::new(0.0, 0.0); n];
            let mut upper = alloc::vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for i in 2..n - 1 {
                let lower = x[i] - x[i - 1];
                let f = lower / diag[i - 1];
                diag[i] -= f * upper[i - 1];
                let prev = rhs[i - 1];
                rhs[i] -= prev * f;
            }
            for i in (1..n - 1).rev() {
                let next = if i + 1 < n - 1 {
                    m[i + 1]
                } else {
                    C64::new(0.0, 0.0)
                };
                m[i] = (rhs[i] - next * upper[i]) / diag[i];
            }
        }
        Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
            r_max,
        }
    }

    pub(crate) fn eval(&self, t: f64) -> C64 {
        if t > self.r_max || t < 0.0 || self.x.len() < 2 {
            return C64::new(0.0, 0.0);
        }
        let n = self.x.len();
        // Segment index, clamped so the end pieces extrapolate.
        let i = match self.x.binary_search_by(|v| v.total_cmp(&t)) {
            Ok(i) => return self.y[i],
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        self.y[i] * a
            + self.y[i + 1] * b
            + (self.m[i] * (a * a * a - a) + self.m[i + 1] * (b * b * b - b)) * (h * h / 6.0)
    }
}
