#![allow(dead_code)]

pub mod bigfloat;

use std::sync::Arc;

use pqovs_core::states::{default_r_max, GridScheme, GridSpec};

pub fn gl_grid(r_max: f64, n: usize) -> Arc<GridSpec> {
    Arc::new(GridSpec::new(GridScheme::GaussLegendre, r_max, n, 0).unwrap())
}

pub fn default_grid(alpha: f64, n: usize) -> Arc<GridSpec> {
    gl_grid(default_r_max(alpha), n)
}

/// Golden-section maximization of `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-13 * (1.0 + a.abs()) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
