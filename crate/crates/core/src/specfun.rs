//! Integer-order Bessel functions of the first kind, exponentially scaled
//! modified Bessel functions of the first kind, and zeros of `J_q`.
//!
//! Three evaluation regimes are used for both families:
//!
//! * a power series when the argument is small compared to the order, where
//!   the terms decrease monotonically and no cancellation occurs,
//! * Miller's backward recurrence normalized by the Neumann sums
//!   `J_0 + 2 sum J_2k = 1` and `e^-x (I_0 + 2 sum I_k) = 1`,
//! * the Hankel asymptotic expansion for large arguments, used only when the
//!   series actually converges to the requested accuracy.
//!
//! Where `|J_q(x)|` is small compared with its oscillation envelope, the
//! double-precision result carries a large relative error however it is
//! computed; those points are recomputed by Miller's algorithm in
//! double-double arithmetic so the requested relative accuracy holds up to
//! [`REFINE_MAX_ARG`].
//!
//! Only integer orders `0..=MAX_ORDER` are supported. Callers handle negative
//! charges through `J_{-q} = (-1)^q J_q`.

use alloc::vec::Vec;

use libm::{cos, exp, fabs, sin, sqrt};

use crate::error::{Error, Result};

mod dd;
use dd::Dd;

/// Largest supported order.
pub const MAX_ORDER: u32 = 200;

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;
const PI: f64 = core::f64::consts::PI;

/// Rescale threshold for the backward recurrences.
const BIG: f64 = 1e250;
const BIG_INV: f64 = 1e-250;

/// Largest argument for which near-zero values of `J_q` are refined.
pub const REFINE_MAX_ARG: f64 = 1e4;

/// Tuning knobs for the Bessel evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    /// `J_q(x)` uses the power series when `x <= series_cutoff * sqrt(q + 1)`.
    pub series_cutoff: f64,
    /// Requested relative accuracy.
    pub target_rel_err: f64,
    /// Upper bound on the number of series terms.
    pub max_terms: usize,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            series_cutoff: 1.5,
            target_rel_err: 1e-12,
            max_terms: 500,
        }
    }
}

impl EvalPolicy {
    pub fn new(series_cutoff: f64, target_rel_err: f64, max_terms: usize) -> Result<Self> {
        if !(series_cutoff > 0.0 && series_cutoff.is_finite()) {
            return Err(Error::InvalidArgument("series_cutoff must be positive"));
        }
        if !(target_rel_err > 0.0 && target_rel_err < 1e-6) {
            return Err(Error::InvalidArgument(
                "target_rel_err must lie in (0, 1e-6)",
            ));
        }
        if max_terms < 50 {
            return Err(Error::InvalidArgument("max_terms must be at least 50"));
        }
        Ok(Self {
            series_cutoff,
            target_rel_err,
            max_terms,
        })
    }

    /// Bessel function of the first kind `J_q(x)`.
    pub fn bessel_j(&self, q: u32, x: f64) -> Result<f64> {
        let v = self.bessel_j_abs(q, x)?;
        let qf = q as f64;
        if x > qf && x <= REFINE_MAX_ARG {
            // Absolute error of the double path is a few ulps of the envelope.
            let envelope = sqrt(2.0 / (PI * x)).max(0.68 * libm::cbrt(1.0 / x));
            if fabs(v) < 100.0 * f64::EPSILON * envelope / self.target_rel_err {
                return Ok(j_miller_dd(q, x));
            }
        }
        Ok(v)
    }

    /// `J_q(x)` to a few ulps of the oscillation envelope, without the
    /// near-zero refinement. Enough wherever only absolute accuracy matters.
    pub fn bessel_j_abs(&self, q: u32, x: f64) -> Result<f64> {
        check_args(q, x)?;
        if x == 0.0 {
            return Ok(if q == 0 { 1.0 } else { 0.0 });
        }
        let qf = q as f64;
        if x <= self.series_cutoff * sqrt(qf + 1.0) {
            return Ok(self.j_series(q, x));
        }
        if x >= asymptotic_threshold(q) {
            if let Some(v) = self.j_asymptotic(q, x) {
                return Ok(v);
            }
        }
        Ok(j_miller(q, x))
    }

    /// `e^{-x} I_q(x)`, finite for every supported argument.
    pub fn bessel_i_scaled(&self, q: u32, x: f64) -> Result<f64> {
        check_args(q, x)?;
        if x == 0.0 {
            return Ok(if q == 0 { 1.0 } else { 0.0 });
        }
        if x <= 20.0 {
            return Ok(self.i_series_scaled(q, x));
        }
        if x >= asymptotic_threshold(q) {
            if let Some(v) = self.i_asymptotic_scaled(q, x) {
                return Ok(v);
            }
        }
        Ok(i_miller_scaled(q, x))
    }

    fn j_series(&self, q: u32, x: f64) -> f64 {
        let half = 0.5 * x;
        let mut lead = 1.0;
        for i in 1..=q {
            lead *= half / i as f64;
        }
        let y = -half * half;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..self.max_terms {
            term *= y / (k as f64 * (k + q as usize) as f64);
            sum += term;
            if fabs(term) <= 0.25 * f64::EPSILON * fabs(sum) {
                break;
            }
        }
        lead * sum
    }

    fn i_series_scaled(&self, q: u32, x: f64) -> f64 {
        let half = 0.5 * x;
        let mut lead = exp(-x);
        for i in 1..=q {
            lead *= half / i as f64;
        }
        let y = half * half;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..self.max_terms {
            term *= y / (k as f64 * (k + q as usize) as f64);
            sum += term;
            if term <= 0.25 * f64::EPSILON * sum {
                break;
            }
        }
        lead * sum
    }

    /// Hankel expansion `J_q(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi)`.
    fn j_asymptotic(&self, q: u32, x: f64) -> Option<f64> {
        let (p, qq) = self.hankel_pq(q, x)?;
        // chi = x - (2q+1) pi / 4, expanded so that the phase of x is taken
        // straight from sin/cos of the exact argument.
        let (s, c) = (sin(x), cos(x));
        let (cos_chi, sin_chi) = match q % 4 {
            0 => ((c + s), (s - c)),
            1 => ((s - c), -(c + s)),
            2 => (-(c + s), (c - s)),
            _ => ((c - s), (c + s)),
        };
        let (cos_chi, sin_chi) = (cos_chi * FRAC_1_SQRT_2, sin_chi * FRAC_1_SQRT_2);
        Some(sqrt(2.0 / (PI * x)) * (p * cos_chi - qq * sin_chi))
    }

    /// Returns `(P, Q)` of the Hankel expansion, or `None` if the series
    /// starts diverging before reaching the target accuracy.
    fn hankel_pq(&self, q: u32, x: f64) -> Option<(f64, f64)> {
        let mu = 4.0 * (q as f64) * (q as f64);
        let eight_x = 8.0 * x;
        let tol = 0.05 * f64::EPSILON;
        let mut p = 1.0;
        let mut qq = 0.0;
        let mut term = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..self.max_terms {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * eight_x);
            let mag = fabs(term);
            if mag == 0.0 {
                return Some((p, qq));
            }
            // k odd contributes to Q, k even to P; signs alternate in pairs.
            match k % 4 {
                1 => qq += term,
                2 => p -= term,
                3 => qq -= term,
                _ => p += term,
            }
            if mag < tol {
                return Some((p, qq));
            }
            if mag > prev && (k as f64) > 0.5 * sqrt(mu) + 1.0 {
                return None;
            }
            prev = mag;
        }
        None
    }

    fn i_asymptotic_scaled(&self, q: u32, x: f64) -> Option<f64> {
        let mu = 4.0 * (q as f64) * (q as f64);
        let eight_x = 8.0 * x;
        let tol = 0.01 * f64::EPSILON;
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..self.max_terms {
            let odd = (2 * k - 1) as f64;
            term *= -(mu - odd * odd) / (k as f64 * eight_x);
            sum += term;
            let mag = fabs(term);
            if mag < tol * fabs(sum) {
                return Some(sum / sqrt(2.0 * PI * x));
            }
            if mag > prev && (k as f64) > 0.5 * sqrt(mu) + 1.0 {
                return None;
            }
            prev = mag;
        }
        None
    }
}

fn check_args(q: u32, x: f64) -> Result<()> {
    if q > MAX_ORDER {
        return Err(Error::UnsupportedOrder(q));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            what: "Bessel argument",
            value: x,
        });
    }
    Ok(())
}

fn asymptotic_threshold(q: u32) -> f64 {
    let qf = q as f64;
    (0.5 * qf * qf).max(25.0)
}

/// Miller's algorithm for `J_q(x)`, normalized with `J_0 + 2 sum J_2k = 1`.
fn j_miller(q: u32, x: f64) -> f64 {
    let m = (q as f64).max(libm::ceil(x));
    let mut start = (m + 20.0 + sqrt(160.0 * m)) as usize;
    start += start & 1;
    let two_over_x = 2.0 / x;
    let mut f_next = 0.0; // f_{j+1}
    let mut f = 1e-300; // f_j, j = start
    let mut sum = 2.0 * f; // start is even
    let mut ans = if start == q as usize { f } else { 0.0 };
    for j in (1..=start).rev() {
        let f_prev = j as f64 * two_over_x * f - f_next;
        f_next = f;
        f = f_prev;
        let idx = j - 1;
        if idx == q as usize {
            ans = f;
        }
        if idx == 0 {
            sum += f;
        } else if idx % 2 == 0 {
            sum += 2.0 * f;
        }
        if fabs(f) > BIG {
            f *= BIG_INV;
            f_next *= BIG_INV;
            sum *= BIG_INV;
            ans *= BIG_INV;
        }
    }
    ans / sum
}

/// [`j_miller`] in double-double arithmetic with a deeper start.
fn j_miller_dd(q: u32, x: f64) -> f64 {
    const HUGE: f64 = 6.668_014_432_879_854e240; // 2^800
    const TINY: f64 = 1.499_696_813_895_631e-241; // 2^-800
    let m = (q as f64).max(libm::ceil(x));
    let mut start = (m + 40.0 + sqrt(400.0 * m)) as usize;
    start += start & 1;
    let two_over_x = Dd::new(2.0).div(Dd::new(x));
    let mut f_next = Dd::ZERO;
    let mut f = Dd::new(1e-300);
    let mut sum = f.scale(2.0);
    let mut ans = Dd::ZERO;
    for j in (1..=start).rev() {
        let f_prev = two_over_x.mul(Dd::new(j as f64)).mul(f).sub(f_next);
        f_next = f;
        f = f_prev;
        let idx = j - 1;
        if idx == q as usize {
            ans = f;
        }
        if idx == 0 {
            sum = sum.add(f);
        } else if idx % 2 == 0 {
            sum = sum.add(f.scale(2.0));
        }
        if f.abs_hi() > HUGE {
            f = f.scale(TINY);
            f_next = f_next.scale(TINY);
            sum = sum.scale(TINY);
            ans = ans.scale(TINY);
        }
    }
    ans.div(sum).to_f64()
}

/// Miller's algorithm for `e^{-x} I_q(x)`, normalized with
/// `e^{-x} (I_0 + 2 sum I_k) = 1`.
fn i_miller_scaled(q: u32, x: f64) -> f64 {
    let start = q as usize + (sqrt(100.0 * x) as usize) + 40;
    let two_over_x = 2.0 / x;
    let mut f_next = 0.0;
    let mut f = 1e-300;
    let mut sum = 2.0 * f;
    let mut ans = if start == q as usize { f } else { 0.0 };
    for j in (1..=start).rev() {
        let f_prev = j as f64 * two_over_x * f + f_next;
        f_next = f;
        f = f_prev;
        let idx = j - 1;
        if idx == q as usize {
            ans = f;
        }
        sum += if idx == 0 { f } else { 2.0 * f };
        if f > BIG {
            f *= BIG_INV;
            f_next *= BIG_INV;
            sum *= BIG_INV;
            ans *= BIG_INV;
        }
    }
    ans / sum
}

/// `J_q(x)` with the default [`EvalPolicy`].
pub fn bessel_j(q: u32, x: f64) -> Result<f64> {
    EvalPolicy::default().bessel_j(q, x)
}

/// [`EvalPolicy::bessel_j_abs`] with the default policy.
pub fn bessel_j_abs(q: u32, x: f64) -> Result<f64> {
    EvalPolicy::default().bessel_j_abs(q, x)
}

/// `e^{-x} I_q(x)` with the default [`EvalPolicy`].
pub fn bessel_i_scaled(q: u32, x: f64) -> Result<f64> {
    EvalPolicy::default().bessel_i_scaled(q, x)
}

/// First `n` positive zeros of `J_q`, in increasing order.
///
/// Zeros are bracketed by stepping upward from `x = q` (no zero of `J_q`
/// lies below its order) with a step shorter than the smallest possible gap
/// between consecutive zeros, then refined by an Illinois-type false
/// position iteration.
pub fn bessel_j_zeros(q: u32, n: usize) -> Result<Vec<f64>> {
    if q > MAX_ORDER {
        return Err(Error::UnsupportedOrder(q));
    }
    if n == 0 || n > 10_000 {
        return Err(Error::InvalidArgument("zero count must lie in 1..=10000"));
    }
    let policy = EvalPolicy::default();
    let f = |x: f64| policy.bessel_j_abs(q, x).unwrap_or(f64::NAN);

    // Consecutive zeros are at least ~2.4 apart for every order, and for
    // q >= 1 they are more than pi apart.
    const STEP: f64 = 0.5;
    const MIN_GAP: f64 = 2.4;

    let mut zeros = Vec::with_capacity(n);
    let mut a = if q == 0 { 1.0 } else { q as f64 };
    let mut fa = f(a);
    while zeros.len() < n {
        let b = a + STEP;
        let fb = f(b);
        if fb == 0.0 {
            zeros.push(b);
            a = b + MIN_GAP;
            fa = f(a);
            continue;
        }
        if fa.signum() != fb.signum() {
            let z = refine_root(&f, a, b, fa, fb);
            zeros.push(z);
            a = z + MIN_GAP;
            fa = f(a);
            continue;
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

fn refine_root(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    let mut side = 0i8;
    for _ in 0..200 {
        let tol = 4.0 * f64::EPSILON * fabs(b).max(1.0);
        if fabs(b - a) <= tol {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    if fabs(fa) < fabs(fb) {
        a
    } else {
        b
    }
}
