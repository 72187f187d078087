//! Small scalar numerics shared by the curve and bound modules.

use crate::{Error, Result};

/// Safeguarded Newton iteration inside a sign-changing bracket.
///
/// Newton steps that leave the current bracket, or fail to halve it, fall back
/// to bisection. Stops when `|f| <= ftol` or the bracket is below one ulp.
pub fn newton_bisect<F, D>(f: F, df: D, mut lo: f64, mut hi: f64, ftol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::BracketFailure { lo, hi });
    }
    let mut x = 0.5 * (lo + hi);
    let mut width = hi - lo;
    for _ in 0..400 {
        let fx = f(x);
        if fx.abs() <= ftol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let newton = x - fx / df(x);
        let next = if newton > lo && newton < hi && (hi - lo) < 0.5 * width {
            newton
        } else {
            0.5 * (lo + hi)
        };
        width = hi - lo;
        if next == x || width <= f64::EPSILON * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Limit of `f(h)` as `h -> 0+` by Richardson extrapolation over
/// `h = 2^-k` for `k` in `k_range`, assuming an expansion in integer powers
/// of `h`.
///
/// The diagonal entry with the smallest change from its predecessor is
/// returned, which stops the table before rounding noise takes over.
pub fn richardson_limit<F: Fn(f64) -> f64>(f: F, k_range: std::ops::RangeInclusive<i32>) -> f64 {
    let samples: Vec<f64> = k_range.map(|k| f(2f64.powi(-k))).collect();
    let mut prev_row: Vec<f64> = Vec::new();
    let mut best = (f64::INFINITY, samples[0]);
    let mut last_diag = samples[0];
    for (i, &s) in samples.iter().enumerate() {
        let mut row = vec![s];
        for j in 1..=i {
            let factor = 2f64.powi(j as i32) - 1.0;
            let v = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / factor;
            row.push(v);
        }
        let diag = row[i];
        if i > 0 {
            let change = (diag - last_diag).abs();
            if change < best.0 {
                best = (change, diag);
            }
        }
        last_diag = diag;
        prev_row = row;
    }
    best.1
}

/// Adaptive Simpson quadrature with an absolute error target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Simpson {
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for Simpson {
    fn default() -> Self {
        Simpson {
            tol: 1e-7,
            max_depth: 40,
        }
    }
}

impl Simpson {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::domain("quadrature tolerance must be positive"));
        }
        Ok(Simpson {
            tol,
            ..Self::default()
        })
    }

    /// Integral of `f` over `[a, b]`. `f` may report an error at any node,
    /// which aborts the integration.
    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let fa = f(a)?;
        let fb = f(b)?;
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        self.step(&f, a, b, fa, fm, fb, whole, self.tol, self.max_depth)
    }

    #[allow(clippy::too_many_arguments)]
    fn step<F>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm)?, f(rm)?);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(self.step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + self.step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
}
