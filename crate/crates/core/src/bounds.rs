//! Siegel's extremal machinery in log space.
//!
//! ```text
//! P(t)   = (1/n!) Π_{j=0}^{n-2} ((t+j)/(n-j))^{n-j-1}
//! Q_k(t) = Π_{j=k}^{n-1} (t+j)^k / Π_{j=0}^{k-1} (t+j)^{n-k}
//! ```
//!
//! `μ₀` solves `P(μ₀) = a₀^{n-1} / Δ`, and the coefficient inequality under
//! test is `(a_k / C(n,k))^n >= Q_k(μ₀) a₀^{n-k}`. Every product is handled
//! as a sum of logarithms; the raw forms overflow long before `n = 200`.

use serde::Serialize;

use crate::numeric::newton_bisect;
use crate::{Error, Result};

/// Margins (in log units) above `-MARGIN_TOL` count as satisfied.
pub const MARGIN_TOL: f64 = 1e-9;

/// Tuples with a pairwise gap below `GAP_TOL * max x` are rejected.
pub const GAP_TOL: f64 = 1e-12;

fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `ln P(t)`.
pub fn log_p(t: f64, n: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("P(t) needs t > 0, got {t}")));
    }
    if n < 2 {
        return Err(Error::domain("P(t) needs n >= 2"));
    }
    Ok(log_p_unchecked(t, n))
}

fn log_p_unchecked(t: f64, n: usize) -> f64 {
    let sum: f64 = (0..n - 1)
        .map(|j| (n - j - 1) as f64 * ((t + j as f64).ln() - ((n - j) as f64).ln()))
        .sum();
    sum - ln_factorial(n)
}

/// `d/dt ln P(t) = Σ_{j=0}^{n-2} (n-j-1)/(t+j)`.
pub fn log_p_derivative(t: f64, n: usize) -> f64 {
    (0..n.saturating_sub(1))
        .map(|j| (n - j - 1) as f64 / (t + j as f64))
        .sum()
}

/// `ln Q_k(t)`; `Q_0 = 1`.
pub fn log_q(k: usize, t: f64, n: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("Q_k(t) needs t > 0, got {t}")));
    }
    if k >= n {
        return Err(Error::domain(format!(
            "Q_k needs 0 <= k <= n-1, got k = {k}, n = {n}"
        )));
    }
    Ok(log_q_unchecked(k, t, n))
}

fn log_q_unchecked(k: usize, t: f64, n: usize) -> f64 {
    let upper: f64 = (k..n).map(|j| (t + j as f64).ln()).sum();
    let lower: f64 = (0..k).map(|j| (t + j as f64).ln()).sum();
    k as f64 * upper - (n - k) as f64 * lower
}

/// `d/dt ln Q_k(t)`.
pub fn log_q_derivative(k: usize, t: f64, n: usize) -> f64 {
    let upper: f64 = (k..n).map(|j| 1.0 / (t + j as f64)).sum();
    let lower: f64 = (0..k).map(|j| 1.0 / (t + j as f64)).sum();
    k as f64 * upper - (n - k) as f64 * lower
}

/// The `t > 0` with `ln P(t) = (n-1) ln a₀ - ln Δ`.
pub fn solve_mu0_log(n: usize, log_a0: f64, log_delta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("mu0 needs n >= 2"));
    }
    let target = (n - 1) as f64 * log_a0 - log_delta;
    if !target.is_finite() {
        return Err(Error::domain("mu0 target is not finite"));
    }
    let f = |t: f64| log_p_unchecked(t, n) - target;
    let (mut lo, mut hi) = (1.0, 1.0);
    if f(1.0) < 0.0 {
        while f(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
    } else {
        while f(lo) > 0.0 {
            hi = lo;
            lo *= 0.5;
            if lo == 0.0 {
                return Err(Error::domain("mu0 underflows"));
            }
        }
    }
    let ftol = 1e-13 * target.abs().max(1.0);
    newton_bisect(f, |t| log_p_derivative(t, n), lo, hi, ftol)
}

/// `μ₀` from `a₀` and `Δ` given directly.
pub fn solve_mu0(n: usize, a0: f64, delta: f64) -> Result<f64> {
    if !(a0 > 0.0) || !(delta > 0.0) {
        return Err(Error::domain("mu0 needs a0 > 0 and delta > 0"));
    }
    solve_mu0_log(n, a0.ln(), delta.ln())
}

/// `Δ = Π_{i<j} (x_i - x_j)^2`; overflows for long tuples, see
/// [`log_discriminant`].
pub fn discriminant_from_roots(xs: &[f64]) -> f64 {
    let mut d = 1.0;
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[..i] {
            d *= (x - y) * (x - y);
        }
    }
    d
}

/// `ln Δ`, `-inf` on repeated entries.
pub fn log_discriminant(xs: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[..i] {
            s += 2.0 * (x - y).abs().ln();
        }
    }
    s
}

/// `e_0, ..., e_n` of the tuple.
pub fn elementary_symmetric(xs: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; xs.len() + 1];
    e[0] = 1.0;
    for (i, &x) in xs.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    e
}

/// Distinct positive reals with their coefficients and discriminant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleInstance {
    pub xs: Vec<f64>,
    pub n: usize,
    /// `a_k = e_{n-k}(xs)` for `k = 0..n`.
    pub a: Vec<f64>,
    pub log_delta: f64,
}

impl TupleInstance {
    pub fn new(xs: &[f64]) -> Result<Self> {
        let n = xs.len();
        if n < 2 {
            return Err(Error::domain("a tuple needs at least two entries"));
        }
        if let Some(bad) = xs.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
            return Err(Error::domain(format!(
                "tuple entries must be positive, got {bad}"
            )));
        }
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        let max = sorted[n - 1];
        let min_gap = sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if min_gap < GAP_TOL * max {
            return Err(Error::DegenerateInput {
                min_gap,
                threshold: GAP_TOL * max,
            });
        }
        let e = elementary_symmetric(xs);
        let a = (0..n).map(|k| e[n - k]).collect();
        Ok(TupleInstance {
            xs: xs.to_vec(),
            n,
            a,
            log_delta: log_discriminant(xs),
        })
    }

    pub fn delta(&self) -> f64 {
        self.log_delta.exp()
    }

    pub fn mu0(&self) -> Result<f64> {
        solve_mu0_log(self.n, self.a[0].ln(), self.log_delta)
    }

    /// `S_k = a_{n-k} / C(n,k)` for `k = 0..=n`, with `S_0 = 1`.
    pub fn normalized(&self) -> Vec<f64> {
        let n = self.n;
        (0..=n)
            .map(|k| {
                if k == 0 {
                    1.0
                } else {
                    (self.a[n - k].ln() - ln_binomial(n, k)).exp()
                }
            })
            .collect()
    }

    /// `ln S_k` for `k = 0..=n`.
    pub fn log_normalized(&self) -> Vec<f64> {
        let n = self.n;
        (0..=n)
            .map(|k| {
                if k == 0 {
                    0.0
                } else {
                    self.a[n - k].ln() - ln_binomial(n, k)
                }
            })
            .collect()
    }

    /// `S_k^{1/k}` for `k = 1..=n`; non-increasing by Maclaurin.
    pub fn maclaurin_chain(&self) -> Vec<f64> {
        self.log_normalized()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, l)| (l / k as f64).exp())
            .collect()
    }

    /// `ln((a_k/C(n,k))^{1/(n-k)}) - ln(a₀^{1/n})` for `k = 0..n`.
    pub fn am_gm_margins(&self) -> Vec<f64> {
        let n = self.n;
        let la0 = self.a[0].ln();
        (0..n)
            .map(|k| (self.a[k].ln() - ln_binomial(n, k)) / (n - k) as f64 - la0 / n as f64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theorem2Row {
    pub k: usize,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_margins(margins: impl IntoIterator<Item = f64>) -> Self {
        if margins.into_iter().all(|m| m >= -MARGIN_TOL) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Per-`k` record of `n ln(a_k/C(n,k))` against `ln Q_k(μ₀) + (n-k) ln a₀`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub n: usize,
    pub mu0: f64,
    pub rows: Vec<Theorem2Row>,
    pub verdict: Verdict,
}

impl Theorem2Report {
    pub fn min_margin(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn verify_theorem2(xs: &[f64]) -> Result<Theorem2Report> {
    theorem2_report(&TupleInstance::new(xs)?)
}

pub fn theorem2_report(inst: &TupleInstance) -> Result<Theorem2Report> {
    let n = inst.n;
    let mu0 = inst.mu0()?;
    let la0 = inst.a[0].ln();
    let rows: Vec<Theorem2Row> = (0..n)
        .map(|k| {
            let log_lhs = n as f64 * (inst.a[k].ln() - ln_binomial(n, k));
            let log_rhs = log_q_unchecked(k, mu0, n) + (n - k) as f64 * la0;
            Theorem2Row {
                k,
                log_lhs,
                log_rhs,
                margin: log_lhs - log_rhs,
            }
        })
        .collect();
    let verdict = Verdict::from_margins(rows.iter().map(|r| r.margin));
    Ok(Theorem2Report {
        n,
        mu0,
        rows,
        verdict,
    })
}

/// `2 ln S_k` against `ln S_{k-1} + ln S_{k+1} + ln(1 + 1/(μ₀ + k - 1))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NewtonRow {
    pub k: usize,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub margin: f64,
    /// Margin of the plain Newton inequality `S_k^2 >= S_{k-1} S_{k+1}`.
    pub plain_margin: f64,
}

pub fn improved_newton_check(xs: &[f64]) -> Result<Vec<NewtonRow>> {
    let inst = TupleInstance::new(xs)?;
    let mu0 = inst.mu0()?;
    Ok(improved_newton_rows(&inst, mu0))
}

pub fn improved_newton_rows(inst: &TupleInstance, mu0: f64) -> Vec<NewtonRow> {
    let ls = inst.log_normalized();
    (1..inst.n)
        .map(|k| {
            let log_lhs = 2.0 * ls[k];
            let plain = ls[k - 1] + ls[k + 1];
            let log_rhs = plain + (1.0 / (mu0 + k as f64 - 1.0)).ln_1p();
            NewtonRow {
                k,
                log_lhs,
                log_rhs,
                margin: log_lhs - log_rhs,
                plain_margin: log_lhs - plain,
            }
        })
        .collect()
}

/// `d/dt ln(Q_k(t)^{n-1} P(t)^{n-k})` written as the explicit sum
/// `k(n-1) Σ_{j≥k} 1/(t+j) - (n-1)(n-k) Σ_{j<k} 1/(t+j) + (n-k) Σ_{j≤n-2} (n-j-1)/(t+j)`.
pub fn lemma5_derivative(n: usize, k: usize, t: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let upper: f64 = (k..n).map(|j| 1.0 / (t + j as f64)).sum();
    let lower: f64 = (0..k).map(|j| 1.0 / (t + j as f64)).sum();
    kf * (nf - 1.0) * upper - (nf - 1.0) * (nf - kf) * lower + (nf - kf) * log_p_derivative(t, n)
}

/// `(n-1) ln Q_k(t) + (n-k) ln P(t)`.
pub fn lemma5_log_value(n: usize, k: usize, t: f64) -> f64 {
    (n - 1) as f64 * log_q_unchecked(k, t, n) + (n - k) as f64 * log_p_unchecked(t, n)
}

/// Strict increase of `Q_k^{n-1} P^{n-k}` across the (ascending) grid and a
/// positive analytic derivative at every grid point.
pub fn lemma5_monotonicity_check(n: usize, k: usize, grid: &[f64]) -> bool {
    if n < 2 || k >= n || grid.iter().any(|t| !(*t > 0.0)) {
        return false;
    }
    let values: Vec<f64> = grid.iter().map(|&t| lemma5_log_value(n, k, t)).collect();
    values.windows(2).all(|w| w[1] > w[0]) && grid.iter().all(|&t| lemma5_derivative(n, k, t) > 0.0)
}

/// `ln Q_{⌊cn⌋}(vn)` against its leading `n²` term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticSample {
    pub n: usize,
    pub k: usize,
    pub exact: f64,
    pub asymptotic: f64,
    /// `|exact - asymptotic| / n²`.
    pub relerr: f64,
}

/// Leading coefficient `c(1+v) ln(1+v) - cv ln v + v ln v - (c+v) ln(c+v)`.
pub fn asymptotic_log_q_coefficient(c: f64, v: f64) -> f64 {
    c * (1.0 + v) * (1.0 + v).ln() - c * v * v.ln() + v * v.ln() - (c + v) * (c + v).ln()
}

pub fn asymptotic_log_q(c: f64, v: f64, n: usize) -> Result<AsymptoticSample> {
    if !(c > 0.0 && c < 1.0) || !(v > 0.0) {
        return Err(Error::domain("asymptotic_log_q needs c in (0,1) and v > 0"));
    }
    if n < 10 {
        return Err(Error::domain("asymptotic_log_q needs n >= 10"));
    }
    let k = (c * n as f64).floor() as usize;
    let exact = log_q_unchecked(k, v * n as f64, n);
    let n2 = (n * n) as f64;
    let asymptotic = n2 * asymptotic_log_q_coefficient(c, v);
    Ok(AsymptoticSample {
        n,
        k,
        exact,
        asymptotic,
        relerr: (exact - asymptotic).abs() / n2,
    })
}

/// If `Δ P(t) >= 1`, the margins `n(n-1) ln S'_k - (n-1) ln Q_k(t)` for
/// `k = 0..n`, where `S'_k = a_k / C(n,k)` is passed as `log_norm[k]`.
/// `None` when the hypothesis `Δ P(t) >= 1` fails.
pub fn key_step_margins(log_norm: &[f64], log_delta: f64, t: f64) -> Result<Option<Vec<f64>>> {
    let n = log_norm.len();
    if log_delta + log_p(t, n)? < 0.0 {
        return Ok(None);
    }
    let nf = n as f64;
    Ok(Some(
        (0..n)
            .map(|k| nf * (nf - 1.0) * log_norm[k] - (nf - 1.0) * log_q_unchecked(k, t, n))
            .collect(),
    ))
}

/// `ln(a_k / C(n,k))` for `k = 0..n` from unsigned coefficients given as logs.
pub fn log_norm_from_log_coeffs(log_a: &[f64]) -> Vec<f64> {
    let n = log_a.len();
    log_a
        .iter()
        .enumerate()
        .map(|(k, la)| la - ln_binomial(n, k))
        .collect()
}
