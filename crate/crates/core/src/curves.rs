//! The conjectured limit curve `L(c)`, the proven lower curve `ℓ(c)`, the
//! family `K_v(c)` behind it, the constant `ϑ`, and areas between curves.
//!
//! Both curves are `exp(E(c)/c)` for an exponent `E` that vanishes at
//! `c = 0`. Evaluating `E` literally loses all relative precision as
//! `c -> 0`, so the implementations below use `ln_1p` forms that are
//! algebraically identical to the defining formulas. The values at `c = 0`
//! are continuity limits, obtained by Richardson extrapolation once and cached.

use std::sync::OnceLock;

use serde::Serialize;

use crate::format::csv_num;
use crate::numeric::{newton_bisect, richardson_limit, Simpson};
use crate::{Error, Result};

/// Exponents `k` of the sample points `c = 2^-k` used for the `c = 0` limits.
pub const LIMIT_SAMPLES: std::ops::RangeInclusive<i32> = 10..=30;

/// Slack allowed by [`area_between`] before it reports an ordering violation.
pub const ORDERING_SLACK: f64 = 1e-9;

/// `x ln x` with `0 ln 0 = 0`.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `h(a, b) = a ln a - b ln b - (a - b) ln(a - b)` on `0 <= b <= a`, `a > 0`.
pub fn h(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b >= 0.0) || b > a {
        return Err(Error::domain(format!(
            "h({a}, {b}) needs 0 <= b <= a and a > 0"
        )));
    }
    Ok(xlnx(a) - xlnx(b) - xlnx(a - b))
}

fn in_unit_interval(c: f64) -> bool {
    (0.0..=1.0).contains(&c)
}

/// `(h(2-c, 2-2c) - h(1, c)) / c` for `c` in `(0, 1]`.
///
/// The `c ln c` terms of the two `h` cancel, leaving
/// `ln 2 + ((2-c) ln(1 - c/2) - (1-c) ln(1-c)) / c`.
fn limit_exponent(c: f64) -> f64 {
    if c == 1.0 {
        return 0.0;
    }
    std::f64::consts::LN_2 + ((2.0 - c) * (-0.5 * c).ln_1p() - (1.0 - c) * (-c).ln_1p()) / c
}

fn limit_curve_at_zero() -> f64 {
    static AT_ZERO: OnceLock<f64> = OnceLock::new();
    *AT_ZERO.get_or_init(|| richardson_limit(|c| limit_exponent(c).exp(), LIMIT_SAMPLES))
}

/// The limit curve `L(c) = exp((h(2-c, 2-2c) - h(1, c)) / c)`.
///
/// `L(0)` is the continuity limit. Returns NaN outside `[0, 1]`.
pub fn limit_curve(c: f64) -> f64 {
    if !in_unit_interval(c) {
        return f64::NAN;
    }
    if c == 0.0 {
        return limit_curve_at_zero();
    }
    limit_exponent(c).exp()
}

/// `g(v) = (1+v)^2 ln(1 + 1/v) + ln v - v - 1`, whose positive root is `ϑ`.
pub fn theta_equation(v: f64) -> f64 {
    (1.0 + v).powi(2) * v.recip().ln_1p() + v.ln() - v - 1.0
}

/// `g'(v) = 2 (1+v) ln(1 + 1/v) - 2`.
pub fn theta_equation_derivative(v: f64) -> f64 {
    2.0 * (1.0 + v) * v.recip().ln_1p() - 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaSolution {
    pub theta: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
}

pub const THETA_BRACKET: (f64, f64) = (0.1, 1.0);

/// Solve `g(ϑ) = 0` on [`THETA_BRACKET`] to a residual of `1e-12`.
pub fn solve_theta() -> Result<ThetaSolution> {
    let (lo, hi) = THETA_BRACKET;
    let theta = newton_bisect(theta_equation, theta_equation_derivative, lo, hi, 1e-15)?;
    let residual = theta_equation(theta);
    if residual.abs() > 1e-12 {
        return Err(Error::BracketFailure { lo, hi });
    }
    Ok(ThetaSolution {
        theta,
        residual,
        bracket: (lo, hi),
    })
}

/// `ϑ`, solved on first use.
pub fn theta() -> ThetaSolution {
    static THETA: OnceLock<ThetaSolution> = OnceLock::new();
    *THETA.get_or_init(|| solve_theta().expect("theta bracket is valid"))
}

/// `K_v(c) = exp((c(v+1) ln(v+1) + (1-c) v ln v - (c+v) ln(v+c)) / (1-c))`.
///
/// At `c = 1` the continuity limit `exp(1 + v ln(v/(v+1)))` is returned.
pub fn k_curve(c: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("K_v needs v > 0, got {v}")));
    }
    if !in_unit_interval(c) {
        return Err(Error::domain(format!("K_v needs c in [0, 1], got {c}")));
    }
    let s = 1.0 - c;
    let a = v + 1.0;
    // numerator = s v ln(v/(v+1)) - (c+v) ln(1 - s/(v+1))
    let tail = if s == 0.0 {
        -1.0 / a
    } else {
        (-s / a).ln_1p() / s
    };
    Ok((v * (v / a).ln() - (c + v) * tail).exp())
}

/// `ℓ_v(c)` for a fixed `v`; with `v = ϑ` this is the proven lower curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerCurve {
    v: f64,
    at_zero: f64,
}

impl LowerCurve {
    pub fn new(v: f64) -> Result<Self> {
        if !(v > 0.0) {
            return Err(Error::domain(format!("lower curve needs v > 0, got {v}")));
        }
        let at_zero = richardson_limit(|c| Self::formula(v, c), LIMIT_SAMPLES);
        Ok(LowerCurve { v, at_zero })
    }

    pub fn from_theta(sol: &ThetaSolution) -> Self {
        Self::new(sol.theta).expect("theta is positive")
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// `exp(((1-c)(v+1) ln(v+1) + c v ln v + (c-1-v) ln(v+1-c)) / c)` for
    /// `c > 0`, rewritten as `v ln(v/(v+1)) + (c-v-1) ln(1 - c/(v+1)) / c`.
    fn formula(v: f64, c: f64) -> f64 {
        let a = v + 1.0;
        (v * (v / a).ln() + (c - a) * (-c / a).ln_1p() / c).exp()
    }

    pub fn eval(&self, c: f64) -> f64 {
        if !in_unit_interval(c) {
            return f64::NAN;
        }
        if c == 0.0 {
            return self.at_zero;
        }
        Self::formula(self.v, c)
    }
}

fn default_lower_curve() -> &'static LowerCurve {
    static CURVE: OnceLock<LowerCurve> = OnceLock::new();
    CURVE.get_or_init(|| LowerCurve::from_theta(&theta()))
}

/// `ℓ(c)` with `v = ϑ`; `ℓ(0)` is the continuity limit. NaN outside `[0, 1]`.
pub fn lower_curve(c: f64) -> f64 {
    default_lower_curve().eval(c)
}

/// `∫ (upper - lower)` over `[lo, hi]` by adaptive Simpson with absolute
/// tolerance `tol`; fails if `upper < lower - 1e-9` at any node evaluated.
pub fn area_between<U, L>(upper: U, lower: L, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    U: Fn(f64) -> f64,
    L: Fn(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::domain("area_between needs lo <= hi"));
    }
    Simpson::new(tol)?.integrate(
        |c| {
            let (u, l) = (upper(c), lower(c));
            if u < l - ORDERING_SLACK || u.is_nan() || l.is_nan() {
                return Err(Error::OrderingViolation {
                    at: c,
                    upper: u,
                    lower: l,
                });
            }
            Ok(u - l)
        },
        lo,
        hi,
    )
}

/// JSON area report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaReport {
    pub upper: String,
    pub lower: String,
    pub area: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

/// Areas above `y = 1` under `L` and under `ℓ` on `[0, 1]`.
pub fn standard_areas(tol: f64) -> Result<(f64, f64)> {
    let one = |_: f64| 1.0;
    let area_l = area_between(limit_curve, one, 0.0, 1.0, tol)?;
    let area_ell = area_between(lower_curve, one, 0.0, 1.0, tol)?;
    Ok((area_l, area_ell))
}

/// Fraction of the region between `L` and `y = 1` that lies under `ℓ`.
pub fn coverage_ratio(tol: f64) -> Result<f64> {
    let (area_l, area_ell) = standard_areas(tol)?;
    Ok(area_ell / area_l)
}

/// Which curve a [`CurveTable`] samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    L,
    Ell,
    Kv,
    Constant,
}

impl CurveKind {
    pub fn label(&self) -> &'static str {
        match self {
            CurveKind::L => "L",
            CurveKind::Ell => "ell",
            CurveKind::Kv => "K_v",
            CurveKind::Constant => "constant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    Uniform { count: usize },
}

/// Sampled curve, `c` strictly increasing in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveTable {
    pub kind: CurveKind,
    /// `v` for `K_v`, the constant for `Constant`.
    pub param: Option<f64>,
    pub samples: Vec<(f64, f64)>,
    pub grid: Grid,
}

impl CurveTable {
    /// `count >= 2` evenly spaced samples including both endpoints.
    pub fn uniform(kind: CurveKind, param: Option<f64>, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::domain("a curve grid needs at least two points"));
        }
        let eval: Box<dyn Fn(f64) -> Result<f64>> = match (kind, param) {
            (CurveKind::L, _) => Box::new(|c| Ok(limit_curve(c))),
            (CurveKind::Ell, _) => Box::new(|c| Ok(lower_curve(c))),
            (CurveKind::Kv, Some(v)) => Box::new(move |c| k_curve(c, v)),
            (CurveKind::Constant, Some(y)) => Box::new(move |_| Ok(y)),
            (k, None) => {
                return Err(Error::domain(format!(
                    "curve {} needs a parameter",
                    k.label()
                )))
            }
        };
        let samples = (0..count)
            .map(|i| {
                let c = if i + 1 == count {
                    1.0
                } else {
                    i as f64 / (count - 1) as f64
                };
                eval(c).map(|y| (c, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveTable {
            kind,
            param,
            samples,
            grid: Grid::Uniform { count },
        })
    }

    /// `c,y` header plus one row per sample, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("c,y\n");
        for (c, y) in &self.samples {
            out.push_str(&csv_num(*c));
            out.push(',');
            out.push_str(&csv_num(*y));
            out.push('\n');
        }
        out
    }
}
