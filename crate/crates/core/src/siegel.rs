//! The Siegel family `g_p`, the minimal polynomial of `ζ + ζ⁻¹ + 2` for a
//! primitive `p`-th root of unity `ζ`.
//!
//! Two independent constructions are provided and must agree exactly:
//! the Chebyshev route `g_p(x) = (U_n + U_{n-1})((x - 2)/2)` and the closed
//! form `g_p(x) = Σ_d (-1)^{n-d} C(n+d, 2d) x^d`, with `n = (p - 1)/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::exactpoly::{binomial, chebyshev_u_half, ln_abs, IntPoly};
use crate::format::csv_num;
use crate::{Error, Result};

/// Largest prime accepted unless the caller raises the cap.
pub const DEFAULT_PRIME_CAP: u64 = 10007;

/// How a [`SiegelPoly`] was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Chebyshev,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelPoly {
    pub p: u64,
    pub n: usize,
    pub poly: IntPoly,
}

impl SiegelPoly {
    pub fn build(p: u64, route: Construction, cap: u64) -> Result<Self> {
        check_odd_prime(p, cap)?;
        let n = ((p - 1) / 2) as usize;
        let poly = match route {
            Construction::Chebyshev => chebyshev_route(n),
            Construction::ClosedForm => closed_form_route(n),
        };
        Ok(SiegelPoly { p, n, poly })
    }

    /// Absolute trace, `2 - 2/(p-1)` for every member of the family.
    pub fn absolute_trace(&self) -> BigRational {
        absolute_trace(&self.poly).expect("siegel polynomials have degree >= 1")
    }

    pub fn normalized_points(&self) -> Vec<NormalizedPoint> {
        normalized_points(&self.poly).expect("siegel polynomials satisfy Viete positivity")
    }
}

/// `U_n(x/2) + U_{n-1}(x/2)` shifted by `x -> x - 2`.
pub fn siegel_poly_constructive(p: u64) -> Result<SiegelPoly> {
    SiegelPoly::build(p, Construction::Chebyshev, DEFAULT_PRIME_CAP)
}

/// Coefficients `(-1)^{n-d} C(n+d, 2d)` written down directly.
pub fn siegel_poly_closed_form(p: u64) -> Result<SiegelPoly> {
    SiegelPoly::build(p, Construction::ClosedForm, DEFAULT_PRIME_CAP)
}

fn chebyshev_route(n: usize) -> IntPoly {
    let f = &chebyshev_u_half(n) + &chebyshev_u_half(n - 1);
    f.compose_shift(&BigInt::from(-2))
}

fn closed_form_route(n: usize) -> IntPoly {
    IntPoly::new(
        (0..=n)
            .map(|d| {
                let c = binomial((n + d) as u64, 2 * d as i64);
                if (n - d) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Deterministic trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64, cap: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > cap {
        return Err(Error::PrimeAboveCap { p, cap });
    }
    Ok(())
}

/// Odd primes in `[3, upto]`.
pub fn odd_primes_upto(upto: u64) -> Vec<u64> {
    (3..=upto).step_by(2).filter(|&p| is_prime(p)).collect()
}

/// `g_{m,j}` for `0 <= m <= m_max`, `0 <= j <= j_max`, from the expansion
/// `G(u, v) (1 + 2u - uv + u^2) = 1 + u`:
///
/// `g_{m,j} = -2 g_{m-1,j} + g_{m-1,j-1} - g_{m-2,j} + [m=0, j=0] + [m=1, j=0]`.
///
/// Row `m` holds the coefficients of `(U_m + U_{m-1})((x-2)/2)`.
pub fn gmj_recurrence_table(m_max: usize, j_max: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(m_max + 1);
    let zero = BigInt::zero();
    for m in 0..=m_max {
        let mut row = Vec::with_capacity(j_max + 1);
        for j in 0..=j_max {
            let prev = |dm: usize, dj: usize| -> &BigInt {
                if m < dm || j < dj {
                    &zero
                } else {
                    &table[m - dm][j - dj]
                }
            };
            let mut v = prev(1, 0) * -2 + prev(1, 1) - prev(2, 0);
            if j == 0 && m <= 1 {
                v += 1;
            }
            row.push(v);
        }
        table.push(row);
    }
    table
}

/// `a_{n-1} / n` as an exact rational; requires a monic polynomial of degree
/// at least one.
pub fn absolute_trace(f: &IntPoly) -> Result<BigRational> {
    let n = f.degree();
    if n == 0 || !f.is_monic() {
        return Err(Error::domain(
            "absolute trace needs a monic polynomial of degree >= 1",
        ));
    }
    Ok(BigRational::new(f.unsigned_coeff(n - 1), BigInt::from(n)))
}

/// A point `(d/n, (a_{n-d} / C(n,d))^{1/d})` of the normalized coefficient set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedPoint {
    pub d: usize,
    pub n: usize,
    pub c: f64,
    pub value: f64,
}

impl NormalizedPoint {
    /// The exact abscissa `d / n`.
    pub fn c_exact(&self) -> BigRational {
        BigRational::new(BigInt::from(self.d), BigInt::from(self.n))
    }
}

/// Points for `d = 1..=n`, logarithms taken on the big integers directly.
pub fn normalized_points(f: &IntPoly) -> Result<Vec<NormalizedPoint>> {
    let n = f.degree();
    if n == 0 || !f.is_monic() {
        return Err(Error::domain(
            "normalized points need a monic polynomial of degree >= 1",
        ));
    }
    let a = f.viete_coeffs()?;
    Ok((1..=n)
        .map(|d| {
            let log = (ln_abs(&a[n - d]) - ln_abs(&binomial(n as u64, d as i64))) / d as f64;
            NormalizedPoint {
                d,
                n,
                c: d as f64 / n as f64,
                value: log.exp(),
            }
        })
        .collect())
}

/// Header of the points CSV.
pub const POINTS_CSV_HEADER: &str = "p,n,d,c,value";

/// One row of the points CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub p: u64,
    pub point: NormalizedPoint,
}

/// Points CSV with rows sorted by `p`, then `d`.
pub fn points_csv(records: &[PointRecord]) -> String {
    let mut rows = records.to_vec();
    rows.sort_by_key(|r| (r.p, r.point.d));
    let mut out = format!("{POINTS_CSV_HEADER}\n");
    for r in rows {
        let q = r.point;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.p,
            q.n,
            q.d,
            csv_num(q.c),
            csv_num(q.value)
        ));
    }
    out
}

/// Inverse of [`points_csv`]. Blank lines are skipped; the header is required.
pub fn parse_points_csv(text: &str) -> Result<Vec<PointRecord>> {
    let bad = |line: usize, message: String| Error::ParseLine { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.find(|(_, l)| !l.is_empty()) {
        Some((_, l)) if l == POINTS_CSV_HEADER => {}
        Some((line, l)) => {
            return Err(bad(
                line,
                format!("expected header {POINTS_CSV_HEADER:?}, got {l:?}"),
            ))
        }
        None => return Err(bad(1, "empty points file".into())),
    }
    let mut out = Vec::new();
    for (line, l) in lines.filter(|(_, l)| !l.is_empty()) {
        let fields: Vec<&str> = l.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(
                line,
                format!("expected 5 fields, found {}", fields.len()),
            ));
        }
        let int = |i: usize| {
            fields[i]
                .parse::<u64>()
                .map_err(|e| bad(line, format!("field {}: {e}", i + 1)))
        };
        let real = |i: usize| {
            fields[i]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    bad(
                        line,
                        format!("field {}: not a finite number: {:?}", i + 1, fields[i]),
                    )
                })
        };
        out.push(PointRecord {
            p: int(0)?,
            point: NormalizedPoint {
                n: int(1)? as usize,
                d: int(2)? as usize,
                c: real(3)?,
                value: real(4)?,
            },
        });
    }
    Ok(out)
}
