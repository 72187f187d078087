//! Exact univariate polynomials over the integers.
//!
//! [`IntPoly`] stores coefficients constant-term first. Polynomials with only
//! positive real roots are written `x^n - a_{n-1} x^{n-1} + ... + (-1)^n a_0`,
//! and [`IntPoly::unsigned_coeff`] is the only place that translates between
//! the stored coefficients `c_k` and the unsigned view `a_k = (-1)^{n-k} c_k`.

mod binomial;
mod chebyshev;
mod roots;
mod sturm;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub use binomial::binomial;
pub use chebyshev::{chebyshev_u_half, chebyshev_u_half_by_recurrence, chebyshev_u_half_table};
pub use roots::{isolate_real_roots, real_roots, RootEnclosure};
pub use sturm::{count_roots_in, is_totally_positive, Endpoint, PositivityReport, SturmChain};
pub use text::{parse_corpus, parse_poly, serialize_poly, CorpusEntry};

/// Integer polynomial, coefficient of `x^i` at index `i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `coeffs().last()` is the leading
/// coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// `a_k = (-1)^{n-k} c_k` where `n` is the degree.
    pub fn unsigned_coeff(&self, k: usize) -> BigInt {
        let c = self.coeff(k);
        if (self.degree() - k.min(self.degree())) % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// `[a_0, ..., a_{n-1}]` after checking every entry is strictly positive.
    pub fn viete_coeffs(&self) -> Result<Vec<BigInt>> {
        (0..self.degree())
            .map(|k| {
                let a = self.unsigned_coeff(k);
                if a.is_positive() {
                    Ok(a)
                } else {
                    Err(Error::NegativeCoefficient { index: k })
                }
            })
            .collect()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Multiply every coefficient by `s`.
    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, which keeps the sign of every coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder scaled by a positive factor.
    ///
    /// Returns `r` with `m * self = q * divisor + r`, `deg r < deg divisor`
    /// and `m = |lc(divisor)|^e > 0`, so `r` is a positive multiple of the
    /// remainder over the rationals.
    pub fn positive_pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let lead = r.leading().unwrap().clone();
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                coeffs[i + shift] -= &lead * d;
            }
            r = IntPoly::new(coeffs);
            steps += 1;
        }
        if lc.is_negative() && steps % 2 == 1 {
            r = -r;
        }
        r
    }

    /// Exact expansion of `f(x + s)` by repeated synthetic division.
    pub fn compose_shift(&self, s: &BigInt) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = self.degree();
        if self.is_zero() || s.is_zero() {
            return self.clone();
        }
        for i in 0..n {
            for j in (i..n).rev() {
                let t = s * &a[j + 1];
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    /// Sign of `f(num / den)` for `den > 0`.
    pub fn sign_at_fraction(&self, num: &BigInt, den: &BigInt) -> Sign {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return Sign::NoSign;
        }
        let n = self.degree();
        let mut den_pow = BigInt::one();
        let mut acc = self.coeffs[n].clone();
        for i in (0..n).rev() {
            den_pow *= den;
            acc = acc * num + &self.coeffs[i] * &den_pow;
        }
        acc.sign()
    }

    /// Sign of `f(m / 2^e)`.
    pub fn sign_at_dyadic(&self, m: &BigInt, e: u64) -> Sign {
        if self.is_zero() {
            return Sign::NoSign;
        }
        let n = self.degree();
        let mut acc = self.coeffs[n].clone();
        for i in (0..n).rev() {
            acc = acc * m + (&self.coeffs[i] << (e * (n - i) as u64));
        }
        acc.sign()
    }

    /// Floating-point Horner evaluation; only meaningful for small coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }
}

fn zip_with(a: &IntPoly, b: &IntPoly, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> IntPoly {
    let zero = BigInt::zero();
    let len = a.coeffs.len().max(b.coeffs.len());
    IntPoly::new(
        (0..len)
            .map(|i| {
                op(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Natural log of `|x|` for `x != 0`, with about 53 bits of relative precision
/// regardless of size.
pub fn ln_abs(x: &BigInt) -> f64 {
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 64 {
        return (mag.to_u64().unwrap() as f64).ln();
    }
    let drop = bits - 64;
    let top = (mag >> drop).to_u64().unwrap() as f64;
    drop as f64 * std::f64::consts::LN_2 + top.ln()
}
