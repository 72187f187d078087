use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntPoly, SturmChain};
use crate::{Error, Result};

/// Certified enclosure `lo <= root <= hi` of one real root, endpoints rounded
/// outward to `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootEnclosure {
    pub lo: f64,
    pub hi: f64,
}

impl RootEnclosure {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Dyadic rational `m / 2^e`.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    e: u64,
}

impl Dyadic {
    fn int(v: BigInt) -> Self {
        Dyadic { m: v, e: 0 }
    }

    fn with_exp(&self, e: u64) -> BigInt {
        &self.m << (e - self.e)
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.e.max(b.e) + 1;
        Dyadic {
            m: a.with_exp(e - 1) + b.with_exp(e - 1),
            e,
        }
    }

    /// Lower and upper `f64` bounds, both exactly representable.
    fn bounds_f64(&self) -> (f64, f64) {
        let s = self.m.bits().saturating_sub(53);
        // `>>` rounds toward negative infinity for negative values too
        let top = &self.m >> s;
        let scale = 2f64.powi(s as i32 - self.e as i32);
        let lo = top.to_f64().unwrap() * scale;
        if s == 0 {
            (lo, lo)
        } else {
            (lo, (top + BigInt::one()).to_f64().unwrap() * scale)
        }
    }
}

fn sign_of(f: &IntPoly, x: &Dyadic) -> Sign {
    f.sign_at_dyadic(&x.m, x.e)
}

/// Enclosures of the distinct real roots of a squarefree `f`, ascending;
/// with `positive_only` only roots in `(0, +inf)` are returned.
///
/// Roots are isolated by Sturm counts on dyadic intervals, then each one is
/// refined by bisection on the sign of `f` until the
/// enclosure width is at most `rel_tol * |root|`.
pub fn isolate_real_roots(
    f: &IntPoly,
    positive_only: bool,
    rel_tol: f64,
) -> Result<Vec<RootEnclosure>> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no isolated roots"));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::domain("root tolerance must be positive"));
    }
    let chain = SturmChain::new(f);
    if !chain.is_squarefree() {
        return Err(Error::NonSquarefree {
            gcd_degree: chain.gcd_degree(),
        });
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }

    // Cauchy bound 1 + max|c_i| / |lc|, rounded up to an integer.
    let lc = f.leading().unwrap().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = Dyadic::int(BigInt::one() + (&max + &lc - BigInt::one()) / &lc);
    let lo = if positive_only {
        Dyadic::int(BigInt::zero())
    } else {
        Dyadic::int(-bound.m.clone())
    };

    let mut pending = vec![(lo, bound)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        let count = chain
            .variations_at_dyadic(&a.m, a.e)
            .saturating_sub(chain.variations_at_dyadic(&b.m, b.e));
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = Dyadic::mid(&a, &b);
                pending.push((m.clone(), b));
                pending.push((a, m));
            }
        }
    }

    let df = f.derivative();
    let mut out: Vec<RootEnclosure> = isolated
        .into_iter()
        .map(|(a, b)| refine(f, &df, a, b, rel_tol))
        .collect();
    out.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(out)
}

fn refine(f: &IntPoly, df: &IntPoly, mut a: Dyadic, mut b: Dyadic, rel_tol: f64) -> RootEnclosure {
    let exact = |x: &Dyadic| {
        let (lo, hi) = x.bounds_f64();
        RootEnclosure { lo, hi }
    };
    if sign_of(f, &b) == Sign::NoSign {
        return exact(&b);
    }
    // sign of f just to the right of a
    let mut sa = sign_of(f, &a);
    if sa == Sign::NoSign {
        sa = sign_of(df, &a);
    }
    loop {
        let (lo, _) = a.bounds_f64();
        let (_, hi) = b.bounds_f64();
        let scale = lo.abs().max(hi.abs());
        if hi - lo <= rel_tol * scale || b.e > 4000 {
            return RootEnclosure { lo, hi };
        }
        let m = Dyadic::mid(&a, &b);
        let sm = sign_of(f, &m);
        if sm == Sign::NoSign {
            return exact(&m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
}

/// Midpoints of the refined enclosures of every real root, ascending.
pub fn real_roots(f: &IntPoly, rel_tol: f64) -> Result<Vec<f64>> {
    Ok(isolate_real_roots(f, false, rel_tol)?
        .iter()
        .map(RootEnclosure::mid)
        .collect())
}
