use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::Zero;

use super::IntPoly;
use crate::{Error, Result};

/// Interval endpoint on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Endpoint {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Endpoint {
    pub fn zero() -> Self {
        Endpoint::Finite(BigRational::zero())
    }

    pub fn integer(v: i64) -> Self {
        Endpoint::Finite(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigRational> for Endpoint {
    fn from(r: BigRational) -> Self {
        Endpoint::Finite(r)
    }
}

/// Signed remainder sequence `f, f', -rem(f, f'), ...`.
///
/// Elements past the second are stored as primitive integer polynomials that
/// are positive multiples of the rational remainders, so sign sequences are
/// the same as for the textbook chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        let mut polys = vec![f.clone()];
        let df = f.derivative();
        if df.is_zero() {
            return SturmChain { polys };
        }
        polys.push(df);
        loop {
            let n = polys.len();
            let r = polys[n - 2].positive_pseudo_rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push((-r).primitive_part());
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// Degree of the last chain element, i.e. of `gcd(f, f')`.
    pub fn gcd_degree(&self) -> usize {
        self.polys.last().map_or(0, IntPoly::degree)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd_degree() == 0
    }

    /// Sign changes in the chain evaluated at `at`, zeros skipped.
    pub fn variations(&self, at: &Endpoint) -> usize {
        let signs = self.polys.iter().map(|p| sign_at(p, at));
        count_variations(signs)
    }

    /// Variations at the dyadic point `m / 2^e`.
    pub fn variations_at_dyadic(&self, m: &BigInt, e: u64) -> usize {
        count_variations(self.polys.iter().map(|p| p.sign_at_dyadic(m, e)))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

fn count_variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Sign::NoSign) {
        if last != Sign::NoSign && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign_at(p: &IntPoly, at: &Endpoint) -> Sign {
    let Some(lc) = p.leading() else {
        return Sign::NoSign;
    };
    match at {
        Endpoint::PosInfinity => lc.sign(),
        Endpoint::NegInfinity => {
            if p.degree().is_multiple_of(2) {
                lc.sign()
            } else {
                -lc.sign()
            }
        }
        Endpoint::Finite(r) => p.sign_at_fraction(r.numer(), r.denom()),
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn count_roots_in(f: &IntPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    if lo >= hi {
        return Err(Error::domain("count_roots_in needs lo < hi"));
    }
    if f.is_zero() {
        return Err(Error::domain(
            "the zero polynomial has infinitely many roots",
        ));
    }
    let chain = SturmChain::new(f);
    if !chain.is_squarefree() {
        return Err(Error::NonSquarefree {
            gcd_degree: chain.gcd_degree(),
        });
    }
    Ok(chain.count(lo, hi))
}

/// Outcome of the total-positivity test with the reasons spelled out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PositivityReport {
    pub degree: usize,
    pub monic: bool,
    pub squarefree: bool,
    pub positive_roots: usize,
    pub totally_positive: bool,
}

impl PositivityReport {
    pub fn new(f: &IntPoly) -> Self {
        let degree = f.degree();
        let monic = f.is_monic();
        let chain = SturmChain::new(f);
        let squarefree = !f.is_zero() && chain.is_squarefree();
        let positive_roots = if squarefree {
            chain.count(&Endpoint::zero(), &Endpoint::PosInfinity)
        } else {
            0
        };
        PositivityReport {
            degree,
            monic,
            squarefree,
            positive_roots,
            totally_positive: degree >= 1 && monic && squarefree && positive_roots == degree,
        }
    }
}

/// Monic, squarefree, and every root real and positive. Irreducibility is
/// not checked.
pub fn is_totally_positive(f: &IntPoly) -> bool {
    PositivityReport::new(f).totally_positive
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn chain_shape() {
        let f = p(&[1, -3, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.polys()[0], f);
        assert_eq!(chain.polys()[1], f.derivative());
        assert_eq!(chain.polys().len(), 3);
        assert!(chain.is_squarefree());
    }

    #[test]
    fn counting_examples() {
        let pos = (Endpoint::zero(), Endpoint::PosInfinity);
        let all = (Endpoint::NegInfinity, Endpoint::PosInfinity);
        assert_eq!(count_roots_in(&p(&[1, -3, 1]), &pos.0, &pos.1), Ok(2));
        assert_eq!(count_roots_in(&p(&[1, 0, 1]), &all.0, &all.1), Ok(0));
        assert_eq!(count_roots_in(&p(&[-2, 0, 1]), &pos.0, &pos.1), Ok(1));
        assert_eq!(count_roots_in(&p(&[-2, 0, 1]), &all.0, &all.1), Ok(2));
    }

    #[test]
    fn half_open_interval() {
        // roots 1 and 2
        let f = p(&[2, -3, 1]);
        assert_eq!(
            count_roots_in(&f, &Endpoint::integer(1), &Endpoint::integer(2)),
            Ok(1)
        );
        assert_eq!(
            count_roots_in(&f, &Endpoint::integer(0), &Endpoint::integer(1)),
            Ok(1)
        );
        assert_eq!(
            count_roots_in(&f, &Endpoint::integer(0), &Endpoint::integer(2)),
            Ok(2)
        );
        assert_eq!(
            count_roots_in(&f, &Endpoint::integer(2), &Endpoint::integer(5)),
            Ok(0)
        );
    }

    #[test]
    fn repeated_roots_are_reported() {
        // (x - 1)^2 (x - 3)
        let f = p(&[-3, 7, -5, 1]);
        assert_eq!(
            count_roots_in(&f, &Endpoint::NegInfinity, &Endpoint::PosInfinity),
            Err(Error::NonSquarefree { gcd_degree: 1 })
        );
        let report = PositivityReport::new(&f);
        assert!(!report.squarefree);
        assert!(!report.totally_positive);
    }

    #[test]
    fn empty_interval_rejected() {
        let f = p(&[1, -3, 1]);
        assert!(count_roots_in(&f, &Endpoint::integer(2), &Endpoint::integer(2)).is_err());
    }

    #[test]
    fn total_positivity_examples() {
        assert!(is_totally_positive(&p(&[1, -3, 1])));
        assert!(!is_totally_positive(&p(&[-2, 0, 1])));
        assert!(is_totally_positive(&p(&[-1, 1])));
        assert!(!is_totally_positive(&p(&[1, 0, 1])));
        // not monic
        assert!(!is_totally_positive(&p(&[1, -3, 2])));
        // root at zero
        assert!(!is_totally_positive(&p(&[0, -1, 1])));
    }
}
