//! Independent oracles for values the library computes another way.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trace_atlas::bounds::{key_step_margins, log_discriminant, log_norm_from_log_coeffs};
use trace_atlas::curves::{k_curve, limit_curve, theta, LowerCurve};
use trace_atlas::exactpoly::{
    binomial, count_roots_in, is_totally_positive, isolate_real_roots, ln_abs,
};
use trace_atlas::siegel::{odd_primes_upto, siegel_poly_closed_form};
use trace_atlas::{Endpoint, IntPoly};

/// Fixed-point decimal arithmetic with 60 fractional digits, enough to check
/// a handful of transcendental values to 50 digits.
mod fixed {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub const DIGITS: u32 = 60;

    pub fn scale() -> BigInt {
        BigInt::from(10).pow(DIGITS)
    }

    pub fn from_ratio(num: i64, den: i64) -> BigInt {
        scale() * num / den
    }

    pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
        a * b / scale()
    }

    pub fn div(a: &BigInt, b: &BigInt) -> BigInt {
        a * scale() / b
    }

    /// `2 atanh(z)` by its power series; converges for `|z| < 1`.
    fn two_atanh(z: &BigInt) -> BigInt {
        let z2 = mul(z, z);
        let mut term = z.clone();
        let mut sum = BigInt::zero();
        let mut k = 1u32;
        while !term.is_zero() {
            sum += &term / k;
            term = mul(&term, &z2);
            k += 2;
        }
        sum * 2
    }

    /// `ln x` for `x > 0`, reduced to `[1, 2)` by powers of two.
    pub fn ln(x: &BigInt) -> BigInt {
        let s = scale();
        let two = &s * 2;
        let ln2 = two_atanh(&from_ratio(1, 3));
        let (mut x, mut shift) = (x.clone(), 0i64);
        while x >= two {
            x /= 2;
            shift += 1;
        }
        while x < s {
            x *= 2;
            shift -= 1;
        }
        let z = div(&(&x - &s), &(&x + &s));
        two_atanh(&z) + ln2 * shift
    }

    /// `e^x` by Taylor series after halving `x` twenty times.
    pub fn exp(x: &BigInt) -> BigInt {
        let halvings = 20;
        let y = x / BigInt::from(1u32 << halvings);
        let mut term = scale();
        let mut sum = BigInt::zero();
        let mut k = 1u32;
        while !term.is_zero() {
            sum += &term;
            term = mul(&term, &y) / k;
            k += 1;
        }
        for _ in 0..halvings {
            sum = mul(&sum, &sum);
        }
        sum
    }

    pub fn xlnx(x: &BigInt) -> BigInt {
        if x.is_zero() {
            BigInt::zero()
        } else {
            mul(x, &ln(x))
        }
    }

    pub fn to_f64(x: &BigInt) -> f64 {
        use num_traits::ToPrimitive;
        // keep 20 digits, far beyond f64
        (x / BigInt::from(10).pow(DIGITS - 20)).to_f64().unwrap() * 1e-20
    }

    pub fn one() -> BigInt {
        scale() * BigInt::one()
    }
}

fn assert_digits(actual: &BigInt, expected: &BigInt, digits: u32) {
    let err = (actual - expected).abs();
    let bound = BigInt::from(10).pow(fixed::DIGITS - digits);
    assert!(
        err < bound,
        "differ beyond {digits} digits: {actual} vs {expected}"
    );
}

/// `h(a,b) = a ln a - b ln b - (a-b) ln(a-b)` in fixed point.
fn h_fixed(a: &BigInt, b: &BigInt) -> BigInt {
    fixed::xlnx(a) - fixed::xlnx(b) - fixed::xlnx(&(a - b))
}

#[test]
fn fixed_point_oracle_is_sane() {
    let e = fixed::exp(&fixed::one());
    // e to 60 decimals
    let e_ref: BigInt = "2718281828459045235360287471352662497757247093699959574966967"
        .parse()
        .unwrap();
    assert_digits(&e, &e_ref, 50);
    assert_digits(&fixed::ln(&e), &fixed::one(), 50);
}

#[test]
fn limit_curve_at_half_against_literal_formula() {
    // L(1/2) = exp((h(3/2, 1) - h(1, 1/2)) / (1/2)) = 27/16
    let c = fixed::from_ratio(1, 2);
    let two = fixed::from_ratio(2, 1);
    let one = fixed::one();
    let a = &two - &c;
    let b = &two - &c * 2;
    let expo = fixed::div(&(h_fixed(&a, &b) - h_fixed(&one, &c)), &c);
    let value = fixed::exp(&expo);
    assert_digits(&value, &fixed::from_ratio(27, 16), 50);
    let got = limit_curve(0.5);
    assert!((got - fixed::to_f64(&value)).abs() <= 2.0 * f64::EPSILON * got);
}

#[test]
fn k_and_lower_curve_at_half_against_literal_formula() {
    // v = 1, c = 1/2: both reduce to exp(2 ln 2 - 3 ln(3/2)) = 32/27
    let c = fixed::from_ratio(1, 2);
    let s = fixed::one() - &c;
    let two = fixed::from_ratio(2, 1);
    let three_halves = fixed::from_ratio(3, 2);
    // K_1: (c (v+1) ln(v+1) + (1-c) v ln v - (c+v) ln(v+c)) / (1-c)
    let k_num = fixed::mul(&fixed::mul(&c, &two), &fixed::ln(&two))
        - fixed::mul(&three_halves, &fixed::ln(&three_halves));
    let k_val = fixed::exp(&fixed::div(&k_num, &s));
    // ℓ_1: ((1-c)(v+1) ln(v+1) + c v ln v + (c-1-v) ln(v+1-c)) / c
    let l_num = fixed::mul(&fixed::mul(&s, &two), &fixed::ln(&two))
        - fixed::mul(&three_halves, &fixed::ln(&three_halves));
    let l_val = fixed::exp(&fixed::div(&l_num, &c));
    let expected = fixed::from_ratio(32, 27);
    assert_digits(&k_val, &expected, 50);
    assert_digits(&l_val, &expected, 50);

    let k = k_curve(0.5, 1.0).unwrap();
    let l = LowerCurve::new(1.0).unwrap().eval(0.5);
    for got in [k, l] {
        assert!((got - 32.0 / 27.0).abs() <= 2.0 * f64::EPSILON, "{got}");
    }
}

#[test]
fn lower_curve_agrees_with_literal_formula_away_from_zero() {
    let v = theta().theta;
    let curve = LowerCurve::new(v).unwrap();
    for i in 1..=100 {
        let c = i as f64 / 100.0;
        let literal = (((1.0 - c) * (v + 1.0) * (v + 1.0).ln()
            + c * v * v.ln()
            + (c - 1.0 - v) * (v + 1.0 - c).ln())
            / c)
            .exp();
        assert!((curve.eval(c) - literal).abs() < 1e-12, "c = {c}");
    }
}

/// `f(x + s)` coefficients by binomial convolution.
fn shift_by_convolution(f: &[BigInt], s: &BigInt) -> Vec<BigInt> {
    let n = f.len();
    (0..n)
        .map(|j| {
            (j..n)
                .map(|k| &f[k] * binomial(k as u64, j as i64) * s.pow((k - j) as u32))
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_shift_round_trip_and_convolution(
        coeffs in prop::collection::vec(-100_000_000_000_000_000_000i128..=100_000_000_000_000_000_000i128, 1..=51),
        s in -1000i64..=1000,
    ) {
        let f = IntPoly::new(coeffs.into_iter().map(BigInt::from).collect());
        let s = BigInt::from(s);
        let shifted = f.compose_shift(&s);
        prop_assert_eq!(shifted.compose_shift(&-&s), f.clone());
        prop_assert_eq!(shifted, IntPoly::new(shift_by_convolution(f.coeffs(), &s)));
    }
}

#[test]
fn sturm_counts_match_known_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let deg = rng.gen_range(1..=10);
        // roots r/2 for distinct integers r
        let mut rs: Vec<i64> = Vec::new();
        while rs.len() < deg {
            let r = rng.gen_range(-60..=60);
            if !rs.contains(&r) {
                rs.push(r);
            }
        }
        let f = rs.iter().fold(IntPoly::one(), |acc, &r| {
            &acc * &IntPoly::from_i64s(&[-r, 2])
        });
        // an irreducible quadratic factor adds no real roots
        let f = &f * &IntPoly::from_i64s(&[rng.gen_range(1..50), 0, 1]);
        for _ in 0..10 {
            let a = rng.gen_range(-70..70);
            let b = rng.gen_range(a + 1..=71);
            let lo = Endpoint::from(BigRational::new(a.into(), 4.into()));
            let hi = Endpoint::from(BigRational::new(b.into(), 4.into()));
            let expected = rs.iter().filter(|&&r| a < 2 * r && 2 * r <= b).count();
            assert_eq!(
                count_roots_in(&f, &lo, &hi).unwrap(),
                expected,
                "{f} on ({a}/4, {b}/4]"
            );
        }
        let all = count_roots_in(&f, &Endpoint::NegInfinity, &Endpoint::PosInfinity).unwrap();
        assert_eq!(all, deg);

        let mut sorted: Vec<f64> = rs.iter().map(|&r| r as f64 / 2.0).collect();
        sorted.sort_by(f64::total_cmp);
        let encl = isolate_real_roots(&f, false, 1e-15).unwrap();
        assert_eq!(encl.len(), deg);
        for (e, r) in encl.iter().zip(&sorted) {
            assert!(e.lo <= *r && *r <= e.hi, "{r} not in [{}, {}]", e.lo, e.hi);
        }
    }
}

#[test]
fn siegel_roots_are_shifted_cosines() {
    for p in odd_primes_upto(199) {
        let g = siegel_poly_closed_form(p).unwrap().poly;
        assert!(is_totally_positive(&g), "p = {p}");
        let encl = isolate_real_roots(&g, true, 1e-15).unwrap();
        let n = ((p - 1) / 2) as usize;
        let mut expected: Vec<f64> = (1..=n)
            .map(|k| 2.0 + 2.0 * (2.0 * std::f64::consts::PI * k as f64 / p as f64).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        assert_eq!(encl.len(), n);
        for (e, x) in encl.iter().zip(&expected) {
            assert!(e.width() <= 1e-15 * e.hi.max(1.0) * 4.0);
            assert!((e.mid() - x).abs() < 1e-12, "p = {p}: {} vs {x}", e.mid());
        }
    }
}

#[test]
fn siegel_discriminants_from_certified_roots() {
    // Δ(g_p) = p^{(p-3)/2}, so every member is well above the Δ >= 1 threshold
    for p in odd_primes_upto(101).into_iter().skip(1) {
        let g = siegel_poly_closed_form(p).unwrap().poly;
        let roots: Vec<f64> = isolate_real_roots(&g, true, 1e-15)
            .unwrap()
            .iter()
            .map(|e| e.mid())
            .collect();
        let log_delta = log_discriminant(&roots);
        let expected = (p - 3) as f64 / 2.0 * (p as f64).ln();
        assert!(
            (log_delta - expected).abs() < 1e-9 * expected.max(1.0),
            "p = {p}: {log_delta} vs {expected}"
        );
        assert!(log_delta >= 0.0);
    }
}

#[test]
fn ln_abs_matches_decimal_length() {
    for k in [1u32, 17, 300, 5000] {
        let x = BigInt::from(10).pow(k) * 7;
        let expected = 7f64.ln() + k as f64 * 10f64.ln();
        assert!((ln_abs(&x) - expected).abs() < 1e-12 * expected);
    }
    assert_eq!(ln_abs(&BigInt::one()), 0.0);
}

#[test]
fn key_step_on_siegel_family() {
    let th = theta().theta;
    for p in odd_primes_upto(211).into_iter().filter(|&p| p >= 11) {
        let s = siegel_poly_closed_form(p).unwrap();
        let n = s.n;
        let log_a: Vec<f64> = s.poly.viete_coeffs().unwrap()[..n]
            .iter()
            .map(ln_abs)
            .collect();
        let log_norm = log_norm_from_log_coeffs(&log_a);
        let log_delta = (p - 3) as f64 / 2.0 * (p as f64).ln();
        for v in [th * 1.01, 0.5, 1.0, 2.0] {
            let t = v * n as f64;
            if let Some(margins) = key_step_margins(&log_norm, log_delta, t).unwrap() {
                let worst = margins.iter().cloned().fold(f64::INFINITY, f64::min);
                assert!(
                    worst >= -1e-9 * n as f64 * n as f64,
                    "p = {p}, v = {v}: {worst}"
                );
            }
        }
    }
}
