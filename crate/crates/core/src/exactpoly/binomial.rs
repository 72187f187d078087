use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// Multiplicative evaluation; every intermediate `C(n - k + i, i)` is an
/// integer so the running division is exact.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}
