use num_bigint::BigInt;

use super::{binomial, IntPoly};

/// `U_m(x/2) = sum_k (-1)^k C(m-k, k) x^{m-2k}`, an integer polynomial.
pub fn chebyshev_u_half(m: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::from(0); m + 1];
    for k in 0..=m / 2 {
        let c = binomial((m - k) as u64, k as i64);
        coeffs[m - 2 * k] = if k % 2 == 1 { -c } else { c };
    }
    IntPoly::new(coeffs)
}

/// `U_0, ..., U_{m_max}` at `x/2` from `U_{m+1} = x U_m - U_{m-1}`.
pub fn chebyshev_u_half_table(m_max: usize) -> Vec<IntPoly> {
    let mut table = Vec::with_capacity(m_max + 1);
    table.push(IntPoly::one());
    if m_max >= 1 {
        table.push(IntPoly::x());
    }
    for m in 1..m_max {
        let next = &table[m].shift_up(1) - &table[m - 1];
        table.push(next);
    }
    table
}

/// Single `U_m(x/2)` through the three-term recurrence.
pub fn chebyshev_u_half_by_recurrence(m: usize) -> IntPoly {
    chebyshev_u_half_table(m).pop().unwrap()
}
