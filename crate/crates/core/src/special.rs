//! Generalized Laguerre polynomials and the combinatorial factors used by the
//! kernel formulas.

use crate::error::{invalid, Result};

/// `L_a^{(alpha)}(t)` by the ascending three-term recurrence.
pub fn laguerre(a: usize, alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(invalid("alpha", format!("must exceed -1, got {alpha}")));
    }
    Ok(laguerre_unchecked(a, alpha, t))
}

pub(crate) fn laguerre_unchecked(a: usize, alpha: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if a == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - t;
    for n in 1..a {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + alpha - t) * cur - (nf + alpha) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre polynomial at a complex argument (same recurrence). Needed where
/// the argument is an analytically continued squared distance.
pub(crate) fn laguerre_complex(
    a: usize,
    alpha: f64,
    t: num_complex::Complex64,
) -> num_complex::Complex64 {
    let one = num_complex::Complex64::new(1.0, 0.0);
    let mut prev = one;
    if a == 0 {
        return prev;
    }
    let mut cur = one * (1.0 + alpha) - t;
    for n in 1..a {
        let nf = n as f64;
        let next = ((one * (2.0 * nf + 1.0 + alpha) - t) * cur - prev * (nf + alpha)) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact binomial coefficient; panics on overflow of u64.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `binomial(a + k/2 - 1, a)`: the degeneracy prefactor of the zonal
/// partition functions.
pub fn multiplicity_factor(a: usize, k: usize) -> Result<u64> {
    if k < 2 || k % 2 != 0 {
        return Err(invalid("k", format!("must be an even integer >= 2, got {k}")));
    }
    Ok(binomial((a + k / 2 - 1) as u64, a as u64))
}

/// `n!` as a float (exact up to 22!, correctly rounded beyond).
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
