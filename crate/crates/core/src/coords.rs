//! Real/complex coordinate helpers. A point `X in R^k` is read as
//! `Z in C^{k/2}` through `z_j = x_{2j} + i x_{2j+1}`; then `J(x, y) = (-y, x)`
//! on each plane is multiplication by `i`.

use num_complex::Complex64;

/// `|X|²`.
#[inline]
pub fn sq_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `|X - Y|²`.
#[inline]
pub fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// `X·Ȳ = Σ_j z_j w̄_j = ⟨X, Y⟩ + i⟨X, J(Y)⟩`.
#[inline]
pub fn pairing(x: &[f64], y: &[f64]) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (a, b) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        re += a[0] * b[0] + a[1] * b[1];
        im += a[1] * b[0] - a[0] * b[1];
    }
    Complex64::new(re, im)
}

/// `⟨X, J(Y)⟩`.
#[inline]
pub fn symplectic(x: &[f64], y: &[f64]) -> f64 {
    pairing(x, y).im
}

/// Complex coordinates of a real point.
pub fn to_complex(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Real coordinates of a complex point.
pub fn to_real(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}
