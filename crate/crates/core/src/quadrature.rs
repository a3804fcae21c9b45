//! Gaussian quadrature rules (Newton iteration on the three-term recurrences)
//! and tensor-product integration helpers over boxes and all of `R^d`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;

/// Default nodes per axis for Gaussian-weighted integrals.
pub const DEFAULT_ORDER: usize = 64;
/// Default nodes per axis for oscillatory convolutions.
pub const DEFAULT_OSCILLATORY_ORDER: usize = 128;

const MAX_DIM: usize = 8;
const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum QuadratureKind {
    /// Weight `exp(-x^2)` on the real line.
    GaussHermite,
    /// Unit weight on `[-1, 1]`.
    GaussLegendre,
    /// Weight `x^alpha exp(-x)` on `[0, inf)`.
    GaussLaguerre { alpha: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
    pub order: usize,
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(invalid("order", "quadrature order must be positive"))
    } else {
        Ok(())
    }
}

impl QuadratureRule {
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        check_order(order)?;
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..NEWTON_MAX_ITER {
                let (mut p1, mut p2) = (1.0, 0.0);
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
                }
                pp = nf * (z * p1 - p2) / (z * z - 1.0);
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= NEWTON_TOL {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(Self {
            nodes,
            weights,
            kind: QuadratureKind::GaussLegendre,
            order,
        })
    }

    pub fn gauss_hermite(order: usize) -> Result<Self> {
        check_order(order)?;
        let n = order;
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let pim4 = PI.powf(-0.25);
        let mut z = 0.0f64;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[n - 1],
                3 => 1.91 * z - 0.91 * nodes[n - 2],
                _ => 2.0 * z - nodes[n + 1 - i],
            };
            let mut pp = 0.0;
            for _ in 0..NEWTON_MAX_ITER {
                let (mut p1, mut p2) = (pim4, 0.0);
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= NEWTON_TOL * z.abs().max(1.0) {
                    break;
                }
            }
            nodes[n - 1 - i] = z;
            nodes[i] = -z;
            let w = 2.0 / (pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            nodes,
            weights,
            kind: QuadratureKind::GaussHermite,
            order,
        })
    }

    pub fn gauss_laguerre(order: usize, alpha: f64) -> Result<Self> {
        check_order(order)?;
        if !(alpha > -1.0) {
            return Err(invalid("alpha", format!("must exceed -1, got {alpha}")));
        }
        let n = order;
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let mut z = 0.0f64;
        let log_ratio = ln_gamma(alpha + nf) - ln_gamma(nf);
        for i in 0..n {
            z = match i {
                0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
                1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                        * (z - nodes[i - 2])
                        / (1.0 + 0.3 * alpha)
                }
            };
            let (mut pp, mut p2) = (0.0, 0.0);
            for _ in 0..NEWTON_MAX_ITER {
                let mut p1 = 1.0;
                p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf + 1.0 + alpha - z) * p2 - (jf + alpha) * p3) / (jf + 1.0);
                }
                pp = (nf * p1 - (nf + alpha) * p2) / z;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= NEWTON_TOL * z.abs().max(1.0) {
                    break;
                }
            }
            nodes[i] = z;
            weights[i] = -log_ratio.exp() / (pp * nf * p2);
        }
        Ok(Self {
            nodes,
            weights,
            kind: QuadratureKind::GaussLaguerre { alpha },
            order,
        })
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exactness_degree(&self) -> usize {
        2 * self.order - 1
    }

    /// Hermite weights multiplied by `exp(x_i^2)`, so that
    /// `sum_i w_i f(x_i)` approximates the unweighted `int f dx`.
    pub fn hermite_unweighted(&self) -> Vec<f64> {
        debug_assert_eq!(self.kind, QuadratureKind::GaussHermite);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (w.ln() + x * x).exp())
            .collect()
    }
}

/// `ln Gamma(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = C[0];
    for (i, &c) in C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// One axis of a tensor-product rule: absolute nodes and weights for an
/// unweighted integral over that axis.
#[derive(Clone, Debug)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Axis {
    /// Gauss-Hermite axis for `int_R f`, nodes at `center + scale * x_i`.
    /// Exact when `f` is a polynomial times `exp(-((x-center)/scale)^2)`.
    pub fn hermite(rule: &QuadratureRule, center: f64, scale: f64) -> Self {
        let w = rule.hermite_unweighted();
        Self {
            nodes: rule.nodes.iter().map(|&x| center + scale * x).collect(),
            weights: w.iter().map(|&w| w * scale).collect(),
        }
    }

    /// Gauss-Legendre axis on `[lo, hi]`.
    pub fn legendre(rule: &QuadratureRule, lo: f64, hi: f64) -> Self {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        Self {
            nodes: rule.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: rule.weights.iter().map(|&w| w * half).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Tensor product of axes; points are decoded on the fly so that `d = 4`
/// grids with 64 nodes per axis need no storage.
#[derive(Clone, Debug)]
pub struct TensorGrid {
    axes: Vec<Axis>,
}

impl TensorGrid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(invalid("dimension", format!("must be in 1..={MAX_DIM}")));
        }
        Ok(Self { axes })
    }

    /// Isotropic Gauss-Hermite grid over `R^dim`.
    pub fn hermite(rule: &QuadratureRule, center: &[f64], scale: f64) -> Result<Self> {
        Self::new(center.iter().map(|&c| Axis::hermite(rule, c, scale)).collect())
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes point `index` into `out` and returns its weight.
    #[inline]
    pub fn point(&self, mut index: usize, out: &mut [f64]) -> f64 {
        let mut w = 1.0;
        for (d, axis) in self.axes.iter().enumerate().rev() {
            let j = index % axis.len();
            index /= axis.len();
            out[d] = axis.nodes[j];
            w *= axis.weights[j];
        }
        w
    }

    pub fn integrate<F>(&self, exec: Exec, f: F) -> Complex64
    where
        F: Fn(&[f64]) -> Complex64 + Sync + Send,
    {
        let dim = self.dim();
        exec.sum(self.len(), |i| {
            let mut buf = [0.0; MAX_DIM];
            let w = self.point(i, &mut buf);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            f(&buf[..dim]) * w
        })
    }

    /// Materialized points (row-major, stride `dim`) and weights.
    pub fn materialize(&self) -> (Vec<f64>, Vec<f64>) {
        let dim = self.dim();
        let n = self.len();
        let mut pts = vec![0.0; n * dim];
        let mut ws = vec![0.0; n];
        for i in 0..n {
            ws[i] = self.point(i, &mut pts[i * dim..(i + 1) * dim]);
        }
        (pts, ws)
    }
}

/// Runs `eval(order)` and `eval(2*order)` and returns the refined value, or a
/// non-convergence error if they differ by more than `tolerance` (absolute,
/// relative to `max(1, |value|)`).
pub fn with_doubling<F>(order: usize, tolerance: f64, eval: F) -> Result<Complex64>
where
    F: Fn(usize) -> Result<Complex64>,
{
    let coarse = eval(order)?;
    let fine = eval(2 * order)?;
    let change = (fine - coarse).norm() / fine.norm().max(1.0);
    if change > tolerance {
        return Err(ZoneError::QuadratureNonConvergence {
            order,
            doubled: 2 * order,
            change,
            tolerance,
        });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn hermite_moments() {
        for &n in &[8usize, 20, 64, 128] {
            let r = QuadratureRule::gauss_hermite(n).unwrap();
            assert_eq!(r.nodes.len(), n);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let mut m = 0;
            while 2 * m < r.exactness_degree().min(60) {
                let exact = ln_gamma(m as f64 + 0.5).exp();
                let got = r.integrate(|x| x.powi(2 * m as i32));
                assert!(rel(got, exact) < 1e-12, "n={n} m={m} got={got} exact={exact}");
                m += 1;
            }
        }
    }

    #[test]
    fn legendre_moments() {
        for &n in &[1usize, 5, 16, 64, 128] {
            let r = QuadratureRule::gauss_legendre(n).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for m in 0..(2 * n).min(80) {
                let exact = if m % 2 == 0 { 2.0 / (m as f64 + 1.0) } else { 0.0 };
                let got = r.integrate(|x| x.powi(m as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn laguerre_moments() {
        for &alpha in &[0.0, -0.5, 1.0, 2.5] {
            for &n in &[4usize, 16, 48, 64] {
                let r = QuadratureRule::gauss_laguerre(n, alpha).unwrap();
                assert!(r.weights.iter().all(|&w| w > 0.0), "alpha={alpha} n={n}");
                for m in 0..(2 * n).min(30) {
                    let exact = ln_gamma(m as f64 + alpha + 1.0).exp();
                    let got = r.integrate(|x| x.powi(m as i32));
                    assert!(rel(got, exact) < 1e-12, "alpha={alpha} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-15);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(0.5) - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(QuadratureRule::gauss_hermite(0).is_err());
        assert!(QuadratureRule::gauss_laguerre(4, -1.0).is_err());
    }

    #[test]
    fn tensor_gaussian_integral() {
        let r = QuadratureRule::gauss_hermite(32).unwrap();
        let grid = TensorGrid::hermite(&r, &[0.3, -0.2, 0.0, 0.1], 0.8).unwrap();
        let got = grid.integrate(Exec::Parallel, |x| {
            Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
        });
        assert!((got.re - PI * PI).abs() < 1e-12);
    }
}
