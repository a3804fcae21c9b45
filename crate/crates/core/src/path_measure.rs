//! Time-sliced path measures: cylinder-set integrals of kernel chains, the
//! action functional and stopwatch phase, sliced Feynman-Kac integrals over
//! the spread-amplitude measure, Radon-Nikodym densities, and the zonal
//! probability density.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::coords::sq_norm;
use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;
use crate::params::PhysParams;
use crate::propagators::{
    global_kernel, global_kernel_complex, zonal_kernel, zonal_kernel_spectral, zonal_unchecked, KernelForm, Sigma,
};
use crate::quadrature::{with_doubling, Axis, QuadratureRule, TensorGrid};
use crate::zones::zone_kernel_real;

/// A path from `x` at time 0 to `y` at time `horizon`, sampled at the
/// interior `times`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDiscretization {
    horizon: f64,
    times: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    midpoints: Vec<Vec<f64>>,
}

impl PathDiscretization {
    pub fn new(horizon: f64, times: Vec<f64>, x: Vec<f64>, y: Vec<f64>, midpoints: Vec<Vec<f64>>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(invalid("T", format!("must be positive, got {horizon}")));
        }
        if times.len() != midpoints.len() {
            return Err(invalid("midpoints", "need exactly one point per interior time"));
        }
        let mut prev = 0.0;
        for &t in &times {
            if !(t > prev && t < horizon) {
                return Err(invalid("times", "must increase strictly inside (0, T)"));
            }
            prev = t;
        }
        if x.len() != y.len() || x.is_empty() || x.len() % 2 != 0 || midpoints.iter().any(|m| m.len() != x.len()) {
            return Err(invalid("x", "all points must share one even dimension"));
        }
        Ok(Self {
            horizon,
            times,
            x,
            y,
            midpoints,
        })
    }

    /// Evenly spaced interior times `jT/(n+1)`.
    pub fn uniform(horizon: f64, x: Vec<f64>, y: Vec<f64>, midpoints: Vec<Vec<f64>>) -> Result<Self> {
        let n = midpoints.len();
        let times = uniform_times(horizon, n);
        Self::new(horizon, times, x, y, midpoints)
    }

    pub fn constant(horizon: f64, n: usize, point: Vec<f64>) -> Result<Self> {
        Self::uniform(horizon, point.clone(), point.clone(), vec![point; n])
    }

    /// Straight line from `x` to `y` sampled at `n` interior times.
    pub fn straight_line(horizon: f64, n: usize, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let times = uniform_times(horizon, n);
        let midpoints = times
            .iter()
            .map(|t| {
                let s = t / horizon;
                x.iter().zip(&y).map(|(a, b)| a + s * (b - a)).collect()
            })
            .collect();
        Self::new(horizon, times, x, y, midpoints)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Nodes `(t, ω(t))` including both endpoints.
    pub fn nodes(&self) -> Vec<(f64, &[f64])> {
        let mut out = Vec::with_capacity(self.times.len() + 2);
        out.push((0.0, self.x.as_slice()));
        for (t, m) in self.times.iter().zip(&self.midpoints) {
            out.push((*t, m.as_slice()));
        }
        out.push((self.horizon, self.y.as_slice()));
        out
    }

    /// The path followed by `next`, shifted to start at this horizon.
    pub fn concat(&self, next: &PathDiscretization) -> Result<Self> {
        if self.y != next.x {
            return Err(invalid("paths", "second path must start where the first ends"));
        }
        let mut times = self.times.clone();
        let mut midpoints = self.midpoints.clone();
        times.push(self.horizon);
        midpoints.push(self.y.clone());
        times.extend(next.times.iter().map(|t| t + self.horizon));
        midpoints.extend(next.midpoints.iter().cloned());
        Self::new(self.horizon + next.horizon, times, self.x.clone(), next.y.clone(), midpoints)
    }
}

fn uniform_times(horizon: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|j| horizon * j as f64 / (n + 1) as f64).collect()
}

/// Trapezoid weights of the nodes `0 = t_0 < ... < t_{n+1} = T`.
fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|j| {
            let left = if j > 0 { nodes[j] - nodes[j - 1] } else { 0.0 };
            let right = if j + 1 < n { nodes[j + 1] - nodes[j] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// `kT/2 + 2∫_0^T |ω(τ)|² dτ`, trapezoid rule over the nodes.
pub fn action_functional(path: &PathDiscretization) -> f64 {
    let nodes = path.nodes();
    let ts: Vec<f64> = nodes.iter().map(|n| n.0).collect();
    let w = trapezoid_weights(&ts);
    let integral: f64 = nodes.iter().zip(&w).map(|((_, p), c)| c * sq_norm(p)).sum();
    0.5 * path.dim() as f64 * path.horizon + 2.0 * integral
}

/// `e^{-i·action}`.
pub fn stopwatch_phase(path: &PathDiscretization) -> Complex64 {
    Complex64::new(0.0, -action_functional(path)).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityKind {
    /// `dν/dw = e^{action}`.
    NuOverWk,
    /// `dF/dw = e^{(1-i)·action}`.
    FeynmanOverWk,
    /// `dF/dν = e^{-i·action}`.
    FeynmanOverNu,
}

pub fn radon_nikodym_density(kind: DensityKind, path: &PathDiscretization) -> Complex64 {
    let s = action_functional(path);
    let exponent = match kind {
        DensityKind::NuOverWk => Complex64::new(s, 0.0),
        DensityKind::FeynmanOverWk => Complex64::new(s, -s),
        DensityKind::FeynmanOverNu => Complex64::new(0.0, -s),
    };
    exponent.exp()
}

/// Kernel whose chain defines the cylinder measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureKernel {
    GlobalWk,
    GlobalDf,
    ZonalWk(usize),
    ZonalDf(usize),
    /// Time-independent spread amplitudes `δ^(a)`.
    SpreadAmplitude(usize),
}

impl MeasureKernel {
    /// Closed-form total measure `d(T, x, y)`.
    pub fn closed_form(self, horizon: f64, x: &[f64], y: &[f64], params: &PhysParams) -> Result<Complex64> {
        match self {
            MeasureKernel::GlobalWk => global_kernel(Sigma::One, horizon, x, y, params),
            MeasureKernel::GlobalDf => global_kernel(Sigma::I, horizon, x, y, params),
            MeasureKernel::ZonalWk(a) => zonal_kernel_spectral(Sigma::One, a, horizon, x, y, params),
            MeasureKernel::ZonalDf(a) => zonal_kernel_spectral(Sigma::I, a, horizon, x, y, params),
            MeasureKernel::SpreadAmplitude(a) => Ok(zone_kernel_real(a, x, y, params)),
        }
    }
}

/// Integration region for one interior time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Region {
    /// All of `R^k`.
    Whole,
    /// Axis-aligned box `[lo, hi]`.
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

impl Region {
    fn is_empty(&self) -> bool {
        match self {
            Region::Whole => false,
            Region::Box { lo, hi } => lo.iter().zip(hi).any(|(a, b)| !(a < b)),
        }
    }
}

/// Quadrature settings shared by the path-measure integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    /// Nodes per axis at the coarse level.
    pub order: usize,
    /// Allowed change when the order is doubled.
    pub tolerance: f64,
    pub exec: Exec,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            order: 24,
            tolerance: 1e-8,
            exec: Exec::Parallel,
        }
    }
}

/// One slice of the chain: flattened points (stride `k`) and weights.
struct Layer<T> {
    points: Vec<T>,
    weights: Vec<Complex64>,
}

/// `Σ_{m_1..m_n} K_0(x,m_1) w(m_1) K_1(m_1,m_2) ... K_n(m_n,y)`.
fn transfer_chain<T, K>(x: &[T], y: &[T], layers: &[Layer<T>], kernel: K, exec: Exec) -> Complex64
where
    T: Sync,
    K: Fn(usize, &[T], &[T]) -> Complex64 + Sync + Send,
{
    let k = x.len();
    let Some(first) = layers.first() else {
        return kernel(0, x, y);
    };
    let mut v: Vec<Complex64> = exec.map_range(first.weights.len(), |i| {
        kernel(0, x, &first.points[i * k..(i + 1) * k]) * first.weights[i]
    });
    for (step, pair) in layers.windows(2).enumerate() {
        let (from, to) = (&pair[0], &pair[1]);
        v = exec.map_range(to.weights.len(), |j| {
            let target = &to.points[j * k..(j + 1) * k];
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, vi) in v.iter().enumerate() {
                if *vi != Complex64::new(0.0, 0.0) {
                    acc += vi * kernel(step + 1, &from.points[i * k..(i + 1) * k], target);
                }
            }
            acc * to.weights[j]
        });
    }
    let last = layers.last().expect("non-empty");
    let n = layers.len();
    exec.sum(v.len(), |i| v[i] * kernel(n, &last.points[i * k..(i + 1) * k], y))
}

fn real_layer(region: &Region, rule_h: &QuadratureRule, rule_l: &QuadratureRule, k: usize, scale: f64) -> Result<Layer<f64>> {
    let axes = match region {
        Region::Whole => (0..k).map(|_| Axis::hermite(rule_h, 0.0, scale)).collect(),
        Region::Box { lo, hi } => {
            if lo.len() != k || hi.len() != k {
                return Err(invalid("boxes", format!("each box needs {k} bounds per side")));
            }
            lo.iter().zip(hi).map(|(a, b)| Axis::legendre(rule_l, *a, *b)).collect()
        }
    };
    let (points, weights) = TensorGrid::new(axes)?.materialize();
    Ok(Layer {
        points,
        weights: weights.into_iter().map(|w| Complex64::new(w, 0.0)).collect(),
    })
}

/// Cylinder-set measure of the paths from `x` to `y` that pass through
/// `boxes[j]` at `times[j]`: the iterated integral of the kernel chain.
/// Whole-space slices use Gauss-Hermite nodes (rotated by `π/4` into the
/// complex domain for the global Dirac-Feynman kernel, whose integrand is a
/// pure Fresnel oscillation on the real axis); boxes use Gauss-Legendre.
#[allow(clippy::too_many_arguments)]
pub fn cylinder_measure(
    kind: MeasureKernel,
    times: &[f64],
    boxes: &[Region],
    x: &[f64],
    y: &[f64],
    horizon: f64,
    params: &PhysParams,
    opts: QuadOptions,
) -> Result<Complex64> {
    let k = params.k();
    if times.len() != boxes.len() {
        return Err(invalid("boxes", "need exactly one box per interior time"));
    }
    if x.len() != k || y.len() != k {
        return Err(invalid("x", format!("expected {k} coordinates")));
    }
    PathDiscretization::new(horizon, times.to_vec(), x.to_vec(), y.to_vec(), vec![x.to_vec(); times.len()])?;
    if boxes.iter().any(Region::is_empty) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut grid = vec![0.0];
    grid.extend_from_slice(times);
    grid.push(horizon);
    let deltas: Vec<f64> = grid.windows(2).map(|w| w[1] - w[0]).collect();
    with_doubling(opts.order, opts.tolerance, |order| {
        chain_at_order(kind, &deltas, boxes, x, y, params, order, opts.exec)
    })
}

#[allow(clippy::too_many_arguments)]
fn chain_at_order(
    kind: MeasureKernel,
    deltas: &[f64],
    boxes: &[Region],
    x: &[f64],
    y: &[f64],
    params: &PhysParams,
    order: usize,
    exec: Exec,
) -> Result<Complex64> {
    let k = params.k();
    let lambda = params.lambda();
    let rule_h = QuadratureRule::gauss_hermite(order)?;
    let rule_l = QuadratureRule::gauss_legendre(order)?;
    for d in deltas {
        if *d <= 0.0 {
            return Err(invalid("times", "must increase strictly"));
        }
    }
    if kind == MeasureKernel::GlobalDf {
        return global_df_chain(deltas, boxes, x, y, params, &rule_h, &rule_l, exec);
    }
    let mut layers = Vec::with_capacity(boxes.len());
    for (j, region) in boxes.iter().enumerate() {
        let scale = match kind {
            MeasureKernel::GlobalWk => {
                let c = 0.5 * lambda * (1.0 / (lambda * deltas[j]).tanh() + 1.0 / (lambda * deltas[j + 1]).tanh());
                1.0 / c.sqrt()
            }
            _ => 1.0 / lambda.sqrt(),
        };
        layers.push(real_layer(region, &rule_h, &rule_l, k, scale)?);
    }
    let kernel = |step: usize, a: &[f64], b: &[f64]| -> Complex64 {
        let dt = deltas[step];
        match kind {
            MeasureKernel::GlobalWk => global_kernel(Sigma::One, dt, a, b, params).unwrap_or_default(),
            MeasureKernel::ZonalWk(z) => zonal_unchecked(KernelForm::Spectral, Sigma::One, z, dt, a, b, params),
            MeasureKernel::ZonalDf(z) => zonal_unchecked(KernelForm::Spectral, Sigma::I, z, dt, a, b, params),
            MeasureKernel::SpreadAmplitude(z) => zone_kernel_real(z, a, b, params),
            MeasureKernel::GlobalDf => unreachable!("handled on the complex contour"),
        }
    };
    Ok(transfer_chain(x, y, &layers, kernel, exec))
}

#[allow(clippy::too_many_arguments)]
fn global_df_chain(
    deltas: &[f64],
    boxes: &[Region],
    x: &[f64],
    y: &[f64],
    params: &PhysParams,
    rule_h: &QuadratureRule,
    rule_l: &QuadratureRule,
    exec: Exec,
) -> Result<Complex64> {
    let k = params.k();
    let lambda = params.lambda();
    let n = boxes.len();
    // Quadratic form of the phase in the rotated variables must be positive definite.
    let diag: Vec<f64> = (0..n)
        .map(|j| 0.5 * lambda * (1.0 / (lambda * deltas[j]).tan() + 1.0 / (lambda * deltas[j + 1]).tan()))
        .collect();
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|j| -0.5 * lambda / (lambda * deltas[j + 1]).sin())
        .collect();
    let whole: Vec<usize> = (0..n).filter(|&j| boxes[j] == Region::Whole).collect();
    if !positive_definite_tridiagonal(&whole, &diag, &off) {
        return Err(ZoneError::NotIntegrable(
            "Fresnel chain is not contour-rotatable (horizon beyond the first focal time)",
        ));
    }
    let rot = Complex64::from_polar(1.0, FRAC_PI_4);
    let mut layers = Vec::with_capacity(n);
    for (j, region) in boxes.iter().enumerate() {
        let layer = match region {
            Region::Whole => {
                let scale = 1.0 / diag[j].sqrt();
                let base = real_layer(region, rule_h, rule_l, k, scale)?;
                let jac = rot.powu(k as u32);
                Layer {
                    points: base.points.iter().map(|&p| rot * p).collect(),
                    weights: base.weights.iter().map(|w| w * jac).collect(),
                }
            }
            Region::Box { .. } => {
                let base = real_layer(region, rule_h, rule_l, k, 1.0)?;
                Layer {
                    points: base.points.iter().map(|&p| Complex64::new(p, 0.0)).collect(),
                    weights: base.weights,
                }
            }
        };
        layers.push(layer);
    }
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let yc: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let kernel = |step: usize, a: &[Complex64], b: &[Complex64]| {
        global_kernel_complex(Sigma::I, deltas[step], a, b, params).unwrap_or_default()
    };
    Ok(transfer_chain(&xc, &yc, &layers, kernel, exec))
}

/// Leading-minor test for the sub-matrix of a tridiagonal matrix on the
/// (sorted) index set `idx`.
fn positive_definite_tridiagonal(idx: &[usize], diag: &[f64], off: &[f64]) -> bool {
    let m = idx.len();
    let mut a = vec![vec![0.0; m]; m];
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[r][c] = if i == j {
                diag[i]
            } else if i + 1 == j {
                off[i]
            } else if j + 1 == i {
                off[j]
            } else {
                0.0
            };
        }
    }
    nalgebra::DMatrix::from_fn(m, m, |r, c| a[r][c]).cholesky().is_some() || m == 0
}

/// Time-sliced `∫ e^{-σ·action} dν^{T(a)}_{xy}` with `n_slices` interior
/// times `jT/(n+1)`: the ν-measure is the chain of spread amplitudes
/// `δ^(a)` and the action is the trapezoid action along the sliced path.
#[allow(clippy::too_many_arguments)]
pub fn discretized_feynman_kac(
    sigma: Sigma,
    a: usize,
    x: &[f64],
    y: &[f64],
    horizon: f64,
    n_slices: usize,
    params: &PhysParams,
    opts: QuadOptions,
) -> Result<Complex64> {
    if n_slices == 0 {
        return Err(invalid("n_slices", "need at least one interior time"));
    }
    let k = params.k();
    if x.len() != k || y.len() != k {
        return Err(invalid("x", format!("expected {k} coordinates")));
    }
    if !(horizon > 0.0) {
        return Err(invalid("T", "must be positive"));
    }
    let mut ts = vec![0.0];
    ts.extend(uniform_times(horizon, n_slices));
    ts.push(horizon);
    let c = trapezoid_weights(&ts);
    let sv = sigma.value();
    let lambda = params.lambda();
    let ends = (sv * -(0.5 * k as f64 * horizon + 2.0 * (c[0] * sq_norm(x) + c[n_slices + 1] * sq_norm(y)))).exp();
    with_doubling(opts.order, opts.tolerance, |order| {
        let rule = QuadratureRule::gauss_hermite(order)?;
        let mut layers = Vec::with_capacity(n_slices);
        for cj in &c[1..=n_slices] {
            let center = vec![0.0; k];
            let grid = TensorGrid::hermite(&rule, &center, 1.0 / lambda.sqrt())?;
            let (points, w) = grid.materialize();
            let weights = w
                .iter()
                .enumerate()
                .map(|(i, wi)| (sv * (-2.0 * cj * sq_norm(&points[i * k..(i + 1) * k]))).exp() * *wi)
                .collect();
            layers.push(Layer { points, weights });
        }
        let kernel = |_: usize, p: &[f64], q: &[f64]| zone_kernel_real(a, p, q, params);
        Ok(transfer_chain(x, y, &layers, kernel, opts.exec) * ends)
    })
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: Complex64,
    pub std_err: f64,
    pub samples: usize,
}

/// Samples per independent random stream.
const MC_BLOCK: usize = 4096;

/// Importance-sampled version of [`discretized_feynman_kac`] for many
/// slices: interior points are drawn from the density `(λ/π)^{k/2} e^{-λ|m|²}`.
/// Block `b` uses its own ChaCha stream seeded with `seed + b`, so the
/// estimate depends only on `seed` and `samples`.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_feynman_kac(
    sigma: Sigma,
    a: usize,
    x: &[f64],
    y: &[f64],
    horizon: f64,
    n_slices: usize,
    params: &PhysParams,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<McEstimate> {
    let k = params.k();
    if n_slices == 0 || samples == 0 {
        return Err(invalid("samples", "need at least one slice and one sample"));
    }
    if x.len() != k || y.len() != k {
        return Err(invalid("x", format!("expected {k} coordinates")));
    }
    let lambda = params.lambda();
    let mut ts = vec![0.0];
    ts.extend(uniform_times(horizon, n_slices));
    ts.push(horizon);
    let c = trapezoid_weights(&ts);
    let sv = sigma.value();
    let normal = Normal::new(0.0, (0.5 / lambda).sqrt()).map_err(|e| invalid("lambda", e.to_string()))?;
    let log_density_norm = 0.5 * k as f64 * (lambda / PI).ln();
    let blocks = samples.div_ceil(MC_BLOCK);
    let partial = exec.map_range(blocks, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(b as u64));
        let count = MC_BLOCK.min(samples - b * MC_BLOCK);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sq = 0.0;
        let mut prev = vec![0.0; k];
        let mut cur = vec![0.0; k];
        for _ in 0..count {
            prev.copy_from_slice(x);
            let mut action = 2.0 * c[0] * sq_norm(x);
            let mut value = Complex64::new(1.0, 0.0);
            let mut log_q = 0.0;
            for cj in &c[1..=n_slices] {
                for v in cur.iter_mut() {
                    *v = normal.sample(&mut rng);
                }
                let r2 = sq_norm(&cur);
                log_q += log_density_norm - lambda * r2;
                value *= zone_kernel_real(a, &prev, &cur, params);
                action += 2.0 * cj * r2;
                std::mem::swap(&mut prev, &mut cur);
            }
            value *= zone_kernel_real(a, &prev, y, params);
            action += 2.0 * c[n_slices + 1] * sq_norm(y) + 0.5 * k as f64 * horizon;
            let sample = value * (sv * -action).exp() * (-log_q).exp();
            sum += sample;
            sq += sample.norm_sqr();
        }
        (sum, sq)
    });
    let (sum, sq) = partial
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = (sq / n - mean.norm_sqr()).max(0.0);
    Ok(McEstimate {
        mean,
        std_err: (var / n).sqrt(),
        samples,
    })
}

/// `π^{k/2} |d_i^(a)(T,x,y)|²` with the published zonal kernel.
pub fn probability_density(a: usize, x: &[f64], y: &[f64], horizon: f64, params: &PhysParams) -> Result<f64> {
    let d = zonal_kernel(Sigma::I, a, horizon, x, y, params)?;
    Ok(PI.powi(params.half_dim() as i32) * d.norm_sqr())
}

/// `∫ probability_density(a, x, y, T) dy` by Gauss-Hermite quadrature.
pub fn probability_mass(a: usize, x: &[f64], horizon: f64, params: &PhysParams, order: usize, exec: Exec) -> Result<f64> {
    if x.len() != params.k() {
        return Err(invalid("x", format!("expected {} coordinates", params.k())));
    }
    zonal_kernel(Sigma::I, a, horizon, x, x, params)?;
    let rule = QuadratureRule::gauss_hermite(order)?;
    let center = vec![0.0; params.k()];
    let grid = TensorGrid::hermite(&rule, &center, 1.0 / params.lambda().sqrt())?;
    let scale = PI.powi(params.half_dim() as i32);
    Ok(grid
        .integrate(exec, |y| {
            let d = zonal_unchecked(KernelForm::Published, Sigma::I, a, horizon, x, y, params);
            Complex64::new(scale * d.norm_sqr(), 0.0)
        })
        .re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_examples() {
        let t = 0.8;
        let origin = PathDiscretization::constant(t, 5, vec![0.0, 0.0]).unwrap();
        assert!((action_functional(&origin) - t).abs() < 1e-15);
        let unit = PathDiscretization::constant(t, 3, vec![0.6, 0.8]).unwrap();
        assert!((action_functional(&unit) - (t + 2.0 * t)).abs() < 1e-14);
        let mut prev = f64::INFINITY;
        for n in [1, 3, 7, 15, 31] {
            let line = PathDiscretization::straight_line(t, n, vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
            let err = (action_functional(&line) - (t + 2.0 * t / 3.0)).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn phase_properties() {
        let path = PathDiscretization::uniform(
            1.1,
            vec![0.1, 0.2],
            vec![-0.3, 0.4],
            vec![vec![0.5, -0.5], vec![1.0, 0.3]],
        )
        .unwrap();
        assert!((stopwatch_phase(&path).norm() - 1.0).abs() < 1e-15);
        let origin = PathDiscretization::constant(0.7, 2, vec![0.0; 4]).unwrap();
        let want = Complex64::new(0.0, -2.0 * 0.7).exp();
        assert!((stopwatch_phase(&origin) - want).norm() < 1e-15);
        let second = PathDiscretization::uniform(0.4, vec![-0.3, 0.4], vec![0.0, 0.0], vec![vec![0.2, 0.2]]).unwrap();
        let joined = path.concat(&second).unwrap();
        let prod = stopwatch_phase(&path) * stopwatch_phase(&second);
        assert!((stopwatch_phase(&joined) - prod).norm() < 1e-14);
    }

    #[test]
    fn path_validation() {
        assert!(PathDiscretization::new(1.0, vec![0.5, 0.4], vec![0.0; 2], vec![0.0; 2], vec![vec![0.0; 2]; 2]).is_err());
        assert!(PathDiscretization::new(1.0, vec![1.0], vec![0.0; 2], vec![0.0; 2], vec![vec![0.0; 2]]).is_err());
        assert!(PathDiscretization::new(1.0, vec![0.5], vec![0.0; 2], vec![0.0; 2], vec![]).is_err());
    }

    #[test]
    fn density_chain_rule() {
        let path = PathDiscretization::straight_line(0.9, 4, vec![0.2, -0.1], vec![0.7, 0.3]).unwrap();
        let nu = radon_nikodym_density(DensityKind::NuOverWk, &path);
        let fw = radon_nikodym_density(DensityKind::FeynmanOverWk, &path);
        let fnu = radon_nikodym_density(DensityKind::FeynmanOverNu, &path);
        assert!((fnu * nu - fw).norm() <= 4.0 * f64::EPSILON * fw.norm());
        assert!((fw.norm() - nu.re).abs() <= 4.0 * f64::EPSILON * nu.re);
        let origin = PathDiscretization::constant(0.9, 2, vec![0.0, 0.0]).unwrap();
        let d = radon_nikodym_density(DensityKind::NuOverWk, &origin);
        assert!((d.re - 0.9f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn empty_box_has_zero_measure() {
        let p = PhysParams::default();
        let boxes = vec![Region::Box {
            lo: vec![0.0, 0.0],
            hi: vec![0.0, 1.0],
        }];
        let m = cylinder_measure(MeasureKernel::GlobalWk, &[0.3], &boxes, &[0.0, 0.0], &[0.1, 0.1], 0.6, &p, QuadOptions::default())
            .unwrap();
        assert_eq!(m, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn probability_density_is_nonnegative() {
        let p = PhysParams::default();
        for a in 0..3 {
            let v = probability_density(a, &[0.3, 0.1], &[-0.5, 0.8], 0.7, &p).unwrap();
            assert!(v >= 0.0);
        }
    }
}
