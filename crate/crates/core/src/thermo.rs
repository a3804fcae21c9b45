//! Thermodynamic read-out of the zonal partition functions: average energy,
//! specific heat, tension amplitude, stable charge spreads, and extremum
//! search over one periodicity interval of the Dirac-Feynman quantities.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{pairing, sq_norm};
use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;
use crate::params::PhysParams;
use crate::propagators::{partition_function, zonal_kernel, Sigma, SINGULAR_GUARD};
use crate::zones::zone_kernel_real;

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

/// `e^{-2hσ/κT}` after validating the inputs and the σ = i resonances.
fn boltzmann(sigma: Sigma, temperature: f64, kappa: f64, h: f64) -> Result<Complex64> {
    check_positive("T", temperature)?;
    check_positive("kappa", kappa)?;
    check_positive("h", h)?;
    let x = h / (kappa * temperature);
    if sigma == Sigma::I && x.sin().abs() < SINGULAR_GUARD {
        return Err(ZoneError::SingularTime {
            t: 1.0 / temperature,
            guard: SINGULAR_GUARD,
        });
    }
    Ok((sigma.value() * (-2.0 * x)).exp())
}

/// `h + 2h e^{-2hσ/κT} / (1 - e^{-2hσ/κT})`.
pub fn average_energy(sigma: Sigma, temperature: f64, kappa: f64, h: f64) -> Result<Complex64> {
    let e = boltzmann(sigma, temperature, kappa, h)?;
    Ok(e * (2.0 * h) / (1.0 - e) + h)
}

/// `(2h)² σ e^{-2hσ/κT} / (κT² (1 - e^{-2hσ/κT})²)`, the temperature
/// derivative of [`average_energy`].
pub fn specific_heat(sigma: Sigma, temperature: f64, kappa: f64, h: f64) -> Result<Complex64> {
    let e = boltzmann(sigma, temperature, kappa, h)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(sigma.value() * e * (4.0 * h * h) / ((one - e).powi(2) * (kappa * temperature * temperature)))
}

/// Interval `L = 2π/λ` in kernel time. Moduli of the Dirac-Feynman
/// quantities repeat after `L/2`; the kernels themselves after `L`.
pub fn periodicity_interval(params: &PhysParams) -> f64 {
    2.0 * PI / params.lambda()
}

/// The same interval in the inverse-temperature variable, `2πκ/h`.
pub fn thermal_interval(kappa: f64, h: f64) -> f64 {
    2.0 * PI * kappa / h
}

/// `∂_t d_i^(a)(t,X,X)` from the closed form of the diagonal,
/// `d = e^{-ikλt/2} e^{λ(w-1)|X|²} δ^(a)(X,X)`, `w = e^{-2iλt}`.
pub fn tension(a: usize, t: f64, x: &[f64], params: &PhysParams) -> Result<Complex64> {
    let d = zonal_kernel(Sigma::I, a, t, x, x, params)?;
    let lambda = params.lambda();
    let w = Complex64::new(0.0, -2.0 * lambda * t).exp();
    let rate = Complex64::new(0.0, -lambda) * (0.5 * params.k() as f64 + 2.0 * lambda * sq_norm(x) * w);
    Ok(d * rate)
}

/// Stable charge spread at the first (`quarter = 1`) or third
/// (`quarter = 3`) quarter point: `e^{-ikπq/4} e^{-2λX·Z̄} δ^(a)(X,Z)`,
/// which is `∓i e^{-2λX·Z̄} δ^(a)` for `k = 2`.
pub fn stable_spread(a: usize, quarter: u8, x: &[f64], z: &[f64], params: &PhysParams) -> Result<Complex64> {
    if quarter != 1 && quarter != 3 {
        return Err(invalid("quarter", format!("must be 1 or 3, got {quarter}")));
    }
    if x.len() != params.k() || z.len() != params.k() {
        return Err(invalid("x", format!("expected {} coordinates", params.k())));
    }
    let phase = Complex64::new(0.0, -(params.k() as f64) * PI * quarter as f64 / 4.0).exp();
    let gauss = (pairing(x, z) * (-2.0 * params.lambda())).exp();
    Ok(phase * gauss * zone_kernel_real(a, x, z, params))
}

/// Relative error of the identity
/// `-(2πμ/λ) ∂_t Z^(a)(ht/2πμ) = Z^(a) · (k/2)(h + 2h e^{-2hλt/2πμ}/(1 - e^{-2hλt/2πμ}))`
/// with the derivative taken by a fourth-order central difference.
pub fn log_derivative_residual(a: usize, t: f64, h: f64, mu: f64, params: &PhysParams) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("h", h)?;
    check_positive("mu", mu)?;
    let lambda = params.lambda();
    let scale = h / (2.0 * PI * mu);
    let z = |tt: f64| partition_function(Sigma::One, a, scale * tt, params).map(|c| c.re);
    let step = 1e-3 * t;
    let d = (-z(t + 2.0 * step)? + 8.0 * z(t + step)? - 8.0 * z(t - step)? + z(t - 2.0 * step)?)
        / (12.0 * step);
    let lhs = -(2.0 * PI * mu / lambda) * d;
    let e = (-2.0 * lambda * scale * t).exp();
    let rhs = z(t)? * 0.5 * params.k() as f64 * (h + 2.0 * h * e / (1.0 - e));
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// Periodic Dirac-Feynman quantities whose moduli are scanned over one
/// periodicity interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PeriodicQuantity {
    /// `|Z_σ^(a)(t)|²`.
    PartitionDensity { sigma: Sigma },
    /// `|Ẽ_σ(t)|²`, the average energy in kernel time (`κ = 1`, `h = λ`,
    /// scaled by `k/2`).
    EnergyDensity { sigma: Sigma },
    /// `|d_σ^(a)(t,X,X)|²`.
    DiagonalDensity { sigma: Sigma, x: Vec<f64> },
    /// `|∂_t d_i^(a)(t,X,X)|²`.
    TensionDensity { x: Vec<f64> },
}

impl PeriodicQuantity {
    fn sigma(&self) -> Sigma {
        match self {
            PeriodicQuantity::PartitionDensity { sigma }
            | PeriodicQuantity::EnergyDensity { sigma }
            | PeriodicQuantity::DiagonalDensity { sigma, .. } => *sigma,
            PeriodicQuantity::TensionDensity { .. } => Sigma::I,
        }
    }

    /// Value at kernel time `t`, or `None` at a pole.
    pub fn eval(&self, a: usize, t: f64, params: &PhysParams) -> Result<Option<f64>> {
        let lambda = params.lambda();
        let sigma = self.sigma();
        let v = match self {
            PeriodicQuantity::PartitionDensity { .. } => {
                if t <= 0.0 || (sigma == Sigma::I && (lambda * t).sin().abs() < SINGULAR_GUARD) {
                    return Ok(None);
                }
                partition_function(sigma, a, t, params)?.norm_sqr()
            }
            PeriodicQuantity::EnergyDensity { .. } => {
                if t <= 0.0 || (sigma == Sigma::I && (lambda * t).sin().abs() < SINGULAR_GUARD) {
                    return Ok(None);
                }
                let e = average_energy(sigma, 1.0 / t, 1.0, lambda)?;
                (e * (0.5 * params.k() as f64)).norm_sqr()
            }
            PeriodicQuantity::DiagonalDensity { x, .. } => zonal_kernel(sigma, a, t, x, x, params)?.norm_sqr(),
            PeriodicQuantity::TensionDensity { x } => tension(a, t, x, params)?.norm_sqr(),
        };
        Ok(v.is_finite().then_some(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
    Pole,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub time: f64,
    pub kind: ExtremumKind,
    /// `None` at poles.
    pub value: Option<f64>,
}

/// Locates the extrema of a periodic quantity on `[0, L]`, `L = 2π/λ`, by
/// sampling at `samples` evenly spaced times (rounded up to a multiple of 4)
/// and refining each bracketed extremum by bisection on the sign of a
/// symmetric difference. Extrema at `t = 0` are also reported at `t = L`.
pub fn find_period_extrema(
    quantity: &PeriodicQuantity,
    a: usize,
    params: &PhysParams,
    samples: usize,
    exec: Exec,
) -> Result<Vec<Extremum>> {
    if quantity.sigma() == Sigma::One {
        return Err(ZoneError::NotPeriodic("Wiener-Kac quantities decay monotonically in t"));
    }
    if samples < 8 {
        return Err(invalid("samples", "need at least 8 samples per period"));
    }
    let n = samples.div_ceil(4) * 4;
    let period = periodicity_interval(params);
    let time = |i: usize| period * (i as f64 / n as f64);
    let values = exec.map_range(n, |i| quantity.eval(a, time(i), params));
    let values: Vec<Option<f64>> = values.into_iter().collect::<Result<_>>()?;
    let eval = |t: f64| quantity.eval(a, t.rem_euclid(period), params).ok().flatten();
    let mut out = Vec::new();
    for i in 0..n {
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        let kind = match (values[i], prev, next) {
            (None, _, _) => Some(ExtremumKind::Pole),
            (Some(v), Some(p), Some(q)) if v < p && v <= q => Some(ExtremumKind::Minimum),
            (Some(v), Some(p), Some(q)) if v > p && v >= q => Some(ExtremumKind::Maximum),
            _ => None,
        };
        let Some(kind) = kind else { continue };
        let t0 = time(i);
        let t = match kind {
            ExtremumKind::Pole => t0,
            _ => refine(&eval, t0 - period / n as f64, t0 + period / n as f64, kind, period),
        };
        let t = t.rem_euclid(period);
        let t = if t.min(period - t) < 1e-12 * period { 0.0 } else { t };
        out.push(Extremum {
            time: t,
            kind,
            value: eval(t),
        });
        if t == 0.0 {
            out.push(Extremum {
                time: period,
                kind,
                value: eval(period),
            });
        }
    }
    out.sort_by(|p, q| p.time.total_cmp(&q.time));
    Ok(out)
}

fn refine<F: Fn(f64) -> Option<f64>>(f: &F, mut lo: f64, mut hi: f64, kind: ExtremumKind, period: f64) -> f64 {
    let h = 1e-5 * period;
    let slope = |t: f64| -> f64 {
        match (f(t + h), f(t - h)) {
            (Some(p), Some(q)) => {
                let s = p - q;
                if kind == ExtremumKind::Maximum {
                    -s
                } else {
                    s
                }
            }
            _ => 0.0,
        }
    };
    for _ in 0..200 {
        if hi - lo <= 1e-14 * period {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
