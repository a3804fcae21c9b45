//! Wiener-Kac (σ = 1) and Dirac-Feynman (σ = i) kernels, global and zonal,
//! partition functions, spectral evolution, and quadrature cross-checks.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::inner_product;
use crate::coords::{pairing, sq_dist, sq_norm, symplectic};
use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;
use crate::params::{ChargeSign, PhysParams};
use crate::poly::ZonePolynomial;
use crate::quadrature::{with_doubling, QuadratureRule, TensorGrid};
use crate::special::{laguerre_complex, multiplicity_factor};
use crate::zones::{zone_elements, zone_kernel_real, zone_of};

/// Guard band on `|sin λt|` for the global Dirac-Feynman kernel.
pub const SINGULAR_GUARD: f64 = 1e-9;

/// Tolerance used to decide zone membership of evolved states.
const ZONE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sigma {
    /// Heat flow, `e^{-tH}`.
    One,
    /// Schrödinger flow, `e^{-itH}`.
    I,
}

impl Sigma {
    pub fn value(self) -> Complex64 {
        match self {
            Sigma::One => Complex64::new(1.0, 0.0),
            Sigma::I => Complex64::new(0.0, 1.0),
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sigma::One => "1",
            Sigma::I => "i",
        })
    }
}

impl FromStr for Sigma {
    type Err = ZoneError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "one" | "wk" => Ok(Sigma::One),
            "i" | "df" => Ok(Sigma::I),
            other => Err(invalid("sigma", format!("expected `1` or `i`, got `{other}`"))),
        }
    }
}

/// Which closed form of the zonal kernel to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelForm {
    /// `e^{-kλtσ/2} e^{λ(w-1)X·Z̄} δ^(a)(X,Z)`, `w = e^{-2λtσ}`.
    #[default]
    Published,
    /// The kernel of `e^{-σtH}` restricted to the zone, summed in closed form.
    Spectral,
}

fn check_time(t: f64, strict: bool) -> Result<()> {
    if !t.is_finite() || t < 0.0 || (strict && t == 0.0) {
        let bound = if strict { "positive" } else { "non-negative" };
        return Err(invalid("t", format!("must be {bound} and finite, got {t}")));
    }
    Ok(())
}

fn check_point(x: &[f64], params: &PhysParams, name: &'static str) -> Result<()> {
    if x.len() != params.k() {
        return Err(invalid(name, format!("expected {} coordinates, got {}", params.k(), x.len())));
    }
    Ok(())
}

/// `w = e^{-2λtσ}`.
#[inline]
fn decay(sigma: Sigma, t: f64, lambda: f64) -> Complex64 {
    (sigma.value() * (-2.0 * lambda * t)).exp()
}

/// Prefactor and Gaussian coefficient of the global kernel:
/// `d = pre · exp(-coef |X-Y|² - iλs⟨X,JY⟩)`.
fn global_parts(sigma: Sigma, t: f64, params: &PhysParams) -> Result<(Complex64, Complex64)> {
    check_time(t, true)?;
    let lambda = params.lambda();
    let half = params.half_dim() as i32;
    let lt = lambda * t;
    match sigma {
        Sigma::One => {
            let pre = (lambda / (2.0 * PI * lt.sinh())).powi(half);
            Ok((Complex64::new(pre, 0.0), Complex64::new(0.5 * lambda / lt.tanh(), 0.0)))
        }
        Sigma::I => {
            let s = lt.sin();
            if s.abs() < SINGULAR_GUARD {
                return Err(ZoneError::SingularTime {
                    t,
                    guard: SINGULAR_GUARD,
                });
            }
            let pre = (Complex64::new(0.0, -1.0) * (lambda / (2.0 * PI * s))).powi(half);
            Ok((pre, Complex64::new(0.0, -0.5 * lambda * lt.cos() / s)))
        }
    }
}

/// Global kernel of `e^{-σtH_Z}`.
pub fn global_kernel(sigma: Sigma, t: f64, x: &[f64], y: &[f64], params: &PhysParams) -> Result<Complex64> {
    check_point(x, params, "x")?;
    check_point(y, params, "y")?;
    let (pre, coef) = global_parts(sigma, t, params)?;
    let s = params.charge().orientation();
    let phase = Complex64::new(0.0, -params.lambda() * s * symplectic(x, y));
    Ok(pre * (phase - coef * sq_dist(x, y)).exp())
}

/// Global kernel continued to complex coordinates (bilinear extension of
/// `|X-Y|²` and `⟨X,JY⟩`), used on rotated integration contours.
pub fn global_kernel_complex(
    sigma: Sigma,
    t: f64,
    x: &[Complex64],
    y: &[Complex64],
    params: &PhysParams,
) -> Result<Complex64> {
    if x.len() != params.k() || y.len() != params.k() {
        return Err(invalid("x", format!("expected {} coordinates", params.k())));
    }
    let (pre, coef) = global_parts(sigma, t, params)?;
    let s = params.charge().orientation();
    let mut d2 = Complex64::new(0.0, 0.0);
    let mut sym = Complex64::new(0.0, 0.0);
    for j in (0..x.len()).step_by(2) {
        d2 += (x[j] - y[j]) * (x[j] - y[j]) + (x[j + 1] - y[j + 1]) * (x[j + 1] - y[j + 1]);
        sym += x[j + 1] * y[j] - x[j] * y[j + 1];
    }
    let phase = Complex64::new(0.0, -params.lambda() * s) * sym;
    Ok(pre * (phase - coef * d2).exp())
}

/// Scalar factor turning an `H_Z` kernel into an `H_Zf` kernel:
/// `e^{-σt·2kλ²}`.
pub fn field_factor(sigma: Sigma, t: f64, params: &PhysParams) -> Complex64 {
    let lambda = params.lambda();
    (sigma.value() * (-t * 2.0 * params.k() as f64 * lambda * lambda)).exp()
}

/// Zonal kernel in the published closed form. At `t = 0` it is the zone
/// kernel `δ^(a)`; the Dirac-Feynman branch is entire in `t`.
pub fn zonal_kernel(sigma: Sigma, a: usize, t: f64, x: &[f64], z: &[f64], params: &PhysParams) -> Result<Complex64> {
    zonal_kernel_form(KernelForm::Published, sigma, a, t, x, z, params)
}

/// Zonal kernel obtained by summing the spectral series of the zone.
pub fn zonal_kernel_spectral(
    sigma: Sigma,
    a: usize,
    t: f64,
    x: &[f64],
    z: &[f64],
    params: &PhysParams,
) -> Result<Complex64> {
    zonal_kernel_form(KernelForm::Spectral, sigma, a, t, x, z, params)
}

pub fn zonal_kernel_form(
    form: KernelForm,
    sigma: Sigma,
    a: usize,
    t: f64,
    x: &[f64],
    z: &[f64],
    params: &PhysParams,
) -> Result<Complex64> {
    check_time(t, false)?;
    check_point(x, params, "x")?;
    check_point(z, params, "z")?;
    Ok(zonal_unchecked(form, sigma, a, t, x, z, params))
}

#[inline]
pub(crate) fn zonal_unchecked(
    form: KernelForm,
    sigma: Sigma,
    a: usize,
    t: f64,
    x: &[f64],
    z: &[f64],
    params: &PhysParams,
) -> Complex64 {
    let lambda = params.lambda();
    let half = params.half_dim();
    let sv = sigma.value();
    if params.charge() == ChargeSign::Positive {
        let mu = (2.0 * a as f64 + half as f64) * lambda;
        return (sv * (-t * mu)).exp() * zone_kernel_real(a, x, z, params);
    }
    let w = decay(sigma, t, lambda);
    let ground = (sv * (-(half as f64) * lambda * t)).exp();
    match form {
        KernelForm::Published => {
            ground * (pairing(x, z) * (w - 1.0) * lambda).exp() * zone_kernel_real(a, x, z, params)
        }
        KernelForm::Spectral => {
            let alpha = half as f64 - 1.0;
            let mut arg = Complex64::new(0.0, 0.0);
            for (xc, zc) in x.chunks_exact(2).zip(z.chunks_exact(2)) {
                let xi = Complex64::new(xc[0], xc[1]);
                let zi = Complex64::new(zc[0], zc[1]);
                arg += (w * xi - zi) * (xi.conj() / w - zi.conj());
            }
            let lag = laguerre_complex(a, alpha, arg * lambda);
            let pre = (lambda / PI).powi(half as i32);
            let expo = (pairing(x, z) * w - 0.5 * (sq_norm(x) + sq_norm(z))) * lambda;
            ground * w.powu(a as u32) * lag * expo.exp() * pre
        }
    }
}

/// Zonal partition function
/// `binom(a+k/2-1, a) e^{-kλtσ/2} / (1 - e^{-2λtσ})^{k/2}`.
pub fn partition_function(sigma: Sigma, a: usize, t: f64, params: &PhysParams) -> Result<Complex64> {
    check_time(t, true)?;
    if params.charge() == ChargeSign::Positive {
        return Err(ZoneError::NotIntegrable(
            "zones of the -J orientation are infinitely degenerate eigenspaces",
        ));
    }
    let lambda = params.lambda();
    if sigma == Sigma::I && (lambda * t).sin().abs() < SINGULAR_GUARD {
        return Err(ZoneError::SingularTime {
            t,
            guard: SINGULAR_GUARD,
        });
    }
    let half = params.half_dim();
    let binom = multiplicity_factor(a, params.k())? as f64;
    let w = decay(sigma, t, lambda);
    let ground = (sigma.value() * (-(half as f64) * lambda * t)).exp();
    Ok(ground / (Complex64::new(1.0, 0.0) - w).powi(half as i32) * binom)
}

/// `∫ d_σ^(a)(t,X,X) dX` by Gauss-Hermite quadrature with the Gaussian scale
/// read off the diagonal decay `e^{-λ Re(1-w)|X|²}`.
pub fn trace_quadrature(
    form: KernelForm,
    sigma: Sigma,
    a: usize,
    t: f64,
    params: &PhysParams,
    order: usize,
    exec: Exec,
) -> Result<Complex64> {
    check_time(t, true)?;
    let lambda = params.lambda();
    let rate = lambda * (1.0 - decay(sigma, t, lambda).re);
    if rate <= 1e-12 {
        return Err(ZoneError::NotIntegrable("diagonal does not decay at this time"));
    }
    let rule = QuadratureRule::gauss_hermite(order)?;
    let center = vec![0.0; params.k()];
    let grid = TensorGrid::hermite(&rule, &center, 1.0 / rate.sqrt())?;
    Ok(grid.integrate(exec, |x| zonal_unchecked(form, sigma, a, t, x, x, params)))
}

/// `e^{-σtH_Z} f`, computed spectrally in the zone containing `f`.
pub fn evolve(f: &ZonePolynomial, sigma: Sigma, t: f64) -> Result<ZonePolynomial> {
    check_time(t, false)?;
    let params = *f.params();
    if f.is_zero() {
        return Ok(f.clone());
    }
    let a = zone_of(f, ZONE_TOL)?;
    let elements = zone_elements(a, f.degree() as usize, params)?;
    let mut out = ZonePolynomial::zero(params)?;
    for e in &elements {
        let c = inner_product(f, &e.poly)?;
        if c.norm() == 0.0 {
            continue;
        }
        let phase = (sigma.value() * (-t * e.eigenvalue(false))).exp();
        out = out.axpy(c * phase, &e.poly)?;
    }
    Ok(out)
}

/// `∫ d_σ^(a)(t,X,Y) ψ(Y) dY` with `ψ` the standard-space image of `f`,
/// using the spectral zonal kernel.
pub fn evolve_by_convolution(
    f: &ZonePolynomial,
    a: usize,
    sigma: Sigma,
    t: f64,
    x: &[f64],
    order: usize,
    exec: Exec,
) -> Result<Complex64> {
    let params = *f.params();
    check_time(t, false)?;
    check_point(x, &params, "x")?;
    let lambda = params.lambda();
    let rule = QuadratureRule::gauss_hermite(order)?;
    let center = vec![0.0; params.k()];
    let grid = TensorGrid::hermite(&rule, &center, 1.0 / lambda.sqrt())?;
    Ok(grid.integrate(exec, |y| {
        zonal_unchecked(KernelForm::Spectral, sigma, a, t, x, y, &params)
            * f.eval_real(y)
            * (-0.5 * lambda * sq_norm(y)).exp()
    }))
}

/// `∫ d(s,X,M) d(t,M,Y) dM` for the spectral zonal kernel, by Gauss-Hermite.
pub fn compose_zonal(
    sigma: Sigma,
    a: usize,
    s: f64,
    t: f64,
    x: &[f64],
    y: &[f64],
    params: &PhysParams,
    order: usize,
    exec: Exec,
) -> Result<Complex64> {
    check_point(x, params, "x")?;
    check_point(y, params, "y")?;
    let rule = QuadratureRule::gauss_hermite(order)?;
    let center = vec![0.0; params.k()];
    let grid = TensorGrid::hermite(&rule, &center, 1.0 / params.lambda().sqrt())?;
    Ok(grid.integrate(exec, |m| {
        zonal_unchecked(KernelForm::Spectral, sigma, a, s, x, m, params)
            * zonal_unchecked(KernelForm::Spectral, sigma, a, t, m, y, params)
    }))
}

/// Chapman-Kolmogorov residual
/// `max |∫ d(s,X,M) d(t,M,Y) dM - d(s+t,X,Y)|` over the sample pairs.
/// Each composition is evaluated at `order` and `2·order`; a change larger
/// than `tolerance` is reported as non-convergence.
#[allow(clippy::too_many_arguments)]
pub fn semigroup_residual(
    sigma: Sigma,
    a: usize,
    s: f64,
    t: f64,
    samples: &[(Vec<f64>, Vec<f64>)],
    params: &PhysParams,
    order: usize,
    tolerance: f64,
    exec: Exec,
) -> Result<f64> {
    check_time(s, true)?;
    check_time(t, true)?;
    let mut worst = 0.0f64;
    for (x, y) in samples {
        let composed = with_doubling(order, tolerance, |n| {
            compose_zonal(sigma, a, s, t, x, y, params, n, exec)
        })?;
        let direct = zonal_kernel_spectral(sigma, a, s + t, x, y, params)?;
        worst = worst.max((composed - direct).norm());
    }
    Ok(worst)
}

/// `|Σ_{a<=A} d_σ^(a) - d_σ|` at one point pair, using the spectral zonal
/// kernels.
pub fn decomposition_error(
    sigma: Sigma,
    t: f64,
    x: &[f64],
    y: &[f64],
    a_max: usize,
    params: &PhysParams,
) -> Result<f64> {
    let global = global_kernel(sigma, t, x, y, params)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 0..=a_max {
        sum += zonal_kernel_spectral(sigma, a, t, x, y, params)?;
    }
    Ok((sum - global).norm())
}

/// Sampled kernel values over `points_x × points_y` (row-major in `x`).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelGrid {
    pub sigma: Sigma,
    pub a: Option<usize>,
    pub t: f64,
    pub points_x: Vec<Vec<f64>>,
    pub points_y: Vec<Vec<f64>>,
    pub values: Vec<Complex64>,
    pub params: PhysParams,
}

impl KernelGrid {
    /// Evaluates the global (`a = None`) or published zonal kernel.
    pub fn evaluate(
        sigma: Sigma,
        a: Option<usize>,
        t: f64,
        points_x: Vec<Vec<f64>>,
        points_y: Vec<Vec<f64>>,
        params: PhysParams,
        exec: Exec,
    ) -> Result<Self> {
        for p in points_x.iter().chain(&points_y) {
            check_point(p, &params, "point")?;
        }
        match a {
            None => {
                global_parts(sigma, t, &params)?;
            }
            Some(_) => check_time(t, false)?,
        }
        let ny = points_y.len();
        let values = exec.map_range(points_x.len() * ny, |idx| {
            let x = &points_x[idx / ny];
            let y = &points_y[idx % ny];
            match a {
                None => global_kernel(sigma, t, x, y, &params).expect("validated above"),
                Some(a) => zonal_unchecked(KernelForm::Published, sigma, a, t, x, y, &params),
            }
        });
        Ok(Self {
            sigma,
            a,
            t,
            points_x,
            points_y,
            values,
            params,
        })
    }

    pub fn value(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[ix * self.points_y.len() + iy]
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let half = self.params.half_dim();
        let mut header = Vec::new();
        for p in ["z", "w"] {
            for j in 1..=half {
                header.push(format!("re_{p}{j}"));
                header.push(format!("im_{p}{j}"));
            }
        }
        header.extend(["kernel_re", "kernel_im", "sigma", "t", "a"].map(String::from));
        writeln!(out, "{}", header.join(","))?;
        let a = self.a.map(|a| a.to_string()).unwrap_or_else(|| "global".into());
        for (ix, x) in self.points_x.iter().enumerate() {
            for (iy, y) in self.points_y.iter().enumerate() {
                let v = self.value(ix, iy);
                let coords: Vec<String> = x.iter().chain(y).map(|c| format!("{c:.17e}")).collect();
                writeln!(
                    out,
                    "{},{:.17e},{:.17e},{},{:.17e},{}",
                    coords.join(","),
                    v.re,
                    v.im,
                    self.sigma,
                    self.t,
                    a
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply_zeeman, norm};
    use crate::zones::zone_elements;

    fn p2() -> PhysParams {
        PhysParams::default()
    }

    #[test]
    fn global_diagonal_heat_value() {
        let p = PhysParams::new(0.7, 4).unwrap();
        let x = [0.3, -0.4, 0.1, 0.8];
        let t = 0.45f64;
        let want = (0.7 / (2.0 * PI * (0.7 * t).sinh())).powi(2);
        let got = global_kernel(Sigma::One, t, &x, &x, &p).unwrap();
        assert!((got - want).norm() < 1e-15 * want.max(1.0));
        assert!(global_kernel(Sigma::One, 40.0, &x, &[0.0; 4], &p).unwrap().norm() < 1e-10);
    }

    #[test]
    fn global_df_singular_time() {
        let p = p2();
        let r = global_kernel(Sigma::I, PI, &[0.1, 0.2], &[0.0, 0.0], &p);
        assert!(matches!(r, Err(ZoneError::SingularTime { .. })));
        assert!(global_kernel(Sigma::One, 0.0, &[0.0; 2], &[0.0; 2], &p).is_err());
    }

    #[test]
    fn complex_continuation_agrees_on_real_points() {
        let p = PhysParams::new(1.2, 2).unwrap();
        let x = [0.3, -0.7];
        let y = [-0.2, 0.5];
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let yc: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for sigma in [Sigma::One, Sigma::I] {
            let a = global_kernel(sigma, 0.4, &x, &y, &p).unwrap();
            let b = global_kernel_complex(sigma, 0.4, &xc, &yc, &p).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn zonal_kernels_at_time_zero_are_zone_kernels() {
        let p = PhysParams::new(1.0, 4).unwrap();
        let x = [0.3, -0.4, 0.1, 0.8];
        let z = [-0.1, 0.2, 0.5, 0.0];
        for form in [KernelForm::Published, KernelForm::Spectral] {
            for sigma in [Sigma::One, Sigma::I] {
                let d = zonal_kernel_form(form, sigma, 2, 0.0, &x, &z, &p).unwrap();
                assert!((d - zone_kernel_real(2, &x, &z, &p)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn forms_agree_on_holomorphic_zone() {
        let p = p2();
        let x = [0.3, -0.4];
        let z = [-0.1, 0.6];
        for sigma in [Sigma::One, Sigma::I] {
            let a = zonal_kernel(sigma, 0, 0.7, &x, &z, &p).unwrap();
            let b = zonal_kernel_spectral(sigma, 0, 0.7, &x, &z, &p).unwrap();
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn spectral_form_matches_truncated_spectral_sum() {
        let p = p2();
        let x = [0.3, -0.4];
        let z = [-0.1, 0.6];
        let zx = crate::coords::to_complex(&x);
        let zz = crate::coords::to_complex(&z);
        let g = (-0.5 * (sq_norm(&x) + sq_norm(&z))).exp();
        for a in 0..3 {
            let elements = zone_elements(a, a + 40, p).unwrap();
            for sigma in [Sigma::One, Sigma::I] {
                let sum: Complex64 = elements
                    .iter()
                    .map(|e| {
                        (sigma.value() * (-0.5 * e.eigenvalue(false))).exp()
                            * e.poly.eval(&zx)
                            * e.poly.eval(&zz).conj()
                    })
                    .sum::<Complex64>()
                    * g;
                let closed = zonal_kernel_spectral(sigma, a, 0.5, &x, &z, &p).unwrap();
                assert!((sum - closed).norm() < 1e-10, "a={a} {sigma}");
            }
        }
    }

    #[test]
    fn partition_function_examples() {
        let p = p2();
        let t = 0.3f64;
        let want = (-t).exp() / (1.0 - (-2.0 * t).exp());
        for a in 0..4 {
            let z = partition_function(Sigma::One, a, t, &p).unwrap();
            assert!((z.re - want).abs() < 1e-14 && z.im == 0.0);
        }
        let p4 = PhysParams::new(1.0, 4).unwrap();
        let z = partition_function(Sigma::One, 1, t, &p4).unwrap();
        let want = 2.0 * (-2.0 * t).exp() / (1.0 - (-2.0 * t).exp()).powi(2);
        assert!((z.re - want).abs() < 1e-13);
        assert!(partition_function(Sigma::I, 0, 2.0 * PI, &p).is_err());
    }

    #[test]
    fn evolution_examples() {
        let p = p2();
        let e = zone_elements(1, 5, p).unwrap();
        let f = e[2].poly.try_add(&e[4].poly.scale(Complex64::new(0.0, 0.5))).unwrap();
        assert_eq!(evolve(&f, Sigma::I, 0.0).unwrap().pruned(1e-14), f.clone().pruned(1e-14));
        let g = evolve(&f, Sigma::I, 0.8).unwrap();
        assert!((norm(&g) - norm(&f)).abs() < 1e-12);
        let mu = e[3].eigenvalue(false);
        let h = evolve(&e[3].poly, Sigma::One, 0.25).unwrap();
        let want = e[3].poly.scale_re((-0.25 * mu).exp());
        assert!(norm(&h.try_sub(&want).unwrap()) < 1e-13);
        let hz = apply_zeeman(&e[3].poly, false).unwrap();
        assert!(norm(&hz.try_sub(&e[3].poly.scale_re(mu)).unwrap()) < 1e-11);
        let mixed = ZonePolynomial::from_degrees(p, &[1], &[1]).unwrap();
        assert!(matches!(evolve(&mixed, Sigma::One, 0.1), Err(ZoneError::NotInZone { .. })));
    }

    #[test]
    fn kernel_grid_layout() {
        let p = p2();
        let xs = vec![vec![0.0, 0.0], vec![0.5, 0.0]];
        let ys = vec![vec![0.1, 0.1], vec![0.0, -0.3], vec![1.0, 0.0]];
        let g = KernelGrid::evaluate(Sigma::I, Some(1), 0.25, xs.clone(), ys.clone(), p, Exec::Sequential)
            .unwrap();
        assert_eq!(g.values.len(), 6);
        let v = zonal_kernel(Sigma::I, 1, 0.25, &xs[1], &ys[2], &p).unwrap();
        assert_eq!(g.value(1, 2), v);
        assert!(KernelGrid::evaluate(Sigma::I, None, PI, xs, ys, p, Exec::Sequential).is_err());
    }

    #[test]
    fn sigma_parsing() {
        assert_eq!("i".parse::<Sigma>().unwrap(), Sigma::I);
        assert_eq!("1".parse::<Sigma>().unwrap(), Sigma::One);
        assert!("2".parse::<Sigma>().is_err());
    }
}
