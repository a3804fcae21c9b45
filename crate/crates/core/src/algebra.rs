//! Exact operator algebra on the Gaussian-weighted space: inner products,
//! the weighted/standard adapter, and the Zeeman, angular-momentum and
//! Heisenberg-representation operators as monomial rewrites.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, ZoneError};
use crate::params::PhysParams;
use crate::poly::{Monomial, ZonePolynomial, MAX_HALF_DIM};
use crate::special::factorial;

/// `∫ z^p z̄^v conj(z^q z̄^w) e^{-λ|z|²} dA` on one complex coordinate.
pub fn monomial_inner_1d(p: u32, v: u32, q: u32, w: u32, lambda: f64) -> f64 {
    if p + w != v + q {
        return 0.0;
    }
    let n = (p + w) as usize;
    PI * factorial(n) / lambda.powi(n as i32 + 1)
}

fn monomial_inner(a: &Monomial, b: &Monomial, half: usize, lambda: f64) -> f64 {
    let mut acc = 1.0;
    for i in 0..half {
        acc *= monomial_inner_1d(a.hol[i], a.anti[i], b.hol[i], b.anti[i], lambda);
        if acc == 0.0 {
            break;
        }
    }
    acc
}

/// `⟨f, g⟩ = ∫ f ḡ e^{-λ|X|²} dX`, exact.
pub fn inner_product(f: &ZonePolynomial, g: &ZonePolynomial) -> Result<Complex64> {
    f.same_params(g)?;
    let half = f.params().half_dim();
    let lambda = f.params().lambda();
    let mut acc = Complex64::new(0.0, 0.0);
    for (ma, ca) in f.terms() {
        let sa = ma.sector();
        for (mb, cb) in g.terms() {
            if mb.sector() != sa {
                continue;
            }
            let w = monomial_inner(ma, mb, half, lambda);
            if w != 0.0 {
                acc += ca * cb.conj() * w;
            }
        }
    }
    Ok(acc)
}

pub fn norm(f: &ZonePolynomial) -> f64 {
    inner_product(f, f).map(|c| c.re.max(0.0).sqrt()).unwrap_or(0.0)
}

/// A weighted state moved to the standard `L²(R^k)` picture,
/// `X ↦ ψ(X) e^{-(λ/2)|X|²}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardState {
    weighted: ZonePolynomial,
}

impl StandardState {
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let lambda = self.weighted.params().lambda();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.weighted.eval_real(x) * (-0.5 * lambda * r2).exp()
    }

    pub fn weighted(&self) -> &ZonePolynomial {
        &self.weighted
    }

    pub fn into_weighted(self) -> ZonePolynomial {
        self.weighted
    }
}

pub fn to_standard(f: &ZonePolynomial) -> StandardState {
    StandardState { weighted: f.clone() }
}

/// The Zeeman operator on the weighted space. With `include_field_term` the
/// constant `2kλ²` of the full operator is added.
///
/// For the `J` orientation this is
/// `Σ_i (-2 ∂_{z_i}∂_{z̄_i} + 2λ z_i ∂_{z_i}) + kλ/2`; for `-J` the drift
/// acts on the antiholomorphic variables instead.
pub fn apply_zeeman(f: &ZonePolynomial, include_field_term: bool) -> Result<ZonePolynomial> {
    let params = *f.params();
    params.require_algebra_dim()?;
    let lambda = params.lambda();
    let s = params.charge().orientation();
    let half = params.half_dim();
    let k = params.k() as f64;
    let mut constant = 0.5 * k * lambda;
    if include_field_term {
        constant += 2.0 * k * lambda * lambda;
    }
    let mut out = f.scale_re(constant);
    for i in 0..half {
        let lap = f.d_zbar(i).d_z(i).scale_re(-2.0);
        out = out.try_add(&lap)?;
        let hol = f.d_z(i).mul_z(i).scale_re(lambda * (1.0 + s));
        let anti = f.d_zbar(i).mul_zbar(i).scale_re(lambda * (1.0 - s));
        out = out.try_add(&hol)?.try_add(&anti)?;
    }
    Ok(out)
}

/// Angular-momentum term `λ s·i Σ_i (z_i∂_{z_i} - z̄_i∂_{z̄_i})`;
/// `z^p z̄^v` has eigenvalue `iλs(p - v)`.
pub fn apply_angular_momentum(f: &ZonePolynomial) -> Result<ZonePolynomial> {
    let params = *f.params();
    params.require_algebra_dim()?;
    let factor = params.lambda() * params.charge().orientation();
    Ok(f.map_monomials(|m| {
        let d: i64 = m.sector().iter().sum();
        Some((*m, d as f64))
    })
    .scale(Complex64::new(0.0, factor)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Z(usize),
    ZBar(usize),
}

/// Heisenberg representation: `ρ(z_i) = -∂_{z̄_i} + λz_i`, `ρ(z̄_i) = ∂_{z_i}`.
pub fn apply_rep(generator: Generator, f: &ZonePolynomial) -> Result<ZonePolynomial> {
    let half = f.params().half_dim();
    let idx = match generator {
        Generator::Z(i) | Generator::ZBar(i) => i,
    };
    if idx >= half || idx >= MAX_HALF_DIM {
        return Err(ZoneError::IndexOutOfRange { index: idx, half });
    }
    match generator {
        Generator::Z(i) => f
            .mul_z(i)
            .scale_re(f.params().lambda())
            .try_sub(&f.d_zbar(i)),
        Generator::ZBar(i) => Ok(f.d_z(i)),
    }
}

/// Closed-form eigenvalue on a zone eigenfunction with the given total
/// holomorphic and antiholomorphic degrees.
pub fn eigenvalue(hol: u32, anti: u32, params: &PhysParams, include_field_term: bool) -> f64 {
    let lambda = params.lambda();
    let k = params.k() as f64;
    let level = match params.charge() {
        crate::params::ChargeSign::Negative => hol,
        crate::params::ChargeSign::Positive => anti,
    } as f64;
    let mut mu = (2.0 * level + 0.5 * k) * lambda;
    if include_field_term {
        mu += 2.0 * k * lambda * lambda;
    }
    mu
}

/// Rayleigh quotient `ν = ⟨Hf, f⟩/⟨f, f⟩` and the relative residual
/// `‖Hf - νf‖ / ‖f‖`.
pub fn eigen_residual(f: &ZonePolynomial, include_field_term: bool) -> Result<(f64, f64)> {
    let hf = apply_zeeman(f, include_field_term)?;
    let nf = inner_product(f, f)?.re;
    if nf <= 0.0 {
        return Err(ZoneError::NotEigenfunction { residual: f64::INFINITY });
    }
    let nu = inner_product(&hf, f)?.re / nf;
    let r = hf.axpy(Complex64::new(-nu, 0.0), f)?;
    Ok((nu, norm(&r) / nf.sqrt()))
}
