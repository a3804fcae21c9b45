//! The Pauli-Dirac operator on two-component spinors over the plane.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{apply_zeeman, eigen_residual, inner_product, to_standard, StandardState};
use crate::coords::{pairing, sq_dist, sq_norm};
use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;
use crate::params::PhysParams;
use crate::poly::ZonePolynomial;
use crate::quadrature::{QuadratureRule, TensorGrid};
use crate::special::laguerre_unchecked;

pub type Matrix2 = [[Complex64; 2]; 2];

const EIGEN_TOLERANCE: f64 = 1e-10;

/// A spinor `φ = (φ₁, φ₂)` of weighted-space polynomials on the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub up: ZonePolynomial,
    pub down: ZonePolynomial,
}

impl SpinorField {
    pub fn new(up: ZonePolynomial, down: ZonePolynomial) -> Result<Self> {
        up.same_params(&down)?;
        up.params().require_plane()?;
        Ok(Self { up, down })
    }

    pub fn zero(params: PhysParams) -> Result<Self> {
        Self::new(ZonePolynomial::zero(params)?, ZonePolynomial::zero(params)?)
    }

    /// `(f, 0)`.
    pub fn upper(f: ZonePolynomial) -> Result<Self> {
        let zero = ZonePolynomial::zero(*f.params())?;
        Self::new(f, zero)
    }

    /// `(0, f)`.
    pub fn lower(f: ZonePolynomial) -> Result<Self> {
        let zero = ZonePolynomial::zero(*f.params())?;
        Self::new(zero, f)
    }

    pub fn params(&self) -> &PhysParams {
        self.up.params()
    }

    /// `⟨φ, γ⟩ = ⟨φ₁, γ₁⟩ + ⟨φ₂, γ₂⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        Ok(inner_product(&self.up, &other.up)? + inner_product(&self.down, &other.down)?)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).map(|c| c.re.max(0.0).sqrt()).unwrap_or(f64::NAN)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            up: self.up.scale(c),
            down: self.down.scale(c),
        }
    }

    pub fn axpy(&self, c: Complex64, other: &Self) -> Result<Self> {
        Ok(Self {
            up: self.up.axpy(c, &other.up)?,
            down: self.down.axpy(c, &other.down)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn eval(&self, z: &[Complex64]) -> [Complex64; 2] {
        [self.up.eval(z), self.down.eval(z)]
    }

    /// Both components carried to the standard space.
    pub fn to_standard(&self) -> [StandardState; 2] {
        [to_standard(&self.up), to_standard(&self.down)]
    }
}

/// The spin matrices `(σ₁, σ₂, σ₀)`.
pub fn spin_matrices() -> (Matrix2, Matrix2, Matrix2) {
    let o = Complex64::new(0.0, 0.0);
    let u = Complex64::new(1.0, 1.0) * FRAC_1_SQRT_2;
    let sigma1 = [[o, u.conj()], [u, o]];
    let sigma2 = [[o, u], [u.conj(), o]];
    let one = Complex64::new(1.0, 0.0);
    let sigma0 = [[one, o], [o, -one]];
    (sigma1, sigma2, sigma0)
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PadiVariant {
    #[default]
    Z,
    /// Adds `2λσ₀`.
    Zf,
}

impl PadiVariant {
    fn shift(self, params: &PhysParams) -> f64 {
        match self {
            PadiVariant::Z => 0.0,
            PadiVariant::Zf => 2.0 * params.lambda(),
        }
    }
}

impl std::str::FromStr for PadiVariant {
    type Err = ZoneError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(PadiVariant::Z),
            "zf" => Ok(PadiVariant::Zf),
            other => Err(ZoneError::Parse(format!("unknown PaDi variant `{other}` (expected z or zf)"))),
        }
    }
}

/// `𝒟₁ = √2(1+i)(∂_z̄ - λz)`.
pub fn d1(f: &ZonePolynomial) -> Result<ZonePolynomial> {
    let lambda = f.params().lambda();
    let inner = f.d_zbar(0).try_sub(&f.mul_z(0).scale_re(lambda))?;
    Ok(inner.scale(Complex64::new(SQRT_2, SQRT_2)))
}

/// `𝒟₂ = √2(-1+i)∂_z`.
pub fn d2(f: &ZonePolynomial) -> ZonePolynomial {
    f.d_z(0).scale(Complex64::new(-SQRT_2, SQRT_2))
}

/// `𝒫𝒟(φ) = (𝒟₁φ₂, 𝒟₂φ₁)/√2`, plus `2λσ₀φ` for the `Zf` variant.
pub fn apply_padi(phi: &SpinorField, variant: PadiVariant) -> Result<SpinorField> {
    phi.params().require_plane()?;
    let mut up = d1(&phi.down)?.scale_re(FRAC_1_SQRT_2);
    let mut down = d2(&phi.up).scale_re(FRAC_1_SQRT_2);
    let c = variant.shift(phi.params());
    if c != 0.0 {
        up = up.axpy(Complex64::new(c, 0.0), &phi.up)?;
        down = down.axpy(Complex64::new(-c, 0.0), &phi.down)?;
    }
    SpinorField::new(up, down)
}

/// `‖𝒫𝒟_Z²φ - (H_Z - λσ₀)φ‖`.
pub fn padi_square_residual(phi: &SpinorField) -> Result<f64> {
    let twice = apply_padi(&apply_padi(phi, PadiVariant::Z)?, PadiVariant::Z)?;
    let lambda = phi.params().lambda();
    let up = apply_zeeman(&phi.up, false)?.axpy(Complex64::new(-lambda, 0.0), &phi.up)?;
    let down = apply_zeeman(&phi.down, false)?.axpy(Complex64::new(lambda, 0.0), &phi.down)?;
    Ok(twice.sub(&SpinorField::new(up, down)?)?.norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinSign {
    Plus,
    Minus,
}

impl SpinSign {
    fn value(self) -> f64 {
        match self {
            SpinSign::Plus => 1.0,
            SpinSign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenspinor {
    pub spinor: SpinorField,
    pub eigenvalue: f64,
    /// `μ_j`, the eigenvalue of `𝒫𝒟_Z²` on the base spinor.
    pub mu: f64,
    /// Normalization constant `Q_j` relative to the normalized base.
    pub q: f64,
}

/// Eigenspinor `ψ_{j±} = Q_j(φ_j + c·𝒫𝒟_Z φ_j)` built from a scalar
/// eigenfunction `φ`, with `φ₁ = (φ, 0)` and `φ₂ = (0, φ)`. For the `Z`
/// variant `c = ±μ_j^{-1/2}` and the eigenvalue is `±√μ_j`; for `Zf` the
/// eigenvalue is `±√(μ_j + 4λ²)`. The zero mode (`j = 1`, `μ₁ = 0`) gives
/// `ψ₊ = φ₁` and `ψ₋ = 0`.
pub fn eigenspinors(base: &ZonePolynomial, j: u8, sign: SpinSign, variant: PadiVariant) -> Result<Eigenspinor> {
    let params = *base.params();
    params.require_plane()?;
    let s_j = match j {
        1 => 1.0,
        2 => -1.0,
        _ => return Err(invalid("j", format!("must be 1 or 2, got {j}"))),
    };
    let (nu, residual) = eigen_residual(base, false)?;
    if residual > EIGEN_TOLERANCE {
        return Err(ZoneError::NotEigenfunction { residual });
    }
    let lambda = params.lambda();
    let phi = base.scale_re(1.0 / crate::algebra::norm(base));
    let mut mu = nu - s_j * lambda;
    if mu.abs() < 1e-12 * nu.abs().max(lambda) {
        mu = 0.0;
    }
    if mu < 0.0 {
        return Err(invalid("base", format!("PD² eigenvalue {mu} is negative")));
    }
    let c = variant.shift(&params);
    let phi_j = if j == 1 {
        SpinorField::upper(phi)?
    } else {
        SpinorField::lower(phi)?
    };
    if mu == 0.0 {
        let e = c * s_j;
        return Ok(match sign {
            SpinSign::Plus => Eigenspinor {
                spinor: phi_j,
                eigenvalue: e,
                mu,
                q: 1.0,
            },
            SpinSign::Minus => Eigenspinor {
                spinor: SpinorField::zero(params)?,
                eigenvalue: -e,
                mu,
                q: 0.0,
            },
        });
    }
    let e = sign.value() * (mu + c * c).sqrt();
    let coeff = (e - c * s_j) / mu;
    let raw = phi_j.axpy(Complex64::new(coeff, 0.0), &apply_padi(&phi_j, PadiVariant::Z)?)?;
    let q = 1.0 / raw.norm();
    Ok(Eigenspinor {
        spinor: raw.scale(Complex64::new(q, 0.0)),
        eigenvalue: e,
        mu,
        q,
    })
}

/// `‖𝒫𝒟ψ - eψ‖`.
pub fn eigenspinor_residual(psi: &SpinorField, eigenvalue: f64, variant: PadiVariant) -> Result<f64> {
    let image = apply_padi(psi, variant)?;
    Ok(image.axpy(Complex64::new(-eigenvalue, 0.0), psi)?.norm())
}

/// The literal printed normalization `1/((1 - 2(-1)^j|z|)² + 1)^{1/2}`.
pub fn printed_normalization(j: u8, z_modulus: f64) -> f64 {
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    1.0 / ((1.0 - 2.0 * sign * z_modulus).powi(2) + 1.0).sqrt()
}

/// Anomalous projection kernel `𝒬^(a)_(j)(X, Y)` on the plane.
pub fn anomalous_kernel(a: usize, j: u8, x: &[f64], y: &[f64], params: &PhysParams) -> Result<Matrix2> {
    params.require_plane()?;
    if x.len() != 2 || y.len() != 2 {
        return Err(invalid("x", "expected 2 coordinates"));
    }
    let sign = match j {
        1 => 1.0,
        2 => -1.0,
        _ => return Err(invalid("j", format!("must be 1 or 2, got {j}"))),
    };
    Ok(anomalous_unchecked(a, sign, x, y, params))
}

pub(crate) fn anomalous_unchecked(a: usize, sign: f64, x: &[f64], y: &[f64], params: &PhysParams) -> Matrix2 {
    let lambda = params.lambda();
    let pre = lambda / (2.0 * PI);
    let xy = pairing(x, y);
    let gauss = (-0.5 * lambda * (sq_norm(x) + sq_norm(y))).exp();
    let lag = laguerre_unchecked(a, 0.0, lambda * sq_dist(x, y));
    let bergman = (xy * lambda).exp() * lag;
    let extra = (xy.conj() * lambda).powu(a as u32);
    let o = Complex64::new(0.0, 0.0);
    [[(bergman + extra * sign) * (pre * gauss), o], [o, bergman * (pre * gauss)]]
}

/// `∫ 𝒬(X, W) 𝒬(W, Y) dW` by Gauss-Hermite quadrature.
#[allow(clippy::too_many_arguments)]
pub fn anomalous_composition(
    a: usize,
    j: u8,
    x: &[f64],
    y: &[f64],
    params: &PhysParams,
    order: usize,
    exec: Exec,
) -> Result<Matrix2> {
    anomalous_kernel(a, j, x, y, params)?;
    let sign = if j == 1 { 1.0 } else { -1.0 };
    let rule = QuadratureRule::gauss_hermite(order)?;
    let grid = TensorGrid::hermite(&rule, &[0.0, 0.0], 1.0 / params.lambda().sqrt())?;
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = grid.integrate(exec, |w| {
                let left = anomalous_unchecked(a, sign, x, w, params);
                let right = anomalous_unchecked(a, sign, w, y, params);
                left[r][0] * right[0][c] + left[r][1] * right[1][c]
            });
        }
    }
    Ok(out)
}

/// Largest component error of `𝒬∘𝒬 - 𝒬` relative to the largest component of `𝒬`.
pub fn idempotency_error(a: usize, j: u8, x: &[f64], y: &[f64], params: &PhysParams, order: usize, exec: Exec) -> Result<f64> {
    let q = anomalous_kernel(a, j, x, y, params)?;
    let qq = anomalous_composition(a, j, x, y, params, order, exec)?;
    let scale = q.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    let err = q
        .iter()
        .flatten()
        .zip(qq.iter().flatten())
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    Ok(err / scale)
}

/// Relative distance of `target` from the span of `family`.
pub fn containment_residual(target: &SpinorField, family: &[SpinorField]) -> Result<f64> {
    let n = family.len();
    let tn = target.norm();
    if tn == 0.0 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    let mut rhs = DVector::<Complex64>::zeros(n);
    for i in 0..n {
        for k in 0..n {
            gram[(i, k)] = family[k].inner(&family[i])?;
        }
        rhs[i] = target.inner(&family[i])?;
    }
    let coeffs = gram
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| invalid("family", e.to_string()))?;
    let mut r = target.clone();
    for (i, f) in family.iter().enumerate() {
        r = r.axpy(-coeffs[i], f)?;
    }
    Ok(r.norm() / tn)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PhysParams {
        PhysParams::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spin_matrix_relations() {
        let (s1, s2, s0) = spin_matrices();
        let id = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        for (a, b, want) in [(&s1, &s1, 2.0), (&s2, &s2, 2.0), (&s1, &s2, 0.0)] {
            let ab = mat_mul(a, b);
            let ba = mat_mul(b, a);
            for i in 0..2 {
                for k in 0..2 {
                    assert!((ab[i][k] + ba[i][k] - id[i][k] * want).norm() < 1e-15);
                }
            }
        }
        let sq = mat_mul(&s0, &s0);
        assert_eq!(sq, id);
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(s2[i][k], s1[i][k].conj());
            }
        }
    }

    #[test]
    fn component_examples() {
        let z = ZonePolynomial::z(p(), 0).unwrap();
        let one = ZonePolynomial::one(p()).unwrap();
        assert_eq!(d2(&z), ZonePolynomial::one(p()).unwrap().scale(c(-SQRT_2, SQRT_2)));
        assert_eq!(d1(&one).unwrap(), z.scale(c(-SQRT_2, -SQRT_2)));
        let up = SpinorField::upper(z.clone()).unwrap();
        let image = apply_padi(&up, PadiVariant::Z).unwrap();
        assert!(image.up.is_zero());
        assert!(!image.down.is_zero());
    }

    #[test]
    fn square_identity_on_constants() {
        let phi = SpinorField::upper(ZonePolynomial::one(p()).unwrap()).unwrap();
        assert_eq!(padi_square_residual(&phi).unwrap(), 0.0);
    }

    #[test]
    fn zero_mode() {
        let zb = ZonePolynomial::zbar(p(), 0).unwrap();
        let e = eigenspinors(&zb, 1, SpinSign::Plus, PadiVariant::Z).unwrap();
        assert_eq!(e.mu, 0.0);
        assert_eq!(e.eigenvalue, 0.0);
        let m = eigenspinors(&zb, 1, SpinSign::Minus, PadiVariant::Z).unwrap();
        assert_eq!(m.spinor.norm(), 0.0);
    }

    #[test]
    fn rejects_non_eigenfunctions() {
        let f = ZonePolynomial::from_degrees(p(), &[1], &[1]).unwrap();
        assert!(matches!(
            eigenspinors(&f, 1, SpinSign::Plus, PadiVariant::Z),
            Err(ZoneError::NotEigenfunction { .. })
        ));
        assert!(SpinorField::upper(ZonePolynomial::one(PhysParams::new(1.0, 4).unwrap()).unwrap()).is_err());
    }

    #[test]
    fn printed_normalization_at_origin() {
        assert!((printed_normalization(1, 0.0) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((printed_normalization(2, 0.0) - FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
