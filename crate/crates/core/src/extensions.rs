//! Clifford-module dimensions, Bose/Fermi sub-zones and the zonal Coulomb
//! Galerkin operator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::eigenvalue;
use crate::error::{invalid, Result, ZoneError};
use crate::params::PhysParams;
use crate::poly::ZonePolynomial;
use crate::quadrature::{with_doubling, QuadratureRule};
use crate::zones::{zone_elements, zone_elements_n, ZoneElement};

/// Eigenvalues closer than this are reported as one multiplicity group.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-8;

/// Minimal Clifford-module dimension `n_r` and the number of inequivalent
/// irreducible modules.
pub fn clifford_dimension(r: u32) -> Result<(u64, u8)> {
    if r < 1 {
        return Err(invalid("r", "must be at least 1"));
    }
    const EXPONENT: [u32; 8] = [0, 1, 2, 2, 3, 3, 3, 3];
    let p = r / 8;
    let n = 1u64
        .checked_shl(4 * p + EXPONENT[(r % 8) as usize])
        .ok_or_else(|| invalid("r", "dimension overflows u64"))?;
    let count = if r % 4 == 3 { 2 } else { 1 };
    Ok((n, count))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

/// `(f ± f∘swap)/2`, where `swap` exchanges the two complex coordinates.
pub fn symmetrize_subzone(f: &ZonePolynomial, kind: Statistics) -> Result<ZonePolynomial> {
    if f.params().k() != 4 {
        return Err(ZoneError::UnsupportedDimension {
            k: f.params().k(),
            supported: "4",
        });
    }
    let swapped = f.swap_coordinates();
    let sum = match kind {
        Statistics::Bosonic => f.try_add(&swapped)?,
        Statistics::Fermionic => f.try_sub(&swapped)?,
    };
    Ok(sum.scale_re(0.5))
}

/// Eigenvalues of a Hermitian matrix together with their multiplicity groups.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Multiplicity group of each eigenvalue.
    pub groups: Vec<usize>,
    /// `(representative value, multiplicity)` per group.
    pub multiplicities: Vec<(f64, usize)>,
}

impl Spectrum {
    fn of(matrix: &DMatrix<Complex64>) -> Self {
        let mut eigenvalues: Vec<f64> = SymmetricEigen::new(matrix.clone()).eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(f64::total_cmp);
        let mut groups = Vec::with_capacity(eigenvalues.len());
        let mut multiplicities: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &e in &eigenvalues {
            if e - last > MULTIPLICITY_TOLERANCE || multiplicities.is_empty() {
                multiplicities.push((e, 0));
            }
            last = e;
            multiplicities.last_mut().expect("pushed").1 += 1;
            groups.push(multiplicities.len() - 1);
        }
        Self {
            eigenvalues,
            groups,
            multiplicities,
        }
    }
}

/// Galerkin data of `H_Zf + V^(a)` on a truncated orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoulombGalerkin {
    /// `M_ij = ⟨(Q/r)φ_j, φ_i⟩`.
    pub potential: DMatrix<Complex64>,
    /// Matrix of `H_Zf + V` in the same basis.
    pub hamiltonian: DMatrix<Complex64>,
    pub spectrum: Spectrum,
    /// Hermiticity defect `max |M_ij - conj(M_ji)|`.
    pub hermiticity: f64,
}

/// Radial moments `∫_0^∞ r^{2m} e^{-λr²} dr` for `m = 0..=max_m` by
/// Gauss-Laguerre quadrature in `u = λr²` with weight `u^{-1/2}`.
fn radial_moments(max_m: usize, lambda: f64) -> Result<Vec<f64>> {
    let order = (max_m + 1).max(32);
    let mut rules: BTreeMap<usize, QuadratureRule> = BTreeMap::new();
    for n in [order, 2 * order] {
        rules.insert(n, QuadratureRule::gauss_laguerre(n, -0.5)?);
    }
    (0..=max_m)
        .map(|m| {
            let v = with_doubling(order, 1e-12, |n| {
                let r = &rules[&n];
                Ok(Complex64::new(r.integrate(|u| u.powi(m as i32)), 0.0))
            })?;
            Ok(0.5 * lambda.powf(-(m as f64) - 0.5) * v.re)
        })
        .collect()
}

/// `⟨(Q/r) g, f⟩` on the plane for polynomials in the weighted space.
fn coulomb_entry(f: &ZonePolynomial, g: &ZonePolynomial, q: f64, moments: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (mg, cg) in g.terms() {
        for (mf, cf) in f.terms() {
            let hol = mg.hol[0] + mf.anti[0];
            let anti = mg.anti[0] + mf.hol[0];
            if hol == anti {
                acc += cg * cf.conj() * (2.0 * PI * moments[hol as usize]);
            }
        }
    }
    acc * q
}

fn galerkin(basis: &[ZoneElement], q: f64, params: &PhysParams) -> Result<CoulombGalerkin> {
    params.require_plane()?;
    let n = basis.len();
    let max_m = basis.iter().map(|e| e.poly.degree() as usize).max().unwrap_or(0);
    let moments = radial_moments(max_m, params.lambda())?;
    let potential = DMatrix::from_fn(n, n, |i, j| coulomb_entry(&basis[i].poly, &basis[j].poly, q, &moments));
    let mut hamiltonian = potential.clone();
    for (i, e) in basis.iter().enumerate() {
        hamiltonian[(i, i)] += e.eigenvalue(true);
    }
    let mut hermiticity: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            hermiticity = hermiticity.max((potential[(i, j)] - potential[(j, i)].conj()).norm());
        }
    }
    let spectrum = Spectrum::of(&hamiltonian);
    Ok(CoulombGalerkin {
        potential,
        hamiltonian,
        spectrum,
        hermiticity,
    })
}

/// Zonal Coulomb operator `V^(a)` projected onto the first `basis_size`
/// orthonormal elements of zone `a`, together with `H_Zf + V^(a)`.
pub fn zonal_coulomb_matrix(a: usize, q: f64, basis_size: usize, params: &PhysParams) -> Result<CoulombGalerkin> {
    params.require_plane()?;
    if !q.is_finite() {
        return Err(invalid("Q", "must be finite"));
    }
    if basis_size == 0 {
        return Err(invalid("basis_size", "must be positive"));
    }
    let basis = zone_elements_n(a, basis_size, *params)?;
    galerkin(&basis, q, params)
}

/// Galerkin matrix of `H_Zf + Q/r` on all zone elements of total degree
/// `<= max_degree`, without projecting the potential back to one zone.
pub fn unprojected_coulomb_matrix(q: f64, max_degree: usize, params: &PhysParams) -> Result<CoulombGalerkin> {
    params.require_plane()?;
    let mut basis = Vec::new();
    for a in 0..=max_degree {
        basis.extend(zone_elements(a, max_degree, *params)?);
    }
    galerkin(&basis, q, params)
}

/// Diagonal of the unperturbed operator on the first `basis_size` elements
/// of zone `a`.
pub fn unperturbed_levels(a: usize, basis_size: usize, params: &PhysParams) -> Result<Vec<f64>> {
    Ok(zone_elements_n(a, basis_size, *params)?
        .iter()
        .map(|e| eigenvalue(e.leading.hol_degree(), e.leading.anti_degree(), params, true))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::apply_zeeman;

    #[test]
    fn clifford_examples() {
        assert_eq!(clifford_dimension(1).unwrap(), (2, 1));
        assert_eq!(clifford_dimension(3).unwrap(), (4, 2));
        assert_eq!(clifford_dimension(7).unwrap(), (8, 2));
        assert_eq!(clifford_dimension(8).unwrap(), (16, 1));
        assert!(clifford_dimension(0).is_err());
        for r in 1..=24 {
            assert_eq!(clifford_dimension(r + 8).unwrap().0, 16 * clifford_dimension(r).unwrap().0);
        }
    }

    #[test]
    fn fermionic_examples() {
        let p = PhysParams::new(1.0, 4).unwrap();
        let z1 = ZonePolynomial::z(p, 0).unwrap();
        let z2 = ZonePolynomial::z(p, 1).unwrap();
        let prod = z1.try_mul(&z2).unwrap();
        assert!(symmetrize_subzone(&prod, Statistics::Fermionic).unwrap().is_zero());
        let want = z1.try_sub(&z2).unwrap().scale_re(0.5);
        assert_eq!(symmetrize_subzone(&z1, Statistics::Fermionic).unwrap(), want);
        assert!(symmetrize_subzone(&ZonePolynomial::one(PhysParams::default()).unwrap(), Statistics::Bosonic).is_err());
    }

    #[test]
    fn symmetrization_commutes_with_hamiltonian() {
        let p = PhysParams::new(1.0, 4).unwrap();
        let f = ZonePolynomial::from_degrees(p, &[2, 0], &[0, 1])
            .unwrap()
            .try_add(&ZonePolynomial::from_degrees(p, &[0, 1], &[1, 1]).unwrap())
            .unwrap();
        for kind in [Statistics::Bosonic, Statistics::Fermionic] {
            let lhs = apply_zeeman(&symmetrize_subzone(&f, kind).unwrap(), true).unwrap();
            let rhs = symmetrize_subzone(&apply_zeeman(&f, true).unwrap(), kind).unwrap();
            assert!(lhs.try_sub(&rhs).unwrap().max_abs_coeff() < 1e-13);
        }
    }

    #[test]
    fn ground_state_expectation() {
        for lambda in [0.5, 1.0, 2.0] {
            let p = PhysParams::new(lambda, 2).unwrap();
            let g = zonal_coulomb_matrix(0, 1.5, 1, &p).unwrap();
            let want = 1.5 * (PI * lambda).sqrt();
            assert!((g.potential[(0, 0)].re - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn multiplicity_grouping() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0 + 1e-10, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        let s = Spectrum::of(&m);
        assert_eq!(s.multiplicities.len(), 2);
        assert_eq!(s.multiplicities[0].1, 2);
        assert_eq!(s.groups, vec![0, 0, 1]);
    }
}
