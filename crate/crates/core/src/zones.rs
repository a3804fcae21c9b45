//! Zeeman zones built two ways: Gram-Schmidt on the monomial spaces `G^(a)`
//! (exact inner products), and the closed-form Laguerre projection kernels.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::algebra::{eigenvalue, inner_product, norm};
use crate::coords::{pairing, sq_dist, sq_norm};
use crate::error::{invalid, Result, ZoneError};
use crate::exec::Exec;
use crate::params::PhysParams;
use crate::poly::{Monomial, ZonePolynomial, MAX_HALF_DIM};
use crate::quadrature::{QuadratureRule, TensorGrid};
use crate::special::laguerre_unchecked;

type Sector = [i64; MAX_HALF_DIM];

/// An orthonormal zone basis function together with the monomial it was
/// grown from (its leading term).
#[derive(Clone, Debug, PartialEq)]
pub struct ZoneElement {
    pub poly: ZonePolynomial,
    pub leading: Monomial,
}

impl ZoneElement {
    pub fn zone(&self) -> usize {
        self.leading.anti_degree() as usize
    }

    /// Eigenvalue of the Zeeman operator on this element.
    pub fn eigenvalue(&self, include_field_term: bool) -> f64 {
        eigenvalue(
            self.leading.hol_degree(),
            self.leading.anti_degree(),
            self.poly.params(),
            include_field_term,
        )
    }
}

fn graded_key(m: &Monomial) -> (u32, u32, [std::cmp::Reverse<u32>; 2], [std::cmp::Reverse<u32>; 2]) {
    use std::cmp::Reverse;
    (
        m.anti_degree(),
        m.hol_degree(),
        [Reverse(m.hol[0]), Reverse(m.hol[1])],
        [Reverse(m.anti[0]), Reverse(m.anti[1])],
    )
}

/// All monomials of the given angular sector with total degree `<= max_degree`,
/// ordered by zone and then graded lexicographically.
fn sector_chain(sector: Sector, max_degree: u32, half: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let lo = |m: i64| (-m).max(0) as u32;
    let deg = |m: i64, v: u32| (m + 2 * v as i64) as u32;
    let v0_min = lo(sector[0]);
    let mut v0 = v0_min;
    while deg(sector[0], v0) <= max_degree {
        let d0 = deg(sector[0], v0);
        let mut mono = Monomial::ONE;
        mono.anti[0] = v0;
        mono.hol[0] = (sector[0] + v0 as i64) as u32;
        if half == 1 {
            out.push(mono);
        } else {
            let mut v1 = lo(sector[1]);
            while d0 + deg(sector[1], v1) <= max_degree {
                let mut m = mono;
                m.anti[1] = v1;
                m.hol[1] = (sector[1] + v1 as i64) as u32;
                out.push(m);
                v1 += 1;
            }
        }
        v0 += 1;
    }
    out.sort_by_key(graded_key);
    out
}

/// Modified Gram-Schmidt over one sector chain.
fn sector_orthonormal(sector: Sector, max_degree: u32, params: PhysParams) -> Result<Vec<ZoneElement>> {
    let chain = sector_chain(sector, max_degree, params.half_dim());
    let mut done: Vec<ZoneElement> = Vec::with_capacity(chain.len());
    for m in chain {
        let mut v = ZonePolynomial::monomial(params, m, Complex64::new(1.0, 0.0))?;
        for _ in 0..2 {
            for q in &done {
                let c = inner_product(&v, &q.poly)?;
                v = v.axpy(-c, &q.poly)?;
            }
        }
        let n = norm(&v);
        done.push(ZoneElement {
            poly: v.scale_re(1.0 / n),
            leading: m,
        });
    }
    Ok(done)
}

fn zone_monomials(a: u32, max_degree: u32, half: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if a > max_degree {
        return out;
    }
    let hol_max = max_degree - a;
    if half == 1 {
        for p in 0..=hol_max {
            out.push(Monomial::new([p, 0], [a, 0]));
        }
    } else {
        for v0 in 0..=a {
            for p0 in 0..=hol_max {
                for p1 in 0..=(hol_max - p0) {
                    out.push(Monomial::new([p0, p1], [v0, a - v0]));
                }
            }
        }
    }
    out
}

/// Orthonormal basis elements of zone `a` up to total degree `max_degree`,
/// ordered graded-lexicographically on the holomorphic multi-degree.
pub fn zone_elements(a: usize, max_degree: usize, params: PhysParams) -> Result<Vec<ZoneElement>> {
    params.require_algebra_dim()?;
    if max_degree < a {
        return Err(invalid(
            "max_degree",
            format!("zone {a} is empty below total degree {a}, got {max_degree}"),
        ));
    }
    let a32 = a as u32;
    let monos = zone_monomials(a32, max_degree as u32, params.half_dim());
    let mut sectors: BTreeMap<Sector, ()> = BTreeMap::new();
    for m in &monos {
        sectors.insert(m.sector(), ());
    }
    let mut out = Vec::with_capacity(monos.len());
    for sector in sectors.keys() {
        for e in sector_orthonormal(*sector, max_degree as u32, params)? {
            if e.leading.anti_degree() == a32 {
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| {
        let m = e.leading;
        (m.hol_degree(), std::cmp::Reverse(m.hol), std::cmp::Reverse(m.anti))
    });
    Ok(out)
}

/// Orthonormal basis of the truncation of zone `a` to total degree
/// `max_degree`.
pub fn zone_basis(a: usize, max_degree: usize, params: PhysParams) -> Result<Vec<ZonePolynomial>> {
    Ok(zone_elements(a, max_degree, params)?
        .into_iter()
        .map(|e| e.poly)
        .collect())
}

/// The first `n` basis elements of zone `a`.
pub fn zone_elements_n(a: usize, n: usize, params: PhysParams) -> Result<Vec<ZoneElement>> {
    let mut d = a;
    loop {
        let mut e = zone_elements(a, d, params)?;
        if e.len() >= n {
            e.truncate(n);
            return Ok(e);
        }
        d += 1;
    }
}

/// Exact orthogonal projection of `f` onto zone `a`.
pub fn project_to_zone(f: &ZonePolynomial, a: usize) -> Result<ZonePolynomial> {
    let params = *f.params();
    params.require_algebra_dim()?;
    let mut by_sector: BTreeMap<Sector, Vec<(Monomial, Complex64)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        by_sector.entry(m.sector()).or_default().push((*m, *c));
    }
    let mut out = ZonePolynomial::zero(params)?;
    for (sector, terms) in by_sector {
        let max_deg = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if (max_deg as usize) < a {
            continue;
        }
        let part = ZonePolynomial::from_terms(params, terms)?;
        for e in sector_orthonormal(sector, max_deg, params)? {
            if e.zone() == a {
                let c = inner_product(&part, &e.poly)?;
                out = out.axpy(c, &e.poly)?;
            }
        }
    }
    Ok(out)
}

/// Relative distance `‖f - P_a f‖ / ‖f‖` of `f` from zone `a`.
pub fn zone_residual(f: &ZonePolynomial, a: usize) -> Result<f64> {
    let nf = norm(f);
    if nf == 0.0 {
        return Ok(0.0);
    }
    let r = f.try_sub(&project_to_zone(f, a)?)?;
    Ok(norm(&r) / nf)
}

/// The zone containing `f`, judged by projection with relative tolerance `tol`.
pub fn zone_of(f: &ZonePolynomial, tol: f64) -> Result<usize> {
    let mut best = (0usize, f64::INFINITY);
    let top = f.anti_degrees().last().copied().unwrap_or(0) as usize;
    for a in 0..=top {
        let r = zone_residual(f, a)?;
        if r <= tol {
            return Ok(a);
        }
        if r < best.1 {
            best = (a, r);
        }
    }
    Err(ZoneError::NotInZone {
        zone: best.0,
        residual: best.1,
    })
}

/// Closed-form zone kernel on real points:
/// `(λ/π)^{k/2} L_a^{(k/2-1)}(λ|X-Y|²) exp(λ(X·Ȳ - (|X|²+|Y|²)/2))`.
#[inline]
pub fn zone_kernel_real(a: usize, x: &[f64], y: &[f64], params: &PhysParams) -> Complex64 {
    let lambda = params.lambda();
    let half = params.half_dim() as i32;
    let alpha = (half - 1) as f64;
    let pre = (lambda / std::f64::consts::PI).powi(half);
    let lag = laguerre_unchecked(a, alpha, lambda * sq_dist(x, y));
    let expo = (pairing(x, y) - 0.5 * (sq_norm(x) + sq_norm(y))) * lambda;
    expo.exp() * (pre * lag)
}

/// Closed-form zone kernel `δ^(a)(Z, W)` on complex coordinates.
pub fn zone_kernel(a: usize, z: &[Complex64], w: &[Complex64], params: &PhysParams) -> Complex64 {
    let x = crate::coords::to_real(z);
    let y = crate::coords::to_real(w);
    zone_kernel_real(a, &x, &y, params)
}

/// Truncated basis sum `Σ_{i<n} φ_i(Z) conj(φ_i(W)) e^{-λ(|Z|²+|W|²)/2}`.
pub fn basis_kernel_sum(elements: &[ZoneElement], z: &[Complex64], w: &[Complex64]) -> Complex64 {
    let Some(first) = elements.first() else {
        return Complex64::new(0.0, 0.0);
    };
    let lambda = first.poly.params().lambda();
    let n2 = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let g = (-0.5 * lambda * (n2(z) + n2(w))).exp();
    elements
        .iter()
        .map(|e| e.poly.eval(z) * e.poly.eval(w).conj())
        .sum::<Complex64>()
        * g
}

/// `max |δ^(a)(Z,W) - truncated basis sum|` over the sample pairs, using the
/// first `n` basis elements.
pub fn kernel_basis_residual(
    a: usize,
    n: usize,
    samples: &[(Vec<Complex64>, Vec<Complex64>)],
    params: PhysParams,
) -> Result<f64> {
    let elements = if n == 0 {
        Vec::new()
    } else {
        zone_elements_n(a, n, params)?
    };
    Ok(samples
        .iter()
        .map(|(z, w)| (zone_kernel(a, z, w, &params) - basis_kernel_sum(&elements, z, w)).norm())
        .fold(0.0, f64::max))
}

/// Relative error of the reproducing identity
/// `∫ δ^(a)(X,W) f(W) e^{-λ|W|²/2} dW = f(X) e^{-λ|X|²/2}`
/// by Gauss-Hermite quadrature of the given order per axis.
pub fn reproducing_error(
    a: usize,
    f: &ZonePolynomial,
    x: &[f64],
    order: usize,
    exec: Exec,
) -> Result<f64> {
    let params = *f.params();
    if x.len() != params.k() {
        return Err(invalid("x", format!("expected {} coordinates", params.k())));
    }
    let lambda = params.lambda();
    let rule = QuadratureRule::gauss_hermite(order)?;
    let center = vec![0.0; params.k()];
    let grid = TensorGrid::hermite(&rule, &center, 1.0 / lambda.sqrt())?;
    let got = grid.integrate(exec, |w| {
        zone_kernel_real(a, x, w, &params) * f.eval_real(w) * (-0.5 * lambda * sq_norm(w)).exp()
    });
    let want = f.eval_real(x) * (-0.5 * lambda * sq_norm(x)).exp();
    Ok((got - want).norm() / want.norm().max(1e-300))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::apply_zeeman;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn holomorphic_zone_is_normalized_monomials() {
        let p = PhysParams::default();
        let b = zone_basis(0, 6, p).unwrap();
        assert_eq!(b.len(), 7);
        for (n, f) in b.iter().enumerate() {
            assert_eq!(f.len(), 1);
            let m = Monomial::new([n as u32, 0], [0, 0]);
            let expect = 1.0 / (PI * crate::special::factorial(n)).sqrt();
            assert!((f.coeff(&m).re - expect).abs() < 1e-14 * expect.max(1.0));
        }
    }

    #[test]
    fn first_zone_one_element_is_zbar() {
        let p = PhysParams::new(0.7, 2).unwrap();
        let b = zone_basis(1, 4, p).unwrap();
        assert_eq!(b[0].len(), 1);
        assert!(b[0].coeff(&Monomial::new([0, 0], [1, 0])).norm() > 0.0);
    }

    #[test]
    fn zones_are_orthogonal_and_orthonormal() {
        for k in [2, 4] {
            let p = PhysParams::new(1.3, k).unwrap();
            let b0 = zone_basis(0, 5, p).unwrap();
            let b1 = zone_basis(1, 5, p).unwrap();
            let b2 = zone_basis(2, 5, p).unwrap();
            for (i, f) in b1.iter().enumerate() {
                for g in b0.iter().chain(&b2) {
                    assert!(inner_product(f, g).unwrap().norm() < 1e-12);
                }
                for (j, g) in b1.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((inner_product(f, g).unwrap() - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn basis_elements_are_eigenfunctions() {
        for k in [2, 4] {
            let p = PhysParams::new(0.8, k).unwrap();
            for a in 0..3 {
                for e in zone_elements(a, 6, p).unwrap() {
                    let h = apply_zeeman(&e.poly, true).unwrap();
                    let r = h.axpy(c(-e.eigenvalue(true), 0.0), &e.poly).unwrap();
                    assert!(norm(&r) < 1e-11, "k={k} a={a} {:?}", e.leading);
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let p = PhysParams::default();
        let zb = ZonePolynomial::zbar(p, 0).unwrap();
        assert!(project_to_zone(&zb, 0).unwrap().is_zero());
        let zzb = ZonePolynomial::from_degrees(p, &[1], &[1]).unwrap();
        let p0 = project_to_zone(&zzb, 0).unwrap();
        assert!((p0.coeff(&Monomial::ONE) - c(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(p0.len(), 1);
        let sum = p0.try_add(&project_to_zone(&zzb, 1).unwrap()).unwrap();
        assert!(norm(&sum.try_sub(&zzb).unwrap()) < 1e-13);
    }

    #[test]
    fn zone_membership() {
        let p = PhysParams::default();
        let e = &zone_elements(2, 5, p).unwrap()[3];
        assert_eq!(zone_of(&e.poly, 1e-10).unwrap(), 2);
        let zzb = ZonePolynomial::from_degrees(p, &[1], &[1]).unwrap();
        assert!(matches!(zone_of(&zzb, 1e-10), Err(ZoneError::NotInZone { .. })));
        assert!(zone_basis(3, 2, p).is_err());
    }

    #[test]
    fn kernel_diagonal_and_symmetry() {
        let p = PhysParams::new(1.0, 4).unwrap();
        let z = [c(0.3, -0.1), c(0.2, 0.4)];
        let w = [c(-0.5, 0.2), c(0.1, 0.1)];
        let d = zone_kernel(1, &z, &z, &p);
        assert!((d - c(2.0 / (PI * PI), 0.0)).norm() < 1e-14);
        let k1 = zone_kernel(2, &z, &w, &p);
        let k2 = zone_kernel(2, &w, &z, &p);
        assert!((k1 - k2.conj()).norm() < 1e-15);
    }

    #[test]
    fn kernel_matches_basis_sum() {
        let p = PhysParams::default();
        let samples = vec![
            (vec![c(0.3, 0.4)], vec![c(-0.6, 0.1)]),
            (vec![c(0.0, 0.9)], vec![c(0.5, -0.5)]),
        ];
        for a in 0..3 {
            let r = kernel_basis_residual(a, 25, &samples, p).unwrap();
            assert!(r < 1e-8, "a={a} r={r}");
        }
    }
}
