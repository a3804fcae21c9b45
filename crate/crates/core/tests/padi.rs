use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use zonekit::padi::{
    anomalous_composition, anomalous_kernel, apply_padi, eigenspinor_residual, eigenspinors, idempotency_error,
    padi_square_residual, containment_residual, PadiVariant, SpinSign, SpinorField,
};
use zonekit::poly::{Monomial, ZonePolynomial};
use zonekit::zones::{zone_elements, zone_kernel_real};
use zonekit::{Exec, PhysParams};

fn params() -> PhysParams {
    PhysParams::default()
}

fn element(a: usize, p: usize) -> ZonePolynomial {
    zone_elements(a, a + p, params())
        .unwrap()
        .into_iter()
        .find(|e| e.leading.hol[0] as usize == p && e.leading.anti[0] as usize == a)
        .expect("element present")
        .poly
}

fn poly_from(coeffs: &[(u32, u32, f64, f64)]) -> ZonePolynomial {
    ZonePolynomial::from_terms(
        params(),
        coeffs
            .iter()
            .map(|&(h, v, re, im)| (Monomial::new([h, 0], [v, 0]), Complex64::new(re, im))),
    )
    .unwrap()
}

fn spinor_strategy() -> impl Strategy<Value = SpinorField> {
    let term = (0u32..=5, 0u32..=5, -1.0f64..1.0, -1.0f64..1.0).prop_filter("degree", |t| t.0 + t.1 <= 5);
    (prop::collection::vec(term.clone(), 1..8), prop::collection::vec(term, 1..8))
        .prop_map(|(u, d)| SpinorField::new(poly_from(&u), poly_from(&d)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn square_identity_on_random_spinors(phi in spinor_strategy()) {
        let r = padi_square_residual(&phi).unwrap();
        prop_assert!(r <= 1e-12 * phi.norm().max(1.0));
    }

    #[test]
    fn padi_is_symmetric(phi in spinor_strategy(), gamma in spinor_strategy()) {
        for variant in [PadiVariant::Z, PadiVariant::Zf] {
            let lhs = apply_padi(&phi, variant).unwrap().inner(&gamma).unwrap();
            let rhs = phi.inner(&apply_padi(&gamma, variant).unwrap()).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
        }
    }
}

#[test]
fn eigenspinors_have_square_root_eigenvalues() {
    let lambda = params().lambda();
    for a in 0..3 {
        for p in 0..4 {
            let base = element(a, p);
            let nu = (2 * p + 1) as f64 * lambda;
            for j in [1u8, 2] {
                let mu = if j == 1 { nu - lambda } else { nu + lambda };
                for sign in [SpinSign::Plus, SpinSign::Minus] {
                    let z = eigenspinors(&base, j, sign, PadiVariant::Z).unwrap();
                    assert!((z.mu - mu).abs() < 1e-12);
                    let s = if sign == SpinSign::Plus { 1.0 } else { -1.0 };
                    assert!((z.eigenvalue - s * mu.sqrt()).abs() < 1e-12);
                    assert!(eigenspinor_residual(&z.spinor, z.eigenvalue, PadiVariant::Z).unwrap() < 1e-10);
                    if mu > 0.0 {
                        assert!((z.spinor.norm() - 1.0).abs() < 1e-12);
                        assert!((z.q - FRAC_1_SQRT_2).abs() < 1e-12);
                    }
                    let zf = eigenspinors(&base, j, sign, PadiVariant::Zf).unwrap();
                    assert!(eigenspinor_residual(&zf.spinor, zf.eigenvalue, PadiVariant::Zf).unwrap() < 1e-10);
                    if mu > 0.0 {
                        assert!((zf.eigenvalue - s * (mu + 4.0 * lambda * lambda).sqrt()).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn zero_mode_of_every_zone() {
    for a in 0..4 {
        let base = element(a, 0);
        let plus = eigenspinors(&base, 1, SpinSign::Plus, PadiVariant::Z).unwrap();
        assert_eq!(plus.mu, 0.0);
        assert!(eigenspinor_residual(&plus.spinor, 0.0, PadiVariant::Z).unwrap() < 1e-12);
        let minus = eigenspinors(&base, 1, SpinSign::Minus, PadiVariant::Z).unwrap();
        assert_eq!(minus.spinor.norm(), 0.0);
    }
}

#[test]
fn lower_spinors_lie_in_upper_span() {
    for a in 0..3 {
        for p in 0..4 {
            let mut family = Vec::new();
            for q in [p, p + 1] {
                for sign in [SpinSign::Plus, SpinSign::Minus] {
                    let e = eigenspinors(&element(a, q), 1, sign, PadiVariant::Z).unwrap();
                    if e.spinor.norm() > 0.0 {
                        family.push(e.spinor);
                    }
                }
            }
            for sign in [SpinSign::Plus, SpinSign::Minus] {
                let psi = eigenspinors(&element(a, p), 2, sign, PadiVariant::Z).unwrap().spinor;
                assert!(containment_residual(&psi, &family).unwrap() < 1e-8);
            }
        }
    }
}

#[test]
fn anomalous_kernel_components() {
    let p = params();
    let x = [0.3, -0.4];
    let y = [-0.2, 0.5];
    for a in 0..4 {
        let q1 = anomalous_kernel(a, 1, &x, &y, &p).unwrap();
        let q2 = anomalous_kernel(a, 2, &x, &y, &p).unwrap();
        for q in [&q1, &q2] {
            assert_eq!(q[0][1], Complex64::new(0.0, 0.0));
            assert_eq!(q[1][0], Complex64::new(0.0, 0.0));
            assert!((q[1][1] - zone_kernel_real(a, &x, &y, &p) * 0.5).norm() < 1e-16);
        }
        assert!((q1[0][0] + q2[0][0] - q1[1][1] * 2.0).norm() < 1e-15);
        let zx = Complex64::new(x[0], x[1]);
        let zy = Complex64::new(y[0], y[1]);
        let extra = (zx.conj() * zy).powu(a as u32) * ((-0.5 * (zx.norm_sqr() + zy.norm_sqr())).exp() / (2.0 * PI));
        assert!((q1[0][0] - q2[0][0] - extra * 2.0).norm() < 1e-15);
        let back = anomalous_kernel(a, 1, &y, &x, &p).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert!((q1[r][c] - back[c][r].conj()).norm() < 1e-15);
            }
        }
    }
    let origin_bergman = zone_kernel_real(0, &x, &y, &p);
    assert!((anomalous_kernel(0, 2, &x, &y, &p).unwrap()[1][1] - origin_bergman * 0.5).norm() < 1e-16);
}

#[test]
fn anomalous_lower_block_composes_to_half_itself() {
    let p = params();
    let x = [0.3, -0.4];
    let y = [-0.2, 0.5];
    for a in 0..3 {
        let q = anomalous_kernel(a, 1, &x, &y, &p).unwrap();
        let qq = anomalous_composition(a, 1, &x, &y, &p, 64, Exec::Parallel).unwrap();
        assert!((qq[1][1] - q[1][1] * 0.5).norm() < 1e-10);
        let err = idempotency_error(a, 1, &x, &y, &p, 64, Exec::Parallel).unwrap();
        assert!(err > 0.1);
    }
}
