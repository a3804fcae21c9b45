use num_complex::Complex64;
use proptest::prelude::*;
use zonekit::algebra::{
    apply_angular_momentum, apply_rep, apply_zeeman, eigen_residual, eigenvalue, inner_product, norm, to_standard,
    Generator,
};
use zonekit::poly::{Monomial, ZonePolynomial};
use zonekit::quadrature::{QuadratureRule, TensorGrid};
use zonekit::zones::zone_elements;
use zonekit::{ChargeSign, Exec, PhysParams};

fn poly(params: PhysParams, terms: Vec<([u32; 2], [u32; 2], f64, f64)>) -> ZonePolynomial {
    ZonePolynomial::from_terms(
        params,
        terms
            .into_iter()
            .map(|(h, v, re, im)| (Monomial::new(h, v), Complex64::new(re, im))),
    )
    .unwrap()
}

fn poly_strategy(k: usize, max_degree: u32) -> impl Strategy<Value = ZonePolynomial> {
    let second = if k == 4 { max_degree } else { 0 };
    let term = (0..=max_degree, 0..=second, 0..=max_degree, 0..=second, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("degree", move |t| t.0 + t.1 + t.2 + t.3 <= max_degree);
    prop::collection::vec(term, 1..6).prop_map(move |ts| {
        poly(
            PhysParams::new(1.0, k).unwrap(),
            ts.into_iter().map(|(a, b, c, d, re, im)| ([a, b], [c, d], re, im)).collect(),
        )
    })
}

/// `(-½Δ - iλs Σ(x₁∂₂ - x₂∂₁) + ½λ²|X|²)ψ` by central differences.
fn standard_operator(psi: &dyn Fn(&[f64]) -> Complex64, x: &[f64], lambda: f64, s: f64) -> Complex64 {
    let h = 1e-3;
    let k = x.len();
    let at = |i: usize, d: f64| {
        let mut y = x.to_vec();
        y[i] += d;
        psi(&y)
    };
    let c = psi(x);
    let mut lap = Complex64::new(0.0, 0.0);
    let mut grad = vec![Complex64::new(0.0, 0.0); k];
    for i in 0..k {
        lap += (at(i, h) - c * 2.0 + at(i, -h)) / (h * h);
        grad[i] = (at(i, h) - at(i, -h)) / (2.0 * h);
    }
    let mut rot = Complex64::new(0.0, 0.0);
    for pair in 0..k / 2 {
        let (i, j) = (2 * pair, 2 * pair + 1);
        rot += grad[j] * x[i] - grad[i] * x[j];
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    -lap * 0.5 - Complex64::new(0.0, lambda * s) * rot + c * (0.5 * lambda * lambda * r2)
}

#[test]
fn weighted_operator_matches_standard_form() {
    for (k, charge) in [(2, ChargeSign::Negative), (2, ChargeSign::Positive), (4, ChargeSign::Negative)] {
        let lambda = 0.8;
        let p = PhysParams::with_charge(lambda, k, charge).unwrap();
        let second = if k == 4 { 1 } else { 0 };
        let f = poly(
            p,
            vec![([2, 0], [1, 0], 1.0, 0.5), ([0, second], [0, 0], -0.3, 0.2), ([1, 0], [0, 2 * second], 0.7, 0.0)],
        );
        let hf = to_standard(&apply_zeeman(&f, false).unwrap());
        let psi = to_standard(&f);
        let s = charge.orientation();
        for x in [vec![0.3, -0.4, 0.1, 0.2], vec![-0.7, 0.5, 0.6, -0.1], vec![1.1, 0.2, -0.3, 0.4]] {
            let x = &x[..k];
            let fd = standard_operator(&|y| psi.eval(y), x, lambda, s);
            let want = hf.eval(x);
            assert!((fd - want).norm() < 1e-5 * want.norm().max(1.0), "k={k} {charge:?}: {fd} vs {want}");
        }
    }
}

#[test]
fn zone_eigenfunctions_have_closed_form_eigenvalues() {
    for k in [2, 4] {
        let p = PhysParams::new(1.0, k).unwrap();
        for a in 0..4 {
            for e in zone_elements(a, 8, p).unwrap() {
                for field in [false, true] {
                    let (nu, r) = eigen_residual(&e.poly, field).unwrap();
                    assert!(r < 1e-12, "k={k} a={a} {:?} r={r:e}", e.leading);
                    let want = eigenvalue(e.leading.hol_degree(), e.leading.anti_degree(), &p, field);
                    assert!((nu - want).abs() < 1e-12 * want);
                }
            }
        }
    }
}

#[test]
fn holomorphic_monomials_are_exact_eigenvectors() {
    let p = PhysParams::new(1.0, 4).unwrap();
    for h0 in 0..5 {
        for h1 in 0..4 {
            let f = ZonePolynomial::from_degrees(p, &[h0, h1], &[0, 0]).unwrap();
            let hf = apply_zeeman(&f, true).unwrap();
            let want = f.scale_re(eigenvalue(h0 + h1, 0, &p, true));
            assert_eq!(hf, want);
        }
    }
}

#[test]
fn mixed_monomials_pick_up_lower_order_terms() {
    let p = PhysParams::default();
    let f = ZonePolynomial::from_degrees(p, &[1], &[1]).unwrap();
    let hf = apply_zeeman(&f, false).unwrap();
    let want = f.scale_re(3.0).try_sub(&ZonePolynomial::one(p).unwrap().scale_re(2.0)).unwrap();
    assert_eq!(hf, want);
}

#[test]
fn heisenberg_relations_up_to_degree_ten() {
    for k in [2, 4] {
        let p = PhysParams::new(1.3, k).unwrap();
        let half = k / 2;
        for deg in 0..=10u32 {
            let f = ZonePolynomial::from_degrees(p, &vec![deg / 2; half], &vec![deg - deg / 2; half]).unwrap();
            for i in 0..half {
                for j in 0..half {
                    let ab = apply_rep(Generator::ZBar(i), &apply_rep(Generator::Z(j), &f).unwrap()).unwrap();
                    let ba = apply_rep(Generator::Z(j), &apply_rep(Generator::ZBar(i), &f).unwrap()).unwrap();
                    let comm = ab.try_sub(&ba).unwrap();
                    let want = if i == j { f.scale_re(1.3) } else { ZonePolynomial::zero(p).unwrap() };
                    assert!(comm.try_sub(&want).unwrap().max_abs_coeff() < 1e-12);
                    let zz = apply_rep(Generator::Z(i), &apply_rep(Generator::Z(j), &f).unwrap()).unwrap();
                    let zz2 = apply_rep(Generator::Z(j), &apply_rep(Generator::Z(i), &f).unwrap()).unwrap();
                    assert_eq!(zz.try_sub(&zz2).unwrap().max_abs_coeff(), 0.0);
                }
            }
        }
    }
}

#[test]
fn standard_map_preserves_norms() {
    for k in [2, 4] {
        let p = PhysParams::new(1.5, k).unwrap();
        let second = if k == 4 { 1 } else { 0 };
        let f = poly(p, vec![([2, 0], [0, second], 1.0, -0.5), ([0, 0], [1, 0], 0.4, 0.1), ([1, second], [0, 0], -0.2, 0.0)]);
        let psi = to_standard(&f);
        let rule = QuadratureRule::gauss_legendre(64).unwrap();
        let lim = 5.0;
        let axes = (0..k).map(|_| zonekit::quadrature::Axis::legendre(&rule, -lim, lim)).collect();
        let grid = TensorGrid::new(axes).unwrap();
        let q = grid.integrate(Exec::Parallel, |x| Complex64::new(psi.eval(x).norm_sqr(), 0.0)).re;
        let n2 = norm(&f).powi(2);
        assert!((q - n2).abs() < 1e-10 * n2, "k={k}: {q} vs {n2}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn zeeman_is_hermitian(f in poly_strategy(2, 6), g in poly_strategy(2, 6)) {
        let lhs = inner_product(&apply_zeeman(&f, true).unwrap(), &g).unwrap();
        let rhs = inner_product(&f, &apply_zeeman(&g, true).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn zeeman_is_hermitian_in_four_dimensions(f in poly_strategy(4, 4), g in poly_strategy(4, 4)) {
        let lhs = inner_product(&apply_zeeman(&f, false).unwrap(), &g).unwrap();
        let rhs = inner_product(&f, &apply_zeeman(&g, false).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn angular_momentum_commutes_with_zeeman(f in poly_strategy(2, 6)) {
        let a = apply_angular_momentum(&apply_zeeman(&f, true).unwrap()).unwrap();
        let b = apply_zeeman(&apply_angular_momentum(&f).unwrap(), true).unwrap();
        prop_assert!(a.try_sub(&b).unwrap().max_abs_coeff() < 1e-12);
    }

    #[test]
    fn rep_generators_are_adjoint(f in poly_strategy(2, 5), g in poly_strategy(2, 5)) {
        let lhs = inner_product(&apply_rep(Generator::Z(0), &f).unwrap(), &g).unwrap();
        let rhs = inner_product(&f, &apply_rep(Generator::ZBar(0), &g).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }
}
