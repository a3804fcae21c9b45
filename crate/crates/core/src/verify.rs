//! Invariant checks grouped by module, reported as JSON records.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{apply_rep, apply_zeeman, eigen_residual, eigenvalue, inner_product, norm, to_standard, Generator};
use crate::coords::{sq_norm, to_complex};
use crate::error::{Result, ZoneError};
use crate::exec::Exec;
use crate::extensions::{clifford_dimension, symmetrize_subzone, zonal_coulomb_matrix, Statistics};
use crate::padi::{
    anomalous_kernel, containment_residual, eigenspinor_residual, eigenspinors, idempotency_error, PadiVariant,
    SpinSign,
};
use crate::params::PhysParams;
use crate::path_measure::{
    cylinder_measure, discretized_feynman_kac, radon_nikodym_density, DensityKind, MeasureKernel, PathDiscretization,
    QuadOptions, Region,
};
use crate::poly::{Monomial, ZonePolynomial};
use crate::propagators::{
    decomposition_error, evolve, partition_function, semigroup_residual, trace_quadrature, zonal_kernel, KernelForm,
    Sigma,
};
use crate::quadrature::{ln_gamma, QuadratureRule};
use crate::special::laguerre;
use crate::thermo::{average_energy, log_derivative_residual, periodicity_interval, specific_heat};
use crate::zones::{kernel_basis_residual, project_to_zone, reproducing_error, zone_elements, zone_kernel_real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Special,
    Algebra,
    Zones,
    Propagators,
    Thermo,
    Path,
    Padi,
    Extensions,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 8] = [
        Suite::Special,
        Suite::Algebra,
        Suite::Zones,
        Suite::Propagators,
        Suite::Thermo,
        Suite::Path,
        Suite::Padi,
        Suite::Extensions,
    ];

    fn module(self) -> &'static str {
        match self {
            Suite::Special => "special_functions",
            Suite::Algebra => "gaussian_algebra",
            Suite::Zones => "zones",
            Suite::Propagators => "propagators",
            Suite::Thermo => "thermo",
            Suite::Path => "path_measure",
            Suite::Padi => "padi",
            Suite::Extensions => "extensions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Special => "special",
            Suite::Algebra => "algebra",
            Suite::Zones => "zones",
            Suite::Propagators => "propagators",
            Suite::Thermo => "thermo",
            Suite::Path => "path",
            Suite::Padi => "padi",
            Suite::Extensions => "extensions",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = ZoneError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "special" | "special_functions" => Suite::Special,
            "algebra" | "gaussian_algebra" => Suite::Algebra,
            "zones" => Suite::Zones,
            "propagators" => Suite::Propagators,
            "thermo" => Suite::Thermo,
            "path" | "path_measure" => Suite::Path,
            "padi" => Suite::Padi,
            "extensions" => Suite::Extensions,
            "all" => Suite::All,
            other => return Err(ZoneError::Parse(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check. `measured` is an error, residual or violation count; the
/// check passes iff it is finite and `<= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_name: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    /// `module: invariant` this check traces to.
    pub invariant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Recorder {
    module: &'static str,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self {
            module: suite.module(),
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, invariant: &str, tolerance: f64, measured: Result<f64>) {
        let (measured, note) = match measured {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let status = if measured.is_finite() && measured <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        self.checks.push(CheckRecord {
            check_name: format!("{}.{name}", self.module),
            status,
            measured,
            tolerance,
            invariant: format!("{}: {invariant}", self.module),
            note,
        });
    }
}

/// Runs one suite, or every module suite for [`Suite::All`].
pub fn run_suite(suite: Suite, exec: Exec) -> Report {
    if suite == Suite::All {
        let checks = Suite::MODULES
            .iter()
            .flat_map(|s| run_suite(*s, exec).checks)
            .collect();
        return Report { suite, checks };
    }
    let mut r = Recorder::new(suite);
    match suite {
        Suite::Special => special_checks(&mut r),
        Suite::Algebra => algebra_checks(&mut r),
        Suite::Zones => zones_checks(&mut r, exec),
        Suite::Propagators => propagator_checks(&mut r, exec),
        Suite::Thermo => thermo_checks(&mut r),
        Suite::Path => path_checks(&mut r, exec),
        Suite::Padi => padi_checks(&mut r, exec),
        Suite::Extensions => extension_checks(&mut r),
        Suite::All => unreachable!("handled above"),
    }
    Report {
        suite,
        checks: r.checks,
    }
}

/// `L_n^(α)(t)` for integer `α >= 0` and dyadic `t = num/2^shift`, from the
/// explicit series in exact integer arithmetic.
pub fn laguerre_reference(n: usize, alpha: u32, num: i64, shift: u32) -> f64 {
    // n!·2^{shift·n}·L = Σ_i (-1)^i C(n+α, n-i) (n!/i!) num^i 2^{shift(n-i)}
    let binom = |top: u64, bottom: u64| -> BigInt {
        let mut acc = BigInt::one();
        for j in 0..bottom {
            acc = acc * BigInt::from(top - j) / BigInt::from(j + 1);
        }
        acc
    };
    let mut sum = BigInt::zero();
    let t = BigInt::from(num);
    for i in 0..=n {
        let mut term = binom((n as u64) + alpha as u64, (n - i) as u64);
        for m in (i + 1)..=n {
            term *= BigInt::from(m);
        }
        term *= t.pow(i as u32);
        term <<= (shift as usize) * (n - i);
        if i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let mut den = BigInt::one() << ((shift as usize) * n);
    for m in 2..=n {
        den *= BigInt::from(m);
    }
    ratio_to_f64(&sum, &den)
}

fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = num.bits() as i64 - den.bits() as i64 - 60;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    q.to_f64().expect("finite") * 2f64.powi(shift as i32)
}

fn special_checks(r: &mut Recorder) {
    let series = (|| {
        let mut worst = 0.0f64;
        for n in 0..=30usize {
            for alpha in 0..3u32 {
                for num in (-200..=200).step_by(7) {
                    let t = num as f64 / 4.0;
                    let want = laguerre_reference(n, alpha, num, 2);
                    let got = laguerre(n, alpha as f64, t)?;
                    let err = (got - want).abs() / want.abs().max(1e-300);
                    if want.abs() > 1e-200 {
                        worst = worst.max(err);
                    }
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "laguerre_series_oracle",
        "Laguerre recurrence agrees with the explicit series for a <= 30, |t| <= 50",
        1e-10,
        series,
    );
    let origin = (|| {
        let mut bad = 0.0;
        for n in 0..=30usize {
            for alpha in 0..4u32 {
                let want = (ln_gamma((n + alpha as usize) as f64 + 1.0)
                    - ln_gamma(n as f64 + 1.0)
                    - ln_gamma(alpha as f64 + 1.0))
                .exp();
                let got = laguerre(n, alpha as f64, 0.0)?;
                if (got - want.round()).abs() > 0.0 {
                    bad += 1.0;
                }
            }
        }
        Ok(bad)
    })();
    r.record("laguerre_at_origin", "L_a^(alpha)(0) = binomial(a+alpha, a)", 0.0, origin);
    let moments = (|| {
        let mut worst = 0.0f64;
        for n in [16usize, 64, 128] {
            let rule = QuadratureRule::gauss_hermite(n)?;
            for m in 0..n.min(60) {
                let want = ln_gamma(m as f64 + 0.5).exp();
                worst = worst.max((rule.integrate(|x| x.powi(2 * m as i32)) - want).abs() / want);
            }
        }
        Ok(worst)
    })();
    r.record(
        "hermite_moments",
        "Gauss-Hermite integrates e^{-x^2} x^{2m} exactly below its exactness degree",
        1e-11,
        moments,
    );
}

fn monomials(k: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let second = if k == 4 { max_degree } else { 0 };
    for h0 in 0..=max_degree {
        for h1 in 0..=second {
            for v0 in 0..=max_degree {
                for v1 in 0..=second {
                    if h0 + h1 + v0 + v1 <= max_degree {
                        out.push(Monomial::new([h0, h1], [v0, v1]));
                    }
                }
            }
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, params: PhysParams, max_degree: u32, terms: usize) -> Result<ZonePolynomial> {
    let pool = monomials(params.k(), max_degree);
    let picks = (0..terms).map(|_| {
        let m = pool[rng.gen_range(0..pool.len())];
        (m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    });
    ZonePolynomial::from_terms(params, picks.collect::<Vec<_>>())
}

/// Fourth-order central-difference application of
/// `-½Δ - iλs Σ(x₁∂₂ - x₂∂₁) + ½λ²|X|²` to `psi` at `x`.
fn standard_operator_fd(psi: &dyn Fn(&[f64]) -> Complex64, x: &[f64], lambda: f64, s: f64, h: f64) -> Complex64 {
    let at = |i: usize, d: f64| {
        let mut y = x.to_vec();
        y[i] += d;
        psi(&y)
    };
    let c = psi(x);
    let mut lap = Complex64::new(0.0, 0.0);
    let mut grad = vec![Complex64::new(0.0, 0.0); x.len()];
    for i in 0..x.len() {
        let (p1, m1, p2, m2) = (at(i, h), at(i, -h), at(i, 2.0 * h), at(i, -2.0 * h));
        lap += (-p2 + p1 * 16.0 - c * 30.0 + m1 * 16.0 - m2) / (12.0 * h * h);
        grad[i] = (-p2 + p1 * 8.0 - m1 * 8.0 + m2) / (12.0 * h);
    }
    let mut rot = Complex64::new(0.0, 0.0);
    for pair in 0..x.len() / 2 {
        rot += grad[2 * pair + 1] * x[2 * pair] - grad[2 * pair] * x[2 * pair + 1];
    }
    -lap * 0.5 - Complex64::new(0.0, lambda * s) * rot + c * (0.5 * lambda * lambda * sq_norm(x))
}

fn algebra_checks(r: &mut Recorder) {
    let invariance = (|| {
        let mut bad = 0.0;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            for m in monomials(k, 8) {
                let f = ZonePolynomial::monomial(p, m, Complex64::new(1.0, 0.0))?;
                let top = apply_zeeman(&f, true)?.terms().map(|(m, _)| m.anti_degree()).max();
                if top != Some(m.anti_degree()) {
                    bad += 1.0;
                }
            }
        }
        Ok(bad)
    })();
    r.record(
        "zone_invariance",
        "apply_zeeman preserves the (top) antiholomorphic degree of every monomial",
        0.0,
        invariance,
    );
    let law = (|| {
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            for m in monomials(k, 8) {
                let f = ZonePolynomial::monomial(p, m, Complex64::new(1.0, 0.0))?;
                let want = f.scale_re(eigenvalue(m.hol_degree(), m.anti_degree(), &p, true));
                let err = norm(&apply_zeeman(&f, true)?.try_sub(&want)?) / norm(&want);
                worst = worst.max(err);
            }
        }
        Ok(worst)
    })();
    r.record(
        "eigenvalue_law_monomials",
        "every monomial of degree <= 8 is an eigenvector with eigenvalue (2p+k/2)λ+2kλ²",
        1e-12,
        law,
    );
    let zone_law = (|| {
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            for a in 0..=8 {
                for e in zone_elements(a, 8, p)? {
                    let (nu, res) = eigen_residual(&e.poly, true)?;
                    let want = e.eigenvalue(true);
                    worst = worst.max(res / want).max((nu - want).abs() / want);
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "eigenvalue_law_zone_elements",
        "zone eigenfunctions of degree <= 8 carry eigenvalue (2p+k/2)λ+2kλ², independent of the zone",
        1e-12,
        zone_law,
    );
    let fd = (|| {
        let mut worst = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in [2, 4] {
            for charge in [crate::ChargeSign::Negative, crate::ChargeSign::Positive] {
                let p = PhysParams::with_charge(0.9, k, charge)?;
                let f = random_poly(&mut rng, p, 4, 5)?;
                let psi = to_standard(&f);
                let hf = to_standard(&apply_zeeman(&f, false)?);
                for _ in 0..4 {
                    let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let got = standard_operator_fd(&|y| psi.eval(y), &x, 0.9, charge.orientation(), 1e-3);
                    let want = hf.eval(&x);
                    worst = worst.max((got - want).norm() / want.norm().max(1e-3));
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "finite_difference_oracle",
        "apply_zeeman agrees with a finite-difference application of the standard operator (h = 1e-3)",
        1e-6,
        fd,
    );
    let herm = (|| {
        let mut worst = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in [2, 4] {
            let p = PhysParams::new(1.2, k)?;
            for _ in 0..20 {
                let f = random_poly(&mut rng, p, 5, 6)?;
                let g = random_poly(&mut rng, p, 5, 6)?;
                let lhs = inner_product(&apply_zeeman(&f, true)?, &g)?;
                let rhs = inner_product(&f, &apply_zeeman(&g, true)?)?;
                worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
            }
        }
        Ok(worst)
    })();
    r.record("hermiticity", "<Hf, g> = <f, Hg> for random low-degree f, g", 1e-12, herm);
    let heis = (|| {
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.3, k)?;
            for m in monomials(k, 10) {
                let f = ZonePolynomial::monomial(p, m, Complex64::new(1.0, 0.0))?;
                for i in 0..k / 2 {
                    let ab = apply_rep(Generator::ZBar(i), &apply_rep(Generator::Z(i), &f)?)?;
                    let ba = apply_rep(Generator::Z(i), &apply_rep(Generator::ZBar(i), &f)?)?;
                    let d = ab.try_sub(&ba)?.try_sub(&f.scale_re(1.3))?;
                    worst = worst.max(d.max_abs_coeff());
                }
            }
        }
        Ok(worst)
    })();
    r.record("heisenberg_relation", "[ρ(z̄), ρ(z)] = λ on all monomials of degree <= 10", 1e-12, heis);
}

fn zones_checks(r: &mut Recorder, exec: Exec) {
    let p = PhysParams::default();
    let repro = (|| {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for e in zone_elements(a, a + 3, p)? {
                for x in [[0.3, -0.2], [-0.7, 0.5], [0.0, 0.9]] {
                    worst = worst.max(reproducing_error(a, &e.poly, &x, 64, exec)?);
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "reproducing_property",
        "the zone kernel reproduces every basis element of its zone under quadrature",
        1e-6,
        repro,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inputs: Vec<ZonePolynomial> = (0..12)
        .filter_map(|i| random_poly(&mut rng, PhysParams::new(1.0, if i % 3 == 0 { 4 } else { 2 }).ok()?, 8, 8).ok())
        .collect();
    let idem = (|| {
        let mut worst = 0.0f64;
        for f in &inputs {
            for a in 0..=8 {
                let pa = project_to_zone(f, a)?;
                let d = project_to_zone(&pa, a)?.try_sub(&pa)?.max_abs_coeff();
                worst = worst.max(d / pa.max_abs_coeff().max(1.0));
            }
        }
        Ok(worst)
    })();
    r.record("projection_idempotent", "P_a ∘ P_a = P_a on degree <= 8 inputs", 1e-12, idem);
    let orth = (|| {
        let mut worst = 0.0f64;
        for f in &inputs {
            for a in 0..=8 {
                let pa = project_to_zone(f, a)?;
                for b in (0..=8).filter(|b| *b != a) {
                    worst = worst.max(project_to_zone(&pa, b)?.max_abs_coeff() / pa.max_abs_coeff().max(1.0));
                }
            }
        }
        Ok(worst)
    })();
    r.record("projection_orthogonal", "P_a ∘ P_b = 0 for a != b on degree <= 8 inputs", 1e-12, orth);
    let complete = (|| {
        let x = [0.2, 0.1];
        let envelope = |top: usize| {
            let diag: Complex64 = (0..=top).map(|a| zone_kernel_real(a, &x, &x, &p)).sum();
            (0..=70)
                .map(|i| {
                    let y = [x[0] + 0.8 + 0.01 * i as f64, x[1]];
                    let off: Complex64 = (0..=top).map(|a| zone_kernel_real(a, &x, &y, &p)).sum();
                    off.norm() / diag.norm()
                })
                .fold(0.0, f64::max)
        };
        let tops = [1usize, 2, 4, 8, 16, 32, 64];
        Ok(tops.windows(2).filter(|w| envelope(w[1]) >= envelope(w[0])).count() as f64)
    })();
    r.record(
        "completeness_concentration",
        "the off-diagonal envelope of the partial zone sums, relative to the diagonal, decreases as zones are added",
        0.0,
        complete,
    );
    let equiv = (|| {
        let pts = [[0.0, 0.0], [0.5, -0.3], [-0.6, 0.7], [0.1, -0.95], [0.7, 0.7]];
        let samples: Vec<_> = pts
            .iter()
            .flat_map(|x| pts.iter().map(move |y| (to_complex(x), to_complex(y))))
            .collect();
        let mut worst = 0.0f64;
        for a in 0..3 {
            worst = worst.max(kernel_basis_residual(a, 25, &samples, p)?);
        }
        Ok(worst)
    })();
    r.record(
        "kernel_basis_equivalence",
        "closed-form zone kernel equals the Gram-Schmidt basis sum at N = 25 on the unit disk",
        1e-8,
        equiv,
    );
}

fn propagator_checks(r: &mut Recorder, exec: Exec) {
    let p = PhysParams::default();
    for sigma in [Sigma::One, Sigma::I] {
        let decomposition = (|| {
            let mut violations = 0.0;
            let mut prev = f64::INFINITY;
            for a_max in [0, 2, 4, 8, 16, 32] {
                let e = decomposition_error(sigma, 0.4, &[0.3, -0.2], &[-0.1, 0.5], a_max, &p)?;
                if e >= prev && e > 1e-13 {
                    violations += 1.0;
                }
                prev = e;
            }
            Ok(violations)
        })();
        r.record(
            &format!("zonal_decomposition_sigma_{sigma}"),
            "partial sums of the zonal kernels approach the global kernel as more zones are added",
            0.0,
            decomposition,
        );
    }
    let trace = (|| {
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            let order = if k == 2 { 64 } else { 24 };
            for a in 0..3 {
                for t in [0.25, 0.5, 1.0] {
                    let want = partition_function(Sigma::One, a, t, &p)?;
                    let got = trace_quadrature(KernelForm::Published, Sigma::One, a, t, &p, order, exec)?;
                    worst = worst.max((got - want).norm() / want.norm());
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "trace_identity",
        "quadrature trace of the Wiener-Kac zonal kernel equals the partition function",
        1e-6,
        trace,
    );
    let unitary = (|| {
        let mut worst = 0.0f64;
        for a in 0..3 {
            let basis = zone_elements(a, 6, p)?;
            let f = basis.iter().enumerate().try_fold(ZonePolynomial::zero(p)?, |acc, (i, e)| {
                acc.axpy(Complex64::new(1.0 / (1 + i) as f64, 0.2 * i as f64), &e.poly)
            })?;
            let g = basis.iter().rev().enumerate().try_fold(ZonePolynomial::zero(p)?, |acc, (i, e)| {
                acc.axpy(Complex64::new(0.5, -0.3 * i as f64), &e.poly)
            })?;
            for t in [0.3, 1.7, 5.2] {
                let before = inner_product(&f, &g)?;
                let after = inner_product(&evolve(&f, Sigma::I, t)?, &evolve(&g, Sigma::I, t)?)?;
                worst = worst.max((after - before).norm());
            }
        }
        Ok(worst)
    })();
    r.record(
        "dirac_feynman_unitarity",
        "the Dirac-Feynman zonal flow preserves inner products between zone functions",
        1e-9,
        unitary,
    );
    let positivity = (|| {
        let mut bad = 0.0;
        for a in 0..4 {
            for t in [0.05, 0.3, 1.0, 3.0] {
                for x in [[0.0, 0.0], [0.4, -0.9], [1.5, 0.2]] {
                    let v = zonal_kernel(Sigma::One, a, t, &x, &x, &p)?;
                    if !(v.re > 0.0) {
                        bad += 1.0;
                    }
                }
            }
        }
        Ok(bad)
    })();
    r.record("diagonal_positivity", "d_1^(a)(t,X,X) > 0", 0.0, positivity);
    let samples: Vec<(Vec<f64>, Vec<f64>)> = vec![
        (vec![0.0, 0.0], vec![0.5, 0.3]),
        (vec![-0.4, 0.6], vec![0.2, -0.7]),
        (vec![0.8, 0.1], vec![0.8, 0.1]),
    ];
    for (sigma, tol) in [(Sigma::One, 1e-6), (Sigma::I, 1e-5)] {
        let semi = (|| {
            let mut worst = 0.0f64;
            for a in 0..3 {
                worst = worst.max(semigroup_residual(sigma, a, 0.3, 0.3, &samples, &p, 48, tol, exec)?);
            }
            Ok(worst)
        })();
        r.record(
            &format!("semigroup_sigma_{sigma}"),
            "Chapman-Kolmogorov composition of the zonal kernels",
            tol,
            semi,
        );
    }
}

fn thermo_checks(r: &mut Recorder) {
    let p = PhysParams::default();
    let eq30 = (|| {
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            for a in 0..3 {
                for t in [0.5, 1.0, 2.0] {
                    worst = worst.max(log_derivative_residual(a, t, 1.0, 1.0, &p)?);
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "log_derivative_identity",
        "the temperature derivative of the partition function reproduces the average energy",
        1e-8,
        eq30,
    );
    let periodic = (|| {
        let l = periodicity_interval(&p);
        let mut worst = 0.0f64;
        for k in [2, 4] {
            let p = PhysParams::new(1.0, k)?;
            for a in 0..3 {
                for t in [0.3, 1.1, 2.5] {
                    let z0 = partition_function(Sigma::I, a, t, &p)?;
                    let z1 = partition_function(Sigma::I, a, t + l, &p)?;
                    worst = worst.max((z1 - z0).norm() / z0.norm());
                }
            }
        }
        for t in [0.3, 1.1, 2.5] {
            let e0 = average_energy(Sigma::I, 1.0 / t, 1.0, 1.0)?;
            let e1 = average_energy(Sigma::I, 1.0 / (t + l), 1.0, 1.0)?;
            worst = worst.max((e1 - e0).norm() / e0.norm());
        }
        Ok(worst)
    })();
    r.record(
        "periodicity",
        "Z_i and the Dirac-Feynman average energy repeat after one periodicity interval",
        1e-10,
        periodic,
    );
    let shape = (|| {
        let betas: Vec<f64> = (1..=400).map(|i| 0.02 * i as f64).collect();
        let c: Vec<f64> = betas
            .iter()
            .map(|b| specific_heat(Sigma::One, 1.0 / b, 1.0, 1.0).map(|v| v.re))
            .collect::<Result<_>>()?;
        let negative = c.iter().filter(|v| !(**v > 0.0)).count();
        let slopes: Vec<f64> = c.windows(2).map(|w| w[1] - w[0]).filter(|d| d.abs() > 1e-14).collect();
        let turns = slopes.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        Ok(negative as f64 + turns.saturating_sub(1) as f64)
    })();
    r.record(
        "specific_heat_shape",
        "the Wiener-Kac specific heat is positive and unimodal in 1/T",
        0.0,
        shape,
    );
}

fn path_checks(r: &mut Recorder, exec: Exec) {
    let p = PhysParams::default();
    let x = [0.3, -0.2];
    let y = [0.1, 0.4];
    let opts = QuadOptions {
        exec,
        ..QuadOptions::default()
    };
    let ck = (|| {
        let mut worst = 0.0f64;
        let kinds = [
            MeasureKernel::GlobalWk,
            MeasureKernel::GlobalDf,
            MeasureKernel::ZonalWk(1),
            MeasureKernel::ZonalDf(2),
            MeasureKernel::SpreadAmplitude(1),
        ];
        for kind in kinds {
            let want = kind.closed_form(0.6, &x, &y, &p)?;
            let got = cylinder_measure(kind, &[0.25], &[Region::Whole], &x, &y, 0.6, &p, opts)?;
            worst = worst.max((got - want).norm() / want.norm());
        }
        Ok(worst)
    })();
    r.record(
        "chapman_kolmogorov",
        "cylinder measures with all-space boxes equal the closed-form kernel for every kind",
        1e-5,
        ck,
    );
    let bounded = (|| {
        let b = Region::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        let small = QuadOptions {
            order: 12,
            tolerance: 1e-6,
            exec,
        };
        let bound = zone_kernel_real(0, &x, &x, &p).norm();
        let mut bad = 0.0;
        for n in 1..=4usize {
            let times: Vec<f64> = (1..=n).map(|j| 0.5 * j as f64 / (n + 1) as f64).collect();
            let m = cylinder_measure(MeasureKernel::ZonalWk(0), &times, &vec![b.clone(); n], &x, &x, 0.5, &p, small)?;
            if m.norm() > bound {
                bad += 1.0;
            }
        }
        Ok(bad)
    })();
    r.record(
        "approximating_measures_bounded",
        "cylinder measures over a fixed box stay bounded as the subdivision is refined",
        0.0,
        bounded,
    );
    let chain = (|| {
        let path = PathDiscretization::straight_line(0.9, 6, vec![0.2, -0.1], vec![0.7, 0.3])?;
        let nu = radon_nikodym_density(DensityKind::NuOverWk, &path);
        let fw = radon_nikodym_density(DensityKind::FeynmanOverWk, &path);
        let fnu = radon_nikodym_density(DensityKind::FeynmanOverNu, &path);
        Ok((fnu * nu - fw).norm() / fw.norm())
    })();
    r.record(
        "radon_nikodym_chain_rule",
        "the three Radon-Nikodym densities satisfy the multiplicative chain rule",
        4.0 * f64::EPSILON,
        chain,
    );
    let fk = (|| {
        let target = zonal_kernel(Sigma::One, 0, 0.5, &x, &y, &p)?;
        let mut prev = f64::INFINITY;
        let mut bad = 0.0;
        for n in 1..=4 {
            let v = discretized_feynman_kac(Sigma::One, 0, &x, &y, 0.5, n, &p, opts)?;
            let e = (v - target).norm() / target.norm();
            if e >= prev {
                bad += 1.0;
            }
            prev = e;
        }
        Ok(bad)
    })();
    r.record(
        "feynman_kac_convergence",
        "the sliced Feynman-Kac error strictly decreases over n_slices = 1..4",
        0.0,
        fk,
    );
}

fn padi_checks(r: &mut Recorder, exec: Exec) {
    let p = PhysParams::default();
    let x = [0.3, -0.4];
    let y = [-0.2, 0.5];
    let idem = (|| {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for j in [1u8, 2] {
                worst = worst.max(idempotency_error(a, j, &x, &y, &p, 64, exec)?);
            }
        }
        Ok(worst)
    })();
    r.record(
        "anomalous_idempotency",
        "the anomalous projection kernels are idempotent under quadrature composition",
        1e-6,
        idem,
    );
    let herm = (|| {
        let mut worst = 0.0f64;
        for a in 0..4 {
            for j in [1u8, 2] {
                let q = anomalous_kernel(a, j, &x, &y, &p)?;
                let back = anomalous_kernel(a, j, &y, &x, &p)?;
                for rr in 0..2 {
                    for c in 0..2 {
                        worst = worst.max((q[rr][c] - back[c][rr].conj()).norm());
                    }
                }
            }
        }
        Ok(worst)
    })();
    r.record("anomalous_hermitian", "Q(X,Y) is the conjugate transpose of Q(Y,X)", 1e-15, herm);
    let base = |a: usize, q: usize| -> Result<ZonePolynomial> {
        zone_elements(a, a + q, p)?
            .into_iter()
            .find(|e| e.leading.hol[0] as usize == q && e.leading.anti[0] as usize == a)
            .map(|e| e.poly)
            .ok_or(ZoneError::BasisTooSmall {
                requested: q + 1,
                available: 0,
            })
    };
    let spectral = (|| {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for q in 0..4 {
                let phi = base(a, q)?;
                for j in [1u8, 2] {
                    for sign in [SpinSign::Plus, SpinSign::Minus] {
                        let e = eigenspinors(&phi, j, sign, PadiVariant::Z)?;
                        let nu = eigenvalue(q as u32, a as u32, &p, false);
                        let mu = if j == 1 { nu - p.lambda() } else { nu + p.lambda() };
                        let s = if sign == SpinSign::Plus { 1.0 } else { -1.0 };
                        worst = worst
                            .max((e.eigenvalue - s * mu.sqrt()).abs())
                            .max(eigenspinor_residual(&e.spinor, e.eigenvalue, PadiVariant::Z)?);
                    }
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "spectral_consistency",
        "eigenspinor eigenvalues are ±√μ with μ the σ₀-shifted Zeeman eigenvalue",
        1e-10,
        spectral,
    );
    let contain = (|| {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for q in 0..4 {
                let mut family = Vec::new();
                for qq in [q, q + 1] {
                    for sign in [SpinSign::Plus, SpinSign::Minus] {
                        let e = eigenspinors(&base(a, qq)?, 1, sign, PadiVariant::Z)?;
                        if e.spinor.norm() > 0.0 {
                            family.push(e.spinor);
                        }
                    }
                }
                for sign in [SpinSign::Plus, SpinSign::Minus] {
                    let psi = eigenspinors(&base(a, q)?, 2, sign, PadiVariant::Z)?.spinor;
                    worst = worst.max(containment_residual(&psi, &family)?);
                }
            }
        }
        Ok(worst)
    })();
    r.record(
        "lower_in_upper_span",
        "every j=2 eigenspinor lies in the span of the j=1 eigenspinors",
        1e-8,
        contain,
    );
}

fn extension_checks(r: &mut Recorder) {
    let period = (|| {
        let mut bad = 0.0;
        for rr in 1..=16u32 {
            if clifford_dimension(rr + 8)?.0 != 16 * clifford_dimension(rr)?.0 {
                bad += 1.0;
            }
        }
        Ok(bad)
    })();
    r.record("clifford_period_eight", "n_{r+8} = 16 n_r for r + 8 <= 24", 0.0, period);
    let subzones = (|| {
        let p = PhysParams::new(1.0, 4)?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst = 0.0f64;
        for _ in 0..16 {
            let f = random_poly(&mut rng, p, 5, 6)?;
            let b = symmetrize_subzone(&f, Statistics::Bosonic)?;
            let fm = symmetrize_subzone(&f, Statistics::Fermionic)?;
            let overlap = inner_product(&b, &fm)?.norm() / norm(&f).powi(2);
            let sum = norm(&b.try_add(&fm)?.try_sub(&f)?) / norm(&f);
            worst = worst.max(overlap).max(sum);
        }
        Ok(worst)
    })();
    r.record(
        "subzones_orthogonal",
        "bosonic and fermionic sub-zones are orthogonal and sum to the input",
        1e-12,
        subzones,
    );
    let stable = (|| {
        let p = PhysParams::default();
        let mut worst = 0.0f64;
        for a in 0..3 {
            let small = zonal_coulomb_matrix(a, 1.0, 8, &p)?;
            let large = zonal_coulomb_matrix(a, 1.0, 12, &p)?;
            for i in 0..3 {
                worst = worst.max((small.spectrum.eigenvalues[i] - large.spectrum.eigenvalues[i]).abs());
            }
        }
        Ok(worst)
    })();
    r.record(
        "galerkin_stability",
        "growing the Coulomb basis from B to B+4 moves the lowest three eigenvalues by < 1e-4",
        1e-4,
        stable,
    );
}
