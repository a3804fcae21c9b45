//! Sparse polynomials in `z_i, z̄_i` with complex coefficients, the states of
//! the Gaussian-weighted Hilbert space.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZoneError};
use crate::params::PhysParams;

/// Most complex coordinates a polynomial can carry (`k <= 4`).
pub const MAX_HALF_DIM: usize = 2;

/// `z^hol z̄^anti` as exponent vectors; unused coordinates stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub hol: [u32; MAX_HALF_DIM],
    pub anti: [u32; MAX_HALF_DIM],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        hol: [0; MAX_HALF_DIM],
        anti: [0; MAX_HALF_DIM],
    };

    pub fn new(hol: [u32; MAX_HALF_DIM], anti: [u32; MAX_HALF_DIM]) -> Self {
        Self { hol, anti }
    }

    pub fn hol_degree(&self) -> u32 {
        self.hol.iter().sum()
    }

    /// Zone index of the monomial.
    pub fn anti_degree(&self) -> u32 {
        self.anti.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.hol_degree() + self.anti_degree()
    }

    /// Angular momentum numbers `p_i - v_i`.
    pub fn sector(&self) -> [i64; MAX_HALF_DIM] {
        let mut m = [0i64; MAX_HALF_DIM];
        for i in 0..MAX_HALF_DIM {
            m[i] = self.hol[i] as i64 - self.anti[i] as i64;
        }
        m
    }

    pub fn swapped(&self) -> Self {
        Self {
            hol: [self.hol[1], self.hol[0]],
            anti: [self.anti[1], self.anti[0]],
        }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_HALF_DIM {
            out.hol[i] += other.hol[i];
            out.anti[i] += other.anti[i];
        }
        out
    }
}

/// Exact sparse polynomial; every stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonePolynomial {
    terms: BTreeMap<Monomial, Complex64>,
    params: PhysParams,
}

/// One record of the JSON text form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub degrees: Vec<[u32; 2]>,
    pub re: f64,
    pub im: f64,
}

impl ZonePolynomial {
    pub fn zero(params: PhysParams) -> Result<Self> {
        params.require_algebra_dim()?;
        Ok(Self {
            terms: BTreeMap::new(),
            params,
        })
    }

    pub fn one(params: PhysParams) -> Result<Self> {
        Self::monomial(params, Monomial::ONE, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(params: PhysParams, m: Monomial, coeff: Complex64) -> Result<Self> {
        let mut p = Self::zero(params)?;
        p.check_monomial(&m)?;
        p.add_term(m, coeff);
        Ok(p)
    }

    /// `z^hol z̄^anti` with one exponent per complex coordinate.
    pub fn from_degrees(params: PhysParams, hol: &[u32], anti: &[u32]) -> Result<Self> {
        let half = params.half_dim();
        if hol.len() != half || anti.len() != half {
            return Err(ZoneError::Parse(format!(
                "expected {half} holomorphic and antiholomorphic exponents"
            )));
        }
        let mut m = Monomial::ONE;
        m.hol[..half].copy_from_slice(hol);
        m.anti[..half].copy_from_slice(anti);
        Self::monomial(params, m, Complex64::new(1.0, 0.0))
    }

    /// The coordinate function `z_i`.
    pub fn z(params: PhysParams, i: usize) -> Result<Self> {
        let mut m = Monomial::ONE;
        check_index(i, &params)?;
        m.hol[i] = 1;
        Self::monomial(params, m, Complex64::new(1.0, 0.0))
    }

    /// The coordinate function `z̄_i`.
    pub fn zbar(params: PhysParams, i: usize) -> Result<Self> {
        let mut m = Monomial::ONE;
        check_index(i, &params)?;
        m.anti[i] = 1;
        Self::monomial(params, m, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms<I>(params: PhysParams, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut p = Self::zero(params)?;
        for (m, c) in terms {
            p.check_monomial(&m)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        let half = self.params.half_dim();
        for i in half..MAX_HALF_DIM {
            if m.hol[i] != 0 || m.anti[i] != 0 {
                return Err(ZoneError::IndexOutOfRange { index: i, half });
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    /// Adds `c * m`, dropping the entry if it cancels exactly.
    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    /// Drops coefficients with modulus at most `tol * max |coeff|`.
    pub fn pruned(mut self, tol: f64) -> Self {
        let cut = tol * self.max_abs_coeff();
        self.terms.retain(|_, c| c.norm() > cut);
        self
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Distinct antiholomorphic total degrees of the stored monomials.
    pub fn anti_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::anti_degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn same_params(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(ZoneError::ParamMismatch)
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            params: self.params,
        };
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.same_params(other)?;
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(*m, v * c);
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_params(other)?;
        let mut out = Self {
            terms: BTreeMap::new(),
            params: self.params,
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Maps every monomial through `f`, which returns the image monomial and
    /// a real factor (zero factors drop the term).
    pub(crate) fn map_monomials<F>(&self, f: F) -> Self
    where
        F: Fn(&Monomial) -> Option<(Monomial, f64)>,
    {
        let mut out = Self {
            terms: BTreeMap::new(),
            params: self.params,
        };
        for (m, c) in &self.terms {
            if let Some((image, factor)) = f(m) {
                if factor != 0.0 {
                    out.add_term(image, c * factor);
                }
            }
        }
        out
    }

    /// `∂/∂z_i`.
    pub fn d_z(&self, i: usize) -> Self {
        self.map_monomials(|m| {
            let p = m.hol[i];
            (p > 0).then(|| {
                let mut out = *m;
                out.hol[i] -= 1;
                (out, p as f64)
            })
        })
    }

    /// `∂/∂z̄_i`.
    pub fn d_zbar(&self, i: usize) -> Self {
        self.map_monomials(|m| {
            let v = m.anti[i];
            (v > 0).then(|| {
                let mut out = *m;
                out.anti[i] -= 1;
                (out, v as f64)
            })
        })
    }

    /// Multiplication by `z_i`.
    pub fn mul_z(&self, i: usize) -> Self {
        self.map_monomials(|m| {
            let mut out = *m;
            out.hol[i] += 1;
            Some((out, 1.0))
        })
    }

    /// Multiplication by `z̄_i`.
    pub fn mul_zbar(&self, i: usize) -> Self {
        self.map_monomials(|m| {
            let mut out = *m;
            out.anti[i] += 1;
            Some((out, 1.0))
        })
    }

    /// Exchange of the two complex coordinates (k = 4).
    pub fn swap_coordinates(&self) -> Self {
        self.map_monomials(|m| Some((m.swapped(), 1.0)))
    }

    /// Evaluates at complex coordinates `z`.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let zb: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = *c;
                for i in 0..z.len().min(MAX_HALF_DIM) {
                    v *= z[i].powu(m.hol[i]) * zb[i].powu(m.anti[i]);
                }
                v
            })
            .sum()
    }

    /// Evaluates at a real point `X in R^k`, `z_j = x_{2j} + i x_{2j+1}`.
    pub fn eval_real(&self, x: &[f64]) -> Complex64 {
        let z: Vec<Complex64> = x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        self.eval(&z)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        let half = self.params.half_dim();
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                degrees: (0..half).map(|i| [m.hol[i], m.anti[i]]).collect(),
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    pub fn from_records(params: PhysParams, records: &[TermRecord]) -> Result<Self> {
        let half = params.half_dim();
        let mut p = Self::zero(params)?;
        for r in records {
            if r.degrees.len() != half {
                return Err(ZoneError::Parse(format!(
                    "record has {} coordinate pairs, expected {half}",
                    r.degrees.len()
                )));
            }
            let mut m = Monomial::ONE;
            for (i, d) in r.degrees.iter().enumerate() {
                m.hol[i] = d[0];
                m.anti[i] = d[1];
            }
            p.add_term(m, Complex64::new(r.re, r.im));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(params: PhysParams, text: &str) -> Result<Self> {
        let records: Vec<TermRecord> =
            serde_json::from_str(text).map_err(|e| ZoneError::Parse(e.to_string()))?;
        Self::from_records(params, &records)
    }
}

fn check_index(i: usize, params: &PhysParams) -> Result<()> {
    let half = params.half_dim();
    if i < half && i < MAX_HALF_DIM {
        Ok(())
    } else {
        Err(ZoneError::IndexOutOfRange { index: i, half })
    }
}

impl fmt::Display for ZonePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let half = self.params.half_dim();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for i in 0..half {
                if m.hol[i] > 0 {
                    write!(f, "·z{}^{}", i + 1, m.hol[i])?;
                }
                if m.anti[i] > 0 {
                    write!(f, "·z̄{}^{}", i + 1, m.anti[i])?;
                }
            }
        }
        Ok(())
    }
}

/// Operators panic on a parameter mismatch; use the `try_` forms to recover.
impl Add for &ZonePolynomial {
    type Output = ZonePolynomial;
    fn add(self, rhs: Self) -> ZonePolynomial {
        self.try_add(rhs).expect("parameter mismatch in polynomial addition")
    }
}

impl Sub for &ZonePolynomial {
    type Output = ZonePolynomial;
    fn sub(self, rhs: Self) -> ZonePolynomial {
        self.try_sub(rhs).expect("parameter mismatch in polynomial subtraction")
    }
}

impl Mul for &ZonePolynomial {
    type Output = ZonePolynomial;
    fn mul(self, rhs: Self) -> ZonePolynomial {
        self.try_mul(rhs).expect("parameter mismatch in polynomial product")
    }
}

impl Mul<Complex64> for &ZonePolynomial {
    type Output = ZonePolynomial;
    fn mul(self, rhs: Complex64) -> ZonePolynomial {
        self.scale(rhs)
    }
}

impl Neg for &ZonePolynomial {
    type Output = ZonePolynomial;
    fn neg(self) -> ZonePolynomial {
        self.scale_re(-1.0)
    }
}
