//! Truncated power series on the unit disk and harmonic maps `h + conj(g)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Truncation used for polynomial work when the caller has no preference.
pub const DEFAULT_POLY_TRUNCATION: usize = 256;
/// Truncation used for hypergeometric families.
pub const DEFAULT_HYPER_TRUNCATION: usize = 4096;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.is_finite() && z.norm() < 1.0 {
            Ok(DiskPoint(z))
        } else {
            Err(Error::OutsideDisk { re: z.re, im: z.im })
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    /// Same point, rejected when it is the origin.
    pub fn nonzero(self) -> Result<Self> {
        if self.0 == Complex64::new(0.0, 0.0) {
            Err(Error::invalid("operation requires z != 0"))
        } else {
            Ok(self)
        }
    }
}

/// Coefficients `c_0..c_N` of a power series truncated at order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries {
    coeffs: Vec<Complex64>,
}

impl AnalyticSeries {
    /// Builds a series from its coefficients; an empty vector is the zero
    /// series of order 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        AnalyticSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    /// The series `z`.
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest index carrying a nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    /// Zero-padded (or cut) copy of order `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(coeffs)
    }

    /// Horner evaluation without the disk check.
    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub(crate) fn eval_d1_raw(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut d1 = zero;
        for &c in self.coeffs.iter().rev() {
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1)
    }

    /// Value, first and second derivative in one Horner pass.
    pub(crate) fn eval_d2_raw(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1, d2 * 2.0)
    }

    /// Evaluates the truncated series at a disk point. Truncation error grows
    /// as `|z|` approaches 1; scans stay inside `|z| <= 1 - 1e-3`.
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.eval_raw(z.z())
    }

    pub fn eval_derivative(&self, z: DiskPoint) -> Complex64 {
        self.eval_d1_raw(z.z()).1
    }

    /// Termwise derivative; the order drops by one (never below 0).
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * n as f64)
                .collect(),
        )
    }

    /// Termwise antiderivative with zero constant term; order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend(self.coeffs.iter().enumerate().map(|(n, &c)| c / (n as f64 + 1.0)));
        Self::new(out)
    }

    /// Multiplication by `z^k`; order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.coeffs);
        Self::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficientwise sum, zero-padding the shorter operand.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Cauchy product truncated at the larger of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.truncation_order().max(other.truncation_order());
        let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Hadamard (coefficientwise) product. The shorter operand is zero-padded,
    /// so the result has the larger of the two orders.
    pub fn hadamard(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) * other.coeff(k)).collect())
    }

    /// `∫_0^z t p'(t) dt`, i.e. coefficient `n a_n / (n + 1)` at index `n + 1`.
    pub fn weighted_antiderivative(&self) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::invalid("weighted antiderivative requires a zero constant term"));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (n, &c) in self.coeffs.iter().enumerate().skip(1) {
            out[n + 1] = c * (n as f64 / (n as f64 + 1.0));
        }
        Ok(Self::new(out))
    }

    /// Rough size of the discarded tail at radius `r`: the contribution of
    /// the last 16 retained terms to the derivative, which is what the scans
    /// are most sensitive to.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        let n = self.coeffs.len();
        let start = n.saturating_sub(16).max(1);
        (start..n)
            .map(|k| self.coeffs[k].norm() * k as f64 * r.powi(k as i32 - 1))
            .sum()
    }
}

/// Kernel `z/(1-z)`: coefficient 1 for `n >= 1`.
pub fn geometric_kernel(order: usize) -> AnalyticSeries {
    AnalyticSeries::new(
        (0..=order)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { 1.0 }, 0.0))
            .collect(),
    )
}

/// Kernel `z/(1-z)^2`: coefficient `n`.
pub fn koebe_kernel(order: usize) -> AnalyticSeries {
    AnalyticSeries::new((0..=order).map(|n| Complex64::new(n as f64, 0.0)).collect())
}

/// Kernel `log(1-z)`: coefficient `-1/n` for `n >= 1`.
pub fn log_kernel(order: usize) -> AnalyticSeries {
    AnalyticSeries::new(
        (0..=order)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { -1.0 / n as f64 }, 0.0))
            .collect(),
    )
}

/// Harmonic map `f = h + conj(g)` with `h(0) = 0`, `h'(0) = 1`, `g(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMapSeries {
    h: AnalyticSeries,
    g: AnalyticSeries,
}

const NORMALIZATION_TOL: f64 = 1e-14;

impl HarmonicMapSeries {
    pub fn new(h: AnalyticSeries, g: AnalyticSeries) -> Result<Self> {
        if h.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::invalid("h(0) must be 0"));
        }
        if (h.coeff(1) - 1.0).norm() > NORMALIZATION_TOL {
            return Err(Error::invalid("h'(0) must be 1"));
        }
        if g.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::invalid("g(0) must be 0"));
        }
        Ok(HarmonicMapSeries { h, g })
    }

    /// Skips the normalization checks. Intended for test maps such as
    /// `f = conj(z)`.
    pub fn new_unnormalized(h: AnalyticSeries, g: AnalyticSeries) -> Self {
        HarmonicMapSeries { h, g }
    }

    pub fn identity() -> Self {
        HarmonicMapSeries {
            h: AnalyticSeries::identity(),
            g: AnalyticSeries::zero(0),
        }
    }

    /// Builds `z + sum a_n z^n + conj(sum b_n z^n)` from real coefficients
    /// indexed by power of `z`.
    pub fn from_real(h: &[f64], g: &[f64]) -> Result<Self> {
        Self::new(AnalyticSeries::from_real(h), AnalyticSeries::from_real(g))
    }

    pub fn h(&self) -> &AnalyticSeries {
        &self.h
    }

    pub fn g(&self) -> &AnalyticSeries {
        &self.g
    }

    /// `b_1 = g'(0)`.
    pub fn b1(&self) -> Complex64 {
        self.g.coeff(1)
    }

    pub fn truncation_order(&self) -> usize {
        self.h.truncation_order().max(self.g.truncation_order())
    }

    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        self.h.eval_raw(z) + self.g.eval_raw(z).conj()
    }

    /// `(h'(z), g'(z))` without conjugation.
    pub(crate) fn derivatives_raw(&self, z: Complex64) -> (Complex64, Complex64) {
        (self.h.eval_d1_raw(z).1, self.g.eval_d1_raw(z).1)
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.eval_raw(z.z())
    }

    /// `(f_z, f_zbar) = (h'(z), conj(g'(z)))`.
    pub fn partials(&self, z: DiskPoint) -> (Complex64, Complex64) {
        let (hp, gp) = self.derivatives_raw(z.z());
        (hp, gp.conj())
    }

    /// `J_f = |h'|^2 - |g'|^2`.
    pub fn jacobian(&self, z: DiskPoint) -> f64 {
        let (fz, fzbar) = self.partials(z);
        fz.norm_sqr() - fzbar.norm_sqr()
    }

    /// `Df = z f_z - conj(z) f_zbar`.
    pub fn d_operator(&self, z: DiskPoint) -> Complex64 {
        let (fz, fzbar) = self.partials(z);
        z.z() * fz - z.z().conj() * fzbar
    }

    pub fn to_coefficient_file(&self) -> CoefficientFile {
        let pack = |s: &AnalyticSeries| s.coeffs().iter().map(|c| [c.re, c.im]).collect();
        CoefficientFile {
            h: pack(&self.h),
            b: pack(&self.g),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_coefficient_file()).expect("finite coefficients")
    }

    /// Parses the `{h: [[re, im], ...], b: [[re, im], ...]}` record and
    /// checks normalization.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoefficientFile =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed coefficients: {e}")))?;
        file.into_map()
    }
}

/// On-disk coefficient record. Index is the power of `z`. `b` may also be
/// spelled `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub h: Vec<[f64; 2]>,
    #[serde(alias = "g", default)]
    pub b: Vec<[f64; 2]>,
}

impl CoefficientFile {
    pub fn into_map(self) -> Result<HarmonicMapSeries> {
        let unpack = |v: Vec<[f64; 2]>| {
            AnalyticSeries::new(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        };
        HarmonicMapSeries::new(unpack(self.h), unpack(self.b))
    }
}
