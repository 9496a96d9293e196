//! Pochhammer symbols, the Gamma function, Gauss hypergeometric
//! coefficients `A_n = (a,n)(b,n) / ((c,n)(1,n))` and `F(a,b;c;1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Rising factorial `(a,n) = a(a+1)...(a+n-1)`, with `(a,0) = 1`.
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal-branch-free `ln Γ(z)`: the imaginary part is only defined
/// modulo `2π`, which is all `exp` needs.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// Gamma function by the Lanczos approximation (g = 7, nine terms) with
/// reflection for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(z.re));
    }
    if z.re < 0.5 {
        Ok(PI / ((z * PI).sin() * gamma(1.0 - z)?))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// `Π Γ(num_i) / Π Γ(den_i)` evaluated in log space so large arguments do
/// not overflow.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &z in num {
        acc += ln_gamma(z)?;
    }
    for &z in den {
        acc -= ln_gamma(z)?;
    }
    Ok(acc.exp())
}

/// Asserts a provably real quantity is real and returns its real part.
pub(crate) fn coerce_real(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() <= 1e-10 * z.re.abs().max(1.0) {
        Ok(z.re)
    } else {
        Err(Error::invalid(format!("{what} should be real but has imaginary part {}", z.im)))
    }
}

/// Admissible parameter patterns for the hypergeometric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamMode {
    /// `a, b` real in `(-1, ∞)` with `ab > 0`.
    RealPositiveProduct,
    /// `b = conj(a)`, `a != 0`.
    ConjugatePair,
    /// `a = b = -m` for a positive integer `m`; `F` is a degree-`m` polynomial.
    NegativeInteger(u32),
}

/// Parameters `(a, b, c)` of `F(a,b;c;z)` with `c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeometricParams {
    a: Complex64,
    b: Complex64,
    c: f64,
    mode: ParamMode,
}

fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::hypothesis(format!("requires c > 0 (got c = {c})")))
    }
}

impl HypergeometricParams {
    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        check_c(c)?;
        if !(a > -1.0 && b > -1.0) {
            return Err(Error::hypothesis("requires a, b in (-1, inf)"));
        }
        if !(a * b > 0.0) {
            return Err(Error::hypothesis("requires ab > 0"));
        }
        Ok(HypergeometricParams {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c,
            mode: ParamMode::RealPositiveProduct,
        })
    }

    pub fn conjugate(a: Complex64, c: f64) -> Result<Self> {
        check_c(c)?;
        if a.norm() == 0.0 {
            return Err(Error::hypothesis("requires a != 0"));
        }
        Ok(HypergeometricParams {
            a,
            b: a.conj(),
            c,
            mode: ParamMode::ConjugatePair,
        })
    }

    pub fn negative_integer(m: u32, c: f64) -> Result<Self> {
        check_c(c)?;
        if m == 0 {
            return Err(Error::hypothesis("requires a positive integer m"));
        }
        let a = Complex64::new(-(m as f64), 0.0);
        Ok(HypergeometricParams {
            a,
            b: a,
            c,
            mode: ParamMode::NegativeInteger(m),
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mode(&self) -> ParamMode {
        self.mode
    }

    /// `ab`, real in every mode.
    pub fn ab(&self) -> f64 {
        (self.a * self.b).re
    }

    /// `a + b`, real in every mode.
    pub fn a_plus_b(&self) -> f64 {
        (self.a + self.b).re
    }

    /// `(a-1)(b-1)`, real in every mode.
    pub fn am1_bm1(&self) -> f64 {
        ((self.a - 1.0) * (self.b - 1.0)).re
    }

    pub fn c_minus_a_minus_b(&self) -> f64 {
        self.c - self.a_plus_b()
    }

    /// Degree of `F` when it is a polynomial.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self.mode {
            ParamMode::NegativeInteger(m) => Some(m as usize),
            _ => None,
        }
    }

    /// `A_n` by the recurrence `A_{n+1} = A_n (a+n)(b+n) / ((c+n)(1+n))`.
    pub fn coeff(&self, n: usize) -> Complex64 {
        gauss_coeff(self, n)
    }

    /// `A_0..=A_order`.
    pub fn coeffs(&self, order: usize) -> Vec<Complex64> {
        hypergeometric_coeffs(self.a, self.b, Complex64::new(self.c, 0.0), order)
    }
}

/// `A_0..=A_order` for unrestricted complex parameters.
pub fn hypergeometric_coeffs(a: Complex64, b: Complex64, c: Complex64, order: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut term = Complex64::new(1.0, 0.0);
    out.push(term);
    for n in 0..order {
        let k = n as f64;
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0));
        out.push(term);
    }
    out
}

/// Gauss coefficient `A_n`.
pub fn gauss_coeff(p: &HypergeometricParams, n: usize) -> Complex64 {
    hypergeometric_coeffs(p.a, p.b, Complex64::new(p.c, 0.0), n)[n]
}

/// `F(a,b;c;1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`, real for every admissible
/// mode.
pub fn gauss_sum(p: &HypergeometricParams) -> Result<f64> {
    if !(p.c > p.a_plus_b()) {
        return Err(Error::Convergence(format!(
            "F(a,b;c;1) requires c > Re(a+b) (c = {}, Re(a+b) = {})",
            p.c,
            p.a_plus_b()
        )));
    }
    let c = Complex64::new(p.c, 0.0);
    let v = gamma_ratio(&[c, c - p.a - p.b], &[c - p.a, c - p.b])?;
    coerce_real(v, "F(a,b;c;1)")
}

/// How a coefficient sum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumMethod {
    ClosedForm,
    /// Exact finite sum (polynomial case); no tail.
    FiniteSum,
    /// Partial sum plus certified tail bound.
    Series,
}

/// A nonnegative coefficient sum with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoeffSumResult {
    pub value: f64,
    pub method: SumMethod,
    pub truncation: Option<usize>,
    /// For `Series`: the true sum lies in `[value, value + tail_bound]`.
    pub tail_bound: Option<f64>,
}

/// Upper bound for `Σ_{k > last} t_k` of a positive sequence whose Raabe
/// quantity `ρ(k) = k (t_k / t_{k+1} - 1)` stays above `ρ > 1` for
/// `k >= last`: then `k t_k` decreases and the tail is at most
/// `last · t_last / (ρ - 1)`.
///
/// `ratio(k)` returns `t_{k+1} / t_k`; `limit` is `lim ρ(k)`. `ρ` is taken as
/// the minimum over `k = last..last+64`, a doubling ladder up to `k = 1e8`
/// (beyond that `t_k / t_{k+1} - 1` drowns in rounding), and the limit.
pub fn raabe_tail_bound(last: usize, t_last: f64, ratio: impl Fn(usize) -> f64, limit: f64) -> Result<f64> {
    if t_last == 0.0 {
        return Ok(0.0);
    }
    let raabe = |k: usize| {
        let r = ratio(k);
        if r == 0.0 {
            f64::INFINITY
        } else {
            k as f64 * (1.0 / r - 1.0)
        }
    };
    let last = last.max(1);
    let mut rho = limit;
    for k in last..last + 64 {
        rho = rho.min(raabe(k));
    }
    let mut k = 2 * last;
    while k <= 100_000_000 {
        rho = rho.min(raabe(k));
        k *= 2;
    }
    if !(rho > 1.0) {
        return Err(Error::Convergence(format!(
            "tail ratio does not decay fast enough at n = {last} (Raabe quantity {rho})"
        )));
    }
    Ok(last as f64 * t_last / (rho - 1.0))
}

/// `Σ_{n=0}^{order} A_n` with a certified tail bound (all `A_n >= 0` in the
/// admissible modes).
pub fn gauss_series_sum(p: &HypergeometricParams, order: usize) -> Result<CoeffSumResult> {
    if !(p.c > p.a_plus_b()) {
        return Err(Error::Convergence("requires c > Re(a+b)".into()));
    }
    let coeffs = p.coeffs(order);
    let value: f64 = coeffs.iter().map(|a| a.norm()).sum();
    if let Some(m) = p.polynomial_degree() {
        if m <= order {
            return Ok(CoeffSumResult {
                value,
                method: SumMethod::FiniteSum,
                truncation: Some(order),
                tail_bound: Some(0.0),
            });
        }
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let ratio = |k: usize| {
        let k = k as f64;
        ((a + k) * (b + k)).norm() / ((c + k) * (k + 1.0))
    };
    let tail = raabe_tail_bound(order, coeffs[order].norm(), ratio, c + 1.0 - p.a_plus_b())?;
    Ok(CoeffSumResult {
        value,
        method: SumMethod::Series,
        truncation: Some(order),
        tail_bound: Some(tail),
    })
}

/// `|ab F(a+1,b+1;c+1;z) - c F'(a,b;c;z)|` from truncated series; a
/// self-test of the coefficient machinery, expected below `1e-10`.
pub fn derivative_identity_check(p: &HypergeometricParams, z: Complex64) -> Result<f64> {
    if z.norm() > 0.9 {
        return Err(Error::invalid("derivative identity check requires |z| <= 0.9"));
    }
    const ORDER: usize = 4096;
    let one = Complex64::new(1.0, 0.0);
    let cc = Complex64::new(p.c, 0.0);
    let shifted = hypergeometric_coeffs(p.a + one, p.b + one, cc + one, ORDER);
    let base = hypergeometric_coeffs(p.a, p.b, cc, ORDER + 1);
    let lhs = shifted.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c) * (p.a * p.b);
    let deriv = base
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (n, &c)| acc * z + c * n as f64);
    Ok((lhs - deriv * p.c).norm())
}
