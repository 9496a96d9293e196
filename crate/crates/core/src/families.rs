//! Constructors for the explicit families: the `g' = z h'` examples, the
//! Suffridge-type polynomials, the limit mapping, the hypergeometric
//! families and the harmonic Koebe function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::criteria::FamilySpec;
use crate::geometry::{scan_convexity_functional, scan_custom, GridReport, Sample, ScanGrid};
use crate::series::{AnalyticSeries, HarmonicMapSeries};
use crate::{Error, Result};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `h = z - a z^n`, `g = z²/2 - (n/(n+1)) a z^{n+1}`, so that `g' = z h'`.
#[derive(Debug, Clone, PartialEq)]
pub struct MocanuExample {
    pub map: HarmonicMapSeries,
    pub n: u32,
    pub a: f64,
    /// `a <= 3/(n(1+2n))`, the range where `Re(1 + z h''/h') > -1/2`.
    pub class_m: bool,
}

/// Largest `a` for which `z - a z^n` satisfies `Re(1 + z h''/h') > -1/2`.
pub fn class_m_threshold(n: u32) -> f64 {
    let n = n as f64;
    3.0 / (n * (1.0 + 2.0 * n))
}

pub fn mocanu_example(n: u32, a: f64) -> Result<MocanuExample> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    let nf = n as f64;
    if !(a > 0.0 && a * nf <= 1.0 + 1e-15) {
        return Err(Error::invalid(format!("a must lie in (0, 1/n] = (0, {}], got {a}", 1.0 / nf)));
    }
    let n = n as usize;
    let mut h = vec![zero(); n + 1];
    h[1] = Complex64::new(1.0, 0.0);
    h[n] -= a;
    let mut g = vec![zero(); n + 2];
    g[2] = Complex64::new(0.5, 0.0);
    g[n + 1] -= nf / (nf + 1.0) * a;
    Ok(MocanuExample {
        map: HarmonicMapSeries::new(AnalyticSeries::new(h), AnalyticSeries::new(g))?,
        n: n as u32,
        a,
        class_m: a <= class_m_threshold(n as u32) * (1.0 + 1e-12),
    })
}

/// The member `a = 3/(n(2n+1))` conjectured to be fully starlike.
pub fn conjecture_member(n: u32) -> Result<MocanuExample> {
    mocanu_example(n, class_m_threshold(n))
}

/// Member of the `g' = z h'` family with `h = z - a z^n` chosen so that
/// `sup Re(1 + z h''/h') = 3α/2` exactly, for `2/3 < α <= 1`.
pub fn problem_fixture(n: u32, alpha: f64) -> Result<MocanuExample> {
    if !(alpha > 2.0 / 3.0 && alpha <= 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (2/3, 1], got {alpha}")));
    }
    let beta = 1.5 * alpha;
    let nf = n as f64;
    // center + radius of the disk image equals beta at n a = (beta-1)/(n-beta)
    mocanu_example(n, (beta - 1.0) / (nf * (nf - beta)))
}

/// Polynomial `Q` together with the degree used for its hat transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialSpec {
    coeffs: Vec<Complex64>,
    hat_degree: usize,
}

impl PolynomialSpec {
    pub fn new(mut coeffs: Vec<Complex64>, hat_degree: usize) -> Result<Self> {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(zero());
        }
        if coeffs.len() - 1 > hat_degree {
            return Err(Error::invalid(format!(
                "polynomial of degree {} exceeds hat degree {hat_degree}",
                coeffs.len() - 1
            )));
        }
        Ok(PolynomialSpec { coeffs, hat_degree })
    }

    pub fn from_real(coeffs: &[f64], hat_degree: usize) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), hat_degree)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn hat_degree(&self) -> usize {
        self.hat_degree
    }

    pub fn with_hat_degree(&self, hat_degree: usize) -> Result<Self> {
        Self::new(self.coeffs.clone(), hat_degree)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(zero(), |acc, &c| acc * z + c)
    }

    pub fn as_series(&self) -> AnalyticSeries {
        AnalyticSeries::new(self.coeffs.clone())
    }
}

/// `Q̂(z) = z^n conj(Q(1/z̄))`: `ĉ_k = conj(c_{n-k})` with `n` the hat degree.
pub fn qhat(q: &PolynomialSpec) -> PolynomialSpec {
    let n = q.hat_degree;
    let coeffs = (0..=n).map(|k| q.coeff(n - k).conj()).collect();
    PolynomialSpec::new(coeffs, n).expect("hat transform keeps the degree bound")
}

/// Number of zeros of `q` in `|z| < r`, by the argument principle on
/// `samples` points of the circle.
pub fn zeros_inside(q: &PolynomialSpec, r: f64, samples: usize) -> i64 {
    let mut total = 0.0;
    let mut prev = q.eval(Complex64::new(r, 0.0));
    for k in 1..=samples {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / samples as f64);
        let cur = q.eval(z);
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / (2.0 * PI)).round() as i64
}

/// Angles and weight of the Suffridge-type construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuffridgeParams {
    pub phi: f64,
    pub beta: f64,
    pub t: f64,
    pub target_degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuffridgeMap {
    pub map: HarmonicMapSeries,
    /// `Q̂` with hat degree `n - 2`.
    pub qhat: PolynomialSpec,
    /// Zeros of `Q` found in `|z| < 1 - 10⁻³` (always 0 on success).
    pub zeros_found: i64,
}

/// `h' = Q + e^{iφ}(1-t) z Q̂`, `g' = e^{iβ} t z Q̂`, `h(0) = g(0) = 0`,
/// with `Q̂` taken relative to degree `n - 2`.
pub fn suffridge_family(q: &PolynomialSpec, p: SuffridgeParams) -> Result<SuffridgeMap> {
    let n = p.target_degree;
    if n < 2 {
        return Err(Error::invalid("target degree must be at least 2"));
    }
    if !(0.0..=1.0).contains(&p.t) {
        return Err(Error::invalid(format!("t must lie in [0, 1], got {}", p.t)));
    }
    if (q.coeff(0) - 1.0).norm() > 1e-14 {
        return Err(Error::hypothesis("requires Q(0) = 1"));
    }
    let q = q.with_hat_degree(n - 2).map_err(|_| Error::hypothesis(format!("requires degree(Q) <= n-2 = {}", n - 2)))?;
    let zeros = zeros_inside(&q, 1.0 - 1e-3, 4096);
    if zeros != 0 {
        return Err(Error::ZeroInDisk { count: zeros });
    }
    let hat = qhat(&q);
    let zqhat = hat.as_series().shift_up(1);
    let hp = q
        .as_series()
        .with_order(n - 1)
        .add(&zqhat.scale(Complex64::from_polar(1.0 - p.t, p.phi)));
    let gp = zqhat.scale(Complex64::from_polar(p.t, p.beta));
    Ok(SuffridgeMap {
        map: HarmonicMapSeries::new(hp.antiderivative(), gp.antiderivative())?,
        qhat: hat,
        zeros_found: 0,
    })
}

/// `Re Q(z) - |z Q̂(z)|` over the grid, with `Q̂` at the hat degree of `q`.
pub fn suffridge_ch1_margin(q: &PolynomialSpec, grid: &ScanGrid) -> GridReport {
    let hat = qhat(q);
    scan_custom("Re Q - |z Qhat|", grid, |z| Sample::Value(q.eval(z).re - (z * hat.eval(z)).norm()))
}

/// `h' = 1/∏(1 - z e^{iψ_j})`, `g' = e^{iθ} z h'`, truncated at `order`.
pub fn limit_mapping(psi: [f64; 3], theta: f64, order: usize) -> HarmonicMapSeries {
    let geometric = |t: f64| AnalyticSeries::new((0..order).map(|k| Complex64::from_polar(1.0, k as f64 * t)).collect());
    let hp = geometric(psi[0]).mul_truncated(&geometric(psi[1])).mul_truncated(&geometric(psi[2]));
    let h = hp.antiderivative();
    let g = h
        .weighted_antiderivative()
        .expect("h(0) = 0")
        .scale(Complex64::from_polar(1.0, theta));
    HarmonicMapSeries::new(h, g).expect("normalized by construction")
}

/// `Re(1 + z h''/h') + 1/2` for the analytic part of [`limit_mapping`].
pub fn limit_mapping_convexity(map: &HarmonicMapSeries, grid: &ScanGrid) -> GridReport {
    scan_convexity_functional(map.h(), grid, -0.5)
}

/// `z + conj(g)` for a hypergeometric family member. Polynomial members are
/// exact and need `order` at least their degree.
pub fn hypergeometric_family(spec: &FamilySpec, order: usize) -> Result<HarmonicMapSeries> {
    spec.check_hypotheses()?;
    let order = match spec.polynomial_degree() {
        Some(deg) if deg > order => {
            return Err(Error::invalid(format!("truncation {order} below polynomial degree {deg}")));
        }
        Some(deg) => deg,
        None => order,
    };
    let h = AnalyticSeries::identity();
    HarmonicMapSeries::new(h, AnalyticSeries::new(spec.co_analytic_coeffs(order)))
}

/// `C(m,n) (m-n+1)_n / (c)_n` for `n = 0..=m`, the coefficients of
/// `F(-m,-m;c;z)` in binomial form.
pub fn binomial_form(m: u32, c: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m as usize + 1);
    for n in 0..=m {
        let mut binom = 1.0;
        let mut falling = 1.0;
        let mut rising_c = 1.0;
        for k in 0..n {
            binom = binom * (m - k) as f64 / (k + 1) as f64;
            falling *= (m - n + 1 + k) as f64;
            rising_c *= c + k as f64;
        }
        out.push(binom * falling / rising_c);
    }
    out
}

/// Harmonic Koebe function `K = H + conj(G)` with
/// `H = (z - z²/2 + z³/6)/(1-z)³`, `G = (z²/2 + z³/6)/(1-z)³`.
pub fn harmonic_koebe(order: usize) -> HarmonicMapSeries {
    let series = |rule: fn(f64) -> f64| {
        AnalyticSeries::new(
            (0..=order)
                .map(|n| Complex64::new(if n == 0 { 0.0 } else { rule(n as f64) }, 0.0))
                .collect(),
        )
    };
    let h = series(|n| (2.0 * n + 1.0) * (n + 1.0) / 6.0);
    let g = series(|n| (2.0 * n - 1.0) * (n - 1.0) / 6.0);
    HarmonicMapSeries::new(h, g).expect("normalized")
}
