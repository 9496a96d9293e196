//! Coefficient-sum certificates.
//!
//! A normalized harmonic map `f = z + Σ a_n z^n + conj(Σ b_n z^n)` with
//!
//! * `|b_1| < 1` and `Σ_{n>=2} n|a_n| + Σ_{n>=1} n|b_n| <= 1` lies in `C¹_H`
//!   (`Re f_z > |f_zbar|`, hence close-to-convex);
//! * `b_1 = 0` and the same sum `<= 1` is moreover fully starlike.
//!
//! The hypergeometric families below put `F(a,b;c;z)` in the co-analytic
//! part, so the coefficient sum has a closed form through `F(a,b;c;1)`.
//! [`family_k_closed`] evaluates that closed form; [`family_k_series`] sums
//! the coefficients directly and serves as its independent check.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::series::HarmonicMapSeries;
use crate::special::{gamma_ratio, coerce_real, gauss_sum, raabe_tail_bound, CoeffSumResult, HypergeometricParams, ParamMode, SumMethod};
use crate::{Error, Result};

/// Sums within this distance of the bound are reported as boundary cases.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// What a certified verdict implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// `Re f_z > |f_zbar|` in the disk: univalent and close-to-convex.
    CloseToConvex,
    /// Close-to-convex, `b_1 = 0`, and every subdisk maps onto a starlike
    /// domain.
    CloseToConvexFullyStarlike,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::CloseToConvex => f.write_str("C1_H (close-to-convex)"),
            Conclusion::CloseToConvexFullyStarlike => f.write_str("C1_H and fully starlike (S*0_H)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

/// Outcome of checking one sufficient coefficient condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub criterion: String,
    pub sum_value: f64,
    pub bound: f64,
    /// `bound - sum_value`.
    pub margin: f64,
    pub verdict: Verdict,
    /// Sum lies within [`BOUNDARY_TOL`] of the bound.
    pub boundary: bool,
    pub method: SumMethod,
    pub truncation: Option<usize>,
    pub tail_bound: Option<f64>,
    pub conclusion: Conclusion,
}

impl Certificate {
    fn decide(
        criterion: String,
        sum_value: f64,
        tail_bound: Option<f64>,
        method: SumMethod,
        truncation: Option<usize>,
        conclusion: Conclusion,
    ) -> Self {
        let bound = 1.0;
        let upper = sum_value + tail_bound.unwrap_or(0.0);
        let verdict = if upper <= bound + BOUNDARY_TOL {
            Verdict::Certified
        } else {
            Verdict::NotCertified
        };
        Certificate {
            criterion,
            sum_value,
            bound,
            margin: bound - sum_value,
            verdict,
            boundary: (upper - bound).abs() <= BOUNDARY_TOL,
            method,
            truncation,
            tail_bound,
            conclusion,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Line-oriented report.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("criterion: {}\n", self.criterion));
        out.push_str(&format!("sum: {:.17e}\n", self.sum_value));
        out.push_str(&format!("bound: {}\n", self.bound));
        out.push_str(&format!("margin: {:.17e}\n", self.margin));
        out.push_str(&format!(
            "verdict: {}{}\n",
            match self.verdict {
                Verdict::Certified => "certified",
                Verdict::NotCertified => "not-certified",
            },
            if self.boundary { " (boundary)" } else { "" }
        ));
        out.push_str(&format!("method: {:?}\n", self.method));
        if let Some(n) = self.truncation {
            out.push_str(&format!("truncation: {n}\n"));
        }
        if let Some(t) = self.tail_bound {
            out.push_str(&format!("tail-bound: {t:.3e}\n"));
        }
        match self.verdict {
            Verdict::Certified => out.push_str(&format!("conclusion: {}\n", self.conclusion)),
            Verdict::NotCertified => out.push_str(
                "note: the condition is sufficient only; failing it does not show the geometric property fails\n",
            ),
        }
        out
    }
}

/// Coefficient-sum test on a truncated map.
///
/// With `allow_b1 = false` the map must have `b_1 = 0` and a certified verdict
/// includes full starlikeness; with `allow_b1 = true` only `|b_1| < 1` is
/// required and the conclusion is `C¹_H`.
pub fn coefficient_margin(f: &HarmonicMapSeries, allow_b1: bool) -> Result<Certificate> {
    coefficient_margin_with_tail(f, allow_b1, 0.0)
}

/// As [`coefficient_margin`], folding a bound on the discarded coefficient
/// tail into the verdict.
pub fn coefficient_margin_with_tail(f: &HarmonicMapSeries, allow_b1: bool, tail: f64) -> Result<Certificate> {
    let b1 = f.b1();
    let (criterion, conclusion) = if allow_b1 {
        if !(b1.norm() < 1.0) {
            return Err(Error::hypothesis(format!("requires |b1| < 1 (|b1| = {})", b1.norm())));
        }
        ("coefficient sum, |b1| < 1", Conclusion::CloseToConvex)
    } else {
        if b1.norm() > 1e-15 {
            return Err(Error::hypothesis(format!("requires b1 = g'(0) = 0 (|b1| = {})", b1.norm())));
        }
        ("coefficient sum, b1 = 0", Conclusion::CloseToConvexFullyStarlike)
    };
    let weighted = |coeffs: &[Complex64], from: usize| -> f64 {
        coeffs.iter().enumerate().skip(from).map(|(n, c)| n as f64 * c.norm()).sum()
    };
    let sum = weighted(f.h().coeffs(), 2) + weighted(f.g().coeffs(), 1);
    let (method, tail_bound) = if tail > 0.0 {
        (SumMethod::Series, Some(tail))
    } else {
        (SumMethod::FiniteSum, None)
    };
    Ok(Certificate::decide(
        criterion.to_string(),
        sum,
        tail_bound,
        method,
        Some(f.truncation_order()),
        conclusion,
    ))
}

/// The hypergeometric families. `F = F(a,b;c;z)`, `α` complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `z + conj(α z² F)`
    T41a,
    /// `z + conj(α z (F - 1))`
    T41b,
    /// `z + conj(α z F)`
    T41c,
    /// `z + conj(α ∫_0^z F)`
    T44a,
    /// `z + conj(α z ∫_0^z F)`
    T44b,
    /// `z + conj((α c / ab)(F - 1))`
    C46a,
    /// `z + conj((α c / ab) z (F - 1))`
    C46b,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::T41a,
        Family::T41b,
        Family::T41c,
        Family::T44a,
        Family::T44b,
        Family::C46a,
        Family::C46b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::T41a => "T41a",
            Family::T41b => "T41b",
            Family::T41c => "T41c",
            Family::T44a => "T44a",
            Family::T44b => "T44b",
            Family::C46a => "C46a",
            Family::C46b => "C46b",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    pub fn formula(self) -> &'static str {
        match self {
            Family::T41a => "z + conj(alpha z^2 F(a,b;c;z))",
            Family::T41b => "z + conj(alpha z (F(a,b;c;z) - 1))",
            Family::T41c => "z + conj(alpha z F(a,b;c;z))",
            Family::T44a => "z + conj(alpha int_0^z F(a,b;c;t) dt)",
            Family::T44b => "z + conj(alpha z int_0^z F(a,b;c;t) dt)",
            Family::C46a => "z + conj((alpha c/(ab)) (F(a,b;c;z) - 1))",
            Family::C46b => "z + conj((alpha c/(ab)) z (F(a,b;c;z) - 1))",
        }
    }

    /// Strict upper bound on `|α|`, if the family has one.
    pub fn alpha_max(self) -> Option<f64> {
        match self {
            Family::T41a | Family::T44b | Family::C46b => Some(0.5),
            Family::T41c | Family::T44a | Family::C46a => Some(1.0),
            Family::T41b => None,
        }
    }

    pub fn conclusion(self) -> Conclusion {
        match self {
            Family::T41a | Family::T41b | Family::T44b | Family::C46b => Conclusion::CloseToConvexFullyStarlike,
            Family::T41c | Family::T44a | Family::C46a => Conclusion::CloseToConvex,
        }
    }

    /// `b_n = α w(n) A_{n - shift}` for `n >= first`.
    fn layout(self) -> (usize, usize) {
        match self {
            Family::T41a => (2, 2),
            Family::T41b => (2, 1),
            Family::T41c => (1, 1),
            Family::T44a => (1, 1),
            Family::T44b => (2, 2),
            Family::C46a => (1, 0),
            Family::C46b => (2, 1),
        }
    }

    /// Asymptotic decay exponent of `n|b_n|` beyond `c - Re(a+b)`.
    fn extra_decay(self) -> f64 {
        match self {
            Family::T44a | Family::T44b => 1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family member: which family, its `(a,b,c)` and `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: HypergeometricParams,
    pub alpha: Complex64,
}

impl FamilySpec {
    pub fn new(family: Family, params: HypergeometricParams, alpha: Complex64) -> Self {
        FamilySpec { family, params, alpha }
    }

    /// Checks the convergence and side conditions of the family. `α = 0` is
    /// accepted (the identity map).
    pub fn check_hypotheses(&self) -> Result<()> {
        let p = &self.params;
        let (c, apb) = (p.c(), p.a_plus_b());
        let s = self.alpha.norm();
        let fail = |m: String| Err(Error::hypothesis(format!("{}: {m}", self.family)));
        match self.family {
            Family::T41a | Family::T41b | Family::T41c | Family::C46a => {
                if !(c > apb + 1.0) {
                    return fail(format!("requires c > a+b+1 (c = {c}, a+b+1 = {})", apb + 1.0));
                }
            }
            Family::T44a => {
                if !(c > apb) {
                    return fail(format!("requires c > a+b (c = {c}, a+b = {apb})"));
                }
            }
            Family::T44b => {
                if !(c > apb.max(1.0)) {
                    return fail(format!("requires c > max(1, a+b) (c = {c})"));
                }
                if !(p.am1_bm1() > 0.0) {
                    return fail("requires (a-1)(b-1) > 0, i.e. a, b != 1".into());
                }
            }
            Family::C46b => {
                if !(c > (apb + 1.0).max(1.0)) {
                    return fail(format!("requires c > max(1, a+b+1) (c = {c})"));
                }
            }
        }
        if let Some(max) = self.family.alpha_max() {
            if !(s < max) {
                return fail(format!("requires |alpha| < {max} (|alpha| = {s})"));
            }
        }
        if self.family == Family::T41b && !(2.0 * s * p.ab() <= c) {
            let reading = if p.mode() == ParamMode::ConjugatePair { " with ab = |a|^2" } else { "" };
            return fail(format!("requires 2|alpha|ab <= c{reading} (2|alpha|ab = {})", 2.0 * s * p.ab()));
        }
        Ok(())
    }

    fn weight(&self, n: usize) -> Complex64 {
        let p = &self.params;
        match self.family {
            Family::T44a => Complex64::new(1.0 / n as f64, 0.0),
            Family::T44b => Complex64::new(1.0 / (n as f64 - 1.0), 0.0),
            Family::C46a | Family::C46b => Complex64::new(p.c() / p.ab(), 0.0),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// Index of the last nonzero coefficient when `F` is a polynomial.
    pub fn polynomial_degree(&self) -> Option<usize> {
        let (_, shift) = self.family.layout();
        self.params.polynomial_degree().map(|m| m + shift)
    }

    /// Co-analytic coefficients `b_0..=b_order`, built from the recurrence
    /// for `A_n`.
    pub fn co_analytic_coeffs(&self, order: usize) -> Vec<Complex64> {
        let (first, shift) = self.family.layout();
        let a = self.params.coeffs(order);
        (0..=order)
            .map(|n| {
                if n < first {
                    Complex64::new(0.0, 0.0)
                } else {
                    self.alpha * self.weight(n) * a[n - shift]
                }
            })
            .collect()
    }
}

/// Closed-form value of `K = Σ n|b_n|` via `F(a,b;c;1)`, certified when
/// `K <= 1`.
pub fn family_k_closed(spec: &FamilySpec) -> Result<Certificate> {
    spec.check_hypotheses()?;
    let k = family_k_value(spec)?;
    Ok(Certificate::decide(
        format!("{}: {}", spec.family, spec.family.formula()),
        k,
        None,
        SumMethod::ClosedForm,
        None,
        spec.family.conclusion(),
    ))
}

fn family_k_value(spec: &FamilySpec) -> Result<f64> {
    let p = &spec.params;
    let s = spec.alpha.norm();
    let (c, ab, cab) = (p.c(), p.ab(), p.c_minus_a_minus_b());
    let cc = Complex64::new(c, 0.0);
    // Γ(c)Γ(c-a-b-1) / (Γ(c-a)Γ(c-b))
    let g1 = || -> Result<f64> {
        let v = gamma_ratio(&[cc, cc - p.a() - p.b() - 1.0], &[cc - p.a(), cc - p.b()])?;
        coerce_real(v, "gamma ratio")
    };
    let k = match spec.family {
        Family::T41a => s * g1()? * (ab + 2.0 * (cab - 1.0)),
        Family::T41b => s * (g1()? * (ab + cab - 1.0) - 1.0),
        Family::T41c => s * g1()? * (ab + cab - 1.0),
        Family::T44a => s * gauss_sum(p)?,
        Family::T44b => {
            let d = p.am1_bm1();
            s * (gauss_sum(p)? * (1.0 + cab / d) - (c - 1.0) / d)
        }
        Family::C46a => s * c * g1()?,
        Family::C46b => s * (c * g1()? * (1.0 + (cab - 1.0) / ab) - c / ab),
    };
    Ok(k)
}

/// Direct summation of `Σ n|b_n|` up to `order` with a certified tail bound.
/// Exact (no tail) when `F` is a polynomial of degree within `order`.
pub fn family_k_series(spec: &FamilySpec, order: usize) -> Result<CoeffSumResult> {
    spec.check_hypotheses()?;
    let b = spec.co_analytic_coeffs(order);
    let terms: Vec<f64> = b.iter().enumerate().map(|(n, c)| n as f64 * c.norm()).collect();
    let value: f64 = terms.iter().sum();
    if let Some(deg) = spec.polynomial_degree() {
        if deg <= order {
            return Ok(CoeffSumResult {
                value,
                method: SumMethod::FiniteSum,
                truncation: Some(order),
                tail_bound: Some(0.0),
            });
        }
    }
    let p = spec.params;
    let (_, shift) = spec.family.layout();
    let ratio = |n: usize| {
        let k = (n - shift) as f64;
        let nf = n as f64;
        let w = (spec.weight(n + 1) / spec.weight(n)).norm();
        let coeff = ((p.a() + k) * (p.b() + k)).norm() / ((p.c() + k) * (k + 1.0));
        (nf + 1.0) / nf * w * coeff
    };
    let limit = p.c_minus_a_minus_b() + spec.family.extra_decay();
    let tail = raabe_tail_bound(order, terms[order], ratio, limit)?;
    Ok(CoeffSumResult {
        value,
        method: SumMethod::Series,
        truncation: Some(order),
        tail_bound: Some(tail),
    })
}

/// The `a = 1` specialisations whose coefficient condition reduces to a
/// quadratic inequality in `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThresholdFamily {
    /// `z + conj(α z² F(1,b;c;z))`
    C42a,
    /// `z + conj(α z (F(1,b;c;z) - 1))`
    C42b,
    /// `z + conj((α c/b)(F(1,b;c;z) - 1))`
    C47,
}

impl ThresholdFamily {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "C42A" => Some(ThresholdFamily::C42a),
            "C42B" => Some(ThresholdFamily::C42b),
            "C47" => Some(ThresholdFamily::C47),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThresholdFamily::C42a => "C42a",
            ThresholdFamily::C42b => "C42b",
            ThresholdFamily::C47 => "C47",
        }
    }

    /// Parent family evaluated at `a = 1`.
    pub fn family(self) -> Family {
        match self {
            ThresholdFamily::C42a => Family::T41a,
            ThresholdFamily::C42b => Family::T41b,
            ThresholdFamily::C47 => Family::C46a,
        }
    }

    pub fn spec(self, b: f64, alpha: Complex64, c: f64) -> Result<FamilySpec> {
        Ok(FamilySpec::new(self.family(), HypergeometricParams::real(1.0, b, c)?, alpha))
    }

    /// `Q(c) = D(c) - N(c)` with `K(c) <= 1  <=>  Q(c) >= 0` for `c > b + 2`.
    ///
    /// With `a = 1` every family's `K` is `|α| P(c) / ((c-b-1)(c-b-2))` for a
    /// quadratic `P`; clearing the positive denominator leaves `Q`.
    fn quadratic(self, b: f64, s: f64) -> Poly2 {
        let denom = Poly2::linear(b + 1.0).mul(Poly2::linear(b + 2.0));
        match self {
            // Γ-ratio (c-1)/((c-b-1)(c-b-2)) times b + 2(c-b-2)
            ThresholdFamily::C42a => denom.sub(Poly2::linear(1.0).mul(Poly2([-(b + 4.0), 2.0, 0.0])).scale(s)),
            // |α|(c-1)(c-2) <= (1+|α|)(c-b-1)(c-b-2)
            ThresholdFamily::C42b => denom
                .scale(1.0 + s)
                .sub(Poly2::linear(1.0).mul(Poly2::linear(2.0)).scale(s)),
            // |α| c (c-1) <= (c-b-1)(c-b-2)
            ThresholdFamily::C47 => denom.sub(Poly2::linear(0.0).mul(Poly2::linear(1.0)).scale(s)),
        }
    }
}

/// `p0 + p1 c + p2 c²`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Poly2([f64; 3]);

impl Poly2 {
    /// `c - r`
    fn linear(r: f64) -> Self {
        Poly2([-r, 1.0, 0.0])
    }

    /// Product of two polynomials of degree at most one.
    fn mul(self, o: Self) -> Self {
        debug_assert!(self.0[2] == 0.0 && o.0[2] == 0.0);
        let [a0, a1, _] = self.0;
        let [b0, b1, _] = o.0;
        Poly2([a0 * b0, a0 * b1 + a1 * b0, a1 * b1])
    }

    fn scale(self, s: f64) -> Self {
        Poly2(self.0.map(|x| x * s))
    }

    fn sub(self, o: Self) -> Self {
        Poly2([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

/// Both roots of the threshold quadratic, `plus >= minus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdRoots {
    pub plus: f64,
    pub minus: f64,
}

/// Roots of the quadratic in `c` governing the `a = 1` coefficient
/// condition. `c >= plus` is the sufficient threshold.
pub fn threshold_c(kind: ThresholdFamily, b: f64, alpha: Complex64) -> Result<ThresholdRoots> {
    if !(b > 0.0) {
        return Err(Error::hypothesis("requires b > 0"));
    }
    let s = alpha.norm();
    let max = match kind {
        ThresholdFamily::C42a => Some(0.5),
        ThresholdFamily::C47 => Some(1.0),
        ThresholdFamily::C42b => None,
    };
    if let Some(max) = max {
        if s > max {
            return Err(Error::hypothesis(format!("{}: requires |alpha| < {max}", kind.name())));
        }
    }
    let Poly2([c0, c1, c2]) = kind.quadratic(b, s);
    if c2.abs() < 1e-12 {
        return Err(Error::DegenerateQuadratic { root: -c0 / c1 });
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Err(Error::hypothesis(format!("{}: threshold quadratic has no real roots", kind.name())));
    }
    let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
    let (r1, r2) = (q / c2, c0 / q);
    Ok(ThresholdRoots {
        plus: r1.max(r2),
        minus: r1.min(r2),
    })
}

/// `K(c) - 1` for the parent family at `a = 1`; zero at the threshold.
pub fn threshold_residual(kind: ThresholdFamily, b: f64, alpha: Complex64, c: f64) -> Result<f64> {
    let cert = family_k_closed(&kind.spec(b, alpha, c)?)?;
    Ok(cert.sum_value - cert.bound)
}
