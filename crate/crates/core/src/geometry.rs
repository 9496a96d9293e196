//! Grid scans of the geometric functionals and boundary-curve probes.
//!
//! Every scan evaluates one real functional on a polar grid and reports its
//! minimum. All functionals are arranged so that the property in question
//! requires strict positivity; a non-positive minimum is a witness against
//! the property, a positive one is only evidence for it.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::series::{AnalyticSeries, HarmonicMapSeries, DEFAULT_POLY_TRUNCATION};
use crate::{Error, Result};

/// Largest radius a grid may contain.
pub const R_MAX: f64 = 0.999;

/// Values of `|f|`, `|h|` or `|h'|` below this are treated as zeros.
pub const ZERO_TOL: f64 = 1e-12;

/// Two crossing candidates meeting within this distance of shared endpoints
/// are treated as touching.
pub const TOUCH_TOL: f64 = 1e-9;

/// Polar sample grid: a set of radii times `M` equispaced angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    radii: Vec<f64>,
    angles: usize,
}

impl Default for ScanGrid {
    /// Radii `0.1, ..., 0.9, 0.95, 0.99` with 1024 angles.
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.99]);
        ScanGrid { radii, angles: 1024 }
    }
}

impl ScanGrid {
    pub fn new(radii: Vec<f64>, angles: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invalid("grid needs at least one radius"));
        }
        if angles < 64 {
            return Err(Error::invalid(format!("grid needs at least 64 angles, got {angles}")));
        }
        for w in radii.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::invalid("grid radii must be strictly increasing"));
            }
        }
        if !(radii[0] > 0.0) || !(radii[radii.len() - 1] <= R_MAX) {
            return Err(Error::invalid(format!("grid radii must lie in (0, {R_MAX}]")));
        }
        Ok(ScanGrid { radii, angles })
    }

    /// `count` equally spaced radii ending at `r_max`.
    pub fn uniform(r_max: f64, count: usize, angles: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("grid needs at least one radius"));
        }
        let radii = (1..=count).map(|k| r_max * k as f64 / count as f64).collect();
        Self::new(radii, angles)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn r_max(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.angles as f64
    }

    /// `(r, θ)` of flat index `k`, ordered by radius then angle.
    pub fn point(&self, k: usize) -> (f64, f64) {
        (self.radii[k / self.angles], self.theta(k % self.angles))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanVerdict {
    Passed,
    Violated,
}

/// Grid point where the functional is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerateWitness {
    pub r: f64,
    pub theta: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub functional: String,
    /// `-inf` when a degenerate witness was hit.
    pub min_value: f64,
    pub argmin: (f64, f64),
    pub samples: usize,
    pub verdict: ScanVerdict,
    pub degenerate: Option<DegenerateWitness>,
    /// Heuristic size of the truncated coefficient tail at the outer radius.
    /// Maps of order below [`DEFAULT_POLY_TRUNCATION`] count as exact
    /// polynomials and report 0.
    pub truncation_tail: f64,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.verdict == ScanVerdict::Passed
    }

    pub fn witness(&self) -> Complex64 {
        Complex64::from_polar(self.argmin.0, self.argmin.1)
    }

    pub fn disclaimer(&self) -> &'static str {
        match self.verdict {
            ScanVerdict::Violated => "violated: witness found (conclusive up to floating-point and truncation error)",
            ScanVerdict::Passed => "passed: no violation found on the grid (evidence only, not a proof)",
        }
    }

    pub fn report(&self) -> String {
        let mut out = format!("functional: {}\n", self.functional);
        out.push_str(&format!("min: {:.17e}\n", self.min_value));
        out.push_str(&format!("argmin: r={} theta={:.17e}\n", self.argmin.0, self.argmin.1));
        let w = self.witness();
        out.push_str(&format!("witness: {:.17e}{:+.17e}i\n", w.re, w.im));
        out.push_str(&format!("samples: {}\n", self.samples));
        if let Some(d) = &self.degenerate {
            out.push_str(&format!("degenerate: {}\n", d.reason));
        }
        out.push_str(&format!("truncation-tail: {:.3e}\n", self.truncation_tail));
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                ScanVerdict::Passed => "passed",
                ScanVerdict::Violated => "violated",
            }
        ));
        out.push_str(&format!("note: {}\n", self.disclaimer()));
        out
    }
}

/// One functional value, or the reason it is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Value(f64),
    Degenerate(&'static str),
}

/// The scanned functionals. `h`, `g` are the parts of the scanned map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Functional {
    /// `Re h' - |g'|`
    Ch1,
    /// `|h'|² - |g'|²`
    Jacobian,
    /// `Re(Df / f)` with `Df = z h' - conj(z g')`
    FullyStarlike,
    /// `Re(1 + z h''/h') - lower`
    ConvexityLower(f64),
    /// `upper - Re(1 + z h''/h')`
    ConvexityUpper(f64),
    /// `2/3 - |z h'/h - 2/3|`
    StarlikeDisk,
}

impl Functional {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "ch1" => Some(Functional::Ch1),
            "jacobian" => Some(Functional::Jacobian),
            "starlike" | "fully-starlike" => Some(Functional::FullyStarlike),
            "convexity" => Some(Functional::ConvexityLower(-0.5)),
            "starlike-disk" => Some(Functional::StarlikeDisk),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Functional::Ch1 => "Re h' - |g'|".into(),
            Functional::Jacobian => "|h'|^2 - |g'|^2".into(),
            Functional::FullyStarlike => "Re(Df/f)".into(),
            Functional::ConvexityLower(l) => format!("Re(1 + z h''/h') - ({l})"),
            Functional::ConvexityUpper(u) => format!("{u} - Re(1 + z h''/h')"),
            Functional::StarlikeDisk => "2/3 - |z h'/h - 2/3|".into(),
        }
    }

    pub fn evaluate(&self, f: &HarmonicMapSeries, z: Complex64) -> Sample {
        match *self {
            Functional::Ch1 => {
                let (hp, gp) = f.derivatives_raw(z);
                Sample::Value(hp.re - gp.norm())
            }
            Functional::Jacobian => {
                let (hp, gp) = f.derivatives_raw(z);
                Sample::Value(hp.norm_sqr() - gp.norm_sqr())
            }
            Functional::FullyStarlike => {
                let (h, hp) = f.h().eval_d1_raw(z);
                let (g, gp) = f.g().eval_d1_raw(z);
                let val = h + g.conj();
                if val.norm() < ZERO_TOL {
                    return Sample::Degenerate("f vanishes");
                }
                let df = z * hp - (z * gp).conj();
                Sample::Value((df / val).re)
            }
            Functional::ConvexityLower(lower) => match convexity(f.h(), z) {
                Some(v) => Sample::Value(v - lower),
                None => Sample::Degenerate("h' vanishes"),
            },
            Functional::ConvexityUpper(upper) => match convexity(f.h(), z) {
                Some(v) => Sample::Value(upper - v),
                None => Sample::Degenerate("h' vanishes"),
            },
            Functional::StarlikeDisk => {
                let (h, hp) = f.h().eval_d1_raw(z);
                if h.norm() < ZERO_TOL {
                    return Sample::Degenerate("h vanishes");
                }
                Sample::Value(2.0 / 3.0 - (z * hp / h - 2.0 / 3.0).norm())
            }
        }
    }

    /// Minimum of the functional over the grid, evaluated in parallel.
    pub fn scan(&self, f: &HarmonicMapSeries, grid: &ScanGrid) -> GridReport {
        let mut rep = scan_custom(&self.name(), grid, |z| self.evaluate(f, z));
        let r = grid.r_max();
        if f.truncation_order() >= DEFAULT_POLY_TRUNCATION {
            rep.truncation_tail = f.h().tail_estimate(r) + f.g().tail_estimate(r);
        }
        rep
    }

    /// Every grid sample in grid order, for CSV export.
    pub fn samples(&self, f: &HarmonicMapSeries, grid: &ScanGrid) -> Vec<ScanSample> {
        (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let (r, theta) = grid.point(k);
                let z = Complex64::from_polar(r, theta);
                let value = match self.evaluate(f, z) {
                    Sample::Value(v) => v,
                    Sample::Degenerate(_) => f64::NEG_INFINITY,
                };
                ScanSample { r, theta, w: f.eval_raw(z), value }
            })
            .collect()
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSample {
    pub r: f64,
    pub theta: f64,
    /// `f(r e^{iθ})`
    pub w: Complex64,
    pub value: f64,
}

/// Minimum of an arbitrary functional over the grid. Ties go to the
/// smallest `(r, θ)`, so the result does not depend on thread scheduling.
pub fn scan_custom(name: &str, grid: &ScanGrid, eval: impl Fn(Complex64) -> Sample + Sync) -> GridReport {
    // (value, flat index, degenerate reason)
    type Best = (f64, usize, Option<&'static str>);
    let pick = |a: Best, b: Best| -> Best {
        if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let (min_value, k, why) = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (r, t) = grid.point(k);
            match eval(Complex64::from_polar(r, t)) {
                Sample::Value(v) if !v.is_nan() => (v, k, None),
                Sample::Value(_) => (f64::NEG_INFINITY, k, Some("functional is NaN")),
                Sample::Degenerate(why) => (f64::NEG_INFINITY, k, Some(why)),
            }
        })
        .reduce(|| (f64::INFINITY, usize::MAX, None), pick);
    let argmin = grid.point(k);
    GridReport {
        functional: name.to_string(),
        min_value,
        argmin,
        samples: grid.len(),
        verdict: if min_value <= 0.0 { ScanVerdict::Violated } else { ScanVerdict::Passed },
        degenerate: why.map(|reason| DegenerateWitness {
            r: argmin.0,
            theta: argmin.1,
            reason: reason.to_string(),
        }),
        truncation_tail: 0.0,
    }
}

fn convexity(h: &AnalyticSeries, z: Complex64) -> Option<f64> {
    let (_, hp, hpp) = h.eval_d2_raw(z);
    if hp.norm() < ZERO_TOL {
        return None;
    }
    Some(1.0 + (z * hpp / hp).re)
}

fn analytic(h: &AnalyticSeries) -> HarmonicMapSeries {
    HarmonicMapSeries::new_unnormalized(h.clone(), AnalyticSeries::zero(0))
}

/// `Re f_z - |f_zbar|`; positivity in the disk means `f ∈ C¹_H`.
pub fn scan_ch1(f: &HarmonicMapSeries, grid: &ScanGrid) -> GridReport {
    Functional::Ch1.scan(f, grid)
}

/// Jacobian `|h'|² - |g'|²`; positivity means sense-preserving.
pub fn scan_jacobian(f: &HarmonicMapSeries, grid: &ScanGrid) -> GridReport {
    Functional::Jacobian.scan(f, grid)
}

/// `Re(Df/f)`; positivity on a circle means its image is starlike about 0.
pub fn scan_fully_starlike(f: &HarmonicMapSeries, grid: &ScanGrid) -> GridReport {
    Functional::FullyStarlike.scan(f, grid)
}

/// `Re(1 + z h''/h') - lower`.
pub fn scan_convexity_functional(h: &AnalyticSeries, grid: &ScanGrid, lower: f64) -> GridReport {
    Functional::ConvexityLower(lower).scan(&analytic(h), grid)
}

/// `upper - Re(1 + z h''/h')`.
pub fn scan_convexity_upper(h: &AnalyticSeries, grid: &ScanGrid, upper: f64) -> GridReport {
    Functional::ConvexityUpper(upper).scan(&analytic(h), grid)
}

/// `2/3 - |z h'/h - 2/3|`; positivity puts `z h'/h` in a disk inside the
/// right half-plane, so `h` is starlike.
pub fn starlike_disk_bound_check(h: &AnalyticSeries, grid: &ScanGrid) -> GridReport {
    Functional::StarlikeDisk.scan(&analytic(h), grid)
}

/// Image of the disk under `w = 1 + z h''/h'` for `h = z - a z^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DiskImage {
    Disk { center: f64, radius: f64 },
    /// `Re w < boundary`
    HalfPlane { boundary: f64 },
}

impl DiskImage {
    /// Infimum of `Re w` over the image.
    pub fn min_re(&self) -> f64 {
        match *self {
            DiskImage::Disk { center, radius } => center - radius,
            DiskImage::HalfPlane { .. } => f64::NEG_INFINITY,
        }
    }

    pub fn max_re(&self) -> f64 {
        match *self {
            DiskImage::Disk { center, radius } => center + radius,
            DiskImage::HalfPlane { boundary } => boundary,
        }
    }
}

/// Exact image of `1 + z h''/h'` for `h = z - a z^n`, `0 < a <= 1/n`.
pub fn moebius_disk_image(n: u32, a: f64) -> Result<DiskImage> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    let nf = n as f64;
    if !(a > 0.0 && a * nf <= 1.0 + 1e-15) {
        return Err(Error::invalid(format!("a must lie in (0, 1/n] = (0, {}], got {a}", 1.0 / nf)));
    }
    if (a * nf - 1.0).abs() <= 1e-15 {
        return Ok(DiskImage::HalfPlane { boundary: (nf + 1.0) / 2.0 });
    }
    let d = 1.0 - nf * nf * a * a;
    Ok(DiskImage::Disk {
        center: (1.0 - nf * nf * nf * a * a) / d,
        radius: a * nf * (nf - 1.0) / d,
    })
}

/// A proper crossing of two non-adjacent segments of an image polyline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub theta_a: f64,
    pub theta_b: f64,
    pub point: Complex64,
    /// Number of crossing segment pairs found.
    pub count: usize,
}

/// Samples of `f(r e^{iθ})` at `M` equispaced angles.
pub fn image_curve(f: &HarmonicMapSeries, r: f64, samples: usize) -> Vec<Complex64> {
    (0..samples)
        .map(|k| f.eval_raw(Complex64::from_polar(r, 2.0 * PI * k as f64 / samples as f64)))
        .collect()
}

/// Looks for a self-crossing of the closed polyline through `f(r e^{iθ_k})`.
/// Returns the crossing with the smallest segment index pair, if any.
pub fn curve_self_intersection(f: &HarmonicMapSeries, r: f64, samples: usize) -> Result<Option<Crossing>> {
    if samples < 512 {
        return Err(Error::invalid(format!("need at least 512 samples, got {samples}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid(format!("radius must lie in (0, 1), got {r}")));
    }
    let pts = image_curve(f, r, samples);
    let m = samples;
    let seg = |i: usize| (pts[i], pts[(i + 1) % m]);
    let mut order: Vec<usize> = (0..m).collect();
    let lo = |i: usize| seg(i).0.re.min(seg(i).1.re);
    let hi = |i: usize| seg(i).0.re.max(seg(i).1.re);
    order.sort_by(|&i, &j| lo(i).total_cmp(&lo(j)).then(i.cmp(&j)));

    let mut best: Option<(usize, usize, f64, f64, Complex64)> = None;
    let mut count = 0;
    for (pos, &i) in order.iter().enumerate() {
        let hi_i = hi(i);
        for &j in &order[pos + 1..] {
            if lo(j) > hi_i {
                break;
            }
            let (a, b) = (i.min(j), i.max(j));
            if b - a == 1 || (a == 0 && b == m - 1) {
                continue;
            }
            if let Some((t, u, p)) = segment_crossing(seg(a), seg(b)) {
                count += 1;
                if best.is_none_or(|(ba, bb, ..)| (a, b) < (ba, bb)) {
                    best = Some((a, b, t, u, p));
                }
            }
        }
    }
    let step = 2.0 * PI / m as f64;
    Ok(best.map(|(a, b, t, u, point)| Crossing {
        theta_a: (a as f64 + t) * step,
        theta_b: (b as f64 + u) * step,
        point,
        count,
    }))
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Intersection parameters of two segments, excluding parallel pairs and
/// contacts at shared endpoints.
fn segment_crossing(s1: (Complex64, Complex64), s2: (Complex64, Complex64)) -> Option<(f64, f64, Complex64)> {
    let (p, q) = (s1.0, s2.0);
    let (r, s) = (s1.1 - s1.0, s2.1 - s2.0);
    let d = cross(r, s);
    if d.abs() <= f64::EPSILON * r.norm() * s.norm() {
        return None;
    }
    let t = cross(q - p, s) / d;
    let u = cross(q - p, r) / d;
    if !((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)) {
        return None;
    }
    let x = p + r * t;
    let near = |e: Complex64| (x - e).norm() <= TOUCH_TOL;
    if (near(s1.0) || near(s1.1)) && (near(s2.0) || near(s2.1)) {
        return None;
    }
    Some((t, u, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn map(h: &[f64], g: &[f64]) -> HarmonicMapSeries {
        HarmonicMapSeries::from_real(h, g).unwrap()
    }

    fn f0() -> HarmonicMapSeries {
        map(&[0.0, 1.0, -0.3], &[0.0, 0.0, 0.5, -0.2])
    }

    #[test]
    fn grid_validation() {
        assert_eq!(ScanGrid::default().len(), 11 * 1024);
        assert!(ScanGrid::new(vec![], 128).is_err());
        assert!(ScanGrid::new(vec![0.5], 32).is_err());
        assert!(ScanGrid::new(vec![0.5, 0.4], 128).is_err());
        assert!(ScanGrid::new(vec![0.5, 1.0], 128).is_err());
        assert!(ScanGrid::new(vec![0.5, 0.999], 128).is_ok());
    }

    #[test]
    fn identity_scans() {
        let id = HarmonicMapSeries::identity();
        let grid = ScanGrid::default();
        for rep in [scan_ch1(&id, &grid), scan_fully_starlike(&id, &grid), scan_jacobian(&id, &grid)] {
            assert!((rep.min_value - 1.0).abs() < 1e-12, "{}", rep.functional);
            assert!(rep.passed());
            assert!(rep.disclaimer().contains("not a proof"));
        }
        let rep = scan_convexity_functional(&AnalyticSeries::identity(), &grid, -0.5);
        assert!((rep.min_value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn ch1_examples() {
        let rep = scan_ch1(&f0(), &ScanGrid::default());
        assert!(!rep.passed());
        assert!(rep.min_value < 0.0);
        let w = rep.witness();
        assert!(w.im > 0.9, "{w}");
        // at 0.99i: Re h' = 1 while |g'| ≈ 1.15
        let Sample::Value(v) = Functional::Ch1.evaluate(&f0(), Complex64::new(0.0, 0.99)) else { panic!() };
        assert!((v - (1.0 - 1.15)).abs() < 0.01, "{v}");
        assert!(rep.report().contains("conclusive"));

        let grid = ScanGrid::uniform(0.99, 11, 1024).unwrap();
        let rep = scan_ch1(&map(&[0.0, 1.0], &[0.0, 0.0, 0.5]), &grid);
        assert!((rep.min_value - 0.01).abs() < 1e-12);
        assert!(rep.passed());
    }

    #[test]
    fn starlike_examples() {
        let rep = scan_fully_starlike(&map(&[0.0, 1.0], &[0.0, 0.0, 0.5]), &ScanGrid::default());
        assert!(rep.passed());
        // analytic maps reduce to Re(z h'/h)
        let h = [0.0, 1.0, 0.2, -0.1];
        let grid = ScanGrid::uniform(0.9, 5, 256).unwrap();
        let rep = scan_fully_starlike(&map(&h, &[]), &grid);
        let hs = AnalyticSeries::from_real(&h);
        let direct = (0..grid.len())
            .map(|k| {
                let (r, t) = grid.point(k);
                let z = Complex64::from_polar(r, t);
                let (v, d) = hs.eval_d1_raw(z);
                (z * d / v).re
            })
            .fold(f64::INFINITY, f64::min);
        assert!((rep.min_value - direct).abs() < 1e-12);
    }

    #[test]
    fn degenerate_witness() {
        // h = z - 2z² vanishes at z = 1/2
        let rep = scan_fully_starlike(&map(&[0.0, 1.0, -2.0], &[]), &ScanGrid::new(vec![0.5], 64).unwrap());
        assert_eq!(rep.min_value, f64::NEG_INFINITY);
        assert!(!rep.passed());
        assert_eq!(rep.degenerate.as_ref().unwrap().reason, "f vanishes");
    }

    #[test]
    fn convexity_examples() {
        let grid = ScanGrid::default();
        let h = AnalyticSeries::from_real(&[0.0, 1.0, -0.3]);
        let rep = scan_convexity_functional(&h, &grid, -0.5);
        assert!(rep.min_value > -1e-9 && rep.min_value < 0.05, "{}", rep.min_value);

        let h = AnalyticSeries::from_real(&[0.0, 1.0, -0.5]);
        let rep = scan_convexity_upper(&h, &grid, 1.5);
        assert!(rep.passed() && rep.min_value < 0.02);
    }

    #[test]
    fn starlike_disk_examples() {
        let grid = ScanGrid::default();
        let rep = starlike_disk_bound_check(&AnalyticSeries::identity(), &grid);
        assert!((rep.min_value - 1.0 / 3.0).abs() < 1e-12);
        assert!(starlike_disk_bound_check(&AnalyticSeries::from_real(&[0.0, 1.0, -0.5]), &grid).passed());
        assert!(!starlike_disk_bound_check(&AnalyticSeries::from_real(&[0.0, 1.0, -2.0]), &grid).passed());
    }

    #[test]
    fn moebius_examples() {
        let DiskImage::Disk { center, radius } = moebius_disk_image(2, 0.3).unwrap() else { panic!() };
        assert!((center - 0.4375).abs() < 1e-15 && (radius - 0.9375).abs() < 1e-15);
        assert_eq!(moebius_disk_image(2, 0.5).unwrap(), DiskImage::HalfPlane { boundary: 1.5 });
        assert!((moebius_disk_image(3, 1.0 / 7.0).unwrap().min_re() + 0.5).abs() < 1e-12);
        assert!(moebius_disk_image(2, 0.6).is_err());
        assert!(moebius_disk_image(2, 0.0).is_err());
    }

    #[test]
    fn moebius_matches_grid() {
        for &(n, a) in &[(2u32, 0.3), (3, 0.2), (4, 0.1)] {
            let mut c = vec![0.0; n as usize + 1];
            c[1] = 1.0;
            c[n as usize] = -a;
            let grid = ScanGrid::new(vec![0.999], 4096).unwrap();
            let img = moebius_disk_image(n, a).unwrap();
            let rep = scan_convexity_functional(&AnalyticSeries::from_real(&c), &grid, 0.0);
            assert!(rep.min_value >= img.min_re() - 1e-9);
            assert!(rep.min_value - img.min_re() < 0.05, "{n} {a}: {} vs {}", rep.min_value, img.min_re());
        }
    }

    #[test]
    fn self_intersection_examples() {
        let id = HarmonicMapSeries::identity();
        assert!(curve_self_intersection(&id, 0.9, 1024).unwrap().is_none());
        let fig2 = map(&[0.0, 1.0, -0.5], &[0.0, 0.0, 0.5, -1.0 / 3.0]);
        let x = curve_self_intersection(&fig2, 0.995, 4096).unwrap().expect("crossing");
        // the two parameters map to the same image point
        let wa = fig2.eval_raw(Complex64::from_polar(0.995, x.theta_a));
        let wb = fig2.eval_raw(Complex64::from_polar(0.995, x.theta_b));
        assert!((wa - wb).norm() < 1e-3, "{wa} {wb}");
        assert!(curve_self_intersection(&f0(), 0.99, 4096).unwrap().is_none());
        assert!(curve_self_intersection(&id, 0.9, 100).is_err());
    }

    #[test]
    fn self_intersection_figure_eight() {
        // |g'| > |h'| near the circle: the image curve folds over itself
        let f = map(&[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 0.6]);
        assert!(curve_self_intersection(&f, 0.99, 1024).unwrap().is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn refinement_never_raises_min(a2 in -0.6f64..0.6, b2 in -0.4f64..0.4, b3 in -0.3f64..0.3) {
            let f = map(&[0.0, 1.0, a2], &[0.0, 0.0, b2, b3]);
            let coarse = ScanGrid::new(vec![0.3, 0.6, 0.9], 64).unwrap();
            let fine = ScanGrid::new(vec![0.15, 0.3, 0.45, 0.6, 0.75, 0.9], 128).unwrap();
            for fun in [Functional::Ch1, Functional::Jacobian, Functional::FullyStarlike] {
                let c = fun.scan(&f, &coarse).min_value;
                let d = fun.scan(&f, &fine).min_value;
                prop_assert!(d <= c);
            }
        }

        #[test]
        fn scan_is_deterministic(a2 in -0.6f64..0.6, b2 in -0.4f64..0.4) {
            let f = map(&[0.0, 1.0, a2], &[0.0, 0.0, b2]);
            let grid = ScanGrid::new(vec![0.5, 0.9], 256).unwrap();
            prop_assert_eq!(scan_ch1(&f, &grid), scan_ch1(&f, &grid));
        }
    }
}
