//! Convolution characterizations of full starlikeness.
//!
//! For `f = h + conj(g)` with `b_1 = 0`, `f` is fully starlike iff
//! `h*A - conj(g*B) != 0` for all unimodular `ζ` and `0 < |z| < 1`, where
//!
//! ```text
//! A(z) = (z + ((ζ-1)/2) z²) / (1-z)²        A_n = n + (n-1)(ζ-1)/2
//! B(z) = (ζ̄ z - ((ζ̄-1)/2) z²) / (1-z)²     B_n = n ζ̄ - (n-1)(ζ̄-1)/2
//! ```
//!
//! When `g' = z h'` the condition becomes `h*A - conj(z (h*B)) != 0` with
//!
//! ```text
//! A(z) = (2z + (ζ-1) z²) / (1-z)²                                   A_n = 2n + (ζ-1)(n-1)
//! B(z) = (2z² + z(ζ̄-1) + (1-z)²(ζ̄-1) log(1-z)) / (z (1-z)²)        B_n = 2n + (ζ̄-1) n(n+2)/(n+1)
//! ```
//!
//! Kernels are built from the coefficient rules; the closed forms are kept
//! for self-tests away from `z = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::ScanGrid;
use crate::series::{AnalyticSeries, DiskPoint, HarmonicMapSeries};
use crate::{Error, Result};

const UNIMODULAR_TOL: f64 = 1e-12;

/// A point `ζ` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnimodularParam(Complex64);

impl UnimodularParam {
    pub fn new(zeta: Complex64) -> Result<Self> {
        if (zeta.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::invalid(format!("|zeta| = {} is not 1", zeta.norm())));
        }
        Ok(UnimodularParam(zeta))
    }

    pub fn from_angle(t: f64) -> Self {
        UnimodularParam(Complex64::from_polar(1.0, t))
    }

    pub fn zeta(self) -> Complex64 {
        self.0
    }

    pub fn is_minus_one(self) -> bool {
        (self.0 + 1.0).norm() <= UNIMODULAR_TOL
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Coefficient-built kernels `(A, B)` of the general criterion.
pub fn starlike_kernels(zeta: UnimodularParam, order: usize) -> (AnalyticSeries, AnalyticSeries) {
    let z = zeta.zeta();
    let zb = z.conj();
    let a = (0..=order)
        .map(|n| {
            let n = n as f64;
            if n == 0.0 { Complex64::new(0.0, 0.0) } else { n + (n - 1.0) * (z - 1.0) / 2.0 }
        })
        .collect();
    let b = (0..=order)
        .map(|n| {
            let n = n as f64;
            if n == 0.0 { Complex64::new(0.0, 0.0) } else { n * zb - (n - 1.0) * (zb - 1.0) / 2.0 }
        })
        .collect();
    (AnalyticSeries::new(a), AnalyticSeries::new(b))
}

/// Coefficient-built kernels `(A, B)` for the `g' = z h'` criterion.
pub fn mocanu_kernels(zeta: UnimodularParam, order: usize) -> (AnalyticSeries, AnalyticSeries) {
    let z = zeta.zeta();
    let zb = z.conj();
    let a = (0..=order)
        .map(|n| {
            let n = n as f64;
            if n == 0.0 { Complex64::new(0.0, 0.0) } else { 2.0 * n + (z - 1.0) * (n - 1.0) }
        })
        .collect();
    let b = (0..=order)
        .map(|n| {
            let n = n as f64;
            2.0 * n + (zb - 1.0) * (n * (n + 2.0) / (n + 1.0))
        })
        .collect();
    (AnalyticSeries::new(a), AnalyticSeries::new(b))
}

/// Closed forms `(A(z), B(z))` of the general criterion.
pub fn starlike_kernels_closed(zeta: UnimodularParam, z: Complex64) -> (Complex64, Complex64) {
    let s = zeta.zeta();
    let sb = s.conj();
    let d = (one() - z) * (one() - z);
    ((z + (s - 1.0) / 2.0 * z * z) / d, (sb * z - (sb - 1.0) / 2.0 * z * z) / d)
}

/// Closed forms `(A(z), B(z))` for the `g' = z h'` criterion. `z != 0`.
pub fn mocanu_kernels_closed(zeta: UnimodularParam, z: Complex64) -> (Complex64, Complex64) {
    let s = zeta.zeta();
    let sb = s.conj();
    let d = (one() - z) * (one() - z);
    let a = (2.0 * z + (s - 1.0) * z * z) / d;
    let b = (2.0 * z * z + z * (sb - 1.0) + d * (sb - 1.0) * (one() - z).ln()) / (z * d);
    (a, b)
}

/// `h*A - conj(g*B)` at `z`.
pub fn starlike_kernel_value(f: &HarmonicMapSeries, z: DiskPoint, zeta: UnimodularParam) -> Result<Complex64> {
    let z = z.nonzero()?.z();
    if f.b1().norm() > 1e-15 {
        return Err(Error::hypothesis("requires b1 = g'(0) = 0"));
    }
    let (a, b) = starlike_kernels(zeta, f.truncation_order());
    Ok(f.h().hadamard(&a).eval_raw(z) - f.g().hadamard(&b).eval_raw(z).conj())
}

/// `½[(ζ+1)(z h' - conj(z g')) - (ζ-1)(h + conj(g))]`, the value the
/// general kernel must reproduce.
pub fn starlike_half_sum(f: &HarmonicMapSeries, z: Complex64, zeta: UnimodularParam) -> Complex64 {
    let s = zeta.zeta();
    let (h, hp) = f.h().eval_d1_raw(z);
    let (g, gp) = f.g().eval_d1_raw(z);
    ((s + 1.0) * (z * hp - (z * gp).conj()) - (s - 1.0) * (h + g.conj())) / 2.0
}

/// `h*A - conj(z (h*B))` at `z`.
pub fn mocanu_kernel_value(h: &AnalyticSeries, z: DiskPoint, zeta: UnimodularParam) -> Result<Complex64> {
    let z = z.nonzero()?.z();
    let (a, b) = mocanu_kernels(zeta, h.truncation_order());
    Ok(h.hadamard(&a).eval_raw(z) - (z * h.hadamard(&b).eval_raw(z)).conj())
}

/// `h*A - conj[(ζ̄+1) z² h' + (ζ̄-1) ∫_0^z t h'(t) dt]`, assembled from
/// `z² h' = z [h * z/(1-z)²]` and the weighted antiderivative.
pub fn mocanu_direct_assembly(h: &AnalyticSeries, z: DiskPoint, zeta: UnimodularParam) -> Result<Complex64> {
    let z = z.nonzero()?.z();
    let s = zeta.zeta();
    let sb = s.conj();
    let (a, _) = mocanu_kernels(zeta, h.truncation_order());
    let z2hp = z * h.hadamard(&crate::series::koebe_kernel(h.truncation_order())).eval_raw(z);
    let g = h.weighted_antiderivative()?;
    let bracket = (sb + 1.0) * z2hp + (sb - 1.0) * g.eval_raw(z);
    Ok(h.hadamard(&a).eval_raw(z) - bracket.conj())
}

/// `(z h' - conj(z g')) / (h + conj(g))`; its real part is the starlikeness
/// functional.
pub fn direct_starlike_ratio(f: &HarmonicMapSeries, z: DiskPoint) -> Result<Complex64> {
    let z = z.nonzero()?.z();
    let (h, hp) = f.h().eval_d1_raw(z);
    let (g, gp) = f.g().eval_d1_raw(z);
    let den = h + g.conj();
    if den.norm() <= 1e-12 * z.norm() {
        return Err(Error::ZeroDenominator { re: z.re, im: z.im });
    }
    Ok((z * hp - (z * gp).conj()) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelKind {
    Starlike,
    Mocanu,
}

/// Smallest kernel modulus over a `(z, ζ)` mesh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshReport {
    pub kernel: KernelKind,
    pub min_modulus: f64,
    pub argmin_z: Complex64,
    pub argmin_zeta: Complex64,
    pub z_samples: usize,
    pub zeta_samples: usize,
}

impl MeshReport {
    /// No sampled zero, with `tol` as the zero threshold.
    pub fn zero_free(&self, tol: f64) -> bool {
        self.min_modulus > tol
    }
}

/// `ζ_k = e^{2πik/K}`, skipping `ζ = -1`.
pub fn zeta_mesh(count: usize) -> Vec<UnimodularParam> {
    (0..count)
        .filter(|&k| 2 * k != count)
        .map(|k| UnimodularParam::from_angle(2.0 * PI * k as f64 / count as f64))
        .collect()
}

/// Evaluates the chosen kernel over `grid × zeta_mesh(zeta_count)` in
/// parallel. The Mocanu kernel uses `h` only.
pub fn kernel_mesh_scan(
    f: &HarmonicMapSeries,
    kind: KernelKind,
    grid: &ScanGrid,
    zeta_count: usize,
) -> Result<MeshReport> {
    if kind == KernelKind::Starlike && f.b1().norm() > 1e-15 {
        return Err(Error::hypothesis("requires b1 = g'(0) = 0"));
    }
    let order = f.truncation_order();
    let zetas = zeta_mesh(zeta_count);
    let kernels: Vec<_> = zetas
        .iter()
        .map(|&s| match kind {
            KernelKind::Starlike => {
                let (a, b) = starlike_kernels(s, order);
                (f.h().hadamard(&a), f.g().hadamard(&b))
            }
            KernelKind::Mocanu => {
                let (a, b) = mocanu_kernels(s, order);
                (f.h().hadamard(&a), f.h().hadamard(&b))
            }
        })
        .collect();
    let total = grid.len() * zetas.len();
    let (min, k) = (0..total)
        .into_par_iter()
        .map(|k| {
            let (r, t) = grid.point(k / zetas.len());
            let z = Complex64::from_polar(r, t);
            let (ha, gb) = &kernels[k % zetas.len()];
            let v = match kind {
                KernelKind::Starlike => ha.eval_raw(z) - gb.eval_raw(z).conj(),
                KernelKind::Mocanu => ha.eval_raw(z) - (z * gb.eval_raw(z)).conj(),
            };
            (v.norm(), k)
        })
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    let (r, t) = grid.point(k / zetas.len());
    Ok(MeshReport {
        kernel: kind,
        min_modulus: min,
        argmin_z: Complex64::from_polar(r, t),
        argmin_zeta: zetas[k % zetas.len()].zeta(),
        z_samples: grid.len(),
        zeta_samples: zetas.len(),
    })
}

/// Largest deviation between coefficient-built and closed-form kernels at
/// the sample points, for both criteria.
pub fn closed_form_self_test(zeta: UnimodularParam, points: &[Complex64], order: usize) -> f64 {
    let (sa, sb) = starlike_kernels(zeta, order);
    let (ma, mb) = mocanu_kernels(zeta, order);
    points
        .iter()
        .map(|&z| {
            let (ca, cb) = starlike_kernels_closed(zeta, z);
            let (da, db) = mocanu_kernels_closed(zeta, z);
            [
                (sa.eval_raw(z) - ca).norm(),
                (sb.eval_raw(z) - cb).norm(),
                (ma.eval_raw(z) - da).norm(),
                (mb.eval_raw(z) - db).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
