//! Exploratory sweeps. Results are recorded as observations only.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::families::{conjecture_member, problem_fixture};
use crate::geometry::{curve_self_intersection, scan_fully_starlike, Crossing, GridReport, ScanGrid};
use crate::Result;

pub const EXPLORATORY_NOTE: &str =
    "exploratory: a crossing is a non-univalence witness; no crossing proves nothing";

/// Values `start, start + step, ...` up to `end` inclusive (within rounding).
/// Empty when `start > end`.
pub fn alpha_range(start: f64, end: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || start > end {
        return Vec::new();
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    (0..=count).map(|k| start + k as f64 * step).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemRow {
    pub alpha: f64,
    pub n: u32,
    pub a: f64,
    pub crossing: Option<Crossing>,
}

/// For each `α` and degree `n`, builds the `g' = z h'` fixture with
/// `sup Re(1 + z h''/h') = 3α/2` and looks for a self-crossing of the image
/// of `|z| = r`.
pub fn problem_scan(alphas: &[f64], degrees: &[u32], r: f64, samples: usize) -> Result<Vec<ProblemRow>> {
    let jobs: Vec<(f64, u32)> = alphas.iter().flat_map(|&a| degrees.iter().map(move |&n| (a, n))).collect();
    jobs.into_par_iter()
        .map(|(alpha, n)| {
            let fx = problem_fixture(n, alpha)?;
            Ok(ProblemRow {
                alpha,
                n,
                a: fx.a,
                crossing: curve_self_intersection(&fx.map, r, samples)?,
            })
        })
        .collect()
}

pub fn problem_table(rows: &[ProblemRow]) -> String {
    let mut out = format!("# {EXPLORATORY_NOTE}\nalpha,n,a,witness,theta_a,theta_b\n");
    for row in rows {
        match &row.crossing {
            Some(c) => {
                let _ = writeln!(out, "{},{},{},yes,{:.9},{:.9}", row.alpha, row.n, row.a, c.theta_a, c.theta_b);
            }
            None => {
                let _ = writeln!(out, "{},{},{},no,,", row.alpha, row.n, row.a);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub n: u32,
    pub a: f64,
    pub report: GridReport,
}

/// `Re(Df/f)` scans of `z - a zⁿ + conj(z²/2 - (n/(n+1)) a z^{n+1})` at
/// `a = 3/(n(2n+1))`.
pub fn conjecture_evidence(degrees: &[u32], grid: &ScanGrid) -> Result<Vec<ConjectureRow>> {
    degrees
        .iter()
        .map(|&n| {
            let m = conjecture_member(n)?;
            Ok(ConjectureRow {
                n,
                a: m.a,
                report: scan_fully_starlike(&m.map, grid),
            })
        })
        .collect()
}

pub fn conjecture_table(rows: &[ConjectureRow]) -> String {
    let mut out = String::from("n,a,min Re(Df/f),verdict,note\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{:.17e},{:.17e},{},{}",
            row.n,
            row.a,
            row.report.min_value,
            if row.report.passed() { "passed" } else { "violated" },
            row.report.disclaimer()
        );
    }
    out
}
