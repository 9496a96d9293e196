//! Coefficient criteria, convolution kernels and numeric probes for planar
//! harmonic mappings `f = h + conj(g)` on the unit disk.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] truncated power series and harmonic maps built from them,
//! * [`special`] Pochhammer symbols, the Gamma function and Gauss
//!   hypergeometric coefficients,
//! * [`criteria`] coefficient-sum certificates and the hypergeometric
//!   family closed forms and thresholds,
//! * [`geometry`] grid scans of the geometric functionals and curve
//!   self-intersection probes,
//! * [`convolution`] the starlikeness convolution kernels,
//! * [`families`] constructors for every explicit family,
//! * [`render`], [`explore`] and [`presets`] back the command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convolution;
pub mod criteria;
mod error;
pub mod explore;
pub mod families;
pub mod geometry;
pub mod presets;
pub mod render;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use criteria::{Certificate, Family, FamilySpec, Verdict};
pub use geometry::{GridReport, ScanGrid};
pub use series::{AnalyticSeries, DiskPoint, HarmonicMapSeries};
pub use special::{CoeffSumResult, HypergeometricParams};
