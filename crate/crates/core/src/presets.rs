//! Named maps for the command-line tool.

use crate::families::{harmonic_koebe, mocanu_example};
use crate::series::HarmonicMapSeries;
use crate::{Error, Result};

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 5] = ["identity", "figure1", "figure2", "koebe", "half-square"];

/// Truncation of the harmonic Koebe preset; enough for grids up to `r = 0.99`.
pub const KOEBE_ORDER: usize = 8192;

/// * `identity`: `z`
/// * `figure1`: `z - (3/10)z² + conj(z²/2 - (1/5)z³)`, close-to-convex but
///   not in `C¹_H`
/// * `figure2`: `z - z²/2 + conj(z²/2 - z³/3)`, not univalent
/// * `koebe`: the harmonic Koebe function
/// * `half-square`: `z + conj(z²/2)`
pub fn preset(name: &str) -> Result<HarmonicMapSeries> {
    match name {
        "identity" => Ok(HarmonicMapSeries::identity()),
        "figure1" | "f0" => Ok(mocanu_example(2, 0.3)?.map),
        "figure2" => Ok(mocanu_example(2, 0.5)?.map),
        "koebe" => Ok(harmonic_koebe(KOEBE_ORDER)),
        "half-square" => HarmonicMapSeries::from_real(&[0.0, 1.0], &[0.0, 0.0, 0.5]),
        _ => Err(Error::invalid(format!(
            "unknown preset '{name}' (expected one of {})",
            PRESETS.join(", ")
        ))),
    }
}

pub fn title(name: &str) -> &'static str {
    match name {
        "identity" => "f(z) = z",
        "figure1" | "f0" => "f(z) = z - (3/10)z^2 + conj(z^2/2 - (1/5)z^3)",
        "figure2" => "f(z) = z - (1/2)z^2 + conj(z^2/2 - (1/3)z^3)",
        "koebe" => "harmonic Koebe function",
        "half-square" => "f(z) = z + conj(z^2/2)",
        _ => "harmonic map",
    }
}
