//! SVG and CSV output of image curves `f(r e^{iθ})`.
//!
//! Output is a pure function of the inputs: numbers are printed with a
//! fixed number of significant digits, so repeated runs give identical bytes.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{curve_self_intersection, image_curve, Crossing, ScanSample};
use crate::series::HarmonicMapSeries;
use crate::{Error, Result};

/// Significant digits of SVG coordinates.
pub const SVG_DIGITS: usize = 9;
/// Significant digits of CSV values.
pub const CSV_DIGITS: usize = 17;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderSpec {
    pub radii: Vec<f64>,
    pub samples_per_circle: usize,
    pub width: f64,
    pub height: f64,
    /// Stroke width as a fraction of the larger image extent.
    pub stroke: f64,
    /// Samples for the crossing search on the outermost curve; 0 disables it.
    pub crossing_samples: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.995]);
        RenderSpec {
            radii,
            samples_per_circle: 1024,
            width: 800.0,
            height: 800.0,
            stroke: 0.002,
            crossing_samples: 4096,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self, svg: bool) -> Result<()> {
        if self.radii.is_empty() || self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::invalid("render radii must be nonempty and lie in (0, 1)"));
        }
        let min = if svg { 256 } else { 1 };
        if self.samples_per_circle < min {
            return Err(Error::invalid(format!("need at least {min} samples per circle")));
        }
        if !(self.width > 0.0 && self.height > 0.0 && self.stroke > 0.0) {
            return Err(Error::invalid("canvas size and stroke must be positive"));
        }
        if self.crossing_samples != 0 && self.crossing_samples < 512 {
            return Err(Error::invalid("crossing search needs at least 512 samples"));
        }
        Ok(())
    }
}

/// `x` rounded to `digits` significant digits, in plain decimal notation
/// without trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let mut out = String::from(sign);
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

fn s9(x: f64) -> String {
    format_sig(x, SVG_DIGITS)
}

fn s17(x: f64) -> String {
    format_sig(x, CSV_DIGITS)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOutput {
    pub svg: String,
    pub csv: String,
    pub crossing: Option<Crossing>,
}

/// Image curves of every radius as SVG and CSV, with a crossing marker when
/// the outermost curve is found to cross itself.
pub fn render_map(f: &HarmonicMapSeries, spec: &RenderSpec, title: &str) -> Result<RenderOutput> {
    spec.validate(true)?;
    let crossing = if spec.crossing_samples > 0 {
        let r = spec.radii.iter().copied().fold(0.0, f64::max);
        curve_self_intersection(f, r, spec.crossing_samples)?
    } else {
        None
    };
    Ok(RenderOutput {
        svg: render_svg(f, spec, title, crossing.map(|c| c.point))?,
        csv: render_csv(f, spec)?,
        crossing,
    })
}

pub fn render_svg(f: &HarmonicMapSeries, spec: &RenderSpec, title: &str, marker: Option<Complex64>) -> Result<String> {
    spec.validate(true)?;
    let curves: Vec<Vec<Complex64>> = spec
        .radii
        .iter()
        .map(|&r| image_curve(f, r, spec.samples_per_circle))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in curves.iter().flatten().chain(marker.iter()) {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    let (w, h) = ((x1 - x0).max(1e-12), (y1 - y0).max(1e-12));
    let (px, py) = (0.05 * w, 0.05 * h);
    let extent = w.max(h);
    let stroke = s9(spec.stroke * extent);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    // the image is drawn with y flipped so that the picture has the usual orientation
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        s9(spec.width),
        s9(spec.height),
        s9(x0 - px),
        s9(-y1 - py),
        s9(w + 2.0 * px),
        s9(h + 2.0 * py)
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    for (r, curve) in spec.radii.iter().zip(&curves) {
        let _ = write!(
            out,
            "<polyline data-r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\" points=\"",
            s9(*r)
        );
        for (k, p) in curve.iter().chain(curve.first()).enumerate() {
            if k > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", s9(p.re), s9(-p.im));
        }
        out.push_str("\"/>\n");
    }
    if let Some(m) = marker {
        let d = 0.015 * extent;
        let sw = s9(2.0 * spec.stroke * extent);
        for (a, b) in [(Complex64::new(-d, -d), Complex64::new(d, d)), (Complex64::new(-d, d), Complex64::new(d, -d))] {
            let _ = writeln!(
                out,
                "<polyline class=\"crossing\" fill=\"none\" stroke=\"red\" stroke-width=\"{sw}\" points=\"{},{} {},{}\"/>",
                s9(m.re + a.re),
                s9(-(m.im + a.im)),
                s9(m.re + b.re),
                s9(-(m.im + b.im))
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `r,theta,re,im` rows for every radius and angle.
pub fn render_csv(f: &HarmonicMapSeries, spec: &RenderSpec) -> Result<String> {
    spec.validate(false)?;
    let m = spec.samples_per_circle;
    let mut out = String::from("r,theta,re,im\n");
    for &r in &spec.radii {
        for (k, p) in image_curve(f, r, m).into_iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            let _ = writeln!(out, "{},{},{},{}", s17(r), s17(theta), s17(p.re), s17(p.im));
        }
    }
    Ok(out)
}

/// `r,theta,re,im,value` rows of a scan.
pub fn scan_csv(samples: &[ScanSample]) -> String {
    let mut out = String::from("r,theta,re,im,value\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s17(s.r),
            s17(s.theta),
            s17(s.w.re),
            s17(s.w.im),
            s17(s.value)
        );
    }
    out
}
