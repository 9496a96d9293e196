//! Resolving a map from command-line flags.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use harmomap::criteria::{Family, FamilySpec};
use harmomap::families::{
    conjecture_member, hypergeometric_family, limit_mapping, mocanu_example, suffridge_family, PolynomialSpec,
    SuffridgeParams,
};
use harmomap::{presets, Complex64, HarmonicMapSeries, HypergeometricParams};

/// Where the map comes from: a preset, a coefficient file or a named family.
#[derive(Debug, Clone, Default, Args)]
pub struct MapArgs {
    /// Named map: identity, figure1, figure2, koebe, half-square
    #[arg(long, conflicts_with_all = ["coeffs", "family"])]
    pub preset: Option<String>,
    /// JSON coefficient file {"h": [[re, im], ...], "b": [[re, im], ...]}
    #[arg(long, conflicts_with = "family")]
    pub coeffs: Option<std::path::PathBuf>,
    /// T41a, T41b, T41c, T44a, T44b, C46a, C46b, mocanu, conjecture,
    /// suffridge, limit
    #[arg(long)]
    pub family: Option<String>,
    /// Hypergeometric a (real part), or the coefficient a of z - a zⁿ
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Imaginary part of a; selects the conjugate pair b = conj(a)
    #[arg(long, allow_negative_numbers = true)]
    pub a_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    /// Selects a = b = -m
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub alpha_im: f64,
    /// Degree n of the mocanu, conjecture and suffridge families
    #[arg(long)]
    pub n: Option<u32>,
    /// Coefficients of Q for the suffridge family, comma separated reals
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Three angles for the limit family, comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub psi: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub theta: f64,
    /// Truncation order for series-valued families
    #[arg(long)]
    pub truncation: Option<usize>,
}

pub enum Source {
    Map(HarmonicMapSeries),
    Hypergeometric(FamilySpec),
}

impl MapArgs {
    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha, self.alpha_im)
    }

    fn need<T: Copy>(v: Option<T>, name: &str, family: &str) -> Result<T> {
        v.ok_or_else(|| anyhow!("family {family} needs --{name}"))
    }

    pub fn resolve(&self) -> Result<Source> {
        if let Some(name) = &self.preset {
            return Ok(Source::Map(presets::preset(name)?));
        }
        if let Some(path) = &self.coeffs {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(Source::Map(HarmonicMapSeries::from_json(&text)?));
        }
        let Some(name) = self.family.as_deref() else {
            bail!("no map given: use --preset, --coeffs or --family");
        };
        if let Some(family) = Family::parse(name) {
            let c = Self::need(self.c, "c", name)?;
            let params = if let Some(m) = self.m {
                HypergeometricParams::negative_integer(m, c)?
            } else if let Some(im) = self.a_im {
                HypergeometricParams::conjugate(Complex64::new(Self::need(self.a, "a", name)?, im), c)?
            } else {
                HypergeometricParams::real(Self::need(self.a, "a", name)?, Self::need(self.b, "b", name)?, c)?
            };
            let spec = FamilySpec::new(family, params, self.alpha());
            spec.check_hypotheses()?;
            return Ok(Source::Hypergeometric(spec));
        }
        let map = match name.to_ascii_lowercase().as_str() {
            "mocanu" => mocanu_example(Self::need(self.n, "n", name)?, Self::need(self.a, "a", name)?)?.map,
            "conjecture" => conjecture_member(Self::need(self.n, "n", name)?)?.map,
            "suffridge" => {
                let q = if self.q.is_empty() { vec![1.0] } else { self.q.clone() };
                let n = Self::need(self.n, "n", name)? as usize;
                let q = PolynomialSpec::from_real(&q, q.len() - 1)?;
                let p = SuffridgeParams { phi: self.phi, beta: self.beta, t: self.t, target_degree: n };
                suffridge_family(&q, p)?.map
            }
            "limit" => {
                let psi: [f64; 3] = self
                    .psi
                    .as_slice()
                    .try_into()
                    .map_err(|_| anyhow!("family limit needs --psi with three angles"))?;
                limit_mapping(psi, self.theta, self.truncation.unwrap_or(4096))
            }
            _ => bail!("unknown family '{name}'"),
        };
        Ok(Source::Map(map))
    }

    /// The map itself; hypergeometric members are truncated at `order`.
    pub fn map(&self, order: usize) -> Result<HarmonicMapSeries> {
        match self.resolve()? {
            Source::Map(m) => Ok(m),
            Source::Hypergeometric(spec) => Ok(hypergeometric_family(&spec, self.truncation.unwrap_or(order))?),
        }
    }
}
