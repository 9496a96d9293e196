//! `harmomap`: certify, scan and render planar harmonic mappings.
//!
//! Exit status: 0 certified / passed, 1 not certified / violated, 2 usage or
//! hypothesis error.

mod config;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use harmomap::criteria::{
    coefficient_margin, coefficient_margin_with_tail, family_k_closed, family_k_series, threshold_c,
    threshold_residual, Certificate, ThresholdFamily,
};
use harmomap::explore::{alpha_range, conjecture_evidence, conjecture_table, problem_scan, problem_table};
use harmomap::families::hypergeometric_family;
use harmomap::geometry::Functional;
use harmomap::render::{render_map, scan_csv};
use harmomap::series::DEFAULT_HYPER_TRUNCATION;
use harmomap::{presets, Complex64, ScanGrid};

use config::Config;
use source::{MapArgs, Source};

#[derive(Parser)]
#[command(name = "harmomap", version, about = "Coefficient certificates and numeric probes for harmonic mappings")]
struct Cli {
    /// TOML file with grid, truncation and render defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    /// Σ n|a_n| + Σ n|b_n| <= 1 with b1 = 0: close-to-convex and fully starlike
    FullyStarlike,
    /// Σ n|a_n| + Σ n|b_n| <= 1 with |b1| < 1: close-to-convex
    CloseToConvex,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionalArg {
    Ch1,
    Jacobian,
    Starlike,
    Convexity,
    ConvexityUpper,
    StarlikeDisk,
}

#[derive(clap::Args)]
struct GridArgs {
    /// Comma separated radii in (0, 0.999]
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Angles per circle
    #[arg(long)]
    angles: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a coefficient condition
    Certify {
        #[command(flatten)]
        map: MapArgs,
        /// Coefficient-sum test on the map itself; hypergeometric families
        /// default to their closed form
        #[arg(long, value_enum)]
        criterion: Option<Criterion>,
        /// Cross-check a closed form by summing this many coefficients
        #[arg(long)]
        series: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Minimum of a geometric functional over a polar grid
    Scan {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum)]
        functional: FunctionalArg,
        /// Lower bound for convexity, upper bound for convexity-upper
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        /// Write every sample as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Draw image curves of concentric circles
    Render {
        #[command(flatten)]
        map: MapArgs,
        /// SVG output path
        #[arg(long)]
        out: PathBuf,
        /// CSV output path
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Roots of the a = 1 threshold quadratic in c
    Threshold {
        /// C42a, C42b or C47
        #[arg(long)]
        family: String,
        #[arg(long)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha_im: f64,
    },
    /// Self-crossing sweep over g' = z h' fixtures with Re(1 + z h''/h') < 3α/2
    ProblemScan {
        #[arg(long)]
        alpha_start: f64,
        #[arg(long)]
        alpha_end: f64,
        #[arg(long, default_value_t = 0.01)]
        alpha_step: f64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 0.995)]
        r: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Full-starlikeness scans of z - a zⁿ + conj(z²/2 - (n/(n+1)) a z^{n+1}), a = 3/(n(2n+1))
    Conjecture {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Write the coefficients of a map as JSON
    Coeffs {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("HARMOMAP_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: HARMOMAP_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn grid(args: &GridArgs, cfg: &Config) -> Result<ScanGrid> {
    let default = ScanGrid::default();
    let radii = args
        .radii
        .clone()
        .or_else(|| cfg.grid.radii.clone())
        .unwrap_or_else(|| default.radii().to_vec());
    let angles = args.angles.or(cfg.grid.angles).unwrap_or(default.angles());
    Ok(ScanGrid::new(radii, angles)?)
}

fn print_certificate(cert: &Certificate, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(cert)?);
    } else {
        print!("{}", cert.report());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = Config::load(cli.config.as_deref())?;
    let order = cfg.truncation.unwrap_or(DEFAULT_HYPER_TRUNCATION);
    match cli.command {
        Command::Certify { map, criterion, series, json } => {
            let source = map.resolve()?;
            match (source, criterion) {
                (Source::Hypergeometric(spec), None) => {
                    let cert = family_k_closed(&spec)?;
                    print_certificate(&cert, json)?;
                    if let Some(n) = series {
                        let s = family_k_series(&spec, n)?;
                        let tail = s.tail_bound.unwrap_or(0.0);
                        println!("series-sum: {:.17e}", s.value);
                        println!("series-tail-bound: {tail:.3e}");
                        println!("closed-minus-series: {:.3e}", cert.sum_value - s.value);
                        if (cert.sum_value - s.value).abs() > tail + 1e-8 {
                            bail!("closed form and series disagree beyond the tail bound");
                        }
                    }
                    Ok(cert.is_certified())
                }
                (Source::Hypergeometric(spec), Some(c)) => {
                    let order = map.truncation.unwrap_or(order);
                    let f = hypergeometric_family(&spec, order)?;
                    let tail = family_k_series(&spec, order)?.tail_bound.unwrap_or(0.0);
                    let cert = coefficient_margin_with_tail(&f, matches!(c, Criterion::CloseToConvex), tail)?;
                    print_certificate(&cert, json)?;
                    Ok(cert.is_certified())
                }
                (Source::Map(f), c) => {
                    let allow_b1 = match c {
                        Some(Criterion::CloseToConvex) => true,
                        Some(Criterion::FullyStarlike) => false,
                        None => f.b1().norm() > 0.0,
                    };
                    let cert = coefficient_margin(&f, allow_b1)?;
                    print_certificate(&cert, json)?;
                    Ok(cert.is_certified())
                }
            }
        }
        Command::Scan { map, functional, bound, grid: g, csv, json } => {
            let f = map.map(order)?;
            let grid = grid(&g, &cfg)?;
            let fun = match functional {
                FunctionalArg::Ch1 => Functional::Ch1,
                FunctionalArg::Jacobian => Functional::Jacobian,
                FunctionalArg::Starlike => Functional::FullyStarlike,
                FunctionalArg::Convexity => Functional::ConvexityLower(bound.unwrap_or(-0.5)),
                FunctionalArg::ConvexityUpper => Functional::ConvexityUpper(bound.unwrap_or(1.5)),
                FunctionalArg::StarlikeDisk => Functional::StarlikeDisk,
            };
            let report = fun.scan(&f, &grid);
            if let Some(path) = csv {
                std::fs::write(&path, scan_csv(&fun.samples(&f, &grid)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.report());
            }
            Ok(report.passed())
        }
        Command::Render { map, out, csv, radii, samples } => {
            let f = map.map(order)?;
            let mut spec = cfg.render.clone().unwrap_or_default();
            if let Some(r) = radii {
                spec.radii = r;
            }
            if let Some(m) = samples {
                spec.samples_per_circle = m;
            }
            let title = map.preset.as_deref().map(presets::title).unwrap_or("harmonic map");
            let rendered = render_map(&f, &spec, title)?;
            std::fs::write(&out, &rendered.svg).with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = csv {
                std::fs::write(&path, &rendered.csv).with_context(|| format!("writing {}", path.display()))?;
            }
            println!("wrote {}", out.display());
            match rendered.crossing {
                Some(c) => println!(
                    "crossing: theta {:.9} and {:.9} meet at {:.9}{:+.9}i ({} crossing pairs)",
                    c.theta_a, c.theta_b, c.point.re, c.point.im, c.count
                ),
                None => println!("crossing: none found on the outermost curve"),
            }
            Ok(true)
        }
        Command::Threshold { family, b, alpha, alpha_im } => {
            let Some(kind) = ThresholdFamily::parse(&family) else {
                bail!("unknown threshold family '{family}' (expected C42a, C42b or C47)");
            };
            let alpha = Complex64::new(alpha, alpha_im);
            let roots = threshold_c(kind, b, alpha)?;
            println!("family: {}", kind.name());
            println!("plus-root: {:.17e}", roots.plus);
            println!("minus-root: {:.17e}", roots.minus);
            match threshold_residual(kind, b, alpha, roots.plus) {
                Ok(r) => println!("residual-at-plus-root: {r:.3e}"),
                Err(e) => println!("residual-at-plus-root: unavailable ({e})"),
            }
            Ok(true)
        }
        Command::ProblemScan { alpha_start, alpha_end, alpha_step, degrees, r, samples } => {
            let alphas = alpha_range(alpha_start, alpha_end, alpha_step);
            let rows = problem_scan(&alphas, &degrees, r, samples)?;
            print!("{}", problem_table(&rows));
            Ok(true)
        }
        Command::Conjecture { n_max, grid: g } => {
            let grid = grid(&g, &cfg)?;
            let degrees: Vec<u32> = (2..=n_max).collect();
            let rows = conjecture_evidence(&degrees, &grid)?;
            print!("{}", conjecture_table(&rows));
            Ok(rows.iter().all(|r| r.report.passed()))
        }
        Command::Coeffs { map, out } => {
            let f = map.map(order)?;
            let json = f.to_json();
            match out {
                Some(path) => std::fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?,
                None => println!("{json}"),
            }
            Ok(true)
        }
    }
}
