//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Set `HARMOMAP_BLESS=1` to regenerate the golden render files.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use harmomap::convolution::{mocanu_direct_assembly, mocanu_kernel_value, starlike_half_sum, starlike_kernel_value, UnimodularParam};
use harmomap::criteria::{
    coefficient_margin, coefficient_margin_with_tail, family_k_closed, family_k_series, threshold_c, Family,
    FamilySpec, ThresholdFamily,
};
use harmomap::explore::conjecture_evidence;
use harmomap::families::{
    binomial_form, class_m_threshold, harmonic_koebe, hypergeometric_family, limit_mapping, mocanu_example,
    suffridge_family, PolynomialSpec, SuffridgeParams,
};
use harmomap::geometry::{curve_self_intersection, moebius_disk_image, scan_ch1, scan_convexity_functional, scan_fully_starlike};
use harmomap::render::{render_map, RenderSpec};
use harmomap::special::{gauss_series_sum, gauss_sum, ParamMode};
use harmomap::{presets, AnalyticSeries, Complex64, DiskPoint, Error, HarmonicMapSeries, HypergeometricParams, ScanGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn oracle_matrix() -> Vec<FamilySpec> {
    let alpha = |f: Family| match f.alpha_max() {
        Some(m) if m <= 0.5 => Complex64::from_polar(0.3, 0.7),
        Some(_) => Complex64::from_polar(0.6, -1.1),
        None => Complex64::from_polar(0.3, 2.0),
    };
    let mut params = Vec::new();
    for &(a, b, cc) in &[(0.5, 1.5, 4.0), (1.0, 1.0, 4.0), (0.3, 0.7, 3.5), (2.0, 2.0, 6.5), (0.5, 0.5, 3.2), (1.5, 0.2, 4.0)] {
        params.push(HypergeometricParams::real(a, b, cc).unwrap());
    }
    for &(a, cc) in &[(c(0.5, 0.5), 4.0), (c(1.0, 1.0), 5.5), (c(-0.3, 0.8), 4.0)] {
        params.push(HypergeometricParams::conjugate(a, cc).unwrap());
    }
    for &(m, cc) in &[(1, 0.7), (2, 2.5), (3, 1.3), (5, 4.0)] {
        params.push(HypergeometricParams::negative_integer(m, cc).unwrap());
    }
    let mut out = Vec::new();
    for p in params {
        for f in Family::ALL {
            let spec = FamilySpec::new(f, p, alpha(f));
            if spec.check_hypotheses().is_ok() {
                out.push(spec);
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let specs = oracle_matrix();
    let mut modes = [0usize; 3];
    let mut worst: f64 = 0.0;
    for spec in &specs {
        modes[match spec.params.mode() {
            ParamMode::RealPositiveProduct => 0,
            ParamMode::ConjugatePair => 1,
            ParamMode::NegativeInteger(_) => 2,
        }] += 1;
        let closed = family_k_closed(spec).map_err(e)?.sum_value;
        let series = family_k_series(spec, 20_000).map_err(e)?;
        let tail = series.tail_bound.unwrap_or(0.0);
        let gap = (closed - series.value).abs();
        ensure(gap <= tail + 1e-8, || {
            format!("{} {:?}: |closed - series| = {gap:e} > tail {tail:e} + 1e-8", spec.family, spec.params)
        })?;
        worst = worst.max(gap - tail);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(specs.len() >= 30, || format!("only {} parameter sets", specs.len()))?;
    ensure(modes.iter().all(|&m| m > 0), || format!("mode coverage {modes:?}"))?;
    ensure(secs <= 10.0, || format!("took {secs:.2}s > 10s"))?;
    Ok(format!(
        "{} sets (real {}, conjugate {}, a=b=-m {}), max(gap - tail) = {worst:.1e}, {secs:.2}s",
        specs.len(),
        modes[0],
        modes[1],
        modes[2]
    ))
}

fn criterion_2() -> Outcome {
    let g = gauss_sum(&HypergeometricParams::real(1.0, 1.0, 3.0).map_err(e)?).map_err(e)?;
    ensure((g - 2.0).abs() <= 1e-12, || format!("F(1,1;3;1) = {g}"))?;
    let p = HypergeometricParams::negative_integer(2, 2.0).map_err(e)?;
    let g2 = gauss_sum(&p).map_err(e)?;
    ensure((g2 - 10.0 / 3.0).abs() <= 1e-12, || format!("F(-2,-2;2;1) = {g2}"))?;
    let finite = gauss_series_sum(&p, 16).map_err(e)?.value;
    ensure((finite - 10.0 / 3.0).abs() <= 1e-12, || format!("finite sum {finite}"))?;
    let p = HypergeometricParams::conjugate(c(1.0, 1.0), 4.0).map_err(e)?;
    let closed = gauss_sum(&p).map_err(e)?;
    let partial = gauss_series_sum(&p, 200_000).map_err(e)?;
    let gap = (closed - partial.value).abs();
    ensure(gap <= 1e-8, || format!("conjugate pair: |closed - partial| = {gap:e}"))?;
    Ok(format!("F(1,1;3;1) err {:.1e}, F(-2,-2;2;1) err {:.1e}, conjugate gap {gap:.1e}", (g - 2.0).abs(), (g2 - 10.0 / 3.0).abs()))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let mut divergent = 0;
    let kinds = [ThresholdFamily::C42a, ThresholdFamily::C42b, ThresholdFamily::C47];
    for _ in 0..20 {
        let b = rng.gen_range(0.2..3.0);
        let alpha = Complex64::from_polar(rng.gen_range(0.01..0.45), rng.gen_range(0.0..2.0 * PI));
        for kind in kinds {
            let root = threshold_c(kind, b, alpha).map_err(e)?.plus;
            let at = family_k_closed(&kind.spec(b, alpha, root).map_err(e)?).map_err(e)?.sum_value;
            ensure((at - 1.0).abs() <= 1e-9, || format!("{}: b={b}, |alpha|={}: K(root) = {at}", kind.name(), alpha.norm()))?;
            worst = worst.max((at - 1.0).abs());
            let below = kind.spec(b, alpha, root - 0.01).map_err(e)?;
            match family_k_closed(&below) {
                Ok(cert) => ensure(cert.sum_value > 1.0, || {
                    format!("{}: b={b}: K(root - 0.01) = {} <= 1", kind.name(), cert.sum_value)
                })?,
                // below the convergence line the coefficient sum diverges
                Err(Error::Hypothesis(msg)) if msg.contains("c > a+b+1") => divergent += 1,
                Err(err) => return Err(err.to_string()),
            }
        }
    }
    Ok(format!(
        "60 roots (C42a, C42b, C47 x 20), max |K(root) - 1| = {worst:.1e}; K(root - 0.01) > 1 in all cases ({divergent} with a divergent sum)"
    ))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut check = |got: Complex64, alpha: Complex64, expected: f64, what: &str| -> Result<(), String> {
        let r = (got - alpha * expected).norm() / (alpha.norm() * expected.abs());
        worst = worst.max(r);
        ensure(r <= 1e-13, || format!("{what}: relative error {r:e}"))
    };
    let alpha = Complex64::from_polar(0.3, 0.4);
    for &cc in &[1.6, 2.7, 9.25] {
        let poly = |family, m| {
            let spec = FamilySpec::new(family, HypergeometricParams::negative_integer(m, cc).unwrap(), alpha);
            hypergeometric_family(&spec, 16).map_err(e)
        };
        let f = poly(Family::T41a, 2)?;
        for (k, v) in [1.0, 4.0 / cc, 2.0 / (cc * (cc + 1.0))].into_iter().enumerate() {
            check(f.g().coeff(k + 2), alpha, v, "T41a m=2")?;
        }
        let f = poly(Family::T41a, 3)?;
        let d3 = cc * (cc + 1.0) * (cc + 2.0);
        for (k, v) in [1.0, 9.0 / cc, 18.0 / (cc * (cc + 1.0)), 6.0 / d3].into_iter().enumerate() {
            check(f.g().coeff(k + 2), alpha, v, "T41a m=3")?;
        }
        let spec = FamilySpec::new(Family::T41a, HypergeometricParams::negative_integer(3, cc).unwrap(), alpha);
        let gc = 2.0 + 27.0 / cc + 72.0 / (cc * (cc + 1.0)) + 30.0 / d3;
        let k = family_k_closed(&spec).map_err(e)?.sum_value / alpha.norm();
        ensure(rel(k, gc) <= 1e-13, || format!("g(c) mismatch {k} vs {gc}"))?;
        let f = poly(Family::T41c, 2)?;
        for (k, v) in [1.0, 4.0 / cc, 2.0 / (cc * (cc + 1.0))].into_iter().enumerate() {
            check(f.g().coeff(k + 1), alpha, v, "T41c m=2")?;
        }
        let f = poly(Family::T44b, 2)?;
        for (k, v) in [1.0, 2.0 / cc, 2.0 / (3.0 * cc * (cc + 1.0))].into_iter().enumerate() {
            check(f.g().coeff(k + 2), alpha, v, "T44b m=2")?;
        }
    }
    for m in 1..=12u32 {
        for &cc in &[0.5, 3.3] {
            let p = HypergeometricParams::negative_integer(m, cc).map_err(e)?;
            for (n, b) in binomial_form(m, cc).into_iter().enumerate() {
                let r = rel(p.coeff(n).re, b);
                ensure(r <= 1e-13, || format!("binomial form m={m} n={n}: {r:e}"))?;
            }
        }
    }
    // displayed thresholds are where the coefficient sum reaches 1
    let mut thr_worst: f64 = 0.0;
    let mut outside = 0;
    for s in [0.05f64, 0.2, 0.45] {
        let t41a = (14.0 * s - 1.0 + (36.0 * s * s + 52.0 * s + 1.0).sqrt()) / (2.0 * (1.0 - 2.0 * s));
        let t41c = (9.0 * s - 1.0 + (25.0 * s * s + 38.0 * s + 1.0).sqrt()) / (2.0 * (1.0 - s));
        let t44b = (24.0 * s - 3.0 + (-48.0 * s * s + 168.0 * s + 9.0).sqrt()) / (6.0 * (1.0 - 2.0 * s));
        for (family, cc) in [(Family::T41a, t41a), (Family::T41c, t41c), (Family::T44b, t44b)] {
            let spec = FamilySpec::new(family, HypergeometricParams::negative_integer(2, cc).map_err(e)?, c(s, 0.0));
            if spec.check_hypotheses().is_err() {
                outside += 1;
                continue;
            }
            let k = family_k_closed(&spec).map_err(e)?.sum_value;
            ensure((k - 1.0).abs() <= 1e-12, || format!("{family} threshold at |alpha|={s}: K = {k}"))?;
            thr_worst = thr_worst.max((k - 1.0).abs());
        }
    }
    let one = PolynomialSpec::from_real(&[1.0], 0).map_err(e)?;
    let mut sum_worst: f64 = 0.0;
    for n in 2..8 {
        for &t in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            let m = suffridge_family(&one, SuffridgeParams { phi: 0.7, beta: -2.1, t, target_degree: n }).map_err(e)?;
            let cert = coefficient_margin(&m.map, false).map_err(e)?;
            ensure((cert.sum_value - 1.0).abs() <= 1e-15 && cert.is_certified(), || {
                format!("Suffridge n={n} t={t}: sum {}", cert.sum_value)
            })?;
            sum_worst = sum_worst.max((cert.sum_value - 1.0).abs());
        }
    }
    Ok(format!(
        "coefficients rel err <= {worst:.1e}; displayed thresholds |K - 1| <= {thr_worst:.1e} ({outside} of 9 outside the hypotheses); (1-t)+t sum err <= {sum_worst:.1e}"
    ))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn criterion_5() -> Outcome {
    let grid = ScanGrid::default();
    let (rep, t1) = timed(|| scan_ch1(&presets::preset("figure1").unwrap(), &grid));
    ensure(rep.min_value < 0.0, || format!("f0 ch1 min {}", rep.min_value))?;
    ensure(t1 <= 5.0, || format!("f0 scan took {t1:.2}s"))?;
    let (x, t2) = timed(|| curve_self_intersection(&presets::preset("figure2").unwrap(), 0.995, 4096));
    let x = x.map_err(e)?.ok_or("figure-2 map: no crossing at r = 0.995")?;
    ensure(t2 <= 5.0, || format!("crossing search took {t2:.2}s"))?;
    let (koebe, t3) = timed(|| scan_fully_starlike(&harmonic_koebe(presets::KOEBE_ORDER), &grid));
    ensure(!koebe.passed(), || format!("Koebe min {}", koebe.min_value))?;
    ensure(t3 <= 5.0, || format!("Koebe scan took {t3:.2}s"))?;
    let w = rep.witness();
    let kw = koebe.witness();
    Ok(format!(
        "f0 min {:.4} at {:.3}{:+.3}i ({t1:.2}s); crossing at {:.4}{:+.4}i ({t2:.2}s); Koebe min {:.3e} at {:.3}{:+.3}i ({t3:.2}s)",
        rep.min_value, w.re, w.im, x.point.re, x.point.im, koebe.min_value, kw.re, kw.im
    ))
}

fn criterion_6() -> Outcome {
    let mut radii = ScanGrid::default().radii().to_vec();
    radii.extend([0.995, 0.999]);
    let grid = ScanGrid::new(radii, 4096).map_err(e)?;
    let mut summary = Vec::new();
    for n in 2..=6u32 {
        let a = class_m_threshold(n);
        let ex = mocanu_example(n, a).map_err(e)?;
        ensure(ex.class_m, || format!("n={n}: class flag false"))?;
        let min = scan_convexity_functional(ex.map.h(), &grid, 0.0).min_value;
        ensure(min >= -0.5 - 1e-6, || format!("n={n}: grid min {min} below -1/2"))?;
        ensure(min <= -0.5 + 0.02, || format!("n={n}: grid min {min} not within 0.02 of -1/2"))?;
        let img = moebius_disk_image(n, a).map_err(e)?.min_re();
        ensure((img + 0.5).abs() <= 1e-12, || format!("n={n}: center - radius = {img}"))?;
        summary.push(format!("{min:.4}"));
    }
    Ok(format!("grid minima for n=2..6 (r_max 0.999, 4096 angles): {}", summary.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_s: f64 = 0.0;
    let mut worst_m: f64 = 0.0;
    for _ in 0..1000 {
        let deg = rng.gen_range(1..=8);
        let mut rand_c = |scale: f64| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
        let mut h = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let mut g = vec![c(0.0, 0.0), c(0.0, 0.0)];
        for _ in 2..=deg {
            h.push(rand_c(1.0));
            g.push(rand_c(1.0));
        }
        let f = HarmonicMapSeries::new(AnalyticSeries::new(h.clone()), AnalyticSeries::new(g)).map_err(e)?;
        let z = DiskPoint::from_polar(rng.gen_range(1e-3..0.9), rng.gen_range(0.0..2.0 * PI)).map_err(e)?;
        let zeta = UnimodularParam::from_angle(rng.gen_range(0.0..2.0 * PI));
        let d = (starlike_kernel_value(&f, z, zeta).map_err(e)? - starlike_half_sum(&f, z.z(), zeta)).norm();
        worst_s = worst_s.max(d);
        let hs = AnalyticSeries::new(h);
        let dm = (mocanu_kernel_value(&hs, z, zeta).map_err(e)? - mocanu_direct_assembly(&hs, z, zeta).map_err(e)?).norm();
        worst_m = worst_m.max(dm);
    }
    ensure(worst_s <= 1e-12, || format!("half-sum identity error {worst_s:e}"))?;
    ensure(worst_m <= 1e-12, || format!("kernel assembly error {worst_m:e}"))?;
    Ok(format!("1000 trials: half-sum max err {worst_s:.1e}, g' = z h' assembly max err {worst_m:.1e}"))
}

fn criterion_8() -> Outcome {
    let degrees: Vec<u32> = (2..=10).collect();
    let rows = conjecture_evidence(&degrees, &ScanGrid::default()).map_err(e)?;
    let mut mins = Vec::new();
    for row in &rows {
        ensure(row.report.passed(), || format!("n={}: min Re(Df/f) = {}", row.n, row.report.min_value))?;
        ensure(row.report.disclaimer().contains("not a proof"), || "disclaimer missing".into())?;
        mins.push(format!("{:.3e}", row.report.min_value));
    }
    Ok(format!("n=2..10 passed (evidence only, not a proof); minima {}", mins.join(", ")))
}

fn golden_spec() -> RenderSpec {
    RenderSpec {
        radii: vec![0.5, 0.9, 0.995],
        samples_per_circle: 256,
        ..RenderSpec::default()
    }
}

fn criterion_9() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("HARMOMAP_BLESS").is_some();
    let mut bytes = 0;
    for name in ["figure1", "figure2"] {
        let f = presets::preset(name).map_err(e)?;
        let first = render_map(&f, &golden_spec(), presets::title(name)).map_err(e)?;
        let second = render_map(&f, &golden_spec(), presets::title(name)).map_err(e)?;
        ensure(first == second, || format!("{name}: two renders differ"))?;
        for (ext, text) in [("svg", &first.svg), ("csv", &first.csv)] {
            let path = dir.join(format!("{name}.{ext}"));
            if bless {
                std::fs::write(&path, text).map_err(e)?;
            }
            let golden = std::fs::read_to_string(&path).map_err(|err| format!("{}: {err}", path.display()))?;
            ensure(&golden == text, || format!("{} differs from the render", path.display()))?;
            bytes += text.len();
        }
        if name == "figure2" {
            ensure(first.crossing.is_some(), || "figure2 render lacks a crossing marker".into())?;
        }
    }
    Ok(format!("figure1/figure2 SVG and CSV byte-identical across runs and to golden files ({bytes} bytes)"))
}

fn corpus() -> Vec<(String, HarmonicMapSeries)> {
    let mut out: Vec<(String, HarmonicMapSeries)> = Vec::new();
    for name in presets::PRESETS {
        out.push((name.to_string(), presets::preset(name).unwrap()));
    }
    for n in 2..=6u32 {
        for k in 1..=4 {
            let a = k as f64 / (4.0 * n as f64);
            out.push((format!("mocanu n={n} a={a:.4}"), mocanu_example(n, a).unwrap().map));
        }
    }
    let one = PolynomialSpec::from_real(&[1.0], 0).unwrap();
    let q = PolynomialSpec::from_real(&[1.0, 0.25], 1).unwrap();
    for n in 2..=6 {
        for &t in &[0.0, 0.3, 1.0] {
            let p = SuffridgeParams { phi: 1.0, beta: 2.5, t, target_degree: n };
            out.push((format!("suffridge Q=1 n={n} t={t}"), suffridge_family(&one, p).unwrap().map));
            if n >= 3 {
                out.push((format!("suffridge Q=1+z/4 n={n} t={t}"), suffridge_family(&q, p).unwrap().map));
            }
        }
    }
    for psi in [[0.0, 2.0, 4.0], [PI, PI, PI]] {
        out.push((format!("limit {psi:?}"), limit_mapping(psi, 0.5, 4096)));
    }
    for spec in oracle_matrix() {
        let f = hypergeometric_family(&spec, 4096).unwrap();
        out.push((format!("{} {:?}", spec.family, spec.params.mode()), f));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let deg = rng.gen_range(2..=6);
        let budget: f64 = rng.gen_range(0.5..1.2);
        let mut h = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let mut g = vec![c(0.0, 0.0), c(0.0, 0.0)];
        for n in 2..=deg {
            let s = budget / (2.0 * n as f64 * (deg - 1) as f64);
            h.push(Complex64::from_polar(rng.gen_range(0.0..s * 2.0), rng.gen_range(0.0..2.0 * PI)));
            g.push(Complex64::from_polar(rng.gen_range(0.0..s * 2.0), rng.gen_range(0.0..2.0 * PI)));
        }
        out.push((format!("random #{i}"), HarmonicMapSeries::new(AnalyticSeries::new(h), AnalyticSeries::new(g)).unwrap()));
    }
    out
}

fn criterion_10() -> Outcome {
    let grid = ScanGrid::default();
    let all = corpus();
    let mut starlike_checked = 0;
    let mut ch1_checked = 0;
    for (name, f) in &all {
        let b1_zero = f.b1().norm() == 0.0;
        let tail = if f.truncation_order() >= 4096 { f.h().tail_estimate(1.0).max(f.g().tail_estimate(1.0)) } else { 0.0 };
        let cert = coefficient_margin_with_tail(f, !b1_zero, tail).map_err(|err| format!("{name}: {err}"))?;
        if !cert.is_certified() {
            continue;
        }
        let ch1 = scan_ch1(f, &grid);
        ensure(ch1.passed(), || format!("{name}: certified but ch1 min {}", ch1.min_value))?;
        ch1_checked += 1;
        if b1_zero {
            let st = scan_fully_starlike(f, &grid);
            ensure(st.passed(), || format!("{name}: certified but Re(Df/f) min {}", st.min_value))?;
            starlike_checked += 1;
        }
    }
    ensure(starlike_checked >= 20, || format!("only {starlike_checked} certified fixtures"))?;
    Ok(format!(
        "{} fixtures, {ch1_checked} certified: all pass the C1_H scan, {starlike_checked} with b1 = 0 also pass Re(Df/f)",
        all.len()
    ))
}

fn main() {
    let checks: [Check; 10] = [
        ("oracle equivalence", criterion_1),
        ("Gauss formula", criterion_2),
        ("threshold equality", criterion_3),
        ("worked examples", criterion_4),
        ("counterexample witnesses", criterion_5),
        ("class-M boundary", criterion_6),
        ("kernel identities", criterion_7),
        ("conjecture evidence", criterion_8),
        ("rendering determinism", criterion_9),
        ("cross-module consistency", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.2}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {reason} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
