//! Acceptance suite: one PASS/FAIL line per criterion, each with its
//! tolerance and wall-clock limit. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use demoivre::laws::{cauchy_density, gaussian_density, BinomialLaw, CauchyLaw};
use demoivre::numerics::gaussian_integral_series;
use demoivre::pairing::{convergence_study, error_decomposition, pair_binomial, DEFAULT_CUTOFF};
use demoivre::probes::Probe;
use demoivre::quadrature::{gaussian_cdf_central, integrate, NewtonCotesRule};
use demoivre::transforms::{characteristic_function, coefficients_from_pgf, pgf, weak_moment};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

/// Name, wall-clock limit, check.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1: `table` reproduces the modern column.
fn modern_table() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_demoivre"))
        .args(["table", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(rows.len() == 3, || format!("{} rows", rows.len()))?;
    let targets = [(0.682689, 1e-6), (0.95450, 5e-5), (0.99730, 5e-5)];
    let mut seen = Vec::new();
    for (row, (want, tol)) in rows.iter().zip(targets) {
        let v: f64 = row[1].parse().map_err(|_| format!("bad cell {}", &row[1]))?;
        ensure((v - want).abs() <= tol, || format!("{v} vs {want} ± {tol}"))?;
        seen.push(row[1].to_owned());
    }
    Ok(format!("modern column {}", seen.join(" / ")))
}

/// 2: the alternating series reaches 0.682688–0.682689 within ten terms.
fn six_decimal_series() -> Check {
    let mut hits = Vec::new();
    for terms in 1..=10 {
        let v = 2.0 * gaussian_integral_series(1.0, terms).map_err(|e| e.to_string())?;
        let six = format!("{v:.6}");
        if six == "0.682688" || six == "0.682689" {
            hits.push(format!("{terms}→{six}"));
        }
    }
    let at_ten = format!(
        "{:.6}",
        2.0 * gaussian_integral_series(1.0, 10).map_err(|e| e.to_string())?
    );
    ensure(
        !hits.is_empty() && (at_ten == "0.682688" || at_ten == "0.682689"),
        || format!("no depth ≤ 10 matched; 10 terms give {at_ten}"),
    )?;
    Ok(format!("depths {}", hits.join(", ")))
}

/// 3: errors fall strictly along n = 64·4^i at p = 0.3 with frozen slopes.
fn distributional_convergence() -> Check {
    let ns = [64, 256, 1024, 4096];
    let mut summary = Vec::new();
    for (m, threshold) in [(0, -0.9), (2, -0.9), (3, -0.45)] {
        let r = convergence_study(0.3, &Probe::hermite(m), &ns).map_err(|e| e.to_string())?;
        ensure(r.strictly_decreasing(), || {
            format!("h{m}: errors {:?} not strictly decreasing", r.errors)
        })?;
        let slope = r.fitted_slope.ok_or(format!("h{m}: no slope"))?;
        ensure(slope <= -0.4 && slope <= threshold, || {
            format!("h{m}: slope {slope} above {threshold}")
        })?;
        summary.push(format!("h{m} slope {slope:.4}"));
    }
    Ok(summary.join(", "))
}

/// 4: the decomposition covers the total error and the local part shrinks
/// by ≥ 1.8 when n is quadrupled.
fn decomposition_soundness() -> Check {
    let mut worst: f64 = f64::INFINITY;
    let mut configs = 0;
    for p in [0.3, 0.5] {
        for m in [0, 2] {
            for cutoff in [4.0, 8.0] {
                let mut local = Vec::new();
                for n in [100, 400, 1600] {
                    let law = BinomialLaw::new(n, p).map_err(|e| e.to_string())?;
                    let d = error_decomposition(&law, &Probe::hermite(m), cutoff).map_err(|e| e.to_string())?;
                    ensure(d.covers_total(), || format!("n={n} p={p} h{m} M={cutoff}: {d:?}"))?;
                    local.push(d.local_error);
                    configs += 1;
                }
                for w in local.windows(2) {
                    let factor = w[0] / w[1];
                    ensure(factor >= 1.8, || format!("p={p} h{m} M={cutoff}: reduction {factor}"))?;
                    worst = worst.min(factor);
                }
            }
        }
    }
    Ok(format!(
        "{configs} configurations covered, smallest reduction factor {worst:.3}"
    ))
}

/// 5: mass, mean and variance of the standardized law are exact.
fn algebraic_invariants() -> Check {
    let mut worst: f64 = 0.0;
    for n in [2, 17, 100, 10_000] {
        for p in [0.1, 0.5, 0.9] {
            let law = BinomialLaw::new(n, p).map_err(|e| e.to_string())?;
            for (r, want) in [(0, 1.0), (1, 0.0), (2, 1.0)] {
                let v = pair_binomial(&law, &Probe::monomial(r), DEFAULT_CUTOFF).value;
                let dev = (v - Complex64::new(want, 0.0)).norm();
                ensure(dev <= 1e-12, || format!("n={n} p={p} r={r}: {v}"))?;
                worst = worst.max(dev);
            }
        }
    }
    Ok(format!("max deviation {worst:.2e}"))
}

/// 6: local limit at n = 10^4 and the central term at n = 100.
fn local_limit() -> Check {
    let mut report = Vec::new();
    for p in [0.5, 0.3] {
        let law = BinomialLaw::new(10_000, p).map_err(|e| e.to_string())?;
        let dx = law.spacing();
        let dev = law
            .atoms()
            .filter(|a| a.x.abs() <= 2.0)
            .map(|a| (a.weight() / (gaussian_density(a.x) * dx) - 1.0).abs())
            .fold(0.0, f64::max);
        ensure(dev <= 0.02, || format!("p={p}: max relative deviation {dev}"))?;
        report.push(format!("p={p} max {dev:.2e}"));
    }
    let law = BinomialLaw::new(100, 0.5).map_err(|e| e.to_string())?;
    let height = law.atom(50).weight() / law.spacing();
    // exact enumeration: C(100,50)/2^100 = 0.079589237387178761
    ensure(
        (law.atom(50).weight() - 0.079_589_237_387_178_76).abs() <= 1e-12,
        || "w_50 off the oracle".into(),
    )?;
    let rel = (height / gaussian_density(0.0) - 1.0).abs();
    ensure(rel <= 0.0025, || format!("w_50/Δx = {height}, relative gap {rel}"))?;
    report.push(format!("w_50/Δx = {height:.6} ({:.4}% from 1/√(2π))", 100.0 * rel));
    Ok(report.join(", "))
}

/// 7: cf = pgf on the unit circle, DFT recovery, |cf| ≤ 1.
fn probe_chain() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(1733);
    let mut worst_cf: f64 = 0.0;
    for _ in 0..100 {
        let law = BinomialLaw::new(rng.gen_range(1..=5000), rng.gen_range(0.01..0.99)).map_err(|e| e.to_string())?;
        let t = rng.gen_range(-50.0..50.0);
        let cf = characteristic_function(&law, t);
        let dev = (cf - pgf(&law, Complex64::from_polar(1.0, t))).norm();
        ensure(dev <= 1e-13, || format!("t={t}: {dev}"))?;
        ensure(cf.norm() <= 1.0 + 1e-15, || format!("|cf({t})| = {}", cf.norm()))?;
        worst_cf = worst_cf.max(dev);
    }
    let mut worst_dft: f64 = 0.0;
    for n in 1..=64 {
        for p in [0.05, 0.3, 0.5, 0.77] {
            let law = BinomialLaw::new(n, p).map_err(|e| e.to_string())?;
            for (k, c) in coefficients_from_pgf(&law).iter().enumerate() {
                let dev = (c - law.atom(k as u64).weight()).abs();
                ensure(dev <= 1e-10, || format!("n={n} p={p} k={k}: {dev}"))?;
                worst_dft = worst_dft.max(dev);
            }
        }
    }
    Ok(format!("cf/pgf max {worst_cf:.1e}, DFT max {worst_dft:.1e}"))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    let m = 0.5 * (a + b);
    let (whole, left, right) = (simpson(f, a, b), simpson(f, a, m), simpson(f, m, b));
    let delta = left + right - whole;
    if depth == 0 || (depth < 44 && delta.abs() <= 15.0 * tol) {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, tol / 2.0, depth - 1) + adaptive_simpson(f, m, b, tol / 2.0, depth - 1)
    }
}

/// 8: the windowed second moment of the Cauchy law is finite and matches
/// an adaptive-quadrature oracle. (The classical one, ∫x²/(π(1+x²)) dx,
/// diverges and is not computed.)
fn weak_moment_contrast() -> Check {
    let c = CauchyLaw::standard();
    let oracle = adaptive_simpson(
        &|x| x * x * (-0.5 * x * x).exp() * cauchy_density(&c, x),
        -40.0,
        40.0,
        1e-13,
        50,
    );
    let closed = (2.0 / std::f64::consts::PI).sqrt() - 0.523_156_583_730_246_7;
    ensure((oracle - closed).abs() <= 1e-11, || {
        format!("oracle {oracle} disagrees with closed form {closed}")
    })?;
    let v = weak_moment(&c, 2, &Probe::gaussian_window()).map_err(|e| e.to_string())?;
    ensure(v.is_finite() && (v - oracle).abs() <= 1e-8, || {
        format!("{v} vs oracle {oracle}")
    })?;
    Ok(format!("weak second moment {v:.12} (oracle {oracle:.12})"))
}

/// 9: Simpson is exact on cubics; series and Boole quadrature agree.
fn quadrature_exactness() -> Check {
    let simpson = NewtonCotesRule::simpson();
    let cubic = |x: f64| 0.5 * x * x * x - x * x + 0.25 * x + 1.0;
    let antiderivative = |x: f64| 0.125 * x.powi(4) - x.powi(3) / 3.0 + 0.125 * x * x + x;
    let mut worst: f64 = 0.0;
    for (a, b) in [(0.0, 1.0), (-1.0, 1.0), (-0.7, 0.4), (0.3, 1.9)] {
        for panels in [1, 2, 3] {
            let dev = (integrate(cubic, a, b, &simpson, panels).map_err(|e| e.to_string())?
                - (antiderivative(b) - antiderivative(a)))
            .abs();
            ensure(dev <= 1e-15, || format!("[{a}, {b}] {panels} panels: {dev}"))?;
            worst = worst.max(dev);
        }
    }
    let mut worst_cross: f64 = 0.0;
    for s in [0.5, 1.0, 2.0, 3.0] {
        let q = gaussian_cdf_central(s, &NewtonCotesRule::boole(), 256).map_err(|e| e.to_string())?;
        let dev = (q - 2.0 * gaussian_integral_series(s, 40).map_err(|e| e.to_string())?).abs();
        ensure(dev < 1e-10, || format!("s={s}: {dev}"))?;
        worst_cross = worst_cross.max(dev);
    }
    Ok(format!(
        "cubic max {worst:.1e}, series/quadrature max {worst_cross:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("modern table reproduction", Duration::from_secs(1), modern_table),
        (
            "six-decimal one-sigma series",
            Duration::from_secs(1),
            six_decimal_series,
        ),
        (
            "distributional convergence",
            Duration::from_secs(30),
            distributional_convergence,
        ),
        (
            "decomposition soundness",
            Duration::from_secs(30),
            decomposition_soundness,
        ),
        (
            "exact algebraic invariants",
            Duration::from_secs(5),
            algebraic_invariants,
        ),
        ("local limit", Duration::from_secs(5), local_limit),
        ("probe-chain identities", Duration::from_secs(5), probe_chain),
        ("weak-moment contrast", Duration::from_secs(5), weak_moment_contrast),
        ("quadrature exactness", Duration::from_secs(1), quadrature_exactness),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed < *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took {elapsed:?}, limit {limit:?}")),
            Err(why) => ("FAIL", why),
        };
        if verdict.0 == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} {:<30} {} ({:.3}s): {}",
            i + 1,
            name,
            verdict.0,
            elapsed.as_secs_f64(),
            verdict.1
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
