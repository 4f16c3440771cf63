//! Pairings `⟨T, φ⟩` of the standardized binomial law `T_n` and of the
//! standard Gaussian `T_𝒩` with probes, the bulk/tail error decomposition
//! of `⟨T_n, φ⟩ − ⟨T_𝒩, φ⟩`, and empirical convergence studies.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laws::{gaussian_density, BinomialLaw, StandardizedAtom};
use crate::numerics::{gaussian_integral_series, log_binomial, ComplexSum, DEFAULT_SERIES_TERMS};
use crate::probes::{Probe, ProbeKind};
use crate::quadrature::integrate_converged;

/// Default bulk/tail cutoff `M` on the standardized axis.
pub const DEFAULT_CUTOFF: f64 = 10.0;

/// Gaussian pairings integrate over `[−R, R]` with `R = 12` for bounded
/// probes, widened by `2√r` for probes growing like `|x|^r`.
pub const GAUSSIAN_RADIUS: f64 = 12.0;

/// Upper bound for the Gaussian mass outside `[−12, 12]`.
pub const GAUSSIAN_TRUNCATION_MASS: f64 = 2e-32;

/// Convergence target for Gaussian-side quadrature, relative to `max(1, |I|)`.
pub const GAUSSIAN_QUADRATURE_TOL: f64 = 1e-13;

/// Errors at or below this level count as exact zeros in convergence fits.
pub const ZERO_ERROR_FLOOR: f64 = 1e-13;

/// Beyond this half-width the series route switches to the complement.
const SERIES_SWITCH: f64 = 4.0;

/// Weights below `e^{-700}` are combined with the probe in log space.
const LOG_UNDERFLOW_GUARD: f64 = -700.0;

const PARALLEL_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingOptions {
    pub cutoff: f64,
    /// Opt-in parallel atom sum. Agrees with the sequential sum to about
    /// 1e-13 relative but is not bit-identical.
    pub parallel: bool,
}

impl Default for PairingOptions {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            parallel: false,
        }
    }
}

/// `⟨T_n, φ⟩` split at the cutoff `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingResult {
    /// `bulk_value + tail_value`.
    pub value: Complex64,
    /// Contribution of atoms with `|x_k| ≤ M`.
    pub bulk_value: Complex64,
    /// Contribution of atoms with `|x_k| > M`.
    pub tail_value: Complex64,
    /// Chebyshev certificate `min(1, M^{-2}) · sup_{|x|>M} |φ|`, present
    /// when the probe carries a decay bound.
    pub tail_certificate: Option<f64>,
    pub cutoff: f64,
}

fn atom_term(atom: &StandardizedAtom, phi: Complex64) -> Complex64 {
    if atom.log_weight >= LOG_UNDERFLOW_GUARD {
        return phi * atom.weight();
    }
    let magnitude = phi.norm();
    if magnitude == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (phi / magnitude) * (atom.log_weight + magnitude.ln()).exp()
}

fn accumulate(law: &BinomialLaw, probe: &Probe, cutoff: f64, ks: std::ops::Range<u64>) -> (ComplexSum, ComplexSum) {
    let mut bulk = ComplexSum::new();
    let mut tail = ComplexSum::new();
    for k in ks {
        let atom = law.atom(k);
        let term = atom_term(&atom, probe.evaluate(atom.x));
        if atom.x.abs() <= cutoff {
            bulk.add(term);
        } else {
            tail.add(term);
        }
    }
    (bulk, tail)
}

/// Chebyshev tail certificate for the atoms beyond `cutoff`.
pub fn tail_certificate(probe: &Probe, cutoff: f64) -> Option<f64> {
    probe
        .decay()
        .map(|d| (1.0 / (cutoff * cutoff)).min(1.0) * d.tail_sup(cutoff))
}

/// `⟨T_n, φ⟩ = Σ_k w_k φ(x_k)`, summed sequentially in increasing `k`.
pub fn pair_binomial(law: &BinomialLaw, probe: &Probe, cutoff: f64) -> PairingResult {
    pair_binomial_with(
        law,
        probe,
        &PairingOptions {
            cutoff,
            parallel: false,
        },
    )
}

pub fn pair_binomial_with(law: &BinomialLaw, probe: &Probe, options: &PairingOptions) -> PairingResult {
    let cutoff = options.cutoff;
    assert!(cutoff > 0.0, "cutoff must be positive, got {cutoff}");
    let end = law.n() + 1;
    let (bulk, tail) = if options.parallel {
        let chunks = end.div_ceil(PARALLEL_CHUNK);
        let partials: Vec<(ComplexSum, ComplexSum)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * PARALLEL_CHUNK;
                accumulate(law, probe, cutoff, lo..(lo + PARALLEL_CHUNK).min(end))
            })
            .collect();
        partials.iter().fold(
            (ComplexSum::new(), ComplexSum::new()),
            |(mut bulk, mut tail), (b, t)| {
                bulk.merge(b);
                tail.merge(t);
                (bulk, tail)
            },
        )
    } else {
        accumulate(law, probe, cutoff, 0..end)
    };
    let bulk_value = bulk.value();
    let tail_value = tail.value();
    PairingResult {
        value: bulk_value + tail_value,
        bulk_value,
        tail_value,
        tail_certificate: tail_certificate(probe, cutoff),
        cutoff,
    }
}

/// `Σ_k w_k φ(k)`: the probe applied to the raw count rather than the
/// standardized variable.
pub fn pair_binomial_raw(law: &BinomialLaw, probe: &Probe) -> Complex64 {
    let mut sum = ComplexSum::new();
    for atom in law.atoms() {
        sum.add(atom_term(&atom, probe.evaluate(atom.k as f64)));
    }
    sum.value()
}

/// Replaces an indicator `1_{[a,b]}` by `1_{[a − Δx/2, b + Δx/2]}`, the
/// half-step continuity correction on the law's grid.
pub fn continuity_corrected(probe: &Probe, law: &BinomialLaw) -> Result<Probe> {
    match probe.kind() {
        ProbeKind::Indicator { a, b } => {
            let half = 0.5 * law.spacing();
            Probe::indicator(a - half, b + half)
        }
        _ => Err(Error::InvalidProbe(format!(
            "continuity correction applies to indicators only, got {probe}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianMethod {
    /// Termwise-integrated exponential series; indicators only.
    Series,
    /// Composite Newton–Cotes (Boole) quadrature.
    Quadrature,
}

impl GaussianMethod {
    fn name(&self) -> &'static str {
        match self {
            GaussianMethod::Series => "series",
            GaussianMethod::Quadrature => "quadrature",
        }
    }
}

/// `⟨T_𝒩, φ⟩ = (2π)^{-1/2} ∫ φ(x) e^{−x²/2} dx`.
pub fn pair_gaussian(probe: &Probe, method: GaussianMethod) -> Result<Complex64> {
    match method {
        GaussianMethod::Series => match probe.kind() {
            ProbeKind::Indicator { a, b } => {
                let v = signed_half_integral(*b)? - signed_half_integral(*a)?;
                Ok(Complex64::new(v, 0.0))
            }
            _ => Err(Error::UnsupportedMethod {
                op: "pair_gaussian",
                method: method.name(),
                probe: probe.to_string(),
            }),
        },
        GaussianMethod::Quadrature => {
            let radius = gaussian_radius(probe);
            let (lo, hi) = support(probe);
            gaussian_integral(probe, lo.max(-radius), hi.min(radius))
        }
    }
}

/// `∫_lo^hi g φ`, zero for an empty interval.
fn gaussian_integral(probe: &Probe, lo: f64, hi: f64) -> Result<Complex64> {
    if !(lo < hi) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    integrate_converged(
        |x| probe.evaluate(x) * gaussian_density(x),
        lo,
        hi,
        GAUSSIAN_QUADRATURE_TOL,
    )
}

/// `∫_0^s g` for any real `s` (including infinities).
fn signed_half_integral(s: f64) -> Result<f64> {
    let magnitude = s.abs();
    let half = if magnitude <= SERIES_SWITCH {
        let terms = if magnitude <= 3.0 { DEFAULT_SERIES_TERMS } else { 60 };
        gaussian_integral_series(magnitude, terms)?
    } else if magnitude >= GAUSSIAN_RADIUS {
        0.5
    } else {
        let upper = integrate_converged(
            |x| Complex64::new(gaussian_density(x), 0.0),
            magnitude,
            GAUSSIAN_RADIUS,
            GAUSSIAN_QUADRATURE_TOL,
        )?;
        0.5 - upper.re
    };
    Ok(half.copysign(s))
}

/// Integration radius for the Gaussian side.
pub fn gaussian_radius(probe: &Probe) -> f64 {
    GAUSSIAN_RADIUS + 2.0 * (probe.growth_degree() as f64).sqrt()
}

/// Bound on the Gaussian-side truncation error, `2e-32 · sup|φ|`, for
/// probes that are bounded.
pub fn gaussian_truncation_bound(probe: &Probe) -> Option<f64> {
    let sup = match probe.kind() {
        ProbeKind::Indicator { .. } | ProbeKind::ComplexExponential(_) => Some(1.0),
        _ if probe.growth_degree() == 0 => probe.decay().map(|d| d.constant),
        _ => None,
    }?;
    Some(GAUSSIAN_TRUNCATION_MASS * sup)
}

/// Smallest interval outside which the probe vanishes.
fn support(probe: &Probe) -> (f64, f64) {
    match probe.kind() {
        ProbeKind::Indicator { a, b } => (*a, *b),
        ProbeKind::Product(p, q) => {
            let (a0, b0) = support(p);
            let (a1, b1) = support(q);
            (a0.max(a1), b0.min(b1))
        }
        _ => (f64::NEG_INFINITY, f64::INFINITY),
    }
}

/// The three parts of the bulk/tail error bound, and the error they cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorDecomposition {
    /// `|Σ_{|x_k|≤M} (w_k − g(x_k) Δx) φ(x_k)|`.
    pub local_error: f64,
    /// Chebyshev certificate for the atoms beyond `M` plus a bound on the
    /// Gaussian mass beyond `M` weighted by `sup_{|x|>M} |φ|`.
    pub tail_bound: f64,
    /// `|Σ_{|x_k|≤M} g(x_k) φ(x_k) Δx − ∫_{−M}^{M} g φ|`.
    pub riemann_error: f64,
    /// `|⟨T_n, φ⟩ − ⟨T_𝒩, φ⟩|`.
    pub total_error: f64,
}

impl ErrorDecomposition {
    /// `local + riemann + tail ≥ total`.
    pub fn covers_total(&self) -> bool {
        self.local_error + self.riemann_error + self.tail_bound >= self.total_error
    }
}

pub fn error_decomposition(law: &BinomialLaw, probe: &Probe, cutoff: f64) -> Result<ErrorDecomposition> {
    let decay = probe.decay().ok_or_else(|| Error::UnsupportedProbe {
        op: "error_decomposition",
        probe: probe.to_string(),
    })?;
    if !(cutoff >= 1.0) {
        return Err(Error::domain(
            "error_decomposition",
            format!("cutoff M = {cutoff} must be at least 1"),
        ));
    }
    let spacing = law.spacing();
    let mut local = ComplexSum::new();
    let mut riemann_sum = ComplexSum::new();
    let mut bulk = ComplexSum::new();
    let mut tail = ComplexSum::new();
    for atom in law.atoms() {
        let phi = probe.evaluate(atom.x);
        let term = atom_term(&atom, phi);
        if atom.x.abs() <= cutoff {
            let riemann_term = phi * (gaussian_density(atom.x) * spacing);
            bulk.add(term);
            local.add(term - riemann_term);
            riemann_sum.add(riemann_term);
        } else {
            tail.add(term);
        }
    }
    let value = bulk.value() + tail.value();
    let limit = pair_gaussian(probe, GaussianMethod::Quadrature)?;
    let bulk_integral = gaussian_integral(probe, -cutoff, cutoff)?;

    let tail_sup = decay.tail_sup(cutoff);
    let chebyshev = (1.0 / (cutoff * cutoff)).min(1.0) * tail_sup;
    // Mills ratio: P(|Z| > M) ≤ 2 g(M) / M
    let gaussian_tail = tail_sup * 2.0 * gaussian_density(cutoff) / cutoff;

    Ok(ErrorDecomposition {
        local_error: local.value().norm(),
        tail_bound: chebyshev + gaussian_tail,
        riemann_error: (riemann_sum.value() - bulk_integral).norm(),
        total_error: (value - limit).norm(),
    })
}

/// Errors `|⟨T_n, φ⟩ − ⟨T_𝒩, φ⟩|` along a sequence of `n`, with the
/// least-squares slope of `ln error` against `ln n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub p: f64,
    pub n_values: Vec<u64>,
    pub pairings: Vec<Complex64>,
    pub limit: Complex64,
    pub errors: Vec<f64>,
    /// `None` when every error is an exact zero.
    pub fitted_slope: Option<f64>,
    pub probe_description: String,
    /// All errors at or below [`ZERO_ERROR_FLOOR`]: the law is symmetric
    /// and the probe odd, so both sides pair to zero.
    pub exact_symmetry: bool,
}

impl ConvergenceReport {
    /// Points that enter the fit.
    pub fn usable(&self) -> usize {
        self.errors.iter().filter(|e| **e > ZERO_ERROR_FLOOR).count()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }
}

pub fn convergence_study(p: f64, probe: &Probe, n_values: &[u64]) -> Result<ConvergenceReport> {
    if let Some(n) = n_values.iter().find(|n| **n < 4) {
        return Err(Error::domain("convergence_study", format!("n = {n} is below 4")));
    }
    let limit = pair_gaussian(probe, GaussianMethod::Quadrature)?;
    let mut pairings = Vec::with_capacity(n_values.len());
    let mut errors = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let law = BinomialLaw::new(n, p)?;
        let value = pair_binomial(&law, probe, DEFAULT_CUTOFF).value;
        pairings.push(value);
        errors.push((value - limit).norm());
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = n_values
        .iter()
        .zip(&errors)
        .filter(|(_, e)| **e > ZERO_ERROR_FLOOR)
        .map(|(n, e)| ((*n as f64).ln(), e.ln()))
        .unzip();
    let exact_symmetry = xs.is_empty() && !n_values.is_empty();
    let fitted_slope = if exact_symmetry {
        None
    } else if xs.len() < 3 {
        return Err(Error::InsufficientData { usable: xs.len() });
    } else {
        Some(least_squares_slope(&xs, &ys))
    };
    Ok(ConvergenceReport {
        p,
        n_values: n_values.to_vec(),
        pairings,
        limit,
        errors,
        fitted_slope,
        probe_description: probe.to_string(),
        exact_symmetry,
    })
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (sxy, sxx) = xs.iter().zip(ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    sxy / sxx
}

/// Log-ratio of the term `l` places from the centre to the central term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalRatio {
    pub exact_log_ratio: f64,
    /// `−2l²/n` for `p = ½`, `−l²/(2npq)` in general.
    pub demoivre_log_ratio: f64,
}

/// With `p = None`, the symmetric form `ln[C(n, n/2+l)/C(n, n/2)]` against
/// `−2l²/n` (`n` even). With `p = Some(p)`, `np` must be an integer `c`
/// and the ratio is `ln(w_{c+l}/w_c)` against `−l²/(2npq)`.
pub fn local_ratio(n: u64, l: i64, p: Option<f64>) -> Result<LocalRatio> {
    let err = |detail: String| Error::domain("local_ratio", detail);
    if l.unsigned_abs() > n / 2 {
        return Err(err(format!("|l| = {} exceeds n/2 = {}", l.unsigned_abs(), n / 2)));
    }
    let nf = n as f64;
    let lf = l as f64;
    match p {
        None => {
            if !n.is_multiple_of(2) {
                return Err(err(format!("n = {n} must be even for the symmetric form")));
            }
            let centre = (n / 2) as i64;
            Ok(LocalRatio {
                exact_log_ratio: log_binomial(n, centre + l)? - log_binomial(n, centre)?,
                demoivre_log_ratio: -2.0 * lf * lf / nf,
            })
        }
        Some(p) => {
            let law = BinomialLaw::new(n, p)?;
            let mean = law.mean();
            let centre = mean.round();
            if (mean - centre).abs() > 1e-9 * nf.max(1.0) {
                return Err(err(format!("np = {mean} is not an integer")));
            }
            let centre = centre as i64;
            let k = centre + l;
            if k < 0 || k as u64 > n {
                return Err(err(format!("k = np + l = {k} outside [0, {n}]")));
            }
            let exact = log_binomial(n, k)? - log_binomial(n, centre)? + lf * (p.ln() - law.q().ln());
            Ok(LocalRatio {
                exact_log_ratio: exact,
                demoivre_log_ratio: -lf * lf / (2.0 * nf * p * law.q()),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(n: u64, p: f64) -> BinomialLaw {
        BinomialLaw::new(n, p).unwrap()
    }

    #[test]
    fn moments_are_exact() {
        for (n, p) in [(2, 0.5), (17, 0.1), (300, 0.7)] {
            let l = law(n, p);
            let m0 = pair_binomial(&l, &Probe::monomial(0), DEFAULT_CUTOFF).value;
            let m1 = pair_binomial(&l, &Probe::monomial(1), DEFAULT_CUTOFF).value;
            let m2 = pair_binomial(&l, &Probe::monomial(2), DEFAULT_CUTOFF).value;
            assert!((m0.re - 1.0).abs() < 1e-12 && m0.im == 0.0);
            assert!(m1.re.abs() < 1e-12);
            assert!((m2.re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_trial_indicator() {
        let r = pair_binomial(&law(2, 0.5), &Probe::indicator(-1.0, 1.0).unwrap(), DEFAULT_CUTOFF);
        assert!((r.value.re - 0.5).abs() < 1e-15);
        assert!(r.tail_certificate.is_none());
    }

    #[test]
    fn partition_is_exact() {
        let l = law(500, 0.3);
        let probe = Probe::hermite(2);
        for m in [0.1, 1.0, 2.5, 10.0] {
            let r = pair_binomial(&l, &probe, m);
            assert_eq!(r.value, r.bulk_value + r.tail_value);
            let cert = r.tail_certificate.unwrap();
            assert!(r.tail_value.norm() <= cert, "M = {m}");
        }
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        let l = law(50_000, 0.37);
        let probe = Probe::product(Probe::complex_exponential(0.8), Probe::hermite(1));
        let seq = pair_binomial(&l, &probe, 3.0);
        let par = pair_binomial_with(
            &l,
            &probe,
            &PairingOptions {
                cutoff: 3.0,
                parallel: true,
            },
        );
        assert!((seq.value - par.value).norm() <= 1e-13 * seq.value.norm().max(1e-300));
        let again = pair_binomial(&l, &probe, 3.0);
        assert_eq!(seq, again);
    }

    #[test]
    fn continuity_correction_widens_interval() {
        let l = law(100, 0.5);
        let p = continuity_corrected(&Probe::indicator(-1.0, 1.0).unwrap(), &l).unwrap();
        match p.kind() {
            ProbeKind::Indicator { a, b } => {
                assert!((a + 1.1).abs() < 1e-15 && (b - 1.1).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        assert!(continuity_corrected(&Probe::hermite(0), &l).is_err());
    }

    #[test]
    fn gaussian_indicator_both_methods() {
        let probe = Probe::indicator(-1.0, 1.0).unwrap();
        let s = pair_gaussian(&probe, GaussianMethod::Series).unwrap();
        let q = pair_gaussian(&probe, GaussianMethod::Quadrature).unwrap();
        assert!((s.re - 0.682_689_492_1).abs() < 1e-9);
        assert!((s - q).norm() < 1e-12);
        // far tails go through the complement
        let wide = Probe::indicator(-7.0, 5.0).unwrap();
        let s = pair_gaussian(&wide, GaussianMethod::Series).unwrap();
        let q = pair_gaussian(&wide, GaussianMethod::Quadrature).unwrap();
        assert!((s - q).norm() < 1e-12);
        let all = Probe::indicator(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!((pair_gaussian(&all, GaussianMethod::Series).unwrap().re - 1.0).abs() < 1e-15);
        assert!(matches!(
            pair_gaussian(&Probe::hermite(0), GaussianMethod::Series),
            Err(Error::UnsupportedMethod { .. })
        ));
    }

    #[test]
    fn gaussian_moments_and_characteristic_function() {
        let m2 = pair_gaussian(&Probe::monomial(2), GaussianMethod::Quadrature).unwrap();
        assert!((m2.re - 1.0).abs() < 1e-10);
        // E Z^8 = 105
        let m8 = pair_gaussian(&Probe::monomial(8), GaussianMethod::Quadrature).unwrap();
        assert!((m8.re - 105.0).abs() < 1e-9);
        for t in [0.5, 1.0, 2.0] {
            let cf = pair_gaussian(&Probe::complex_exponential(t), GaussianMethod::Quadrature).unwrap();
            assert!((cf - Complex64::new((-0.5 * t * t).exp(), 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn decomposition_requires_decay_and_cutoff() {
        let l = law(100, 0.5);
        assert!(matches!(
            error_decomposition(&l, &Probe::indicator(-1.0, 1.0).unwrap(), 5.0),
            Err(Error::UnsupportedProbe { .. })
        ));
        assert!(error_decomposition(&l, &Probe::hermite(0), 0.5).is_err());
    }

    #[test]
    fn decomposition_tail_bound_at_ten() {
        let probe = Probe::hermite(0);
        let d = error_decomposition(&law(100, 0.5), &probe, 10.0).unwrap();
        let c2 = probe.decay().unwrap().constant;
        assert!(d.tail_bound <= c2 / 100.0 + 1.6e-23);
        assert!(d.covers_total());
    }

    #[test]
    fn local_ratio_values() {
        let r = local_ratio(100, 0, None).unwrap();
        assert_eq!(r.exact_log_ratio, 0.0);
        assert_eq!(r.demoivre_log_ratio, 0.0);
        assert!(local_ratio(100, 51, None).is_err());
        assert!(local_ratio(101, 3, None).is_err());
        assert!(local_ratio(50, 2, Some(0.33)).is_err());
        let general = local_ratio(100, 5, Some(0.5)).unwrap();
        let symmetric = local_ratio(100, 5, None).unwrap();
        assert!((general.exact_log_ratio - symmetric.exact_log_ratio).abs() < 1e-12);
        assert!((general.demoivre_log_ratio - symmetric.demoivre_log_ratio).abs() < 1e-15);
    }

    #[test]
    fn slope_of_a_power_law() {
        let xs: Vec<f64> = [16.0f64, 32.0, 64.0].iter().map(|n| n.ln()).collect();
        let ys: Vec<f64> = [16.0f64, 32.0, 64.0]
            .iter()
            .map(|n| (3.0 * n.powf(-0.5)).ln())
            .collect();
        assert!((least_squares_slope(&xs, &ys) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn study_rejects_small_n_and_thin_data() {
        assert!(convergence_study(0.5, &Probe::hermite(0), &[2, 8, 16]).is_err());
        assert!(matches!(
            convergence_study(0.3, &Probe::hermite(2), &[16, 32]),
            Err(Error::InsufficientData { usable: 2 })
        ));
    }
}
