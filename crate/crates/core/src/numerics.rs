//! Scalar routines shared by the rest of the crate: the Stirling series for
//! `ln n!`, log-binomial coefficients, the alternating series for the central
//! Gaussian integral, and compensated summation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Stirling's constant `B = √(2π)`.
pub const STIRLING_B: f64 = 2.506_628_274_631_000_5;

/// Circumference of the unit circle, `c = 2π`.
pub const CIRCUMFERENCE: f64 = 2.0 * PI;

/// `1/√(2π)`, the standard normal density at the origin.
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// `ln √(2π)`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this argument `log_factorial` sums `ln k` exactly instead of using
/// the asymptotic series.
pub const EXACT_SUMMATION_CUTOFF: u64 = 20;

/// Default number of terms for [`gaussian_integral_series`].
pub const DEFAULT_SERIES_TERMS: usize = 40;

/// Largest supported number of Stirling correction terms.
pub const MAX_CORRECTION_TERMS: u8 = 3;

/// Coefficients of the correction terms `1/(12n) − 1/(360n³) + 1/(1260n⁵)`.
const STIRLING_CORRECTIONS: [f64; 3] = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0];

/// How many correction terms of the Stirling series to retain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StirlingConfig {
    correction_terms: u8,
}

impl StirlingConfig {
    pub fn new(correction_terms: u8) -> Result<Self> {
        if correction_terms > MAX_CORRECTION_TERMS {
            return Err(Error::domain(
                "StirlingConfig",
                format!("correction_terms = {correction_terms} exceeds {MAX_CORRECTION_TERMS}"),
            ));
        }
        Ok(Self { correction_terms })
    }

    pub fn correction_terms(&self) -> u8 {
        self.correction_terms
    }
}

impl Default for StirlingConfig {
    fn default() -> Self {
        Self {
            correction_terms: MAX_CORRECTION_TERMS,
        }
    }
}

/// `ln n!`. Exact summation of `ln k` below [`EXACT_SUMMATION_CUTOFF`],
/// the Stirling series from there on.
pub fn log_factorial(n: u64, cfg: &StirlingConfig) -> f64 {
    if n < EXACT_SUMMATION_CUTOFF {
        log_factorial_exact(n)
    } else {
        stirling_series(n, cfg)
    }
}

/// `Σ_{k=2}^{n} ln k`.
pub fn log_factorial_exact(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// The Stirling series `n ln n − n + ½ ln(2πn) + Σ corrections`, with the
/// number of corrections taken from `cfg`. Valid for `n ≥ 1`; returns 0 at
/// `n = 0`.
pub fn stirling_series(n: u64, cfg: &StirlingConfig) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let x = n as f64;
    let main = x * x.ln() - x + 0.5 * (CIRCUMFERENCE * x).ln();
    main + stirling_corrections(x, cfg.correction_terms)
}

fn stirling_corrections(x: f64, terms: u8) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut sum = 0.0;
    for c in STIRLING_CORRECTIONS.iter().take(terms as usize) {
        sum += c * power;
        power *= inv2;
    }
    sum
}

/// `ln C(n, k)`. Fails for `k < 0` or `k > n`.
pub fn log_binomial(n: u64, k: i64) -> Result<f64> {
    if k < 0 || k as u64 > n {
        return Err(Error::domain("log_binomial", format!("k = {k} outside [0, {n}]")));
    }
    let k = k as u64;
    let (small, large) = if k <= n - k { (k, n - k) } else { (n - k, k) };
    let cfg = StirlingConfig::default();
    Ok(log_factorial(n, &cfg) - (log_factorial(small, &cfg) + log_factorial(large, &cfg)))
}

// ln n! − (n ln n − n + ½ ln 2πn) for n = 1..=34, to 20 digits.
#[allow(clippy::excessive_precision)] // digits as printed by the high-precision oracle
const STIRLING_REMAINDER_TABLE: [f64; 34] = [
    0.081_061_466_795_327_258,
    0.041_340_695_955_409_294,
    0.027_677_925_684_998_339,
    0.020_790_672_103_765_093,
    0.016_644_691_189_821_192,
    0.013_876_128_823_070_748,
    0.011_896_709_945_891_770,
    0.010_411_265_261_972_096,
    0.009_255_462_182_712_733,
    0.008_330_563_433_362_871,
    0.007_573_675_487_951_841,
    0.006_942_840_107_209_530,
    0.006_408_994_188_004_207,
    0.005_951_370_112_758_848,
    0.005_554_733_551_962_801,
    0.005_207_655_919_609_640,
    0.004_901_395_948_434_738,
    0.004_629_153_749_334_029,
    0.004_385_560_249_232_324,
    0.004_166_319_691_996_922,
    0.003_967_954_218_640_860,
    0.003_787_618_068_444_435,
    0.003_622_960_224_683_095,
    0.003_472_021_382_978_767,
    0.003_333_155_636_728_093,
    0.003_204_970_228_055_038,
    0.003_086_278_682_608_777,
    0.002_976_063_983_550_409,
    0.002_873_449_362_352_466,
    0.002_777_674_929_752_694,
    0.002_688_078_828_531_143,
    0.002_604_081_919_251_656,
    0.002_525_175_249_756_784,
    0.002_450_909_735_438_118,
];

/// The Stirling remainder `ln n! − (n ln n − n + ½ ln 2πn)` for `n ≥ 1`,
/// accurate to a few ulps. Tabulated below 35, three-term series above
/// (the first omitted term is below 1e-14 there).
pub fn stirling_remainder(n: u64) -> f64 {
    debug_assert!(n >= 1);
    match n {
        0 => 0.0,
        1..=34 => STIRLING_REMAINDER_TABLE[(n - 1) as usize],
        _ => stirling_corrections(n as f64, MAX_CORRECTION_TERMS),
    }
}

/// The deviance term `x ln(x/m) + m − x`, evaluated without cancellation
/// when `x` is close to `m`.
pub fn deviance_term(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        s
    } else {
        x * (x / m).ln() + m - x
    }
}

/// Partial sum of `(2π)^{-1/2} Σ_j (−1)^j s^{2j+1} / (2^j j! (2j+1))`, i.e.
/// `∫_0^s` of the standard normal density by termwise integration.
///
/// The series alternates with decreasing terms for moderate `s`; beyond
/// `s ≈ 6` cancellation eats the precision and callers should switch to
/// quadrature or the complement.
pub fn gaussian_integral_series(s: f64, terms: usize) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain(
            "gaussian_integral_series",
            format!("s = {s} is negative; use symmetry"),
        ));
    }
    if terms == 0 {
        return Err(Error::domain("gaussian_integral_series", "terms must be positive"));
    }
    let s2 = s * s;
    // term_j = (−1)^j s^{2j+1} / (2^j j!), divided by (2j+1) on accumulation
    let mut term = s;
    let mut sum = CompensatedSum::new();
    for j in 0..terms {
        sum.add(term / (2 * j + 1) as f64);
        term *= -s2 / (2.0 * (j + 1) as f64);
    }
    Ok(FRAC_1_SQRT_2PI * sum.value())
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of complex values, real and imaginary parts separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
