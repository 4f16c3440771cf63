//! The chain of probes applied to a whole law: the generating function,
//! classical moments, the characteristic function, and the weak moments
//! `⟨T, x^r φ⟩` and weak characteristic function `⟨T, e^{itx} φ⟩` that stay
//! finite for heavy-tailed laws.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::laws::{BinomialLaw, ContinuousLaw};
use crate::pairing::{pair_binomial, pair_binomial_raw, DEFAULT_CUTOFF};
use crate::probes::{decay_constants, Probe};
use crate::quadrature::integrate_converged;

/// Largest moment order served by [`classical_moment`].
pub const MAX_MOMENT_ORDER: u32 = 20;

/// Pointwise tail level that fixes the truncation radius of weak moments.
pub const WEAK_TAIL_LEVEL: f64 = 1e-14;

const WEAK_QUADRATURE_TOL: f64 = 1e-14;

/// `z^n` by repeated squaring.
fn powu(mut base: Complex64, mut exp: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Probability generating function `(p z + q)^n`.
pub fn pgf(law: &BinomialLaw, z: Complex64) -> Complex64 {
    powu(z * law.p() + law.q(), law.n())
}

/// `(p e^{it} + q)^n`.
pub fn characteristic_function(law: &BinomialLaw, t: f64) -> Complex64 {
    let (s, c) = t.sin_cos();
    powu(Complex64::new(law.p() * c + law.q(), law.p() * s), law.n())
}

/// `Σ_k w_k e^{itk}`: the characteristic function as a pairing of the
/// law with the exponential probe.
pub fn characteristic_function_by_pairing(law: &BinomialLaw, t: f64) -> Complex64 {
    pair_binomial_raw(law, &Probe::complex_exponential(t))
}

/// Recovers the weights `w_0..w_n` as coefficients of the generating
/// function: evaluate it on the `N`-th roots of unity (`N` the smallest
/// power of two above `n`) and invert the discrete Fourier transform.
pub fn coefficients_from_pgf(law: &BinomialLaw) -> Vec<f64> {
    let n = law.n() as usize;
    let size = (n + 1).next_power_of_two();
    let mut values: Vec<Complex64> = (0..size)
        .map(|j| pgf(law, Complex64::from_polar(1.0, 2.0 * PI * j as f64 / size as f64)))
        .collect();
    // w_k = (1/N) Σ_j P(ω^j) ω^{−jk}
    FftPlanner::new().plan_fft_forward(size).process(&mut values);
    values.iter().take(n + 1).map(|v| v.re / size as f64).collect()
}

/// Moments `m_0..m_{r_max}` of the raw count or of the standardized variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub values: Vec<f64>,
    pub standardized: bool,
}

fn check_order(r: u32) -> Result<()> {
    if r > MAX_MOMENT_ORDER {
        return Err(Error::OutOfRange {
            what: "moment order",
            value: r as u64,
            max: MAX_MOMENT_ORDER as u64,
        });
    }
    Ok(())
}

/// `Σ_k w_k x_k^r` (standardized) or `Σ_k w_k k^r` (raw), as a pairing
/// with the monomial probe.
pub fn classical_moment(law: &BinomialLaw, r: u32, standardized: bool) -> Result<f64> {
    check_order(r)?;
    let probe = Probe::monomial(r);
    Ok(if standardized {
        pair_binomial(law, &probe, DEFAULT_CUTOFF).value.re
    } else {
        pair_binomial_raw(law, &probe).re
    })
}

pub fn classical_moments(law: &BinomialLaw, r_max: u32, standardized: bool) -> Result<MomentSequence> {
    check_order(r_max)?;
    let values = (0..=r_max)
        .map(|r| classical_moment(law, r, standardized))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSequence { values, standardized })
}

/// Radius `R` beyond which `|x^r φ(x)| · sup density` stays below
/// [`WEAK_TAIL_LEVEL`], minimized over decay orders `N ≥ r + 3`.
pub fn weak_truncation_radius<L: ContinuousLaw + ?Sized>(
    density: &L,
    r: u32,
    window: &Probe,
    op: &'static str,
) -> Result<f64> {
    if window.decay().is_none() {
        return Err(Error::UnsupportedProbe {
            op,
            probe: window.to_string(),
        });
    }
    let orders: Vec<u32> = (0..30).map(|i| r + 3 + 2 * i).collect();
    let constants = decay_constants(window, &orders)?;
    let sup = density.density_sup();
    let level = |order: u32, c: f64, radius: f64| {
        c * (1.0 + radius).powi(-(order as i32)) * radius.powi(r as i32).max(1.0) * sup
    };
    let mut best = f64::INFINITY;
    for (&order, &c) in orders.iter().zip(&constants) {
        let (mut lo, mut hi) = (1.0f64, 1e8f64);
        if level(order, c, lo) <= WEAK_TAIL_LEVEL {
            best = best.min(lo);
            continue;
        }
        if level(order, c, hi) > WEAK_TAIL_LEVEL {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if level(order, c, mid) <= WEAK_TAIL_LEVEL {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-9 * hi {
                break;
            }
        }
        best = best.min(hi);
    }
    Ok(best)
}

/// Weak moment `∫ x^r φ(x) f(x) dx` of a density `f` against a
/// Schwartz-class window `φ`. Finite for every `r`, including for laws
/// such as the Cauchy whose classical moments diverge.
pub fn weak_moment<L: ContinuousLaw + ?Sized>(density: &L, r: u32, window: &Probe) -> Result<f64> {
    let radius = weak_truncation_radius(density, r, window, "weak_moment")?;
    let v = integrate_converged(
        |x| window.evaluate(x) * (x.powi(r as i32) * density.density(x)),
        -radius,
        radius,
        WEAK_QUADRATURE_TOL,
    )?;
    Ok(v.re)
}

/// Weak characteristic function `∫ e^{itx} φ(x) f(x) dx`, unnormalized.
pub fn weak_characteristic_function<L: ContinuousLaw + ?Sized>(
    density: &L,
    t: f64,
    window: &Probe,
) -> Result<Complex64> {
    let radius = weak_truncation_radius(density, 0, window, "weak_characteristic_function")?;
    integrate_converged(
        |x| {
            let (s, c) = (t * x).sin_cos();
            window.evaluate(x) * Complex64::new(c, s) * density.density(x)
        },
        -radius,
        radius,
        WEAK_QUADRATURE_TOL,
    )
}

/// The weak characteristic function divided by the weak mass
/// `∫ φ f`, so that it equals 1 at `t = 0`.
pub fn normalized_weak_characteristic_function<L: ContinuousLaw + ?Sized>(
    density: &L,
    t: f64,
    window: &Probe,
) -> Result<Complex64> {
    Ok(weak_characteristic_function(density, t, window)? / weak_moment(density, 0, window)?)
}
