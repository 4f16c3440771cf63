//! Operational representations of the laws we pair against probes: the
//! binomial law and its standardized atom grid, the standard Gaussian
//! reference, and the Cauchy law.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{deviance_term, stirling_remainder, CIRCUMFERENCE, FRAC_1_SQRT_2PI};

/// The law of the number of successes in `n` Bernoulli(`p`) trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialLaw {
    n: u64,
    p: f64,
    q: f64,
    ln_p: f64,
    ln_q: f64,
    sigma: f64,
}

impl BinomialLaw {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidLaw(format!(
                "success probability p = {p} must lie strictly inside (0, 1)"
            )));
        }
        Self::build(n, p, 1.0 - p, p.ln(), (-p).ln_1p())
    }

    /// De Moivre's `(a + b)^n` parameterization: odds `a : b`, so that
    /// `p = a/(a+b)` and `q = b/(a+b)`.
    pub fn from_chances(n: u64, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "chances a = {a}, b = {b} must be positive and finite"
            )));
        }
        let p = a / (a + b);
        let q = b / (a + b);
        Self::build(n, p, q, p.ln(), q.ln())
    }

    fn build(n: u64, p: f64, q: f64, ln_p: f64, ln_q: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLaw("number of trials must be at least 1".into()));
        }
        let sigma = (n as f64 * p * q).sqrt();
        if !(sigma > 0.0) {
            return Err(Error::InvalidLaw(format!("degenerate law: sigma = {sigma}")));
        }
        Ok(Self {
            n,
            p,
            q,
            ln_p,
            ln_q,
            sigma,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn mean(&self) -> f64 {
        self.n as f64 * self.p
    }

    /// `√(npq)`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Grid spacing `Δx = 1/√(npq)` of the standardized atoms.
    pub fn spacing(&self) -> f64 {
        1.0 / self.sigma
    }

    /// `ln w_k = ln C(n,k) + k ln p + (n−k) ln q`.
    ///
    /// Evaluated in saddle-point form (Stirling remainders plus deviance
    /// terms), which avoids the cancellation between `ln n!` and
    /// `ln k! + ln (n−k)!` that costs several digits at large `n`.
    pub fn log_weight(&self, k: u64) -> f64 {
        assert!(k <= self.n, "k = {k} exceeds n = {}", self.n);
        let n = self.n;
        if k == 0 {
            return n as f64 * self.ln_q;
        }
        if k == n {
            return n as f64 * self.ln_p;
        }
        let nf = n as f64;
        let kf = k as f64;
        let rest = (n - k) as f64;
        stirling_remainder(n)
            - stirling_remainder(k)
            - stirling_remainder(n - k)
            - deviance_term(kf, nf * self.p)
            - deviance_term(rest, nf * self.q)
            + 0.5 * (nf / (CIRCUMFERENCE * kf * rest)).ln()
    }

    pub fn atom(&self, k: u64) -> StandardizedAtom {
        let offset = k as f64 - self.mean();
        StandardizedAtom {
            k,
            offset,
            x: offset / self.sigma,
            log_weight: self.log_weight(k),
        }
    }

    /// All `n + 1` atoms in increasing `k`, computed lazily.
    pub fn atoms(&self) -> impl DoubleEndedIterator<Item = StandardizedAtom> + '_ {
        (0..=self.n).map(move |k| self.atom(k))
    }

    /// Materializes the full standardized grid. Pairings stream atoms
    /// instead, so this is only needed when the grid itself is wanted.
    pub fn atom_grid(&self) -> AtomGrid {
        AtomGrid {
            atoms: self.atoms().collect(),
            spacing: self.spacing(),
        }
    }
}

/// One support point of the standardized binomial law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardizedAtom {
    /// Raw success count.
    pub k: u64,
    /// Offset from the mean, `l = k − np`.
    pub offset: f64,
    /// Standardized position `x_k = l / √(npq)`.
    pub x: f64,
    /// `ln w_k`.
    pub log_weight: f64,
}

impl StandardizedAtom {
    pub fn weight(&self) -> f64 {
        self.log_weight.exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomGrid {
    atoms: Vec<StandardizedAtom>,
    spacing: f64,
}

impl AtomGrid {
    pub fn atoms(&self) -> &[StandardizedAtom] {
        &self.atoms
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(StandardizedAtom::weight).collect()
    }

    /// The atom carrying the largest weight (first one on ties).
    pub fn mode(&self) -> &StandardizedAtom {
        self.atoms
            .iter()
            .reduce(|best, a| if a.log_weight > best.log_weight { a } else { best })
            .expect("grid has at least two atoms")
    }
}

/// Symmetry declared alongside a density. Used by tests, never as a
/// computational shortcut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Even,
    None,
}

/// A law given by an evaluable probability density on ℝ.
pub trait ContinuousLaw {
    fn density(&self, x: f64) -> f64;

    /// An upper bound for the density over ℝ.
    fn density_sup(&self) -> f64;

    fn symmetry(&self) -> Symmetry {
        Symmetry::None
    }
}

/// `(2π)^{-1/2} e^{−x²/2}`.
pub fn gaussian_density(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// The standard normal law, the limit object of the standardized binomials.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GaussianReference;

impl ContinuousLaw for GaussianReference {
    fn density(&self, x: f64) -> f64 {
        gaussian_density(x)
    }

    fn density_sup(&self) -> f64 {
        FRAC_1_SQRT_2PI
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::Even
    }
}

/// Cauchy law. It has no finite moments of any order `r ≥ 1`; the
/// classical second moment `∫ x² dμ` diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyLaw {
    location: f64,
    scale: f64,
}

impl CauchyLaw {
    pub fn new(location: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && location.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "Cauchy law needs finite location and positive scale, got ({location}, {scale})"
            )));
        }
        Ok(Self { location, scale })
    }

    pub fn standard() -> Self {
        Self {
            location: 0.0,
            scale: 1.0,
        }
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Mass of `(−∞, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        0.5 + ((x - self.location) / self.scale).atan() / PI
    }
}

pub fn cauchy_density(law: &CauchyLaw, x: f64) -> f64 {
    let d = x - law.location;
    law.scale / (PI * (d * d + law.scale * law.scale))
}

impl ContinuousLaw for CauchyLaw {
    fn density(&self, x: f64) -> f64 {
        cauchy_density(self, x)
    }

    fn density_sup(&self) -> f64 {
        1.0 / (PI * self.scale)
    }

    fn symmetry(&self) -> Symmetry {
        if self.location == 0.0 {
            Symmetry::Even
        } else {
            Symmetry::None
        }
    }
}

/// A user-supplied density with its declared bound and symmetry.
pub struct DensityFn<F> {
    f: F,
    sup: f64,
    symmetry: Symmetry,
}

impl<F: Fn(f64) -> f64> DensityFn<F> {
    pub fn new(f: F, sup: f64, symmetry: Symmetry) -> Self {
        Self { f, sup, symmetry }
    }
}

impl<F: Fn(f64) -> f64> ContinuousLaw for DensityFn<F> {
    fn density(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn density_sup(&self) -> f64 {
        self.sup
    }

    fn symmetry(&self) -> Symmetry {
        self.symmetry
    }
}
