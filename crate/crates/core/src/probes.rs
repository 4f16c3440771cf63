//! Test functions against which laws are paired.
//!
//! The family runs from De Moivre's interval indicators through monomials
//! and complex exponentials to Schwartz-class probes (Gaussian-windowed
//! polynomials, Hermite functions and their products with polynomials or
//! exponentials). Schwartz-class probes carry a [`DecayBound`]
//! `|φ(x)| ≤ C (1+|x|)^{-N}` that certifies the tail of a pairing.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Decay order attached to Schwartz-class probes on construction.
pub const DEFAULT_DECAY_ORDER: u32 = 2;

/// Half-width of the grid on which decay constants are maximized.
pub const DECAY_GRID_HALF_WIDTH: f64 = 60.0;

const DECAY_GRID_STEP: f64 = 0.005;
const DECAY_INFLATION: f64 = 1.1;

/// `π^{-1/4}`.
const PI_POW_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;

/// `|φ(x)| ≤ constant · (1 + |x|)^{-order}` for all real `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBound {
    pub order: u32,
    pub constant: f64,
}

impl DecayBound {
    /// Value of the bound at `x`.
    pub fn at(&self, x: f64) -> f64 {
        self.constant * (1.0 + x.abs()).powi(-(self.order as i32))
    }

    /// Bound for `sup_{|x| > m} |φ(x)|`; the envelope is decreasing in `|x|`.
    pub fn tail_sup(&self, m: f64) -> f64 {
        self.at(m)
    }
}

/// A probe defined by arbitrary code. It has no decay bound and is
/// therefore excluded from tail-certified pairings.
#[derive(Clone)]
pub struct CustomProbe {
    name: String,
    f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for CustomProbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomProbe").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum ProbeKind {
    /// `1_{[a,b]}`, closed on both ends.
    Indicator {
        a: f64,
        b: f64,
    },
    /// `x^r`.
    Monomial(u32),
    /// `e^{itx}`.
    ComplexExponential(f64),
    /// `(Σ_j c_j x^j) e^{−x²/2}`.
    GaussianWindowedPolynomial(Vec<f64>),
    /// Normalized Hermite function `h_m`.
    HermiteFunction(u32),
    /// Pointwise product.
    Product(Box<Probe>, Box<Probe>),
    Custom(CustomProbe),
}

#[derive(Debug, Clone)]
pub struct Probe {
    kind: ProbeKind,
    decay: Option<DecayBound>,
}

impl Probe {
    fn with_default_decay(kind: ProbeKind) -> Self {
        let mut probe = Probe { kind, decay: None };
        if probe.is_schwartz() {
            probe.decay = decay_bound(&probe, DEFAULT_DECAY_ORDER).ok();
        }
        probe
    }

    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::InvalidProbe(format!("indicator needs a <= b, got [{a}, {b}]")));
        }
        Ok(Probe {
            kind: ProbeKind::Indicator { a, b },
            decay: None,
        })
    }

    pub fn monomial(r: u32) -> Self {
        Probe {
            kind: ProbeKind::Monomial(r),
            decay: None,
        }
    }

    pub fn complex_exponential(t: f64) -> Self {
        Probe {
            kind: ProbeKind::ComplexExponential(t),
            decay: None,
        }
    }

    pub fn gaussian_windowed_polynomial(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidProbe(
                "windowed polynomial needs at least one finite coefficient".into(),
            ));
        }
        Ok(Self::with_default_decay(ProbeKind::GaussianWindowedPolynomial(
            coefficients,
        )))
    }

    /// The bare window `e^{−x²/2}`.
    pub fn gaussian_window() -> Self {
        Self::with_default_decay(ProbeKind::GaussianWindowedPolynomial(vec![1.0]))
    }

    pub fn hermite(m: u32) -> Self {
        Self::with_default_decay(ProbeKind::HermiteFunction(m))
    }

    pub fn product(a: Probe, b: Probe) -> Self {
        Self::with_default_decay(ProbeKind::Product(Box::new(a), Box::new(b)))
    }

    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Probe {
            kind: ProbeKind::Custom(CustomProbe {
                name: name.into(),
                f: Arc::new(f),
            }),
            decay: None,
        }
    }

    /// Recomputes the attached decay bound at the requested order.
    pub fn with_decay_order(mut self, order: u32) -> Result<Self> {
        self.decay = Some(decay_bound(&self, order)?);
        Ok(self)
    }

    /// `Σ α_i φ_i` for Hermite functions and windowed polynomials, realized
    /// by adding coefficient vectors.
    pub fn windowed_combination(terms: &[(f64, &Probe)]) -> Result<Self> {
        let mut coefficients: Vec<f64> = Vec::new();
        for (alpha, probe) in terms {
            let c = probe
                .windowed_coefficients()
                .ok_or_else(|| Error::InvalidProbe(format!("{probe} is not a Gaussian-windowed polynomial")))?;
            if c.len() > coefficients.len() {
                coefficients.resize(c.len(), 0.0);
            }
            for (acc, cj) in coefficients.iter_mut().zip(c) {
                *acc += alpha * cj;
            }
        }
        Self::gaussian_windowed_polynomial(coefficients)
    }

    pub fn kind(&self) -> &ProbeKind {
        &self.kind
    }

    pub fn decay(&self) -> Option<&DecayBound> {
        self.decay.as_ref()
    }

    /// Smooth and rapidly decreasing: windowed polynomials, Hermite
    /// functions, and products of one of those with a smooth tempered factor.
    pub fn is_schwartz(&self) -> bool {
        match &self.kind {
            ProbeKind::GaussianWindowedPolynomial(_) | ProbeKind::HermiteFunction(_) => true,
            ProbeKind::Product(a, b) => {
                (a.is_schwartz() && b.is_smooth_tempered()) || (b.is_schwartz() && a.is_smooth_tempered())
            }
            _ => false,
        }
    }

    fn is_smooth_tempered(&self) -> bool {
        match &self.kind {
            ProbeKind::Monomial(_) | ProbeKind::ComplexExponential(_) => true,
            ProbeKind::Product(a, b) => a.is_smooth_tempered() && b.is_smooth_tempered(),
            _ => self.is_schwartz(),
        }
    }

    /// Whether the probe is real-valued.
    pub fn is_real(&self) -> bool {
        match &self.kind {
            ProbeKind::ComplexExponential(t) => *t == 0.0,
            ProbeKind::Custom(_) => false,
            ProbeKind::Product(a, b) => a.is_real() && b.is_real(),
            _ => true,
        }
    }

    /// Total degree of the polynomially growing factors.
    pub fn growth_degree(&self) -> u32 {
        match &self.kind {
            ProbeKind::Monomial(r) => *r,
            ProbeKind::Product(a, b) => a.growth_degree() + b.growth_degree(),
            _ => 0,
        }
    }

    /// Polynomial part of a Gaussian-windowed probe, lowest degree first.
    pub fn windowed_coefficients(&self) -> Option<Vec<f64>> {
        match &self.kind {
            ProbeKind::GaussianWindowedPolynomial(c) => Some(c.clone()),
            ProbeKind::HermiteFunction(m) => Some(hermite_coefficients(*m)),
            _ => None,
        }
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        match &self.kind {
            ProbeKind::Indicator { a, b } => Complex64::new(if *a <= x && x <= *b { 1.0 } else { 0.0 }, 0.0),
            ProbeKind::Monomial(r) => Complex64::new(x.powi(*r as i32), 0.0),
            ProbeKind::ComplexExponential(t) => {
                let (s, c) = (t * x).sin_cos();
                Complex64::new(c, s)
            }
            ProbeKind::GaussianWindowedPolynomial(c) => {
                let poly = c.iter().rev().fold(0.0, |acc, cj| acc * x + cj);
                Complex64::new(poly * (-0.5 * x * x).exp(), 0.0)
            }
            ProbeKind::HermiteFunction(m) => Complex64::new(hermite_function(*m, x), 0.0),
            ProbeKind::Product(a, b) => a.evaluate(x) * b.evaluate(x),
            ProbeKind::Custom(c) => (c.f)(x),
        }
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProbeKind::Indicator { a, b } => write!(f, "indicator:{a}:{b}"),
            ProbeKind::Monomial(r) => write!(f, "monomial:{r}"),
            ProbeKind::ComplexExponential(t) => write!(f, "expi:{t}"),
            ProbeKind::GaussianWindowedPolynomial(c) => {
                write!(f, "gwp:")?;
                for (j, cj) in c.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{cj}")?;
                }
                Ok(())
            }
            ProbeKind::HermiteFunction(m) => write!(f, "hermite:{m}"),
            ProbeKind::Product(a, b) => write!(f, "{a}*{b}"),
            ProbeKind::Custom(c) => write!(f, "custom:{}", c.name),
        }
    }
}

/// Grammar of textual probe specs.
pub const PROBE_GRAMMAR: &str = "PROBE := FACTOR ('*' FACTOR)* ; FACTOR := hermite:<m> | indicator:<a>:<b> | monomial:<r> | expi:<t> | gwp:<c0>[,<c1>...]";

impl FromStr for Probe {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let mut factors = spec.split('*').map(parse_factor);
        let first = factors
            .next()
            .ok_or_else(|| Error::InvalidProbe("empty probe spec".into()))??;
        factors.try_fold(first, |acc, next| Ok(Probe::product(acc, next?)))
    }
}

fn parse_factor(spec: &str) -> Result<Probe> {
    let bad = |why: &str| Error::InvalidProbe(format!("`{spec}`: {why}; expected {PROBE_GRAMMAR}"));
    let spec = spec.trim();
    let (name, args) = spec.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let real = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let integer = |s: &str| s.trim().parse::<u32>().map_err(|_| bad("not a non-negative integer"));
    match name.trim() {
        "hermite" => Ok(Probe::hermite(integer(args)?)),
        "monomial" => Ok(Probe::monomial(integer(args)?)),
        "expi" => Ok(Probe::complex_exponential(real(args)?)),
        "indicator" => {
            let (a, b) = args
                .split_once(':')
                .ok_or_else(|| bad("indicator needs two endpoints"))?;
            Probe::indicator(real(a)?, real(b)?)
        }
        "gwp" => {
            let coefficients = args.split(',').map(real).collect::<Result<Vec<_>>>()?;
            Probe::gaussian_windowed_polynomial(coefficients)
        }
        _ => Err(bad("unknown probe kind")),
    }
}

/// Normalized Hermite function `h_m(x)` via the three-term recurrence
/// `h_{j+1} = x √(2/(j+1)) h_j − √(j/(j+1)) h_{j−1}`, starting from
/// `h_0 = π^{-1/4} e^{−x²/2}`.
pub fn hermite_function(m: u32, x: f64) -> f64 {
    let h0 = PI_POW_NEG_QUARTER * (-0.5 * x * x).exp();
    if m == 0 {
        return h0;
    }
    let mut prev = h0;
    let mut cur = std::f64::consts::SQRT_2 * x * h0;
    for j in 1..m {
        let j = j as f64;
        let next = x * (2.0 / (j + 1.0)).sqrt() * cur - (j / (j + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients (lowest degree first) of the polynomial `P_m` with
/// `h_m(x) = P_m(x) e^{−x²/2}`, built with the same recurrence.
pub fn hermite_coefficients(m: u32) -> Vec<f64> {
    let mut prev = vec![PI_POW_NEG_QUARTER];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![0.0, std::f64::consts::SQRT_2 * PI_POW_NEG_QUARTER];
    for j in 1..m {
        let j = j as f64;
        let a = (2.0 / (j + 1.0)).sqrt();
        let b = (j / (j + 1.0)).sqrt();
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += a * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= b * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Computes `C` for `|φ(x)| ≤ C (1+|x|)^{-N}` by maximizing
/// `|φ(x)| (1+|x|)^N` on a dense grid over `[−60, 60]` and inflating by 10%.
/// Beyond `|x| = 60` the Gaussian window pushes every supported probe below
/// the smallest normal double.
pub fn decay_bound(probe: &Probe, requested_order: u32) -> Result<DecayBound> {
    let constants = decay_constants(probe, &[requested_order])?;
    Ok(DecayBound {
        order: requested_order,
        constant: constants[0],
    })
}

/// Decay constants for several orders from a single pass over the grid.
pub(crate) fn decay_constants(probe: &Probe, orders: &[u32]) -> Result<Vec<f64>> {
    if !probe.is_schwartz() {
        return Err(Error::UnsupportedProbe {
            op: "decay_bound",
            probe: probe.to_string(),
        });
    }
    let steps = (2.0 * DECAY_GRID_HALF_WIDTH / DECAY_GRID_STEP).round() as i64;
    let mut maxima = vec![0.0f64; orders.len()];
    for i in 0..=steps {
        let x = -DECAY_GRID_HALF_WIDTH + i as f64 * DECAY_GRID_STEP;
        let magnitude = probe.evaluate(x).norm();
        if magnitude == 0.0 {
            continue;
        }
        let ln_envelope = (1.0 + x.abs()).ln();
        for (max, &order) in maxima.iter_mut().zip(orders) {
            let v = magnitude * (order as f64 * ln_envelope).exp();
            if v > *max {
                *max = v;
            }
        }
    }
    Ok(maxima
        .into_iter()
        .map(|m| (DECAY_INFLATION * m).max(f64::MIN_POSITIVE))
        .collect())
}
