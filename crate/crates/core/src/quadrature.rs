//! Closed Newton–Cotes rules ("mechanic quadratures") and their composite
//! application.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laws::gaussian_density;
use crate::numerics::{CompensatedSum, ComplexSum, FRAC_1_SQRT_2PI};

/// `sup |g''|` of the standard normal density, attained at 0.
pub const GAUSSIAN_SECOND_DERIVATIVE_BOUND: f64 = FRAC_1_SQRT_2PI;
/// `sup |g⁗| = 3/√(2π)`, attained at 0.
pub const GAUSSIAN_FOURTH_DERIVATIVE_BOUND: f64 = 3.0 * FRAC_1_SQRT_2PI;
/// `sup |g⁽⁶⁾| = 15/√(2π)`, attained at 0.
pub const GAUSSIAN_SIXTH_DERIVATIVE_BOUND: f64 = 15.0 * FRAC_1_SQRT_2PI;

/// A closed Newton–Cotes rule on one panel, weights normalized to unit
/// panel width.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonCotesRule {
    degree: u8,
    weights: Vec<f64>,
}

impl NewtonCotesRule {
    /// Degree 1 (trapezoid) through 4 (Boole). Higher closed rules pick up
    /// negative weights and are not provided.
    pub fn new(degree: u8) -> Result<Self> {
        let weights = match degree {
            1 => vec![1.0 / 2.0, 1.0 / 2.0],
            2 => vec![1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0],
            3 => vec![1.0 / 8.0, 3.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0],
            4 => vec![7.0 / 90.0, 32.0 / 90.0, 12.0 / 90.0, 32.0 / 90.0, 7.0 / 90.0],
            _ => {
                return Err(Error::domain(
                    "NewtonCotesRule",
                    format!("degree {degree} not in 1..=4"),
                ))
            }
        };
        Ok(Self { degree, weights })
    }

    pub fn trapezoid() -> Self {
        Self::new(1).unwrap()
    }

    pub fn simpson() -> Self {
        Self::new(2).unwrap()
    }

    pub fn simpson_three_eighths() -> Self {
        Self::new(3).unwrap()
    }

    pub fn boole() -> Self {
        Self::new(4).unwrap()
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn name(&self) -> &'static str {
        match self.degree {
            1 => "trapezoid",
            2 => "simpson",
            3 => "simpson-3/8",
            _ => "boole",
        }
    }

    /// Highest polynomial degree integrated exactly: `d`, or `d + 1` for
    /// even `d`.
    pub fn exactness_degree(&self) -> u8 {
        if self.degree.is_multiple_of(2) {
            self.degree + 1
        } else {
            self.degree
        }
    }

    /// Order of the derivative in the composite error term, and the
    /// constant `K` in `|E| ≤ (b−a) K h^order sup|f^(order)|`, where `h` is
    /// the node spacing.
    pub fn error_model(&self) -> (u32, f64) {
        match self.degree {
            1 => (2, 1.0 / 12.0),
            2 => (4, 1.0 / 180.0),
            3 => (4, 1.0 / 80.0),
            _ => (6, 2.0 / 945.0),
        }
    }
}

fn check_interval(a: f64, b: f64, panels: usize) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integrate", format!("non-finite limits [{a}, {b}]")));
    }
    if a > b {
        return Err(Error::domain("integrate", format!("a = {a} > b = {b}")));
    }
    if panels == 0 {
        return Err(Error::domain("integrate", "panels must be at least 1"));
    }
    Ok(())
}

/// Composite nodes and weights, in increasing order. Weights already
/// include the panel width.
fn composite_nodes(a: f64, b: f64, rule: &NewtonCotesRule, panels: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
    let d = rule.degree as usize;
    let count = panels * d;
    let width = (b - a) / panels as f64;
    (0..=count).map(move |i| {
        let x = if i == count {
            b
        } else {
            a + (b - a) * (i as f64 / count as f64)
        };
        let j = i % d;
        let w = if j == 0 && i != 0 && i != count {
            rule.weights[d] + rule.weights[0]
        } else if i == count {
            rule.weights[d]
        } else {
            rule.weights[j]
        };
        (x, w * width)
    })
}

/// `∫_a^b f` by the composite rule over `panels` equal subintervals.
pub fn integrate<F>(f: F, a: f64, b: f64, rule: &NewtonCotesRule, panels: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    check_interval(a, b, panels)?;
    if a == b {
        return Ok(0.0);
    }
    let mut sum = CompensatedSum::new();
    for (x, w) in composite_nodes(a, b, rule, panels) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: x, value: v });
        }
        sum.add(w * v);
    }
    Ok(sum.value())
}

/// Complex-valued variant of [`integrate`].
pub fn integrate_complex<F>(f: F, a: f64, b: f64, rule: &NewtonCotesRule, panels: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    check_interval(a, b, panels)?;
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut sum = ComplexSum::new();
    for (x, w) in composite_nodes(a, b, rule, panels) {
        let v = f(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            let bad = if v.re.is_finite() { v.im } else { v.re };
            return Err(Error::NonFinite { node: x, value: bad });
        }
        sum.add(v * w);
    }
    Ok(sum.value())
}

const MIN_PANELS: usize = 64;
const MAX_PANELS: usize = 1 << 18;

/// Boole quadrature with the panel count doubled until two successive
/// estimates agree to `rel_tol` (relative to `max(1, |I|)`).
pub(crate) fn integrate_converged<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let rule = NewtonCotesRule::boole();
    let mut panels = MIN_PANELS;
    let mut previous = integrate_complex(&f, a, b, &rule, panels)?;
    while panels < MAX_PANELS {
        panels *= 2;
        let current = integrate_complex(&f, a, b, &rule, panels)?;
        if (current - previous).norm() <= rel_tol * current.norm().max(1.0) {
            return Ok(current);
        }
        previous = current;
    }
    Ok(previous)
}

/// Largest panel count [`panels_for_tolerance`] will prescribe.
pub const MAX_TOLERANCE_PANELS: usize = 1 << 26;

const GAUSSIAN_NEGLIGIBLE_BEYOND: f64 = 40.0;

/// Smallest panel count whose a-priori error bound
/// `(b−a) K h^order sup|f^(order)|` is at most `tol`.
pub fn panels_for_tolerance(rule: &NewtonCotesRule, a: f64, b: f64, derivative_bound: f64, tol: f64) -> Result<usize> {
    if !(tol > 0.0) || !(derivative_bound >= 0.0) || !(b >= a) {
        return Err(Error::domain(
            "panels_for_tolerance",
            format!("need a <= b, tol > 0, bound >= 0; got [{a}, {b}], {tol}, {derivative_bound}"),
        ));
    }
    let length = b - a;
    if length == 0.0 || derivative_bound == 0.0 {
        return Ok(1);
    }
    let (order, k) = rule.error_model();
    let h = (tol / (length * k * derivative_bound)).powf(1.0 / order as f64);
    let panels = (length / (rule.degree as f64 * h)).ceil();
    if !(panels <= MAX_TOLERANCE_PANELS as f64) {
        return Err(Error::domain(
            "panels_for_tolerance",
            format!("tolerance {tol} on [{a}, {b}] needs {panels} panels, above the limit {MAX_TOLERANCE_PANELS}"),
        ));
    }
    Ok(panels.max(1.0) as usize)
}

/// Sup of the `order`-th derivative of the standard normal density.
pub fn gaussian_derivative_bound(order: u32) -> f64 {
    match order {
        2 => GAUSSIAN_SECOND_DERIVATIVE_BOUND,
        4 => GAUSSIAN_FOURTH_DERIVATIVE_BOUND,
        6 => GAUSSIAN_SIXTH_DERIVATIVE_BOUND,
        _ => panic!("no tabulated Gaussian derivative bound of order {order}"),
    }
}

/// `P(|Z| ≤ s) = 2 ∫_0^s g` by composite quadrature.
pub fn gaussian_cdf_central(s: f64, rule: &NewtonCotesRule, panels: usize) -> Result<f64> {
    Ok(2.0
        * integrate(gaussian_density, 0.0, s, rule, panels).map_err(|e| match e {
            Error::Domain { detail, .. } => Error::domain("gaussian_cdf_central", detail),
            other => other,
        })?)
}

/// `P(|Z| ≤ s)` with Simpson's rule and a panel count chosen from the
/// fourth-derivative error model for an absolute tolerance `tol`. The mass
/// beyond `|z| = 40` is below `1e-300`, so wider intervals are clipped there.
pub fn gaussian_cdf_central_to(s: f64, tol: f64) -> Result<f64> {
    let rule = NewtonCotesRule::simpson();
    let s = if s.is_nan() {
        s
    } else {
        s.min(GAUSSIAN_NEGLIGIBLE_BEYOND)
    };
    let panels = panels_for_tolerance(&rule, 0.0, s.max(0.0), GAUSSIAN_FOURTH_DERIVATIVE_BOUND, tol / 2.0)?;
    gaussian_cdf_central(s, &rule, panels)
}

/// One coarse evaluation made by [`historical_bracket`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseSetting {
    pub rule: &'static str,
    pub panels: usize,
    pub value: f64,
}

impl CoarseSetting {
    /// E.g. `simpson 2-panel`.
    pub fn label(&self) -> String {
        format!("{} {}-panel", self.rule, self.panels)
    }
}

/// Coarse settings closest to a recorded value from below and from above.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoricalBracket {
    pub target: f64,
    pub below: Option<CoarseSetting>,
    pub above: Option<CoarseSetting>,
}

impl HistoricalBracket {
    pub fn brackets(&self) -> bool {
        self.below.is_some() && self.above.is_some()
    }
}

/// Panel counts tried in historical mode.
pub const HISTORICAL_PANELS: [usize; 4] = [1, 2, 3, 4];

/// Evaluates `P(|Z| ≤ s)` with every rule of degree 1..=4 on 1..=4 panels
/// and returns the settings that come closest to `target` on either side.
/// This brackets a recorded figure; it does not reconstruct how it was
/// obtained.
pub fn historical_bracket(s: f64, target: f64) -> Result<HistoricalBracket> {
    let mut below: Option<CoarseSetting> = None;
    let mut above: Option<CoarseSetting> = None;
    for degree in 1..=4 {
        let rule = NewtonCotesRule::new(degree)?;
        for panels in HISTORICAL_PANELS {
            let value = gaussian_cdf_central(s, &rule, panels)?;
            let setting = CoarseSetting {
                rule: rule.name(),
                panels,
                value,
            };
            if value <= target {
                if below.as_ref().is_none_or(|b| value > b.value) {
                    below = Some(setting);
                }
            } else if above.as_ref().is_none_or(|b| value < b.value) {
                above = Some(setting);
            }
        }
    }
    Ok(HistoricalBracket { target, below, above })
}
