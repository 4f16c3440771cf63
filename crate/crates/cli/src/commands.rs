use clap::{Args, ValueEnum};
use demoivre::laws::{gaussian_density, BinomialLaw, CauchyLaw, ContinuousLaw, GaussianReference};
use demoivre::pairing::{
    continuity_corrected, convergence_study, error_decomposition, local_ratio, pair_binomial_with, pair_gaussian,
    GaussianMethod, PairingOptions, DEFAULT_CUTOFF,
};
use demoivre::probes::{Probe, ProbeKind};
use demoivre::quadrature::{gaussian_cdf_central_to, historical_bracket};
use demoivre::transforms::{
    characteristic_function, classical_moment, normalized_weak_characteristic_function, weak_characteristic_function,
    weak_moment,
};

use crate::output::{Cell, Table};

/// Central masses recorded in 1733, kept for comparison only.
pub const HISTORICAL: [(f64, f64); 3] = [(1.0, 0.682688), (2.0, 0.95428), (3.0, 0.99874)];

const MODERN_TOL: f64 = 1e-12;
const CURVE_POINTS: usize = 401;
const CURVE_HALF_WIDTH: f64 = 4.0;

/// A flag combination that parses but is not meaningful.
#[derive(Debug)]
pub struct UsageError(pub String);

#[derive(Debug)]
pub enum Failure {
    Usage(UsageError),
    Compute(demoivre::Error),
}

impl From<demoivre::Error> for Failure {
    fn from(e: demoivre::Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(UsageError(msg.into()))
}

type Outcome = Result<Vec<Table>, Failure>;

pub fn probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(format!("p = {p} must lie strictly between 0 and 1"))
    }
}

pub fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a finite non-negative number"))
    }
}

pub fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a finite positive number"))
    }
}

fn probe_parser(s: &str) -> Result<Probe, String> {
    s.parse().map_err(|e: demoivre::Error| e.to_string())
}

fn gaussian_method(probe: &Probe) -> GaussianMethod {
    match probe.kind() {
        ProbeKind::Indicator { .. } => GaussianMethod::Series,
        _ => GaussianMethod::Quadrature,
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Half-widths s of the intervals [−s, s], in standard deviations.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = non_negative)]
    pub sigmas: Vec<f64>,
    /// Add the exact binomial mass of [−s, s] at this number of trials.
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    /// Bracket the historical values with coarse Newton–Cotes settings.
    #[arg(long)]
    pub historical: bool,
    /// Widen each interval by half a grid step in the binomial column.
    #[arg(long, requires = "n")]
    pub continuity: bool,
}

pub fn table(args: &TableArgs, parallel: bool) -> Outcome {
    let mut headers = vec!["s".to_owned(), "modern".into(), "historical".into()];
    if let Some(n) = args.n {
        headers.push(format!("binomial_n{n}"));
    }
    if args.historical {
        headers.extend(["coarse_below", "setting_below", "coarse_above", "setting_above"].map(String::from));
    }
    let mut out = Table::new(headers);
    let law = args.n.map(|n| BinomialLaw::new(n, args.p)).transpose()?;
    let options = PairingOptions {
        cutoff: DEFAULT_CUTOFF,
        parallel,
    };
    for &s in &args.sigmas {
        let recorded = HISTORICAL.iter().find(|(h, _)| *h == s).map(|(_, v)| *v);
        let mut row: Vec<Cell> = vec![
            s.into(),
            gaussian_cdf_central_to(s, MODERN_TOL)?.into(),
            recorded.into(),
        ];
        if let Some(law) = &law {
            let mut probe = Probe::indicator(-s, s)?;
            if args.continuity {
                probe = continuity_corrected(&probe, law)?;
            }
            row.push(pair_binomial_with(law, &probe, &options).value.re.into());
        }
        if args.historical {
            match recorded {
                Some(target) => {
                    let b = historical_bracket(s, target)?;
                    row.push(b.below.as_ref().map(|c| c.value).into());
                    row.push(b.below.as_ref().map(|c| c.label()).into());
                    row.push(b.above.as_ref().map(|c| c.value).into());
                    row.push(b.above.as_ref().map(|c| c.label()).into());
                }
                None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
            }
        }
        out.push(row);
    }
    out.note("historical: values recorded in 1733, shown for comparison, not recomputed");
    if args.historical {
        out.note(
            "coarse_*: closest coarse quadrature settings (rule, panel count) below and above each historical value",
        );
    }
    if args.continuity {
        out.note("binomial column uses the half-step continuity correction");
    }
    Ok(vec![out])
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    /// Probe spec, e.g. hermite:3 or indicator:-1:1.
    #[arg(long, default_value = "hermite:0", value_parser = probe_parser)]
    pub probe: Probe,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(4..))]
    pub n_start: u64,
    #[arg(long, default_value_t = 4096)]
    pub n_stop: u64,
    /// Ratio between consecutive n.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    pub factor: u64,
}

pub fn converge(args: &ConvergeArgs) -> Outcome {
    let mut ns = Vec::new();
    let mut n = args.n_start;
    while n <= args.n_stop {
        ns.push(n);
        n = match n.checked_mul(args.factor) {
            Some(next) => next,
            None => break,
        };
    }
    if ns.len() < 3 {
        return Err(usage(format!(
            "--n-start {} --n-stop {} --factor {} gives {} value(s) of n; at least 3 are needed",
            args.n_start,
            args.n_stop,
            args.factor,
            ns.len()
        )));
    }
    let report = convergence_study(args.p, &args.probe, &ns)?;
    let complex = !args.probe.is_real();
    let mut headers = vec!["n", "pairing", "gaussian_limit", "abs_error"];
    if complex {
        headers = vec!["n", "pairing_re", "pairing_im", "limit_re", "limit_im", "abs_error"];
    }
    let mut out = Table::new(headers);
    for ((n, v), e) in report.n_values.iter().zip(&report.pairings).zip(&report.errors) {
        let lim = report.limit;
        out.push(if complex {
            vec![
                (*n).into(),
                v.re.into(),
                v.im.into(),
                lim.re.into(),
                lim.im.into(),
                (*e).into(),
            ]
        } else {
            vec![(*n).into(), v.re.into(), lim.re.into(), (*e).into()]
        });
    }
    match report.fitted_slope {
        Some(slope) => out.note(format!(
            "probe {} at p = {}: fitted log-log slope {} from {} points",
            report.probe_description,
            args.p,
            crate::output::format_general(slope, 6),
            report.usable()
        )),
        None => out.note(format!(
            "probe {} at p = {}: all errors vanish to rounding (exact symmetry: symmetric law, odd probe); no slope fitted",
            report.probe_description, args.p
        )),
    }
    Ok(vec![out])
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    pub n: u64,
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    /// Keep atoms with |x_k| ≤ range; 0 leaves only the curve.
    #[arg(long, default_value_t = 4.0, value_parser = non_negative)]
    pub range: f64,
}

pub fn plot_data(args: &PlotArgs) -> Outcome {
    let law = BinomialLaw::new(args.n, args.p)?;
    let dx = law.spacing();
    let mut bars = Table::new(["x", "height"]);
    if args.range > 0.0 {
        for atom in law.atoms().filter(|a| a.x.abs() <= args.range) {
            bars.push(vec![atom.x.into(), (atom.weight() / dx).into()]);
        }
    }
    let half = if args.range > 0.0 { args.range } else { CURVE_HALF_WIDTH };
    let mut curve = Table::new(["x", "gaussian_density"]);
    for i in 0..CURVE_POINTS {
        let x = -half + 2.0 * half * i as f64 / (CURVE_POINTS - 1) as f64;
        curve.push(vec![x.into(), gaussian_density(x).into()]);
    }
    Ok(vec![bars, curve])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Quadrature,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    #[arg(long, value_parser = probe_parser)]
    pub probe: Probe,
    /// Bulk/tail split point M in standard deviations.
    #[arg(long, default_value_t = DEFAULT_CUTOFF, value_parser = positive)]
    pub cutoff: f64,
    /// Widen an indicator probe by half a grid step.
    #[arg(long)]
    pub continuity: bool,
    /// Also report the local, Riemann and tail parts of the error.
    #[arg(long)]
    pub decompose: bool,
    /// Route for the Gaussian pairing (series needs an indicator probe).
    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

pub fn pair(args: &PairArgs, parallel: bool) -> Outcome {
    let law = BinomialLaw::new(args.n, args.p)?;
    let probe = if args.continuity {
        continuity_corrected(&args.probe, &law)?
    } else {
        args.probe.clone()
    };
    let options = PairingOptions {
        cutoff: args.cutoff,
        parallel,
    };
    let r = pair_binomial_with(&law, &probe, &options);
    let method = match args.method {
        Some(Method::Series) => GaussianMethod::Series,
        Some(Method::Quadrature) => GaussianMethod::Quadrature,
        None => gaussian_method(&probe),
    };
    let g = pair_gaussian(&probe, method)?;
    let mut out = Table::new(["quantity", "value"]);
    let mut row = |name: &str, v: Cell| out.push(vec![name.into(), v]);
    row("value", r.value.re.into());
    row("value_im", r.value.im.into());
    row("bulk", r.bulk_value.re.into());
    row("tail", r.tail_value.re.into());
    row("tail_certificate", r.tail_certificate.into());
    row("cutoff", r.cutoff.into());
    row("gaussian", g.re.into());
    row("gaussian_im", g.im.into());
    row("abs_error", (r.value - g).norm().into());
    if args.decompose {
        let d = error_decomposition(&law, &probe, args.cutoff)?;
        row("local_error", d.local_error.into());
        row("riemann_error", d.riemann_error.into());
        row("tail_bound", d.tail_bound.into());
        row("total_error", d.total_error.into());
    }
    out.note(format!(
        "probe {probe} on Binomial(n = {}, p = {}); indicators are closed intervals",
        args.n, args.p
    ));
    Ok(vec![out])
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,
    /// Offsets l from the central term (comma-separated).
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub l: Vec<i64>,
    /// General success probability; n·p must be an integer.
    #[arg(long, value_parser = probability)]
    pub p: Option<f64>,
}

pub fn local(args: &LocalArgs) -> Outcome {
    let mut out = Table::new(["l", "exact_log_ratio", "demoivre_log_ratio", "difference"]);
    for &l in &args.l {
        let r = local_ratio(args.n, l, args.p)?;
        out.push(vec![
            l.into(),
            r.exact_log_ratio.into(),
            r.demoivre_log_ratio.into(),
            (r.exact_log_ratio - r.demoivre_log_ratio).into(),
        ]);
    }
    Ok(vec![out])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Density {
    Gaussian,
    Cauchy,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Pair a continuous density with a window instead of a binomial law.
    #[arg(long, value_enum, conflicts_with = "n")]
    pub density: Option<Density>,
    #[arg(long, default_value_t = 0.0, requires = "density")]
    pub location: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive, requires = "density")]
    pub scale: f64,
    /// Schwartz window φ for the density (default: e^{−x²/2}).
    #[arg(long, default_value = "gwp:1", value_parser = probe_parser, requires = "density")]
    pub window: Probe,
}

impl DensityArgs {
    fn law(&self) -> Result<Option<Box<dyn ContinuousLaw>>, Failure> {
        Ok(match self.density {
            None => None,
            Some(Density::Gaussian) => {
                if self.location != 0.0 || self.scale != 1.0 {
                    return Err(usage("--location/--scale apply to the Cauchy density only"));
                }
                Some(Box::new(GaussianReference))
            }
            Some(Density::Cauchy) => Some(Box::new(CauchyLaw::new(self.location, self.scale)?)),
        })
    }
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long, required_unless_present = "density", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    /// Moment order.
    #[arg(long)]
    pub r: u32,
    /// Moments of (k − np)/√(npq) rather than of k.
    #[arg(long, conflicts_with = "density")]
    pub standardized: bool,
    #[command(flatten)]
    pub density: DensityArgs,
}

pub fn moments(args: &MomentsArgs) -> Outcome {
    match args.density.law()? {
        None => {
            let law = BinomialLaw::new(args.n.expect("clap requires --n"), args.p)?;
            let mut out = Table::new(["r", "moment"]);
            out.push(vec![
                u64::from(args.r).into(),
                classical_moment(&law, args.r, args.standardized)?.into(),
            ]);
            Ok(vec![out])
        }
        Some(density) => {
            let mut out = Table::new(["r", "weak_moment"]);
            out.push(vec![
                u64::from(args.r).into(),
                weak_moment(density.as_ref(), args.r, &args.density.window)?.into(),
            ]);
            out.note(format!("window {}", args.density.window));
            if args.density.density == Some(Density::Cauchy) && args.r >= 1 {
                out.note(format!(
                    "the classical moment of order {} diverges for the Cauchy law (∫|x|^{} f dx = ∞); the windowed moment is finite",
                    args.r, args.r
                ));
            }
            Ok(vec![out])
        }
    }
}

#[derive(Debug, Args)]
pub struct CfArgs {
    #[arg(long, required_unless_present = "density", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0.5, value_parser = probability)]
    pub p: f64,
    /// Arguments t (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2")]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub density: DensityArgs,
}

pub fn cf(args: &CfArgs) -> Outcome {
    match args.density.law()? {
        None => {
            let law = BinomialLaw::new(args.n.expect("clap requires --n"), args.p)?;
            let mut out = Table::new(["t", "cf_re", "cf_im", "modulus"]);
            for &t in &args.t {
                let v = characteristic_function(&law, t);
                out.push(vec![t.into(), v.re.into(), v.im.into(), v.norm().into()]);
            }
            out.note("cf(t) = (p e^{it} + q)^n of the count k");
            Ok(vec![out])
        }
        Some(density) => {
            let window = &args.density.window;
            let mut out = Table::new(["t", "raw_re", "raw_im", "normalized_re", "normalized_im"]);
            for &t in &args.t {
                let raw = weak_characteristic_function(density.as_ref(), t, window)?;
                let norm = normalized_weak_characteristic_function(density.as_ref(), t, window)?;
                out.push(vec![
                    t.into(),
                    raw.re.into(),
                    raw.im.into(),
                    norm.re.into(),
                    norm.im.into(),
                ]);
            }
            out.note(format!(
                "raw = ∫ e^(itx) φ f dx; normalized = raw / ∫ φ f dx; window φ = {window}"
            ));
            Ok(vec![out])
        }
    }
}
