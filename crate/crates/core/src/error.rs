use thiserror::Error;

/// Errors raised by the library. Each variant belongs to the module that
/// raises it; [`Error::module`] names that module for diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument out of domain: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid law: {0}")]
    InvalidLaw(String),

    #[error("invalid probe: {0}")]
    InvalidProbe(String),

    #[error("{op}: unsupported probe {probe} (no decay bound available)")]
    UnsupportedProbe { op: &'static str, probe: String },

    #[error("{op}: method {method} does not support probe {probe}")]
    UnsupportedMethod {
        op: &'static str,
        method: &'static str,
        probe: String,
    },

    #[error("non-finite integrand value {value} at node x = {node}")]
    NonFinite { node: f64, value: f64 },

    #[error("insufficient data: {usable} usable points, at least 3 required")]
    InsufficientData { usable: usize },

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    OutOfRange { what: &'static str, value: u64, max: u64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// Name of the module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Domain { op, .. } => match *op {
                "integrate" | "gaussian_cdf_central" | "panels_for_tolerance" => "quadrature",
                "local_ratio" | "error_decomposition" | "convergence_study" => "pairing",
                _ => "numerics",
            },
            Error::InvalidLaw(_) => "laws",
            Error::InvalidProbe(_) => "probes",
            Error::UnsupportedProbe { op, .. } => match *op {
                "decay_bound" => "probes",
                "weak_moment" | "weak_characteristic_function" => "transforms",
                _ => "pairing",
            },
            Error::UnsupportedMethod { .. } | Error::InsufficientData { .. } => "pairing",
            Error::NonFinite { .. } => "quadrature",
            Error::OutOfRange { .. } => "transforms",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
