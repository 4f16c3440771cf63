//! Probability laws known through what they do to test functions.
//!
//! A law is represented operationally and every quantity is extracted by
//! pairing it with a probe `φ`: binomial coefficients and interval
//! indicators, monomials, complex exponentials, and finally Schwartz-class
//! probes. The standardized binomial law
//!
//! ```text
//! ⟨T_n, φ⟩ = Σ_k C(n,k) p^k q^{n−k} φ((k − np)/√(npq))
//! ```
//!
//! converges to the Gaussian pairing `(2π)^{-1/2} ∫ φ(x) e^{−x²/2} dx`, and
//! [`pairing::error_decomposition`] splits the gap into a local
//! (Stirling) error, a Riemann-sum error and a certified tail bound.
//!
//! ```
//! use demoivre::{laws::BinomialLaw, pairing, probes::Probe};
//!
//! let law = BinomialLaw::new(3600, 0.5).unwrap();
//! let one_sigma = Probe::indicator(-1.0, 1.0).unwrap();
//! let exact = pairing::pair_binomial(&law, &one_sigma, pairing::DEFAULT_CUTOFF).value.re;
//! let limit = pairing::pair_gaussian(&one_sigma, pairing::GaussianMethod::Series).unwrap().re;
//! assert!((limit - 0.682689).abs() < 1e-6);
//! assert!((exact - limit).abs() < 0.01);
//! ```

// Validation is written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod laws;
pub mod numerics;
pub mod pairing;
pub mod probes;
pub mod quadrature;
pub mod transforms;

pub use error::{Error, Result};
pub use laws::{BinomialLaw, CauchyLaw, GaussianReference};
pub use probes::Probe;
