//! High-precision special functions and a numerically verified catalog of
//! classical series and integral identities.
//!
//! The crate is organised as a small stack of layers:
//!
//! * [`numkernel`] — precision contexts, arbitrary-precision reals, and the
//!   shared cached constants (π, γ, Catalan's constant, Glaisher constants, …).
//! * [`specfun`] — gamma/polygamma, Riemann/Hurwitz zeta and their
//!   s-derivatives, Dirichlet beta/eta/lambda, Bernoulli and Euler polynomials,
//!   polylogarithms, Clausen functions, sine/cosine integrals, the Barnes
//!   G-function and the triple gamma function.
//! * [`sumkit`] — compensated series summation with classified tails,
//!   alternating-series acceleration, oscillatory Fourier tails, and harmonic
//!   number tables.
//! * [`quadkit`] — tanh-sinh and exp-sinh (double-exponential) quadrature,
//!   Fourier-coefficient integrals, and a family of cosine-power moment
//!   integrals in closed form.
//! * [`catalog`] — a registry of several dozen classical identities built from
//!   the layers above, each checked numerically, with misprint adjudication
//!   for entries whose printed form disagrees with an independent oracle.
//!
//! The `zil` command-line tool (separate crate) drives [`catalog`].

pub mod catalog;
pub mod numkernel;
pub mod quadkit;
pub mod specfun;
pub mod sumkit;

pub use numkernel::{Context, Real};

/// Errors reported by every layer of the crate.
///
/// The variants mirror the failure modes of the numeric engine: bad
/// configuration, arguments outside a function's domain, evaluation at a pole,
/// non-convergence of an iterative process, and mis-classified series.
#[derive(Debug, Clone)]
pub enum Error {
    /// Invalid configuration (precision too low, bad filter, …).
    Config(String),
    /// Argument outside the supported domain.
    Domain(String),
    /// Evaluation exactly at a pole of the function.
    Pole(String),
    /// An iterative process did not reach the target accuracy.  When a
    /// partial result exists it is carried along as a decimal string so
    /// callers can still report it.
    NonConvergence {
        detail: String,
        /// Best value reached before giving up, if any.
        partial: Option<String>,
    },
    /// A series failed the sanity checks for its declared decay class.
    Classification(String),
    /// Catalog lookup for an unknown identity id.
    UnknownId(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole(m) => write!(f, "pole error: {m}"),
            Error::NonConvergence { detail, partial } => match partial {
                Some(p) => write!(f, "non-convergence: {detail} (partial value {p})"),
                None => write!(f, "non-convergence: {detail}"),
            },
            Error::Classification(m) => write!(f, "series classification error: {m}"),
            Error::UnknownId(m) => write!(f, "unknown identity id: {m}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
