//! Special functions: gamma/polygamma, zeta functions and s-derivatives,
//! Dirichlet beta/eta/lambda, Bernoulli/Euler polynomials, polylogarithms,
//! Clausen functions, sine/cosine integrals with their auxiliary functions,
//! Barnes G, the triple gamma function, and trigonometric zeta sums.
//!
//! Every function takes a [`crate::Context`] and returns values at that
//! context's working precision.  Cross-route identities (reflection,
//! duplication, Hurwitz relations, Fourier forms) are exercised by the
//! integration tests; each function documents its algorithm inline.

mod barnes;
mod bernoulli;
mod clausen;
mod gamma;
mod sici;
mod trigsum;
mod zeta;

pub(crate) use sici::taylor_parts;
pub(crate) use zeta::euler_average;

pub use barnes::{barnes_logG, log_gamma3};
pub use bernoulli::{
    bernoulli_number, bernoulli_poly, euler_number, euler_poly, poly_eval, PolyKind, PolySpec,
};
pub use clausen::{clausen, lobachevsky, odd_trig_sum, polylog};
pub use gamma::{log_gamma, polygamma};
pub use sici::{
    cos_integral, si, sici_aux_f, sici_aux_g, sici_crossover, sin_integral, SICI_ASYMPTOTIC_SAFE,
};
pub use trigsum::{inverse_tangent_integral, trig_zeta_sum, TrigKind};
pub use zeta::{
    dirichlet_beta, dirichlet_eta, dirichlet_lambda, hurwitz_zeta, hurwitz_zeta_sderiv, zeta,
    zeta_sderiv,
};
