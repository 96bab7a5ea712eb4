//! Precision contexts, arbitrary-precision reals, and shared cached constants.
//!
//! Every computation in this crate runs inside a [`Context`], which fixes the
//! requested decimal precision, the number of guard digits carried on top of
//! it, and global resource budgets for series summation and quadrature.  A
//! context hands out [`Real`] values (MPFR floats) whose working precision is
//! `digits + guard` decimal digits, and lazily computes a small set of shared
//! constants exactly once.
//!
//! Two contexts constructed with identical fields produce bit-identical
//! constants and evaluation results: nothing in this module (or the layers
//! above it) depends on global mutable state, wall-clock time, or iteration
//! order of hash maps.

use crate::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};
use std::sync::{Arc, OnceLock};

/// Arbitrary-precision real number.
///
/// Alias for [`rug::Float`]; the basic arithmetic operations and the
/// elementary functions (`exp`, `ln`, `sin`, `cos`, `tan`, `atan`, `sqrt`,
/// `pow`) are correctly rounded by MPFR, comfortably inside the ≤ 2 ulp
/// contract for this crate.
pub type Real = Float;

const LOG2_10: f64 = 3.321928094887362;

/// Default decimal precision when none is requested.
pub const DEFAULT_DIGITS: u32 = 40;
/// Default number of guard digits.
pub const DEFAULT_GUARD: u32 = 10;
/// Smallest supported decimal precision.
pub const MIN_DIGITS: u32 = 16;
/// Default cap on the number of series terms.
pub const DEFAULT_MAX_SERIES_TERMS: usize = 1_000_000;
/// Default cap on quadrature refinement levels.
pub const DEFAULT_MAX_QUAD_LEVEL: u32 = 12;

#[derive(Default)]
struct ConstCache {
    pi: OnceLock<Real>,
    euler_gamma: OnceLock<Real>,
    log2: OnceLock<Real>,
    catalan: OnceLock<Real>,
    log_glaisher_a: OnceLock<Real>,
    log_glaisher_b: OnceLock<Real>,
    zeta3: OnceLock<Real>,
}

/// Evaluation context: precision settings, resource budgets, and the constant
/// cache.
///
/// `Context` is cheap to clone (the constant cache is shared behind an `Arc`)
/// and safe to use from several threads at once.
///
/// # Examples
///
/// ```
/// use zil_core::Context;
///
/// let ctx = Context::new(40).unwrap();
/// let pi = ctx.pi();
/// assert!(ctx.to_decimal(&pi).starts_with("3.14159265358979"));
/// ```
#[derive(Clone)]
pub struct Context {
    digits: u32,
    guard: u32,
    max_series_terms: usize,
    max_quad_level: u32,
    cache: Arc<ConstCache>,
}

impl std::fmt::Debug for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Context")
            .field("digits", &self.digits)
            .field("guard", &self.guard)
            .field("max_series_terms", &self.max_series_terms)
            .field("max_quad_level", &self.max_quad_level)
            .finish()
    }
}

impl Context {
    /// Creates a context with `digits` decimal digits of requested precision
    /// and default guard digits and resource budgets.
    ///
    /// Fails with [`Error::Config`] when `digits < 16`.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_options(
            digits,
            DEFAULT_GUARD,
            DEFAULT_MAX_SERIES_TERMS,
            DEFAULT_MAX_QUAD_LEVEL,
        )
    }

    /// Creates a context with every field explicit.
    pub fn with_options(
        digits: u32,
        guard: u32,
        max_series_terms: usize,
        max_quad_level: u32,
    ) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Config(format!(
                "requested precision {digits} digits is below the minimum of {MIN_DIGITS}"
            )));
        }
        if max_series_terms == 0 {
            return Err(Error::Config("max_series_terms must be positive".into()));
        }
        if max_quad_level == 0 {
            return Err(Error::Config("max_quad_level must be positive".into()));
        }
        Ok(Context {
            digits,
            guard,
            max_series_terms,
            max_quad_level,
            cache: Arc::new(ConstCache::default()),
        })
    }

    /// Requested decimal precision.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Guard digits carried on top of the requested precision.
    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Total internal decimal precision (`digits + guard`).
    pub fn work_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Cap on the number of terms any series evaluation may consume.
    pub fn max_series_terms(&self) -> usize {
        self.max_series_terms
    }

    /// Cap on quadrature refinement levels.
    pub fn max_quad_level(&self) -> u32 {
        self.max_quad_level
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        (f64::from(self.digits + self.guard) * LOG2_10).ceil() as u32 + 4
    }

    /// A context identical to this one but with `extra` additional decimal
    /// digits of internal precision (fresh constant cache).
    pub fn boosted(&self, extra: u32) -> Context {
        Context {
            digits: self.digits + extra,
            guard: self.guard,
            max_series_terms: self.max_series_terms,
            max_quad_level: self.max_quad_level,
            cache: Arc::new(ConstCache::default()),
        }
    }

    // ----- value constructors -------------------------------------------------

    /// A new `Real` initialised to zero.
    pub fn zero(&self) -> Real {
        Real::with_val(self.prec(), 0)
    }

    /// A new `Real` initialised to one.
    pub fn one(&self) -> Real {
        Real::with_val(self.prec(), 1)
    }

    /// A `Real` from any type MPFR can assign (integers, floats, …).
    pub fn real<T>(&self, v: T) -> Real
    where
        Float: Assign<T>,
    {
        Real::with_val(self.prec(), v)
    }

    /// A `Real` from an exact rational `p/q`.
    pub fn rational(&self, p: i64, q: u64) -> Real {
        let r = Rational::from((Integer::from(p), Integer::from(q)));
        Real::with_val(self.prec(), &r)
    }

    /// A `Real` from a big rational.
    pub fn from_rational(&self, r: &Rational) -> Real {
        Real::with_val(self.prec(), r)
    }

    /// Parses a decimal string at this context's precision.
    pub fn parse(&self, s: &str) -> Result<Real> {
        Float::parse(s)
            .map(|inc| Real::with_val(self.prec(), inc))
            .map_err(|e| Error::Config(format!("cannot parse {s:?} as a real: {e}")))
    }

    /// Formats `x` with `digits` significant decimal digits.
    pub fn to_decimal(&self, x: &Real) -> String {
        format_decimal(x, self.digits as usize)
    }

    /// `10^(-k)` at working precision, the usual tolerance building block.
    pub fn pow10(&self, k: i32) -> Real {
        Real::with_val(self.prec(), 10).pow(Real::with_val(self.prec(), k))
    }

    /// Convergence target for internal iterations: `10^-(digits+guard+2)`.
    pub fn eps(&self) -> Real {
        self.pow10(-((self.digits + self.guard) as i32 + 2))
    }

    // ----- cached constants ---------------------------------------------------

    /// π.
    pub fn pi(&self) -> Real {
        self.cache
            .pi
            .get_or_init(|| Real::with_val(self.prec(), Constant::Pi))
            .clone()
    }

    /// Euler's constant γ.
    pub fn euler_gamma(&self) -> Real {
        self.cache
            .euler_gamma
            .get_or_init(|| Real::with_val(self.prec(), Constant::Euler))
            .clone()
    }

    /// log 2.
    pub fn log2(&self) -> Real {
        self.cache
            .log2
            .get_or_init(|| Real::with_val(self.prec(), Constant::Log2))
            .clone()
    }

    /// Catalan's constant `G = β(2)`, computed from the Hurwitz-zeta
    /// representation `β(s) = 4^-s [ζ(s,1/4) − ζ(s,3/4)]`.
    pub fn catalan(&self) -> Real {
        self.cache
            .catalan
            .get_or_init(|| {
                crate::specfun::dirichlet_beta(self, &self.real(2)).expect("beta(2) is regular")
            })
            .clone()
    }

    /// log A, where A is the Glaisher–Kinkelin constant:
    /// `log A = 1/12 − ζ′(−1)`.
    pub fn log_glaisher_a(&self) -> Real {
        self.cache
            .log_glaisher_a
            .get_or_init(|| {
                let zp = crate::specfun::zeta_sderiv(self, &self.real(-1))
                    .expect("zeta'(-1) is regular");
                self.rational(1, 12) - zp
            })
            .clone()
    }

    /// log B, where B is the second Glaisher-type constant:
    /// `log B = −ζ′(−2) = ζ(3)/(4π²)`.
    pub fn log_glaisher_b(&self) -> Real {
        self.cache
            .log_glaisher_b
            .get_or_init(|| {
                let pi = self.pi();
                let pi2 = Real::with_val(self.prec(), &pi * &pi);
                self.zeta3() / (pi2 * 4u32)
            })
            .clone()
    }

    /// ζ(3), Apéry's constant.
    pub fn zeta3(&self) -> Real {
        self.cache
            .zeta3
            .get_or_init(|| {
                crate::specfun::zeta(self, &self.real(3)).expect("zeta(3) is regular")
            })
            .clone()
    }
}

/// Creates a context with `digits` decimal digits; the free-function spelling
/// of [`Context::new`].
pub fn make_context(digits: u32) -> Result<Context> {
    Context::new(digits)
}

/// Formats `x` with `sig` significant decimal digits, in plain or exponent
/// notation as appropriate.
pub fn format_decimal(x: &Real, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, raw, exp_opt) = x.to_sign_string_exp(10, Some(sig));
    let exp = exp_opt.unwrap_or(0);
    let mantissa: String = raw.chars().filter(|c| c.is_ascii_digit()).collect();
    let mantissa = mantissa.trim_end_matches('0').to_string();
    let mantissa = if mantissa.is_empty() { "0".into() } else { mantissa };
    let sign = if neg { "-" } else { "" };
    // exp is the power of ten of the leading digit plus one (rug convention:
    // value = 0.mantissa * 10^exp).
    if exp >= 1 && (exp as usize) <= sig.max(mantissa.len()) && exp as usize >= mantissa.len() {
        // integer-like
        let mut m = mantissa.clone();
        m.push_str(&"0".repeat(exp as usize - mantissa.len()));
        format!("{sign}{m}")
    } else if exp >= 1 && (exp as usize) < mantissa.len() {
        format!("{sign}{}.{}", &mantissa[..exp as usize], &mantissa[exp as usize..])
    } else if exp <= 0 && exp > -6 {
        format!("{sign}0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else {
        let e = exp - 1;
        if mantissa.len() > 1 {
            format!("{sign}{}.{}e{}", &mantissa[..1], &mantissa[1..], e)
        } else {
            format!("{sign}{}e{}", mantissa, e)
        }
    }
}

/// Relative error `|a − b| / max(1, |a|, |b|)` used throughout the catalog.
pub fn rel_err(a: &Real, b: &Real) -> Real {
    let prec = a.prec().max(b.prec());
    let diff = Real::with_val(prec, a - b).abs();
    let mut scale = Real::with_val(prec, 1);
    let aa = a.clone().abs();
    let bb = b.clone().abs();
    if aa > scale {
        scale.assign(&aa);
    }
    if bb > scale {
        scale.assign(&bb);
    }
    diff / scale
}

/// Absolute error `|a − b|`.
pub fn abs_err(a: &Real, b: &Real) -> Real {
    let prec = a.prec().max(b.prec());
    Real::with_val(prec, a - b).abs()
}

/// Machine-checkable form of the binomial coefficient C(n, k) as an exact
/// integer.
pub fn binomial(n: u64, k: u64) -> Integer {
    Integer::from(n).binomial(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_rejects_low_precision() {
        assert!(matches!(Context::new(15), Err(Error::Config(_))));
        assert!(Context::new(16).is_ok());
    }

    #[test]
    fn prec_covers_requested_digits() {
        let ctx = Context::new(40).unwrap();
        // 50 decimal digits need ~167 bits.
        assert!(ctx.prec() >= 167);
    }

    #[test]
    fn decimal_formatting() {
        let ctx = Context::new(20).unwrap();
        assert_eq!(ctx.to_decimal(&ctx.real(1)), "1");
        assert_eq!(ctx.to_decimal(&ctx.real(-2.5f64)), "-2.5");
        assert_eq!(ctx.to_decimal(&ctx.rational(1, 3)), "0.33333333333333333333");
        assert_eq!(ctx.to_decimal(&ctx.parse("1e-9").unwrap()), "1e-9");
        assert_eq!(ctx.to_decimal(&ctx.real(12300)), "12300");
        assert_eq!(ctx.to_decimal(&ctx.zero()), "0");
    }

    #[test]
    fn rel_err_uses_unit_floor() {
        let ctx = Context::new(20).unwrap();
        let a = ctx.real(0.5f64);
        let b = ctx.real(0.25f64);
        // |a-b| / max(1, .5, .25) = 0.25
        let e = rel_err(&a, &b);
        assert_eq!(e.to_f64(), 0.25);
    }

    #[test]
    fn binomial_exact() {
        assert_eq!(binomial(10, 5), Integer::from(252));
        assert_eq!(binomial(0, 0), Integer::from(1));
    }
}
