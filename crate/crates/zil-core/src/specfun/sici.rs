//! Sine and cosine integrals `Si`, `si = Si − π/2`, `Ci`, and the Laplace
//! auxiliaries
//! `f(x) = ∫₀^∞ e^{-xt}/(1+t²) dt`,  `g(x) = ∫₀^∞ t·e^{-xt}/(1+t²) dt`.
//!
//! Three regimes, switched on the magnitude of `x`:
//! small `x` uses the Taylor series with the working precision raised to
//! absorb the `~e^x` intermediate growth; the mid range evaluates `f` and
//! `g` by exp-sinh quadrature and recombines; once the divergent asymptotic
//! series for `f` and `g` bottoms out below the target (`x` beyond roughly
//! `(digits+guard+5)·ln 10`), it is truncated at its smallest term.  The
//! recombinations are
//! `Si = π/2 − f·cos − g·sin`, `Ci = f·sin − g·cos`,
//! `f = Ci·sin − si·cos`, `g = −Ci·cos − si·sin`.

use crate::quadkit::{integrate, Hint, QuadratureProblem};
use crate::{Context, Error, Real, Result};
use rug::float::Constant;

/// Additive safety margin (in argument units) on top of
/// `(digits+guard+5)·ln 10` before the pure asymptotic route is trusted.
pub const SICI_ASYMPTOTIC_SAFE: f64 = 20.0;

/// Regime boundaries `(taylor_limit, asymptotic_start)` for this context.
pub fn sici_crossover(ctx: &Context) -> (f64, f64) {
    let dg = (ctx.digits() + ctx.guard()) as f64;
    let x0 = 1.5 * dg;
    let x_asym = (dg + 5.0) * std::f64::consts::LN_10 + SICI_ASYMPTOTIC_SAFE;
    (x0, x_asym)
}

/// Both Taylor sums at once: returns `(Si(x), Ci(x) - γ - log x)`.
pub(crate) fn taylor_parts(ctx: &Context, x: &Real) -> (Real, Real) {
    let xa = x.to_f64().abs();
    let extra_bits = ((0.45 * xa + 10.0) * std::f64::consts::LOG2_10).ceil() as u32;
    let p = ctx.prec() + 32 + extra_bits;
    let xr = Real::with_val(p, x);
    let mut si_sum = Real::with_val(p, 0);
    let mut ci_sum = Real::with_val(p, 0);
    let mut pw = Real::with_val(p, 1);
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 24;
    let mut m = 1u32;
    loop {
        pw *= &xr;
        pw /= m;
        // power m: odd terms feed Si with sign (−1)^{(m−1)/2}, even feed Ci
        // with sign (−1)^{m/2}
        let contrib = Real::with_val(p, &pw / m);
        let mag = Real::with_val(p, contrib.abs_ref());
        if m % 2 == 1 {
            if ((m - 1) / 2) % 2 == 0 {
                si_sum += contrib;
            } else {
                si_sum -= contrib;
            }
        } else if (m / 2) % 2 == 0 {
            ci_sum += contrib;
        } else {
            ci_sum -= contrib;
        }
        if mag < tol && (m as f64) > xa {
            break;
        }
        m += 1;
    }
    (si_sum, ci_sum)
}

/// `f` and `g` by exp-sinh quadrature of their Laplace representations.
fn aux_quad(ctx: &Context, x: &Real) -> Result<(Real, Real)> {
    let work = ctx.boosted(8);
    let p = work.prec() + 64;
    let xr = Real::with_val(p, x);
    let rate = x.to_f64().max(1.0);
    let f_integrand = |_c: &Context, t: &Real| -> Result<Real> {
        let num = Real::with_val(p, &xr * t);
        let num = (-num).exp();
        let den = Real::with_val(p, t.square_ref()) + 1u32;
        Ok(num / den)
    };
    let g_integrand = |_c: &Context, t: &Real| -> Result<Real> {
        let num = Real::with_val(p, &xr * t);
        let mut num = (-num).exp();
        num *= t;
        let den = Real::with_val(p, t.square_ref()) + 1u32;
        Ok(num / den)
    };
    let pf = QuadratureProblem::upper_infinite(work.zero(), &f_integrand)
        .with_hint(Hint::ExpDecay(rate));
    let f_val = integrate(&work, &pf)?.value;
    let pg = QuadratureProblem::upper_infinite(work.zero(), &g_integrand)
        .with_hint(Hint::ExpDecay(rate));
    let g_val = integrate(&work, &pg)?.value;
    Ok((f_val, g_val))
}

/// `f` and `g` from their (divergent) large-`x` expansions
/// `f ~ (1/x)·Σ (−1)^m (2m)!/x^{2m}`, `g ~ (1/x²)·Σ (−1)^m (2m+1)!/x^{2m}`,
/// truncated at the smallest term.
fn aux_asymptotic(ctx: &Context, x: &Real) -> (Real, Real) {
    let p = ctx.prec() + 32;
    let xr = Real::with_val(p, x);
    let inv_x2 = Real::with_val(p, xr.square_ref()).recip();
    let mut f_sum = Real::with_val(p, 1);
    let mut g_sum = Real::with_val(p, 1);
    let mut f_term = Real::with_val(p, 1);
    let mut g_term = Real::with_val(p, 1);
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 16;
    let mut prev_mag: Option<Real> = None;
    for m in 1..10_000u32 {
        let mut fac = Real::with_val(p, &inv_x2 * ((2 * m - 1) * (2 * m)));
        f_term *= &fac;
        f_term = -f_term;
        fac = Real::with_val(p, &inv_x2 * ((2 * m) * (2 * m + 1)));
        g_term *= &fac;
        g_term = -g_term;
        let mag = Real::with_val(p, g_term.abs_ref());
        if let Some(pm) = &prev_mag {
            if mag > *pm {
                break;
            }
        }
        f_sum += &f_term;
        g_sum += &g_term;
        if mag < tol {
            break;
        }
        prev_mag = Some(mag);
    }
    let f_val = f_sum / &xr;
    let g_val = g_sum * inv_x2;
    (f_val, g_val)
}

fn sin_cos(p: u32, x: &Real) -> (Real, Real) {
    let s = Real::with_val(p, x.sin_ref());
    let c = Real::with_val(p, x.cos_ref());
    (s, c)
}

fn half_pi(p: u32) -> Real {
    Real::with_val(p, Constant::Pi) / 2u32
}

enum Regime {
    Taylor,
    Quad,
    Asymptotic,
}

fn regime(ctx: &Context, xa: f64) -> Regime {
    let (x0, x_asym) = sici_crossover(ctx);
    if xa <= x0 {
        Regime::Taylor
    } else if xa < x_asym {
        Regime::Quad
    } else {
        Regime::Asymptotic
    }
}

/// Sine integral `Si(x) = ∫₀ˣ sin t / t dt`; odd in `x`.
pub fn sin_integral(ctx: &Context, x: &Real) -> Result<Real> {
    if !x.is_finite() {
        return Err(Error::Domain("sin_integral requires a finite argument".into()));
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    if x.is_sign_negative() {
        let neg = -Real::with_val(ctx.prec() + 8, x);
        let v = sin_integral(ctx, &neg)?;
        return Ok(Real::with_val(ctx.prec(), -v));
    }
    let p = ctx.prec() + 32;
    match regime(ctx, x.to_f64()) {
        Regime::Taylor => {
            let (si_sum, _) = taylor_parts(ctx, x);
            Ok(Real::with_val(ctx.prec(), &si_sum))
        }
        Regime::Quad => {
            let (f, g) = aux_quad(ctx, x)?;
            let (s, c) = sin_cos(p, x);
            let mut v = half_pi(p);
            v -= Real::with_val(p, &f * &c);
            v -= Real::with_val(p, &g * &s);
            Ok(Real::with_val(ctx.prec(), &v))
        }
        Regime::Asymptotic => {
            let (f, g) = aux_asymptotic(ctx, x);
            let (s, c) = sin_cos(p, x);
            let mut v = half_pi(p);
            v -= Real::with_val(p, &f * &c);
            v -= Real::with_val(p, &g * &s);
            Ok(Real::with_val(ctx.prec(), &v))
        }
    }
}

/// `si(x) = Si(x) − π/2`, the phase-shifted sine integral that decays at
/// infinity.  Computed directly from the auxiliaries in the large-`x`
/// regimes so its small magnitude is not lost to cancellation.
pub fn si(ctx: &Context, x: &Real) -> Result<Real> {
    if !x.is_finite() {
        return Err(Error::Domain("si requires a finite argument".into()));
    }
    let p = ctx.prec() + 32;
    if x.is_sign_negative() || x.is_zero() {
        let big = sin_integral(ctx, x)?;
        let v = Real::with_val(p, &big) - half_pi(p);
        return Ok(Real::with_val(ctx.prec(), &v));
    }
    match regime(ctx, x.to_f64()) {
        Regime::Taylor => {
            let (si_sum, _) = taylor_parts(ctx, x);
            let v = si_sum - half_pi(ctx.prec() + 48 + x.to_f64() as u32);
            Ok(Real::with_val(ctx.prec(), &v))
        }
        Regime::Quad => {
            let (f, g) = aux_quad(ctx, x)?;
            let (s, c) = sin_cos(p, x);
            let mut v = -Real::with_val(p, &f * &c);
            v -= Real::with_val(p, &g * &s);
            Ok(Real::with_val(ctx.prec(), &v))
        }
        Regime::Asymptotic => {
            let (f, g) = aux_asymptotic(ctx, x);
            let (s, c) = sin_cos(p, x);
            let mut v = -Real::with_val(p, &f * &c);
            v -= Real::with_val(p, &g * &s);
            Ok(Real::with_val(ctx.prec(), &v))
        }
    }
}

/// Cosine integral `Ci(x) = γ + log x + ∫₀ˣ (cos t − 1)/t dt` for `x > 0`.
pub fn cos_integral(ctx: &Context, x: &Real) -> Result<Real> {
    if !x.is_finite() {
        return Err(Error::Domain("cos_integral requires a finite argument".into()));
    }
    if x.is_sign_negative() || x.is_zero() {
        return Err(Error::Domain(format!(
            "cos_integral requires x > 0, got x = {}",
            ctx.to_decimal(x)
        )));
    }
    let p = ctx.prec() + 32;
    match regime(ctx, x.to_f64()) {
        Regime::Taylor => {
            let (_, ci_tail) = taylor_parts(ctx, x);
            let mut v = Real::with_val(p, Constant::Euler);
            v += Real::with_val(p, x.ln_ref());
            v += ci_tail;
            Ok(Real::with_val(ctx.prec(), &v))
        }
        Regime::Quad => {
            let (f, g) = aux_quad(ctx, x)?;
            let (s, c) = sin_cos(p, x);
            let mut v = Real::with_val(p, &f * &s);
            v -= Real::with_val(p, &g * &c);
            Ok(Real::with_val(ctx.prec(), &v))
        }
        Regime::Asymptotic => {
            let (f, g) = aux_asymptotic(ctx, x);
            let (s, c) = sin_cos(p, x);
            let mut v = Real::with_val(p, &f * &s);
            v -= Real::with_val(p, &g * &c);
            Ok(Real::with_val(ctx.prec(), &v))
        }
    }
}

/// Laplace auxiliary `f(x)` for `x > 0`, routed like `Si`/`Ci`.
pub fn sici_aux_f(ctx: &Context, x: &Real) -> Result<Real> {
    aux_pair(ctx, x).map(|(f, _)| f)
}

/// Laplace auxiliary `g(x)` for `x > 0`, routed like `Si`/`Ci`.
pub fn sici_aux_g(ctx: &Context, x: &Real) -> Result<Real> {
    aux_pair(ctx, x).map(|(_, g)| g)
}

/// Both auxiliaries at context precision.
pub(crate) fn aux_pair(ctx: &Context, x: &Real) -> Result<(Real, Real)> {
    if !x.is_finite() || x.is_sign_negative() || x.is_zero() {
        return Err(Error::Domain("auxiliary f/g require x > 0".into()));
    }
    let p = ctx.prec() + 32;
    match regime(ctx, x.to_f64()) {
        Regime::Taylor => {
            // f = Ci sin − si cos, g = −Ci cos − si sin from the series route
            let ci = cos_integral(ctx, x)?;
            let s_small = si(ctx, x)?;
            let (s, c) = sin_cos(p, x);
            let mut f = Real::with_val(p, &ci * &s);
            f -= Real::with_val(p, &s_small * &c);
            let mut g = -Real::with_val(p, &ci * &c);
            g -= Real::with_val(p, &s_small * &s);
            Ok((
                Real::with_val(ctx.prec(), &f),
                Real::with_val(ctx.prec(), &g),
            ))
        }
        Regime::Quad => {
            let (f, g) = aux_quad(ctx, x)?;
            Ok((
                Real::with_val(ctx.prec(), &f),
                Real::with_val(ctx.prec(), &g),
            ))
        }
        Regime::Asymptotic => {
            let (f, g) = aux_asymptotic(ctx, x);
            Ok((
                Real::with_val(ctx.prec(), &f),
                Real::with_val(ctx.prec(), &g),
            ))
        }
    }
}
