//! Double-exponential quadrature and the de Haan cosine-power closed forms.
//!
//! Finite intervals use the tanh-sinh rule, semi-infinite intervals the
//! exp-sinh rule, both with level doubling until two successive refinements
//! agree to `10^{-(digits+5)}` relative.  Node abscissae near an endpoint
//! are formed from the endpoint *distance* `(b-a)/(e^{2u}+1)` so that
//! integrable endpoint singularities (log or mild algebraic blow-ups) are
//! sampled without catastrophic cancellation.  Node evaluation failures are
//! ignored when the node weight is already negligible and reported with
//! their location otherwise.

use crate::specfun::{log_gamma, polygamma};
use crate::{Context, Error, Real, Result};
use rug::float::Constant;

/// Which endpoint a hint refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Lower,
    Upper,
}

/// Integrand metadata.  The rules are endpoint-robust by construction, so
/// most hints are advisory; `ExpDecay` sets the upper truncation of the
/// exp-sinh rule.
#[derive(Clone, Debug)]
pub enum Hint {
    LogEndpoint(Endpoint),
    AlgebraicEndpoint(Endpoint, f64),
    Removable(f64),
    Smooth,
    Oscillatory(f64),
    ExpDecay(f64),
}

/// Integration domain: a finite interval or `(a, ∞)`.
#[derive(Clone, Debug)]
pub enum Interval {
    Finite(Real, Real),
    UpperInfinite(Real),
}

/// Integrand callback: context plus abscissa to value.
pub type Integrand<'a> = dyn Fn(&Context, &Real) -> Result<Real> + Sync + 'a;

/// A quadrature request: integrand, domain, and hints.
pub struct QuadratureProblem<'a> {
    pub integrand: &'a Integrand<'a>,
    pub interval: Interval,
    pub hints: Vec<Hint>,
}

impl<'a> QuadratureProblem<'a> {
    pub fn finite(a: Real, b: Real, integrand: &'a Integrand<'a>) -> Self {
        QuadratureProblem {
            integrand,
            interval: Interval::Finite(a, b),
            hints: Vec::new(),
        }
    }

    pub fn upper_infinite(a: Real, integrand: &'a Integrand<'a>) -> Self {
        QuadratureProblem {
            integrand,
            interval: Interval::UpperInfinite(a),
            hints: Vec::new(),
        }
    }

    pub fn with_hint(mut self, hint: Hint) -> Self {
        self.hints.push(hint);
        self
    }
}

/// Outcome of a quadrature or series evaluation.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Real,
    pub err_estimate: Real,
    pub levels_used: u32,
    pub terms_used: u64,
}

/// Trigonometric factor selector for [`integrate_fourier_coeff`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourierKind {
    Sin,
    Cos,
}

fn quad_tolerance(ctx: &Context) -> Real {
    ctx.pow10(-((ctx.digits() as i32) + 5))
}

struct NodeEval<'a> {
    ctx: &'a Context,
    f: &'a Integrand<'a>,
    skip_threshold: Real,
}

impl<'a> NodeEval<'a> {
    /// Evaluates the integrand at `x`, skipping (returns `None`) when the
    /// node weight is too small to matter and the evaluation failed.
    fn eval(&self, x: &Real, weight: &Real) -> Result<Option<Real>> {
        match (self.f)(self.ctx, x) {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            Ok(_) | Err(_) if *weight < self.skip_threshold => Ok(None),
            Ok(v) => Err(Error::Domain(format!(
                "integrand returned a non-finite value {} at x = {}",
                v,
                self.ctx.to_decimal(x)
            ))),
            Err(e) => Err(Error::Domain(format!(
                "integrand evaluation failed at x = {}: {e}",
                self.ctx.to_decimal(x)
            ))),
        }
    }
}

fn tanh_sinh(ctx: &Context, f: &Integrand<'_>, a: &Real, b: &Real) -> Result<EvalResult> {
    let p = ctx.prec() + 64;
    let width = Real::with_val(p, b - a);
    if width.is_sign_negative() {
        return Err(Error::Config("reversed integration interval".into()));
    }
    if width.is_zero() {
        return Ok(EvalResult {
            value: Real::with_val(ctx.prec(), 0),
            err_estimate: Real::with_val(ctx.prec(), 0),
            levels_used: 0,
            terms_used: 0,
        });
    }
    let half = Real::with_val(p, &width / 2u32);
    let pi_half = Real::with_val(p, Constant::Pi) / 2u32;
    let t_max = (((p + 48) as f64) * std::f64::consts::LN_2 / std::f64::consts::PI).asinh();
    let tol = quad_tolerance(ctx);
    let mut skip_threshold = Real::with_val(p, 1);
    skip_threshold >>= ctx.prec() + 24;
    let node = NodeEval {
        ctx,
        f,
        skip_threshold,
    };

    let mut raw_sum = Real::with_val(p, 0);
    let mut prev_value: Option<Real> = None;
    let mut last_delta = Real::with_val(p, 0);
    let mut terms: u64 = 0;
    for level in 0..=ctx.max_quad_level() {
        let mut h = Real::with_val(p, 1);
        h >>= level;
        let k_max = (t_max * (1u64 << level) as f64).ceil() as i64;
        let (start, step) = if level == 0 { (0, 1) } else { (1, 2) };
        let mut partial = Real::with_val(p, 0);
        let mut k = start;
        while k <= k_max {
            let t = Real::with_val(p, &h * k);
            let sh = Real::with_val(p, t.sinh_ref());
            let ch = Real::with_val(p, t.cosh_ref());
            let u = Real::with_val(p, &pi_half * &sh);
            let e2u = Real::with_val(p, &u * 2u32).exp();
            let mut denom = Real::with_val(p, e2u.recip_ref());
            denom += &e2u;
            denom += 2u32;
            let mut w = Real::with_val(p, &pi_half * &ch);
            w *= 4u32;
            w /= &denom;
            let dist = {
                let d = Real::with_val(p, &e2u + 1u32);
                Real::with_val(p, &width / &d)
            };
            let x_plus = Real::with_val(p, b - &dist);
            let mut pair = Real::with_val(p, 0);
            let mut any = false;
            if let Some(v) = node.eval(&x_plus, &w)? {
                pair += v;
                any = true;
            }
            terms += 1;
            if k > 0 {
                let x_minus = Real::with_val(p, a + &dist);
                if let Some(v) = node.eval(&x_minus, &w)? {
                    pair += v;
                    any = true;
                }
                terms += 1;
            }
            if any {
                partial += w * pair;
            }
            k += step;
        }
        raw_sum = if level == 0 {
            partial
        } else {
            Real::with_val(p, &raw_sum / 2u32) + Real::with_val(p, &h * &partial)
        };
        let value = Real::with_val(p, &raw_sum * &half);
        if let Some(prev) = &prev_value {
            last_delta = Real::with_val(p, &value - prev).abs();
            let mut scale = Real::with_val(p, value.abs_ref());
            if scale < 1u32 {
                scale = Real::with_val(p, 1);
            }
            if level >= 2 && last_delta < Real::with_val(p, &tol * &scale) {
                let mut err = Real::with_val(ctx.prec(), &last_delta);
                let mut floor = Real::with_val(ctx.prec(), value.abs_ref());
                floor >>= ctx.prec();
                if err < floor {
                    err = floor;
                }
                return Ok(EvalResult {
                    value: Real::with_val(ctx.prec(), &value),
                    err_estimate: err,
                    levels_used: level + 1,
                    terms_used: terms,
                });
            }
        }
        prev_value = Some(value);
    }
    let best = prev_value.expect("at least one level evaluated");
    Err(Error::NonConvergence {
        detail: format!(
            "tanh-sinh levels exhausted; last refinement delta = {}",
            ctx.to_decimal(&Real::with_val(ctx.prec(), &last_delta))
        ),
        partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &best))),
    })
}

fn exp_sinh(ctx: &Context, f: &Integrand<'_>, a: &Real, decay: f64) -> Result<EvalResult> {
    let p = ctx.prec() + 64;
    let pi_half = Real::with_val(p, Constant::Pi) / 2u32;
    let ln2 = std::f64::consts::LN_2;
    // Left truncation: the exponential map argument e^U must sink below
    // 2^-(prec+48); right truncation: e^{-decay·e^U} must do the same.
    let t_min = -((2.0 / std::f64::consts::PI) * ((p + 48) as f64) * ln2).asinh();
    let u_max = (((p + 32) as f64) * ln2 / decay.max(1e-6)).ln() + 1.0;
    let t_max = ((2.0 / std::f64::consts::PI) * u_max.max(1.0)).asinh();
    let tol = quad_tolerance(ctx);
    let mut skip_threshold = Real::with_val(p, 1);
    skip_threshold >>= ctx.prec() + 24;
    let node = NodeEval {
        ctx,
        f,
        skip_threshold,
    };

    let mut raw_sum = Real::with_val(p, 0);
    let mut prev_value: Option<Real> = None;
    let mut last_delta = Real::with_val(p, 0);
    let mut terms: u64 = 0;
    for level in 0..=ctx.max_quad_level() {
        let mut h = Real::with_val(p, 1);
        h >>= level;
        let scale = (1u64 << level) as f64;
        let k_lo = (t_min * scale).floor() as i64;
        let k_hi = (t_max * scale).ceil() as i64;
        let mut partial = Real::with_val(p, 0);
        for k in k_lo..=k_hi {
            if level > 0 && k % 2 == 0 {
                continue;
            }
            let t = Real::with_val(p, &h * k);
            let sh = Real::with_val(p, t.sinh_ref());
            let ch = Real::with_val(p, t.cosh_ref());
            let u = Real::with_val(p, &pi_half * &sh);
            let eu = u.exp();
            let w = Real::with_val(p, &pi_half * &ch) * &eu;
            let x = Real::with_val(p, a + &eu);
            terms += 1;
            if let Some(v) = node.eval(&x, &w)? {
                partial += w * v;
            }
        }
        raw_sum = if level == 0 {
            partial
        } else {
            Real::with_val(p, &raw_sum / 2u32) + Real::with_val(p, &h * &partial)
        };
        let value = raw_sum.clone();
        if let Some(prev) = &prev_value {
            last_delta = Real::with_val(p, &value - prev).abs();
            let mut sc = Real::with_val(p, value.abs_ref());
            if sc < 1u32 {
                sc = Real::with_val(p, 1);
            }
            if level >= 2 && last_delta < Real::with_val(p, &tol * &sc) {
                let mut err = Real::with_val(ctx.prec(), &last_delta);
                let mut floor = Real::with_val(ctx.prec(), value.abs_ref());
                floor >>= ctx.prec();
                if err < floor {
                    err = floor;
                }
                return Ok(EvalResult {
                    value: Real::with_val(ctx.prec(), &value),
                    err_estimate: err,
                    levels_used: level + 1,
                    terms_used: terms,
                });
            }
        }
        prev_value = Some(value);
    }
    let best = prev_value.expect("at least one level evaluated");
    Err(Error::NonConvergence {
        detail: format!(
            "exp-sinh levels exhausted; last refinement delta = {}",
            ctx.to_decimal(&Real::with_val(ctx.prec(), &last_delta))
        ),
        partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &best))),
    })
}

/// Integrates the problem with the double-exponential rule matched to its
/// domain.
pub fn integrate(ctx: &Context, problem: &QuadratureProblem) -> Result<EvalResult> {
    match &problem.interval {
        Interval::Finite(a, b) => tanh_sinh(ctx, problem.integrand, a, b),
        Interval::UpperInfinite(a) => {
            let decay = problem
                .hints
                .iter()
                .find_map(|h| match h {
                    Hint::ExpDecay(r) => Some(*r),
                    _ => None,
                })
                .unwrap_or(1.0);
            exp_sinh(ctx, problem.integrand, a, decay)
        }
    }
}

/// `∫₀¹ weight(x)·trig(2πn x) dx` with the unit interval split at the `2n`
/// zeros of the trigonometric factor, each panel integrated by tanh-sinh.
pub fn integrate_fourier_coeff(
    ctx: &Context,
    weight: &Integrand<'_>,
    n: u32,
    kind: FourierKind,
) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::Config("fourier coefficient index must be ≥ 1".into()));
    }
    let p = ctx.prec() + 64;
    let two_pi_n = Real::with_val(p, Constant::Pi) * 2u32 * n;
    let g = |c: &Context, x: &Real| -> Result<Real> {
        let w = weight(c, x)?;
        let phase = Real::with_val(p, &two_pi_n * x);
        let trig = match kind {
            FourierKind::Sin => phase.sin(),
            FourierKind::Cos => phase.cos(),
        };
        Ok(w * trig)
    };
    let mut value = Real::with_val(p, 0);
    let mut err = Real::with_val(ctx.prec(), 0);
    let mut levels = 0u32;
    let mut terms = 0u64;
    for j in 0..(2 * n) {
        let lo = Real::with_val(p, j) / (2 * n);
        let hi = Real::with_val(p, j + 1) / (2 * n);
        let panel = tanh_sinh(ctx, &g, &lo, &hi)?;
        value += Real::with_val(p, &panel.value);
        err += &panel.err_estimate;
        levels = levels.max(panel.levels_used);
        terms += panel.terms_used;
    }
    Ok(EvalResult {
        value: Real::with_val(ctx.prec(), &value),
        err_estimate: err,
        levels_used: levels,
        terms_used: terms,
    })
}

/// Closed form of the cosine-power integral
/// `C(p, a) = ∫₀^{π/2} cos^{p-1}x · cos ax dx
///          = (π/2ᵖ)·Γ(p)/(Γ((p+a+1)/2)·Γ((p-a+1)/2))`
/// together with its ∂/∂a derivatives (orders 0–3) and an optional single
/// ∂/∂p, all assembled exactly from log-gamma and polygamma values.
pub fn dehaan_closed_form(
    ctx: &Context,
    p_arg: &Real,
    a_arg: &Real,
    da_order: u32,
    dp_order: u32,
) -> Result<Real> {
    if !(p_arg.is_finite() && a_arg.is_finite()) {
        return Err(Error::Domain("dehaan_closed_form requires finite p, a".into()));
    }
    if p_arg.is_sign_negative() || p_arg.is_zero() {
        return Err(Error::Domain("dehaan_closed_form requires p > 0".into()));
    }
    let abs_a = Real::with_val(ctx.prec(), a_arg.abs_ref());
    let limit = Real::with_val(ctx.prec(), p_arg + 1u32);
    if abs_a >= limit {
        return Err(Error::Domain(format!(
            "dehaan_closed_form requires |a| < p+1, got p = {}, a = {}",
            ctx.to_decimal(p_arg),
            ctx.to_decimal(a_arg)
        )));
    }
    if da_order > 3 || dp_order > 1 || (dp_order == 1 && da_order > 2) {
        return Err(Error::Config(
            "dehaan_closed_form supports ∂a order ≤ 3 and ∂p order ≤ 1 (≤ 2 mixed)".into(),
        ));
    }
    let wp = ctx.prec() + 32;
    let work = ctx.boosted(16);
    let mut p1 = Real::with_val(wp, p_arg + a_arg);
    p1 += 1u32;
    p1 /= 2u32;
    let mut p2 = Real::with_val(wp, p_arg - a_arg);
    p2 += 1u32;
    p2 /= 2u32;

    // C = exp(log π − p log 2 + lnΓ(p) − lnΓ(p1) − lnΓ(p2))
    let mut log_c = Real::with_val(wp, Constant::Pi).ln();
    log_c -= Real::with_val(wp, p_arg) * Real::with_val(wp, Constant::Log2);
    log_c += log_gamma(&work, p_arg)?;
    log_c -= log_gamma(&work, &p1)?;
    log_c -= log_gamma(&work, &p2)?;
    let c = log_c.exp();

    if da_order == 0 && dp_order == 0 {
        return Ok(Real::with_val(ctx.prec(), &c));
    }

    let psi1 = polygamma(&work, 0, &p1)?;
    let psi2 = polygamma(&work, 0, &p2)?;
    // F = log C as a function of (p, a); all node derivatives below.
    let f_a = -Real::with_val(wp, &psi1 - &psi2) / 2u32;
    let out = match (dp_order, da_order) {
        (0, 1) => Real::with_val(wp, &c * &f_a),
        (0, 2) | (0, 3) => {
            let t1 = polygamma(&work, 1, &p1)?;
            let t2 = polygamma(&work, 1, &p2)?;
            let f_aa = -Real::with_val(wp, &t1 + &t2) / 4u32;
            if da_order == 2 {
                let inner = Real::with_val(wp, &f_a * &f_a) + &f_aa;
                Real::with_val(wp, &c * &inner)
            } else {
                let u1 = polygamma(&work, 2, &p1)?;
                let u2 = polygamma(&work, 2, &p2)?;
                let f_aaa = -Real::with_val(wp, &u1 - &u2) / 8u32;
                let mut inner = f_aaa;
                inner += Real::with_val(wp, &f_a * &f_aa) * 3u32;
                inner += Real::with_val(wp, &f_a * &f_a) * &f_a;
                Real::with_val(wp, &c * &inner)
            }
        }
        (1, da) => {
            let psi_p = polygamma(&work, 0, p_arg)?;
            let mut f_p = Real::with_val(wp, &psi_p) - Real::with_val(wp, Constant::Log2);
            f_p -= Real::with_val(wp, &psi1 + &psi2) / 2u32;
            match da {
                0 => Real::with_val(wp, &c * &f_p),
                1 => {
                    let t1 = polygamma(&work, 1, &p1)?;
                    let t2 = polygamma(&work, 1, &p2)?;
                    let f_pa = -Real::with_val(wp, &t1 - &t2) / 4u32;
                    let inner = f_pa + Real::with_val(wp, &f_p * &f_a);
                    Real::with_val(wp, &c * &inner)
                }
                _ => {
                    let t1 = polygamma(&work, 1, &p1)?;
                    let t2 = polygamma(&work, 1, &p2)?;
                    let u1 = polygamma(&work, 2, &p1)?;
                    let u2 = polygamma(&work, 2, &p2)?;
                    let f_aa = -Real::with_val(wp, &t1 + &t2) / 4u32;
                    let f_pa = -Real::with_val(wp, &t1 - &t2) / 4u32;
                    let f_paa = -Real::with_val(wp, &u1 + &u2) / 8u32;
                    let mut inner = f_paa;
                    inner += Real::with_val(wp, &f_p * &f_aa);
                    inner += Real::with_val(wp, &f_a * &f_pa) * 2u32;
                    inner += Real::with_val(wp, &f_p * &f_a) * &f_a;
                    Real::with_val(wp, &c * &inner)
                }
            }
        }
        _ => unreachable!("orders validated above"),
    };
    Ok(Real::with_val(ctx.prec(), &out))
}
