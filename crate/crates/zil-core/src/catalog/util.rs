//! Shared evaluator plumbing for the catalog sections.

use crate::numkernel::binomial;
use crate::quadkit::{integrate, Hint, Interval, QuadratureProblem};
use crate::specfun::{zeta, TrigKind};
use crate::{Context, Error, Real, Result};
use rug::ops::Pow;

/// `∫ₐᵇ f` by tanh-sinh, returning just the value.
pub(super) fn integral<F>(ctx: &Context, a: Real, b: Real, hints: Vec<Hint>, f: F) -> Result<Real>
where
    F: Fn(&Context, &Real) -> Result<Real> + Sync,
{
    let problem = QuadratureProblem {
        integrand: &f,
        interval: Interval::Finite(a, b),
        hints,
    };
    Ok(integrate(ctx, &problem)?.value)
}

/// `∫ₐ^∞ f` by exp-sinh, returning just the value.
pub(super) fn integral_upper<F>(ctx: &Context, a: Real, hints: Vec<Hint>, f: F) -> Result<Real>
where
    F: Fn(&Context, &Real) -> Result<Real> + Sync,
{
    let problem = QuadratureProblem {
        integrand: &f,
        interval: Interval::UpperInfinite(a),
        hints,
    };
    Ok(integrate(ctx, &problem)?.value)
}

/// ζ at an integer argument.
pub(super) fn zeta_int(ctx: &Context, k: i64) -> Result<Real> {
    zeta(ctx, &ctx.real(k))
}

/// πᵏ at context precision.
pub(super) fn pi_pow(ctx: &Context, k: u32) -> Real {
    ctx.pi().pow(k)
}

/// log π at context precision.
pub(super) fn ln_pi(ctx: &Context) -> Real {
    ctx.pi().ln()
}

/// Evaluates the conditionally convergent Fourier-boundary series
/// `Σ_{n≥1} c(n)·trig(nθ)` by iterated summation by parts.
///
/// Each pass trades the coefficient sequence for its forward differences
/// while the trigonometric kernel's partial sums are substituted in closed
/// form:
///
/// * `Σ_{m≤n} sin((m+a)θ) = [cos((a+½)θ) − cos((n+a+½)θ)] / (2 sin(θ/2))`
/// * `Σ_{m≤n} cos((m+a)θ) = [sin((n+a+½)θ) − sin((a+½)θ)] / (2 sin(θ/2))`
///
/// so level ℓ carries the kernel phase offset `a = ℓ/2` and the ℓ-th forward
/// difference `Δℓc`, which for smooth envelopes decays like `n^{−(ℓ+1)}`.
/// After `L ≈ (digits+10)/3` passes the remaining series is summed directly;
/// its tail is bounded by `|ΔLc(N+1)|/|sin(θ/2)|` once the differences
/// decrease monotonically.  The alternating binomial form of `ΔLc` cancels
/// down `≈ (L+1)·log₂N` bits, absorbed by a boosted working precision.
///
/// Requires `θ` not a multiple of `2π` and `c(n) → 0` monotonically from
/// some index on.
pub(super) fn fourier_conditional<F>(
    ctx: &Context,
    kind: TrigKind,
    theta: &Real,
    coeff: F,
) -> Result<Real>
where
    F: Fn(&Context, u64) -> Result<Real>,
{
    let levels = (((ctx.digits() + 10) / 3) as usize + 1).max(6);
    let work = ctx.boosted(100 + levels as u32);
    let p = work.prec();
    let theta_w = Real::with_val(p, theta);
    let half = Real::with_val(p, &theta_w) / 2u32;
    let s = half.sin();
    let mut tiny = Real::with_val(p, 1);
    tiny >>= p / 2;
    if Real::with_val(p, s.abs_ref()) < tiny {
        return Err(Error::Domain(
            "fourier_conditional requires an angle away from multiples of 2π".into(),
        ));
    }
    let two_s = Real::with_val(p, &s) * 2u32;

    let mut cvals: Vec<Real> = Vec::new();
    let ensure = |upto: usize, cvals: &mut Vec<Real>| -> Result<()> {
        while cvals.len() < upto {
            let n = cvals.len() as u64 + 1;
            cvals.push(Real::with_val(p, &coeff(&work, n)?));
        }
        Ok(())
    };
    // ΔℓC(n) = Σ_j (−1)^j C(ℓ,j) c(n+j)
    let diff_at = |level: usize, n: usize, cvals: &[Real]| -> Real {
        let mut acc = Real::with_val(p, 0);
        for j in 0..=level {
            let w = binomial(level as u64, j as u64);
            let t = Real::with_val(p, &cvals[n - 1 + j]) * w;
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    };

    ensure(levels + 1, &mut cvals)?;
    let mut acc = Real::with_val(p, 0);
    let mut coef = Real::with_val(p, 1);
    let mut kind_l = kind;
    for level in 0..levels {
        // boundary term B_ℓ·Δℓc(1) with phase (a_ℓ+½)θ = (ℓ+1)θ/2
        let mut angle = Real::with_val(p, &theta_w) * (level as u32 + 1);
        angle /= 2u32;
        let b = match kind_l {
            TrigKind::Sin => angle.cos() / &two_s,
            TrigKind::Cos => -(angle.sin() / &two_s),
        };
        let d1 = diff_at(level, 1, &cvals);
        acc += Real::with_val(p, &coef * &b) * d1;
        match kind_l {
            TrigKind::Sin => {
                coef = -(coef / &two_s);
                kind_l = TrigKind::Cos;
            }
            TrigKind::Cos => {
                coef /= &two_s;
                kind_l = TrigKind::Sin;
            }
        }
    }

    // direct summation of the L-times differenced series, phase offset L/2
    let mut bound_factor = Real::with_val(p, coef.abs_ref());
    bound_factor /= Real::with_val(p, s.abs_ref());
    let cut = ctx.pow10(-(ctx.digits() as i32 + 8));
    let offset = Real::with_val(p, &theta_w) * (levels as u32);
    let offset = offset / 2u32;
    let mut n = 1usize;
    loop {
        ensure(n + levels, &mut cvals)?;
        let d = diff_at(levels, n, &cvals);
        let mut angle = Real::with_val(p, &theta_w) * (n as u32);
        angle += &offset;
        let t = match kind_l {
            TrigKind::Sin => angle.sin(),
            TrigKind::Cos => angle.cos(),
        };
        acc += Real::with_val(p, &coef * &d) * t;
        let reach = Real::with_val(p, d.abs_ref()) * &bound_factor;
        if reach < cut {
            break;
        }
        n += 1;
        if n > 50_000 {
            return Err(Error::NonConvergence {
                detail: "fourier_conditional differenced tail did not reach tolerance".into(),
                partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &acc))),
            });
        }
    }
    Ok(Real::with_val(ctx.prec(), &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rel_err;

    #[test]
    fn conditional_sine_series_at_one_radian() {
        let ctx = Context::new(30).unwrap();
        let v = fourier_conditional(&ctx, TrigKind::Sin, &ctx.real(1), |c, n| {
            Ok(c.real(1) / c.real(n))
        })
        .unwrap();
        // Σ sin n/n = (π − 1)/2
        let want = (ctx.pi() - ctx.real(1)) / ctx.real(2);
        assert!(rel_err(&v, &want) < ctx.pow10(-25));
    }

    #[test]
    fn conditional_cosine_series_at_two_radians() {
        let ctx = Context::new(30).unwrap();
        let theta = ctx.real(2);
        let v = fourier_conditional(&ctx, TrigKind::Cos, &theta, |c, n| {
            Ok(c.real(1) / c.real(n))
        })
        .unwrap();
        // Σ cos nθ/n = −log[2 sin(θ/2)]
        let half = ctx.real(1);
        let want = -((half.sin() * ctx.real(2)).ln());
        assert!(rel_err(&v, &want) < ctx.pow10(-25));
    }
}
