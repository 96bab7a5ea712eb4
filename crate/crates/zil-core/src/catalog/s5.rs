//! Section S5: Bernoulli-polynomial integrals for ζ(2n+1) and the
//! Euler binomial double sum.

use super::util::{integral, zeta_int};
use super::{ev, point, proven, Identity, SamplePoint, Section, TolClass};
use crate::quadkit::Hint;
use crate::specfun::{bernoulli_poly, poly_eval};
use crate::sumkit::euler_binomial_double_sum;
use crate::{Context, Real, Result};
use rug::ops::Pow;

/// `∫₀^{1/2} B_{2n+1}(x)·cot(πx) dx`, scaled into ζ(2n+1) by
/// `(−1)^{n+1}(2π)^{2n+1}/(2n+1)!`.
fn zeta_odd_via_bernoulli_cot(ctx: &Context, n: u32) -> Result<Real> {
    let m = 2 * n + 1;
    let spec = bernoulli_poly(m);
    let value = integral(
        ctx,
        ctx.zero(),
        ctx.rational(1, 2),
        vec![Hint::Removable(0.0)],
        move |c: &Context, x: &Real| {
            let p = c.prec();
            let b = poly_eval(c, &spec, x);
            let angle = Real::with_val(p, c.pi() * x);
            let cot = angle.cos() / Real::with_val(p, c.pi() * x).sin();
            Ok(b * cot)
        },
    )?;
    let p = ctx.prec() + 16;
    let two_pi = Real::with_val(p, ctx.pi()) * 2u32;
    let mut scale = two_pi.pow(m);
    let mut fact = Real::with_val(p, 1);
    for j in 2..=m {
        fact *= j;
    }
    scale /= fact;
    if n % 2 == 0 {
        scale = -scale;
    }
    Ok(Real::with_val(ctx.prec(), scale * value))
}

fn e59_point(n: u32) -> SamplePoint {
    point(
        &format!("n = {n}"),
        ev(move |ctx| zeta_int(ctx, (2 * n + 1) as i64)),
        ev(move |ctx| zeta_odd_via_bernoulli_cot(ctx, n)),
    )
}

fn e511_point(s: u32) -> SamplePoint {
    point(
        &format!("s = {s}"),
        ev(move |ctx| Ok(euler_binomial_double_sum(ctx, &ctx.real(s))?.value)),
        ev(move |ctx| Ok(zeta_int(ctx, s as i64)? * 2u32)),
    )
}

pub(super) fn entries() -> Vec<Identity> {
    vec![
        proven(
            "E5.9",
            Section::S5,
            "5.9",
            TolClass::Standard,
            vec![e59_point(1), e59_point(2), e59_point(3)],
        ),
        proven(
            "E5.11",
            Section::S5,
            "5.11",
            TolClass::Standard,
            vec![e511_point(2), e511_point(3), e511_point(4)],
        ),
    ]
}
