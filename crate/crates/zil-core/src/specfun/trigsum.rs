//! Trigonometric Dirichlet sums `Σ trig(nπ/q)/nˢ` in closed form, and the
//! inverse tangent integral `φ(x) = ∫₀ˣ tan⁻¹t/t dt`.
//!
//! The sums exploit that `trig(nπ/q)` is periodic in `n` with period `2q`,
//! so the series splits over residues `r mod 2q` into Hurwitz zeta values:
//! `Σ_{n≥1} trig(nπ/q)/nˢ = (2q)^{−s} Σ_{r=1}^{2q} trig(rπ/q)·ζ(s, r/2q)`.

use crate::specfun::zeta::hurwitz_zeta;
use crate::{Context, Error, Real, Result};
use rug::float::Constant;

/// Which trigonometric weight a [`trig_zeta_sum`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `Σ_{n≥1} trig(nπ/q)/nˢ` for `s > 1` and integer `q ≥ 2`.
pub fn trig_zeta_sum(ctx: &Context, kind: TrigKind, s: &Real, q: u32) -> Result<Real> {
    if q < 2 {
        return Err(Error::Domain(format!(
            "trig_zeta_sum requires q ≥ 2, got {q}"
        )));
    }
    let one = Real::with_val(ctx.prec(), 1);
    if !s.is_finite() || *s <= one {
        return Err(Error::Domain(format!(
            "trig_zeta_sum requires s > 1, got s = {}",
            ctx.to_decimal(s)
        )));
    }
    let work = ctx.boosted(8);
    let p = work.prec() + 16;
    let period = 2 * q;
    let pi = Real::with_val(p, Constant::Pi);
    let s_work = Real::with_val(work.prec(), s);
    let mut acc = Real::with_val(p, 0);
    for r in 1..=period {
        let mut angle = Real::with_val(p, &pi) * r;
        angle /= q;
        let w = match kind {
            TrigKind::Cos => angle.cos(),
            TrigKind::Sin => angle.sin(),
        };
        // sin(rπ/q) vanishes at r = q and r = 2q; skip near-zero weights
        let mut cutoff = Real::with_val(p, 1);
        cutoff >>= p - 8;
        if Real::with_val(p, w.abs_ref()) < cutoff {
            continue;
        }
        let a = work.rational(r as i64, period as u64);
        let hz = hurwitz_zeta(&work, &s_work, &a)?;
        acc += w * Real::with_val(p, &hz);
    }
    // multiply by (2q)^{−s} = exp(−s·log 2q)
    let mut scale = Real::with_val(p, period).ln();
    scale *= -Real::with_val(p, &s_work);
    acc *= scale.exp();
    Ok(Real::with_val(ctx.prec(), &acc))
}

/// Inverse tangent integral `φ(x) = Σ (−1)ⁿ x^{2n+1}/(2n+1)²` on `|x| ≤ 1`,
/// continued to larger arguments by `φ(x) = φ(1/x) + (π/2)·log x`.
pub fn inverse_tangent_integral(ctx: &Context, x: &Real) -> Result<Real> {
    if !x.is_finite() {
        return Err(Error::Domain(
            "inverse_tangent_integral requires a finite argument".into(),
        ));
    }
    if x.is_zero() {
        return Ok(ctx.zero());
    }
    if x.is_sign_negative() {
        let neg = -Real::with_val(ctx.prec() + 8, x);
        let v = inverse_tangent_integral(ctx, &neg)?;
        return Ok(Real::with_val(ctx.prec(), -v));
    }
    let p = ctx.prec() + 32;
    let one = Real::with_val(p, 1);
    let xr = Real::with_val(p, x);
    if xr == one {
        return Ok(ctx.catalan());
    }
    if xr > one {
        let recip = Real::with_val(p, xr.recip_ref());
        let inner = inverse_tangent_integral(ctx, &Real::with_val(ctx.prec() + 8, &recip))?;
        let mut shift = Real::with_val(p, Constant::Pi) / 2u32;
        shift *= Real::with_val(p, xr.ln_ref());
        let v = Real::with_val(p, &inner) + shift;
        return Ok(Real::with_val(ctx.prec(), &v));
    }
    let x2 = Real::with_val(p, xr.square_ref());
    let mut sum = Real::with_val(p, 0);
    let mut pw = Real::with_val(p, &xr);
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 16;
    let mut n = 0u64;
    loop {
        let m = 2 * n + 1;
        let mut term = Real::with_val(p, &pw);
        term /= m * m;
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if Real::with_val(p, term.abs_ref()) < tol {
            break;
        }
        if n as usize >= ctx.max_series_terms() {
            return Err(Error::NonConvergence {
                detail: format!(
                    "inverse_tangent_integral series exceeded {} terms",
                    ctx.max_series_terms()
                ),
                partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &sum))),
            });
        }
        pw *= &x2;
        n += 1;
    }
    Ok(Real::with_val(ctx.prec(), &sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{abs_err, make_context};
    use crate::quadkit::{integrate, QuadratureProblem};

    fn ctx() -> Context {
        make_context(40).unwrap()
    }

    #[test]
    fn cosine_sums_closed_forms() {
        let c = ctx();
        // Σ cos(nπ/3)/n³ = ζ(3)/3
        let v = trig_zeta_sum(&c, TrigKind::Cos, &c.real(3), 3).unwrap();
        let want = Real::with_val(c.prec(), c.zeta3()) / 3u32;
        assert!(abs_err(&v, &want) < c.pow10(-42));
        // Σ cos(nπ/4)/n² = 11π²/192
        let v = trig_zeta_sum(&c, TrigKind::Cos, &c.real(2), 4).unwrap();
        let mut want = Real::with_val(c.prec() + 16, c.pi());
        want.square_mut();
        want *= 11u32;
        want /= 192u32;
        assert!(abs_err(&v, &Real::with_val(c.prec(), &want)) < c.pow10(-42));
    }

    #[test]
    fn sine_sum_is_catalan() {
        let c = ctx();
        // Σ sin(nπ/2)/n² = 1 − 1/9 + 1/25 − … = G
        let v = trig_zeta_sum(&c, TrigKind::Sin, &c.real(2), 2).unwrap();
        let g = c.catalan();
        assert!(abs_err(&v, &g) < c.pow10(-42));
    }

    #[test]
    fn agrees_with_direct_summation() {
        let c = ctx();
        let v = trig_zeta_sum(&c, TrigKind::Sin, &c.real(3), 5).unwrap();
        let p = c.prec();
        let pi = Real::with_val(p + 16, c.pi());
        let mut direct = Real::with_val(p + 16, 0);
        for n in 1u64..=20_000 {
            let mut ang = Real::with_val(p + 16, &pi) * n;
            ang /= 5u32;
            let mut term = ang.sin();
            term /= n * n * n;
            direct += term;
        }
        let diff = abs_err(&v, &Real::with_val(p, &direct));
        assert!(diff < c.parse("1e-8").unwrap(), "diff {}", c.to_decimal(&diff));
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = ctx();
        assert!(matches!(
            trig_zeta_sum(&c, TrigKind::Cos, &c.real(1), 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            trig_zeta_sum(&c, TrigKind::Cos, &c.real(2), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn phi_special_values() {
        let c = ctx();
        let v = inverse_tangent_integral(&c, &c.zero()).unwrap();
        assert!(v.is_zero());
        let v = inverse_tangent_integral(&c, &c.one()).unwrap();
        let g = c.catalan();
        assert!(abs_err(&v, &g) < c.pow10(-43));
        // φ(√2 − 1)
        let mut x = Real::with_val(c.prec() + 16, 2);
        x.sqrt_mut();
        x -= 1u32;
        let v = inverse_tangent_integral(&c, &Real::with_val(c.prec(), &x)).unwrap();
        let want = c
            .parse("0.4067661542498135132452921918596028918856991370152674")
            .unwrap();
        assert!(abs_err(&v, &want) < c.pow10(-43));
    }

    #[test]
    fn phi_matches_quadrature() {
        let c = ctx();
        for x_str in ["0.7", "2"] {
            let x = c.parse(x_str).unwrap();
            let series = inverse_tangent_integral(&c, &x).unwrap();
            let integrand = |cc: &Context, t: &Real| -> Result<Real> {
                let mut v = Real::with_val(cc.prec() + 16, t.atan_ref());
                v /= t;
                Ok(v)
            };
            let prob = QuadratureProblem::finite(c.zero(), x.clone(), &integrand);
            let quad = integrate(&c, &prob).unwrap().value;
            assert!(
                abs_err(&series, &quad) < c.pow10(-35),
                "x = {x_str}: series {} vs quad {}",
                c.to_decimal(&series),
                c.to_decimal(&quad)
            );
        }
    }

    #[test]
    fn phi_is_odd() {
        let c = ctx();
        let x = c.parse("0.3").unwrap();
        let plus = inverse_tangent_integral(&c, &x).unwrap();
        let minus = inverse_tangent_integral(&c, &c.parse("-0.3").unwrap()).unwrap();
        let sum = plus + minus;
        assert!(abs_err(&sum, &c.zero()) < c.pow10(-44));
    }
}
