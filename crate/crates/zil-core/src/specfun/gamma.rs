//! Log-gamma and polygamma on the positive real axis.
//!
//! `log_gamma` shifts its argument upward until the Stirling–Binet
//! asymptotic series converges comfortably, then subtracts the collected
//! `log` terms.  `polygamma` treats order zero the same way through the
//! digamma asymptotic series; every higher order reduces to a Hurwitz zeta
//! value via `ψ⁽ᵏ⁾(x) = (-1)^{k+1} k! ζ(k+1, x)`.

use crate::specfun::bernoulli::bernoulli_number;
use crate::specfun::zeta::hurwitz_zeta;
use crate::{Context, Error, Real, Result};
use rug::float::Constant;
use rug::{Complete, Integer, Rational};

fn check_positive(ctx: &Context, x: &Real, what: &str) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("{what} requires a finite argument")));
    }
    if x.is_sign_negative() || x.is_zero() {
        return Err(Error::Domain(format!(
            "{what} requires x > 0, got x = {}",
            ctx.to_decimal(x)
        )));
    }
    Ok(())
}

/// Argument threshold above which the asymptotic series reaches the target
/// tolerance before its divergent tail turns around.
fn stirling_threshold(ctx: &Context) -> u32 {
    (0.4 * (ctx.digits() + ctx.guard()) as f64).ceil() as u32 + 12
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(ctx: &Context, x: &Real) -> Result<Real> {
    check_positive(ctx, x, "log_gamma")?;
    let p = ctx.prec() + 32;
    let x0 = stirling_threshold(ctx);

    let mut shift = Real::with_val(p, 0);
    let mut m = 0u32;
    if *x < x0 {
        let deficit = Real::with_val(p, x0 - x).ceil();
        m = deficit.to_f64() as u32;
        for i in 0..m {
            shift += Real::with_val(p, x + i).ln();
        }
    }
    let y = Real::with_val(p, x + m);
    let ln_y = Real::with_val(p, y.ln_ref());

    // (y - 1/2) ln y - y + (1/2) log 2π
    let mut sum = Real::with_val(p, &y - &Real::with_val(p, 0.5)) * &ln_y;
    sum -= &y;
    let two_pi = Real::with_val(p, Constant::Pi) * 2u32;
    sum += two_pi.ln() / 2u32;

    let mut tol = Real::with_val(p, sum.abs_ref());
    if tol < 1u32 {
        tol = Real::with_val(p, 1);
    }
    tol >>= ctx.prec() + 16;

    let y_sq = Real::with_val(p, &y * &y);
    let mut pw = Real::with_val(p, y.recip_ref());
    let mut prev_mag: Option<Real> = None;
    let mut converged = false;
    for k in 1..=(6 * (ctx.digits() + ctx.guard()) + 80) {
        let denom = Integer::from(2 * k) * (2 * k - 1);
        let coeff = Rational::from(bernoulli_number(2 * k) / denom);
        let term = Real::with_val(p, &coeff) * &pw;
        let mag = Real::with_val(p, term.abs_ref());
        sum += term;
        if mag < tol {
            converged = true;
            break;
        }
        if let Some(pm) = &prev_mag {
            if mag > *pm {
                break;
            }
        }
        prev_mag = Some(mag);
        pw /= &y_sq;
    }
    if !converged {
        return Err(Error::NonConvergence {
            detail: format!("stirling series stalled at x = {}", ctx.to_decimal(x)),
            partial: Some(ctx.to_decimal(&sum)),
        });
    }
    sum -= shift;
    Ok(Real::with_val(ctx.prec(), &sum))
}

/// Digamma through the asymptotic series with upward shift.
fn digamma(ctx: &Context, x: &Real) -> Result<Real> {
    let p = ctx.prec() + 32;
    let x0 = stirling_threshold(ctx);

    let mut shift = Real::with_val(p, 0);
    let mut m = 0u32;
    if *x < x0 {
        let deficit = Real::with_val(p, x0 - x).ceil();
        m = deficit.to_f64() as u32;
        for i in 0..m {
            shift += Real::with_val(p, x + i).recip();
        }
    }
    let y = Real::with_val(p, x + m);

    // ln y - 1/(2y) - Σ B_{2j}/(2j y^{2j})
    let mut sum = Real::with_val(p, y.ln_ref());
    sum -= Real::with_val(p, y.recip_ref()) / 2u32;

    let mut tol = Real::with_val(p, sum.abs_ref());
    if tol < 1u32 {
        tol = Real::with_val(p, 1);
    }
    tol >>= ctx.prec() + 16;

    let y_sq = Real::with_val(p, &y * &y);
    let mut pw = Real::with_val(p, y_sq.recip_ref());
    let mut prev_mag: Option<Real> = None;
    let mut converged = false;
    for j in 1..=(6 * (ctx.digits() + ctx.guard()) + 80) {
        let coeff = Rational::from(bernoulli_number(2 * j) / Integer::from(2 * j));
        let term = Real::with_val(p, &coeff) * &pw;
        let mag = Real::with_val(p, term.abs_ref());
        sum -= term;
        if mag < tol {
            converged = true;
            break;
        }
        if let Some(pm) = &prev_mag {
            if mag > *pm {
                break;
            }
        }
        prev_mag = Some(mag);
        pw /= &y_sq;
    }
    if !converged {
        return Err(Error::NonConvergence {
            detail: format!("digamma series stalled at x = {}", ctx.to_decimal(x)),
            partial: Some(ctx.to_decimal(&sum)),
        });
    }
    sum -= shift;
    Ok(Real::with_val(ctx.prec(), &sum))
}

/// `ψ⁽ᵏ⁾(x)` for `x > 0`; order 0 is the digamma function.
pub fn polygamma(ctx: &Context, k: u32, x: &Real) -> Result<Real> {
    check_positive(ctx, x, "polygamma")?;
    if k == 0 {
        return digamma(ctx, x);
    }
    let p = ctx.prec() + 32;
    let s = Real::with_val(p, k + 1);
    let hz = hurwitz_zeta(ctx, &s, x)?;
    let fact = Integer::factorial(k).complete();
    let mut val = Real::with_val(p, &hz) * Real::with_val(p, &fact);
    if k % 2 == 0 {
        val = -val;
    }
    Ok(Real::with_val(ctx.prec(), &val))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{abs_err, make_context};

    fn ctx() -> Context {
        make_context(40).unwrap()
    }

    fn assert_near(ctx: &Context, got: &Real, want: &str, tol_exp: i32) {
        let w = ctx.parse(want).unwrap();
        let err = abs_err(got, &w);
        assert!(
            err < ctx.pow10(tol_exp),
            "got {}, want {}",
            ctx.to_decimal(got),
            want
        );
    }

    #[test]
    fn log_gamma_values() {
        let c = ctx();
        let g = log_gamma(&c, &c.rational(1, 3)).unwrap();
        assert_near(&c, &g, "0.9854206469277670691871740369779613917355564963858859", -44);
        let g = log_gamma(&c, &c.rational(1, 4)).unwrap();
        assert_near(&c, &g, "1.288022524698077457370610440219717295925377565112861", -44);
        let g = log_gamma(&c, &c.rational(127, 1000)).unwrap();
        assert_near(&c, &g, "2.002770797002778860205510878087001391667612676267952", -44);
        let e = Real::with_val(c.prec(), 1u32).exp();
        let g = log_gamma(&c, &e).unwrap();
        assert_near(&c, &g, "0.4494617418200676670025078165649398787964465337810472", -44);
    }

    #[test]
    fn log_gamma_half_is_half_log_pi() {
        let c = ctx();
        let g = log_gamma(&c, &c.rational(1, 2)).unwrap();
        let half_log_pi = Real::with_val(c.prec(), c.pi().ln_ref()) / 2u32;
        assert!(abs_err(&g, &half_log_pi) < c.pow10(-44));
    }

    #[test]
    fn log_gamma_recurrence() {
        let c = ctx();
        let x = c.rational(127, 1000);
        let lhs = log_gamma(&c, &Real::with_val(c.prec(), &x + 1u32)).unwrap();
        let rhs = log_gamma(&c, &x).unwrap() + Real::with_val(c.prec(), x.ln_ref());
        assert!(abs_err(&lhs, &rhs) < c.pow10(-43));
    }

    #[test]
    fn digamma_values() {
        let c = ctx();
        let d = polygamma(&c, 0, &c.one()).unwrap();
        let minus_gamma = -c.euler_gamma();
        assert!(abs_err(&d, &minus_gamma) < c.pow10(-44));
        let d = polygamma(&c, 0, &c.rational(1, 2)).unwrap();
        let want = -Real::with_val(c.prec(), c.euler_gamma()) - Real::with_val(c.prec(), c.log2()) * 2u32;
        assert!(abs_err(&d, &want) < c.pow10(-44));
        let d = polygamma(&c, 0, &c.rational(1, 3)).unwrap();
        assert_near(&c, &d, "-3.132033780020806322996419074287268854155428296720418", -43);
    }

    #[test]
    fn polygamma_values() {
        let c = ctx();
        let d = polygamma(&c, 1, &c.rational(1, 3)).unwrap();
        assert_near(&c, &d, "10.09559712542709408179200409989251636051890411928098", -43);
        let d2 = polygamma(&c, 1, &c.rational(2, 3)).unwrap();
        assert_near(&c, &d2, "3.063875409358717409987317233275685153232695090373409", -43);
        let d = polygamma(&c, 2, &c.one()).unwrap();
        let want = -Real::with_val(c.prec(), 2u32)
            * crate::specfun::zeta(&c, &c.real(3)).unwrap();
        assert!(abs_err(&d, &want) < c.pow10(-43));
        let d = polygamma(&c, 3, &c.rational(2, 5)).unwrap();
        assert_near(&c, &d, "236.1952590339470944823865357490549730084756244083048", -42);
    }

    #[test]
    fn trigamma_reflection_at_thirds() {
        let c = ctx();
        let a = polygamma(&c, 1, &c.rational(1, 3)).unwrap();
        let b = polygamma(&c, 1, &c.rational(2, 3)).unwrap();
        let sum = a + b;
        let want = Real::with_val(c.prec(), c.pi().square_ref()) * 4u32 / 3u32;
        assert!(abs_err(&sum, &want) < c.pow10(-42));
    }

    #[test]
    fn rejects_nonpositive_arguments() {
        let c = ctx();
        assert!(matches!(log_gamma(&c, &c.zero()), Err(Error::Domain(_))));
        assert!(matches!(
            polygamma(&c, 1, &c.real(-2)),
            Err(Error::Domain(_))
        ));
    }
}
