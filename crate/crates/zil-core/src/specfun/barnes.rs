//! Barnes `G`-function (log scale) and the third-order gamma `Γ₃` on the
//! interval where it is needed.
//!
//! For `u ∈ (0, 1]` the closed form
//! `log G(1+u) = u·logΓ(u) + ζ′(−1) − ζ′(−1, u)`
//! anchors everything; other arguments reach it through the recurrence
//! `G(z+1) = Γ(z)·G(z)`.

use crate::specfun::gamma::log_gamma;
use crate::specfun::zeta::{hurwitz_zeta_sderiv, zeta_sderiv};
use crate::{Context, Error, Real, Result};

/// `log G(z)` for `z > 0`.
#[allow(non_snake_case)]
pub fn barnes_logG(ctx: &Context, z: &Real) -> Result<Real> {
    if !z.is_finite() || z.is_sign_negative() || z.is_zero() {
        return Err(Error::Domain(format!(
            "barnes_logG requires z > 0, got z = {}",
            ctx.to_decimal(z)
        )));
    }
    let work = ctx.boosted(8);
    let p = work.prec() + 16;
    let zr = Real::with_val(p, z);
    let one = Real::with_val(p, 1);
    let two = Real::with_val(p, 2);
    if zr <= one {
        // log G(z) = (z−1)·logΓ(z) + ζ′(−1) − ζ′(−1, z)
        let lg = log_gamma(&work, &Real::with_val(work.prec(), &zr))?;
        let zd = zeta_sderiv(&work, &work.real(-1))?;
        let hz = hurwitz_zeta_sderiv(&work, &work.real(-1), &Real::with_val(work.prec(), &zr))?;
        let mut v = Real::with_val(p, &zr) - 1u32;
        v *= Real::with_val(p, &lg);
        v += Real::with_val(p, &zd);
        v -= Real::with_val(p, &hz);
        return Ok(Real::with_val(ctx.prec(), &v));
    }
    // shift down by integers until the base point lands in (1, 2]
    let steps = (Real::with_val(p, &zr) - &two).ceil().to_f64().max(0.0) as u64;
    let mut base = Real::with_val(p, &zr);
    let mut ladder = Real::with_val(p, 0);
    for _ in 0..steps {
        base -= 1u32;
        let lg = log_gamma(&work, &Real::with_val(work.prec(), &base))?;
        ladder += Real::with_val(p, &lg);
    }
    let u = Real::with_val(p, &base) - 1u32;
    let lg = log_gamma(&work, &Real::with_val(work.prec(), &u))?;
    let zd = zeta_sderiv(&work, &work.real(-1))?;
    let hz = hurwitz_zeta_sderiv(&work, &work.real(-1), &Real::with_val(work.prec(), &u))?;
    let mut v = Real::with_val(p, &u) * Real::with_val(p, &lg);
    v += Real::with_val(p, &zd);
    v -= Real::with_val(p, &hz);
    v += ladder;
    Ok(Real::with_val(ctx.prec(), &v))
}

/// `log Γ₃(1+t)` for `t ∈ (0, 1]`, through
/// `2·logΓ₃(1+t) = ζ′(−2,t) − ζ′(−2) + (2t−1)·logG(1+t) − t²·logΓ(t)`.
///
/// The right-hand side is the unique combination with this transcendental
/// shape whose unit shift equals `2·logG(1+t)` (using `Δζ′(−2,t) = t²·log t`,
/// `Δ logΓ = log t`, `Δ logG(1+t) = logΓ(1+t)`), matching the recurrence
/// `Γ₃(z+1) = G(z)Γ₃(z)` with `Γ₃(2) = 1`; any added polynomial breaks it.
pub fn log_gamma3(ctx: &Context, t: &Real) -> Result<Real> {
    let work = ctx.boosted(8);
    let p = work.prec() + 16;
    let tr = Real::with_val(p, t);
    let one = Real::with_val(p, 1);
    if !tr.is_finite() || tr.is_sign_negative() || tr.is_zero() || tr > one {
        return Err(Error::Domain(format!(
            "log_gamma3 requires t ∈ (0, 1], got t = {}",
            ctx.to_decimal(t)
        )));
    }
    let t_work = Real::with_val(work.prec(), &tr);
    let hz = hurwitz_zeta_sderiv(&work, &work.real(-2), &t_work)?;
    let zd = zeta_sderiv(&work, &work.real(-2))?;
    let mut one_plus = Real::with_val(work.prec(), &tr);
    one_plus += 1u32;
    let logg = barnes_logG(&work, &one_plus)?;
    let lg = log_gamma(&work, &t_work)?;

    let t2 = Real::with_val(p, tr.square_ref());
    let mut acc = Real::with_val(p, &hz);
    acc -= Real::with_val(p, &zd);
    let mut gfac = Real::with_val(p, &tr) * 2u32;
    gfac -= 1u32;
    acc += gfac * Real::with_val(p, &logg);
    acc -= t2 * Real::with_val(p, &lg);
    acc /= 2u32;
    Ok(Real::with_val(ctx.prec(), &acc))
}
