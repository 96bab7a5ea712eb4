//! Riemann and Hurwitz zeta machinery.
//!
//! The workhorse is an Euler–Maclaurin evaluation of `ζ(s, a)` that can
//! simultaneously accumulate `∂ζ/∂s`.  Points left of `s = 1` are reached
//! through the alternating (eta) series accelerated by repeated averaging,
//! which also powers `dirichlet_beta` below its abscissa of absolute
//! convergence.  Exact rational/Bernoulli shortcuts cover the integer
//! arguments that dominate tail summation workloads.

use crate::specfun::bernoulli::bernoulli_number;
use crate::{Context, Error, Real, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

/// Truncation point for the Euler–Maclaurin partial sum.
fn em_cutoff(ctx: &Context, s: &Real, a: &Real) -> u32 {
    let d = (ctx.digits() + ctx.guard()) as f64;
    let base = (0.4 * d * std::f64::consts::LN_10).ceil();
    let extra = s.to_f64().abs().ceil() + a.to_f64().ceil().max(0.0);
    (base + extra).max(10.0) as u32
}

/// Euler–Maclaurin evaluation of `ζ(s, a)` for `a > 0`, `s ≠ 1`, with an
/// optional simultaneous `∂/∂s`.  Runs 32 bits above the context's working
/// precision; the asymptotic correction sum stops once a step (value plus,
/// when requested, derivative contribution) drops below
/// `max(1, |Σ|)·2^{-(prec+16)}` and reports non-convergence if the tail
/// starts to grow before reaching it.
fn em_core(ctx: &Context, s: &Real, a: &Real, want_deriv: bool) -> Result<(Real, Option<Real>)> {
    let p = ctx.prec() + 32;
    let n = em_cutoff(ctx, s, a);
    let minus_s = -Real::with_val(p, s);

    let mut sum = Real::with_val(p, 0);
    let mut dsum = Real::with_val(p, 0);
    for k in 0..n {
        let base = Real::with_val(p, a + k);
        let ln_b = base.ln();
        let t = Real::with_val(p, &ln_b * &minus_s).exp();
        if want_deriv {
            dsum -= Real::with_val(p, &ln_b * &t);
        }
        sum += t;
    }

    let na = Real::with_val(p, a + n);
    let ln_na = Real::with_val(p, na.ln_ref());
    let pw_ms = Real::with_val(p, &ln_na * &minus_s).exp();
    let sm1 = Real::with_val(p, s - 1i32);
    let na_1ms = Real::with_val(p, &pw_ms * &na);
    sum += Real::with_val(p, &na_1ms / &sm1);
    sum += Real::with_val(p, &pw_ms / 2u32);
    if want_deriv {
        let mut bracket = Real::with_val(p, &ln_na / &sm1);
        bracket += Real::with_val(p, &sm1 * &sm1).recip();
        dsum -= na_1ms * bracket;
        dsum -= Real::with_val(p, &ln_na * &pw_ms) / 2u32;
    }

    let mut tol = Real::with_val(p, sum.abs_ref());
    if tol < 1u32 {
        tol = Real::with_val(p, 1);
    }
    tol >>= ctx.prec() + 16;

    // Correction terms  B_{2j}/(2j)! · s(s+1)…(s+2j-2) · (N+a)^{-s-2j+1}.
    let na_sq = Real::with_val(p, &na * &na);
    let mut pw = Real::with_val(p, &pw_ms / &na);
    let mut pp = Real::with_val(p, s);
    let mut dpp = Real::with_val(p, 1);
    let mut fact = Integer::from(2);
    let mut prev_mag: Option<Real> = None;
    let mut converged = false;
    let j_cap = n.max(6 * (ctx.digits() + ctx.guard()) + 80);
    let mut j = 1u32;
    loop {
        let coeff = Rational::from(bernoulli_number(2 * j) / &fact);
        let coeff_r = Real::with_val(p, &coeff);
        let term = Real::with_val(p, &coeff_r * &pp) * &pw;
        let mut mag = Real::with_val(p, term.abs_ref());
        if want_deriv {
            // At non-positive integer s the product P_j(s) vanishes from some
            // order on while P_j'(s) does not, so the stopping magnitude must
            // include the derivative contribution.
            let mut dterm = Real::with_val(p, &dpp * &pw);
            dterm -= Real::with_val(p, &pp * &pw) * &ln_na;
            dterm *= &coeff_r;
            mag += Real::with_val(p, dterm.abs_ref());
            dsum += dterm;
        }
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
        if j >= j_cap {
            break;
        }
        let f1 = Real::with_val(p, s + (2 * j - 1));
        let f2 = Real::with_val(p, s + 2 * j);
        if want_deriv {
            dpp = Real::with_val(p, &dpp * &f1) + &pp;
            pp *= &f1;
            dpp = Real::with_val(p, &dpp * &f2) + &pp;
            pp *= &f2;
        } else {
            pp *= &f1;
            pp *= &f2;
        }
        pw /= &na_sq;
        fact *= (2 * j + 1) * (2 * j + 2);
        j += 1;
    }
    if !converged {
        return Err(Error::NonConvergence {
            detail: format!(
                "euler-maclaurin correction tail stalled at order {j} (s = {}, a = {})",
                ctx.to_decimal(s),
                ctx.to_decimal(a)
            ),
            partial: Some(ctx.to_decimal(&sum)),
        });
    }
    let out = Real::with_val(ctx.prec(), &sum);
    let dout = if want_deriv {
        Some(Real::with_val(ctx.prec(), &dsum))
    } else {
        None
    };
    Ok((out, dout))
}

fn check_hurwitz_args(ctx: &Context, s: &Real, a: &Real) -> Result<()> {
    if !s.is_finite() || !a.is_finite() {
        return Err(Error::Domain("hurwitz zeta requires finite arguments".into()));
    }
    if a.is_sign_negative() || a.is_zero() {
        return Err(Error::Domain(format!(
            "hurwitz zeta requires a > 0, got a = {}",
            ctx.to_decimal(a)
        )));
    }
    if *s == 1i32 {
        return Err(Error::Pole("hurwitz zeta has a simple pole at s = 1".into()));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k+a)^{-s}`, continued to all real `s ≠ 1`.
pub fn hurwitz_zeta(ctx: &Context, s: &Real, a: &Real) -> Result<Real> {
    check_hurwitz_args(ctx, s, a)?;
    Ok(em_core(ctx, s, a, false)?.0)
}

/// `∂ζ(s, a)/∂s` for real `s ≠ 1`, `a > 0`.
pub fn hurwitz_zeta_sderiv(ctx: &Context, s: &Real, a: &Real) -> Result<Real> {
    check_hurwitz_args(ctx, s, a)?;
    Ok(em_core(ctx, s, a, true)?.1.expect("derivative requested"))
}

/// Repeated-averaging (Euler-transform) limit of the alternating series
/// `Σ_{n≥0} (-1)^n t_n` given the term magnitudes `t_n`.  Returns the
/// accelerated value and the magnitude of the final averaging step.
pub(crate) fn euler_average(p: u32, terms: &[Real], tol: &Real) -> (Real, Real) {
    let mut v: Vec<Real> = Vec::with_capacity(terms.len());
    let mut acc = Real::with_val(p, 0);
    let mut positive = true;
    for t in terms {
        if positive {
            acc += t;
        } else {
            acc -= t;
        }
        v.push(acc.clone());
        positive = !positive;
    }
    let mut head = v[0].clone();
    let mut diff = Real::with_val(p, 1);
    let mut len = v.len();
    let mut passes = 0u32;
    while len > 1 {
        for i in 0..len - 1 {
            let t = Real::with_val(p, &v[i] + &v[i + 1]);
            v[i] = t / 2u32;
        }
        len -= 1;
        passes += 1;
        diff = Real::with_val(p, &v[0] - &head).abs();
        head = v[0].clone();
        if passes >= 12 && diff < *tol {
            break;
        }
    }
    (head, diff)
}

/// Dirichlet eta by accelerated alternating summation; valid for every real
/// `s` (the transform reproduces the Abel sum on the divergent side).
fn eta_accel(ctx: &Context, s: &Real) -> Result<Real> {
    let p = ctx.prec() + 32;
    let dg = ctx.digits() + ctx.guard();
    let m = (3.4 * (dg + 6) as f64).ceil() as usize + 20;
    let minus_s = -Real::with_val(p, s);
    let mut terms = Vec::with_capacity(m);
    for n in 0..m {
        let ln_b = Real::with_val(p, n as u32 + 1).ln();
        terms.push(Real::with_val(p, &ln_b * &minus_s).exp());
    }
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 12;
    let (val, diff) = euler_average(p, &terms, &tol);
    let mut scale = Real::with_val(p, val.abs_ref());
    if scale < 1u32 {
        scale = Real::with_val(p, 1);
    }
    scale >>= ctx.prec() + 4;
    if diff > scale {
        return Err(Error::NonConvergence {
            detail: format!(
                "alternating-series acceleration for eta stalled at s = {}",
                ctx.to_decimal(s)
            ),
            partial: Some(ctx.to_decimal(&val)),
        });
    }
    Ok(Real::with_val(ctx.prec(), &val))
}

/// `ζ(2n)` for `n ≥ 1` through the exact Bernoulli closed form.
fn zeta_even_exact(ctx: &Context, n: u32) -> Real {
    let p = ctx.prec() + 32;
    let fact = Integer::factorial(2 * n).complete();
    let mut coeff = Rational::from(bernoulli_number(2 * n) / fact);
    coeff /= 2u32;
    if n % 2 == 0 {
        coeff = -coeff;
    }
    let two_pi = Real::with_val(p, Constant::Pi) * 2u32;
    let pw = two_pi.pow(2 * n);
    let val = Real::with_val(p, &coeff) * pw;
    Real::with_val(ctx.prec(), &val)
}

/// `ζ(-m)` for `m ≥ 0` as an exact rational.
fn zeta_neg_exact(ctx: &Context, m: u32) -> Real {
    let mut r = bernoulli_number(m + 1);
    r /= m + 1;
    if m % 2 == 1 {
        r = -r;
    }
    ctx.from_rational(&r)
}

/// Riemann zeta on the real line (`s ≠ 1`).
pub fn zeta(ctx: &Context, s: &Real) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Domain("zeta requires a finite argument".into()));
    }
    if *s == 1i32 {
        return Err(Error::Pole("zeta has a simple pole at s = 1".into()));
    }
    if s.is_integer() {
        if let Some(i) = s.to_integer().and_then(|z| z.to_i64()) {
            if i <= 0 {
                return Ok(zeta_neg_exact(ctx, (-i) as u32));
            }
            if i % 2 == 0 && i <= 512 {
                return Ok(zeta_even_exact(ctx, (i / 2) as u32));
            }
        }
    }
    if *s > 1i32 {
        let one = Real::with_val(ctx.prec() + 32, 1);
        Ok(em_core(ctx, s, &one, false)?.0)
    } else {
        let p = ctx.prec() + 32;
        let eta = eta_accel(ctx, s)?;
        let one_ms = Real::with_val(p, 1i32 - s);
        let denom = Real::with_val(p, 1) - one_ms.exp2();
        let val = Real::with_val(p, &eta) / denom;
        Ok(Real::with_val(ctx.prec(), &val))
    }
}

/// `ζ'(s)` for real `s ≠ 1`.  The two negative even/odd anchor points used
/// throughout the catalogue pin down the Glaisher–Kinkelin constants:
/// `ζ'(-1)` routes through `1/12·(1 - γ - log 2π) + ζ'(2)/(2π²)` and
/// `ζ'(-2)` through `-ζ(3)/(4π²)`, so those three quantities agree to full
/// precision by construction.
pub fn zeta_sderiv(ctx: &Context, s: &Real) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Domain("zeta derivative requires a finite argument".into()));
    }
    if *s == 1i32 {
        return Err(Error::Pole("zeta has a simple pole at s = 1".into()));
    }
    let p = ctx.prec() + 32;
    if *s == -1i32 {
        let two = Real::with_val(p, 2);
        let one = Real::with_val(p, 1);
        let zp2 = em_core(ctx, &two, &one, true)?.1.expect("derivative requested");
        let pi = Real::with_val(p, Constant::Pi);
        let gamma = Real::with_val(p, Constant::Euler);
        let log_two_pi = Real::with_val(p, 2 * pi.clone()).ln();
        let mut val = Real::with_val(p, 1u32) - gamma - log_two_pi;
        val /= 12u32;
        let pi_sq2 = Real::with_val(p, &pi * &pi) * 2u32;
        val += zp2 / pi_sq2;
        return Ok(Real::with_val(ctx.prec(), &val));
    }
    if *s == -2i32 {
        let three = Real::with_val(p, 3);
        let z3 = zeta(ctx, &three)?;
        let pi = Real::with_val(p, Constant::Pi);
        let denom = Real::with_val(p, &pi * &pi) * 4u32;
        let val = -Real::with_val(p, &z3) / denom;
        return Ok(Real::with_val(ctx.prec(), &val));
    }
    let one = Real::with_val(p, 1);
    Ok(em_core(ctx, s, &one, true)?.1.expect("derivative requested"))
}

/// Dirichlet eta `η(s) = Σ (-1)^{n+1} n^{-s}`, with the classical value
/// `log 2` at `s = 1`.
pub fn dirichlet_eta(ctx: &Context, s: &Real) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Domain("eta requires a finite argument".into()));
    }
    if *s == 1i32 {
        return Ok(ctx.log2());
    }
    let p = ctx.prec() + 32;
    let z = zeta(ctx, s)?;
    let one_ms = Real::with_val(p, 1i32 - s);
    let factor = Real::with_val(p, 1) - one_ms.exp2();
    let val = factor * Real::with_val(p, &z);
    Ok(Real::with_val(ctx.prec(), &val))
}

/// Dirichlet lambda `λ(s) = Σ_{n≥0} (2n+1)^{-s} = (1 - 2^{-s}) ζ(s)`.
pub fn dirichlet_lambda(ctx: &Context, s: &Real) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Domain("lambda requires a finite argument".into()));
    }
    if *s == 1i32 {
        return Err(Error::Pole("lambda inherits the zeta pole at s = 1".into()));
    }
    let p = ctx.prec() + 32;
    let z = zeta(ctx, s)?;
    let minus_s = -Real::with_val(p, s);
    let factor = Real::with_val(p, 1) - minus_s.exp2();
    let val = factor * Real::with_val(p, &z);
    Ok(Real::with_val(ctx.prec(), &val))
}

/// Dirichlet beta `β(s) = Σ (-1)^n (2n+1)^{-s}`.  Above `s = 1` this splits
/// into a pair of Hurwitz values; at and below `s = 1` the alternating
/// series is accelerated directly, which keeps `β(1) = π/4` finite even
/// though each Hurwitz half diverges there.
pub fn dirichlet_beta(ctx: &Context, s: &Real) -> Result<Real> {
    if !s.is_finite() {
        return Err(Error::Domain("beta requires a finite argument".into()));
    }
    let p = ctx.prec() + 32;
    if *s > 1i32 {
        let quarter = Real::with_val(p, 1) / 4u32;
        let three_quarter = Real::with_val(p, 3) / 4u32;
        let za = em_core(ctx, s, &quarter, false)?.0;
        let zb = em_core(ctx, s, &three_quarter, false)?.0;
        let diff = Real::with_val(p, &za - &zb);
        let minus_s = -Real::with_val(p, s * 2u32);
        let scale = minus_s.exp2();
        let val = diff * scale;
        return Ok(Real::with_val(ctx.prec(), &val));
    }
    let dg = ctx.digits() + ctx.guard();
    let m = (3.4 * (dg + 6) as f64).ceil() as usize + 20;
    let minus_s = -Real::with_val(p, s);
    let mut terms = Vec::with_capacity(m);
    for n in 0..m {
        let ln_b = Real::with_val(p, 2 * n as u32 + 1).ln();
        terms.push(Real::with_val(p, &ln_b * &minus_s).exp());
    }
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 12;
    let (val, diff) = euler_average(p, &terms, &tol);
    let mut scale = Real::with_val(p, val.abs_ref());
    if scale < 1u32 {
        scale = Real::with_val(p, 1);
    }
    scale >>= ctx.prec() + 4;
    if diff > scale {
        return Err(Error::NonConvergence {
            detail: format!(
                "alternating-series acceleration for beta stalled at s = {}",
                ctx.to_decimal(s)
            ),
            partial: Some(ctx.to_decimal(&val)),
        });
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
        let bound = ctx.pow10(tol_exp);
        assert!(
            err < bound,
            "got {}, want {}, |diff| = {}",
            ctx.to_decimal(got),
            want,
            ctx.to_decimal(&err)
        );
    }

    #[test]
    fn zeta_right_of_one() {
        let c = ctx();
        let z2 = zeta(&c, &c.real(2)).unwrap();
        assert_near(&c, &z2, "1.644934066848226436472415166646025189218949901206798", -45);
        let pi_sq_6 = {
            let pi = c.pi();
            Real::with_val(c.prec(), pi.square_ref()) / 6u32
        };
        assert!(abs_err(&z2, &pi_sq_6) < c.pow10(-45));
        let z3 = zeta(&c, &c.real(3)).unwrap();
        assert_near(&c, &z3, "1.202056903159594285399738161511449990764986292340499", -45);
        let z52 = zeta(&c, &c.rational(5, 2)).unwrap();
        let hz = hurwitz_zeta(&c, &c.rational(5, 2), &c.real(1)).unwrap();
        assert!(abs_err(&z52, &hz) < c.pow10(-45));
    }

    #[test]
    fn zeta_left_of_one() {
        let c = ctx();
        let zh = zeta(&c, &c.rational(1, 2)).unwrap();
        assert_near(&c, &zh, "-1.460354508809586812889499152515298012467229331012581", -44);
        let zq = zeta(&c, &c.rational(1, 4)).unwrap();
        assert_near(&c, &zq, "-0.8132784052618916565214478200735255744815705245290058", -44);
        let z0 = zeta(&c, &c.zero()).unwrap();
        assert!(abs_err(&z0, &c.rational(-1, 2)).is_zero());
        let zm1 = zeta(&c, &c.real(-1)).unwrap();
        assert!(abs_err(&zm1, &c.rational(-1, 12)).is_zero());
        let zm3 = zeta(&c, &c.real(-3)).unwrap();
        assert!(abs_err(&zm3, &c.rational(1, 120)).is_zero());
    }

    #[test]
    fn zeta_pole_is_reported() {
        let c = ctx();
        assert!(matches!(zeta(&c, &c.one()), Err(Error::Pole(_))));
        assert!(matches!(dirichlet_lambda(&c, &c.one()), Err(Error::Pole(_))));
    }

    #[test]
    fn hurwitz_values() {
        let c = ctx();
        let h = hurwitz_zeta(&c, &c.real(2), &c.rational(1, 8)).unwrap();
        assert_near(&c, &h, "65.38813344498803447314299933439596085458310777327618", -43);
        let h = hurwitz_zeta(&c, &c.rational(5, 2), &c.rational(2, 7)).unwrap();
        assert_near(&c, &h, "23.71841177610259244086401361073723662878814793266357", -44);
        let h = hurwitz_zeta(&c, &c.real(-1), &c.rational(1, 3)).unwrap();
        assert!(abs_err(&h, &c.rational(1, 36)) < c.pow10(-45));
        let h = hurwitz_zeta(&c, &c.real(2), &c.real(1111)).unwrap();
        assert_near(&c, &h, "0.0009004952115494893085936503227084830031906227872330911", -46);
        let h = hurwitz_zeta(&c, &c.rational(19, 2), &c.real(1111)).unwrap();
        assert_near(&c, &h, "1.526413171330725028539697472725330767068335728404806e-27", -46);
    }

    #[test]
    fn hurwitz_splits_by_modulus() {
        let c = ctx();
        let s = c.rational(5, 2);
        let whole = zeta(&c, &s).unwrap();
        let half = hurwitz_zeta(&c, &s, &c.rational(1, 2)).unwrap();
        let scale = {
            let e = Real::with_val(c.prec(), &s);
            Real::with_val(c.prec(), e.exp2_ref()) - 1u32
        };
        let rhs = scale * whole.clone();
        assert!(abs_err(&half, &rhs) < c.pow10(-42));
    }

    #[test]
    fn hurwitz_domain_errors() {
        let c = ctx();
        assert!(matches!(
            hurwitz_zeta(&c, &c.real(2), &c.zero()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hurwitz_zeta(&c, &c.real(2), &c.real(-3)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hurwitz_zeta(&c, &c.one(), &c.rational(1, 2)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn zeta_derivatives() {
        let c = ctx();
        let d = zeta_sderiv(&c, &c.real(2)).unwrap();
        assert_near(&c, &d, "-0.9375482543158437537025740945678649778978602886148299", -44);
        let d = zeta_sderiv(&c, &c.real(4)).unwrap();
        assert_near(&c, &d, "-0.06891126589612537984882936558744082715001637487137846", -44);
        let d = zeta_sderiv(&c, &c.rational(1, 2)).unwrap();
        assert_near(&c, &d, "-3.922646139209151727471531446714599513730323971506505", -43);
        let d = zeta_sderiv(&c, &c.real(-1)).unwrap();
        assert_near(&c, &d, "-0.1654211437004509292139196602427806427640363803352018", -44);
        let d = zeta_sderiv(&c, &c.real(-2)).unwrap();
        assert_near(&c, &d, "-0.03044845705839327078025153047115477664700048354497394", -44);
    }

    #[test]
    fn hurwitz_sderiv_values() {
        let c = ctx();
        let d = hurwitz_zeta_sderiv(&c, &c.real(-1), &c.rational(1, 2)).unwrap();
        assert_near(&c, &d, "0.05382943932689441004790849172729963104553901790259026", -44);
        let lhs = {
            let mut v = Real::with_val(c.prec(), c.log2());
            v /= -24i32;
            let zp = zeta_sderiv(&c, &c.real(-1)).unwrap();
            v - zp / 2u32
        };
        assert!(abs_err(&d, &lhs) < c.pow10(-44));
        let d = hurwitz_zeta_sderiv(&c, &c.real(-2), &c.rational(1, 2)).unwrap();
        assert_near(&c, &d, "0.02283634279379495308518864785336608248525036265873045", -44);
        let d = hurwitz_zeta_sderiv(&c, &c.real(-1), &c.rational(1, 4)).unwrap();
        assert_near(&c, &d, "0.09356786897026106118633607164744631006152108603835954", -44);
        let d = hurwitz_zeta_sderiv(&c, &c.real(2), &c.rational(1, 3)).unwrap();
        assert_near(&c, &d, "8.851535587472971097847474059292394713727371125058759", -43);
        let d = hurwitz_zeta_sderiv(&c, &c.real(-1), &c.one()).unwrap();
        let via_riemann = zeta_sderiv(&c, &c.real(-1)).unwrap();
        assert!(abs_err(&d, &via_riemann) < c.pow10(-44));
    }

    #[test]
    fn eta_lambda_beta() {
        let c = ctx();
        let e1 = dirichlet_eta(&c, &c.one()).unwrap();
        assert!(abs_err(&e1, &c.log2()) < c.pow10(-45));
        let em1 = dirichlet_eta(&c, &c.real(-1)).unwrap();
        assert!(abs_err(&em1, &c.rational(1, 4)) < c.pow10(-44));
        let l2 = dirichlet_lambda(&c, &c.real(2)).unwrap();
        let pi_sq_8 = Real::with_val(c.prec(), c.pi().square_ref()) / 8u32;
        assert!(abs_err(&l2, &pi_sq_8) < c.pow10(-44));

        let b2 = dirichlet_beta(&c, &c.real(2)).unwrap();
        assert_near(&c, &b2, "0.9159655941772190150546035149323841107741493742816721", -44);
        let b3 = dirichlet_beta(&c, &c.real(3)).unwrap();
        let pi_cubed_32 = {
            let pi = c.pi();
            let mut v = Real::with_val(c.prec(), pi.square_ref());
            v *= &pi;
            v / 32u32
        };
        assert!(abs_err(&b3, &pi_cubed_32) < c.pow10(-44));
        let b5 = dirichlet_beta(&c, &c.real(5)).unwrap();
        assert_near(&c, &b5, "0.9961578280770880640063193686309752815113955293882649", -44);
        let b1 = dirichlet_beta(&c, &c.one()).unwrap();
        let pi_4 = Real::with_val(c.prec(), c.pi()) / 4u32;
        assert!(abs_err(&b1, &pi_4) < c.pow10(-42));
        let b0 = dirichlet_beta(&c, &c.zero()).unwrap();
        assert!(abs_err(&b0, &c.rational(1, 2)) < c.pow10(-42));
    }

    #[test]
    fn higher_precision_tracks_requested_digits() {
        let c = make_context(60).unwrap();
        let z3 = zeta(&c, &c.real(3)).unwrap();
        let w = c
            .parse("1.2020569031595942853997381615114499907649862923404988817922715553418382057863130901864558736093352581461991577952607194184919959986732832137763968372079001614539417829493600667191915755222424942439615639096641032911590957809655146512799184051057152559880154371097811020398275325667876035223369849416618110570147157786394997375237852779370309560257018531827900030765471075630488433208697115")
            .unwrap();
        assert!(abs_err(&z3, &w) < c.pow10(-64));
    }

    #[test]
    fn hurwitz_derivative_consistency_with_finite_difference() {
        let c = make_context(30).unwrap();
        let h = c.pow10(-9);
        let s = c.rational(7, 3);
        let a = c.rational(2, 5);
        let sp = Real::with_val(c.prec(), &s + &h);
        let sm = Real::with_val(c.prec(), &s - &h);
        let fp = hurwitz_zeta(&c, &sp, &a).unwrap();
        let fm = hurwitz_zeta(&c, &sm, &a).unwrap();
        let approx = (fp - fm) / (Real::with_val(c.prec(), &h) * 2u32);
        let exact = hurwitz_zeta_sderiv(&c, &s, &a).unwrap();
        assert!(abs_err(&approx, &exact) < c.pow10(-15));
    }
}
