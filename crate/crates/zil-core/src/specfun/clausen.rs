//! Clausen functions `Cl_m`, the Lobachevsky function, odd-index trig sums,
//! and the polylogarithm at integer order.
//!
//! `Cl_2(θ) = −∫₀^θ log(2 sin(u/2)) du = Σ sin nθ/n²`; even orders continue
//! the sine series, odd orders the cosine series.  Evaluation expands the
//! log-singular integral form: starting from
//! `Cl_2(θ) = θ − θ log θ + Σ_k |B_{2k}| θ^{2k+1} / (2k(2k+1)(2k)!)`
//! (radius `2π`), higher orders are produced by term-by-term integration,
//! which keeps one `θ^{m−1} log θ` term, a short polynomial, and a single
//! power series.  Arguments are reduced mod `2π` and reflected into `[0, π]`
//! first, so the series is always used well inside its radius.

use crate::specfun::bernoulli::bernoulli_number;
use crate::specfun::zeta::{dirichlet_eta, zeta};
use crate::{Context, Error, Real, Result};
use rug::float::Constant;
use rug::{Complete, Rational};

/// Number of power-series terms that push the `(θ/2π)^{2k}` tail below the
/// working target for `θ ≤ π`.
fn series_terms(ctx: &Context) -> usize {
    let dg = (ctx.digits() + ctx.guard() + 12) as f64;
    (dg * std::f64::consts::LN_10 / (2.0 * std::f64::consts::LN_2)).ceil() as usize + 8
}

/// Symbolic form `Σ p_j θ^j + logc·θ^{m−1}·log θ + Σ e_k θ^{m−1+2k}`,
/// closed under integration in θ.
struct ClausenForm {
    m: u32,
    poly: Vec<Real>,
    logc: Real,
    series: Vec<Real>,
}

fn build_form(ctx: &Context, m: u32, p: u32) -> ClausenForm {
    let terms = series_terms(ctx);
    let poly = vec![Real::with_val(p, 0), Real::with_val(p, 1)];
    let logc = Real::with_val(p, -1);
    let mut series = Vec::with_capacity(terms);
    for k in 1..=terms {
        let b = bernoulli_number(2 * k as u32);
        let mut c = Rational::from(b.abs());
        let k32 = k as u32;
        c /= Rational::from((2 * k32) * (2 * k32 + 1));
        let coeff = Real::with_val(p, &c);
        let mut fact = Real::with_val(p, rug::Integer::factorial(2 * k32).complete());
        fact.recip_mut();
        series.push(coeff * fact);
    }
    let mut form = ClausenForm {
        m: 2,
        poly,
        logc,
        series,
    };
    while form.m < m {
        let cur = form.m;
        // integrate: poly powers shift up, log term spawns a θ^cur piece
        let mut new_poly = vec![Real::with_val(p, 0)];
        for (j, coeff) in form.poly.iter().enumerate() {
            new_poly.push(Real::with_val(p, coeff / (j as u32 + 1)));
        }
        let log_spill = Real::with_val(p, &form.logc / (cur * cur));
        new_poly[cur as usize] -= log_spill;
        let new_logc = Real::with_val(p, &form.logc / cur);
        let mut new_series = Vec::with_capacity(form.series.len());
        for (i, e) in form.series.iter().enumerate() {
            let k = i as u32 + 1;
            new_series.push(Real::with_val(p, e / (cur + 2 * k)));
        }
        let target = cur + 1;
        if target % 2 == 1 {
            // odd order: Cl_target = ζ(target) − ∫ Cl_cur
            for c in new_poly.iter_mut() {
                *c = -Real::with_val(p, &*c);
            }
            for e in new_series.iter_mut() {
                *e = -Real::with_val(p, &*e);
            }
            let boosted = ctx.boosted(10);
            let z = zeta(&boosted, &boosted.real(target)).expect("zeta at integer ≥ 3");
            new_poly[0] += Real::with_val(p, &z);
            form.logc = -new_logc;
        } else {
            form.logc = new_logc;
        }
        form.poly = new_poly;
        form.series = new_series;
        form.m = target;
    }
    form
}

fn eval_form(form: &ClausenForm, theta: &Real, p: u32) -> Real {
    // power series in θ², carried at powers θ^{m−1+2k} = θ^{m+1}·θ^{2(k−1)}
    let t2 = Real::with_val(p, theta.square_ref());
    let mut s = Real::with_val(p, 0);
    for e in form.series.iter().rev() {
        s *= &t2;
        s += e;
    }
    let mut pw = Real::with_val(p, 1);
    for _ in 0..(form.m + 1) {
        pw *= theta;
    }
    s *= pw;
    // polynomial part by Horner
    let mut acc = Real::with_val(p, 0);
    for coeff in form.poly.iter().rev() {
        acc *= theta;
        acc += coeff;
    }
    acc += s;
    // log term θ^{m−1} log θ
    let mut logpart = Real::with_val(p, theta.ln_ref());
    logpart *= &form.logc;
    for _ in 0..(form.m - 1) {
        logpart *= theta;
    }
    acc + logpart
}

/// Reduce to `[0, 2π)` and fold `(π, 2π)` back onto `(0, π)`; returns the
/// folded angle and the sign to apply for the sine-series (even-`m`) case.
fn reduce(theta: &Real, p: u32) -> (Real, i32) {
    let two_pi = Real::with_val(p, Constant::Pi) * 2u32;
    let mut t = Real::with_val(p, theta);
    let q = Real::with_val(p, &t / &two_pi).floor();
    t -= q * &two_pi;
    if t.is_sign_negative() {
        t += &two_pi;
    }
    let pi = Real::with_val(p, Constant::Pi);
    if t > pi {
        let folded = two_pi - t;
        (folded, -1)
    } else {
        (t, 1)
    }
}

/// Clausen function of order `m ≥ 2`:
/// `Σ sin nθ/n^m` for even `m`, `Σ cos nθ/n^m` for odd `m`.
pub fn clausen(ctx: &Context, m: u32, theta: &Real) -> Result<Real> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "clausen requires order ≥ 2, got {m}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::Domain("clausen requires a finite angle".into()));
    }
    let p = ctx.prec() + 64;
    let even = m % 2 == 0;
    // parity in θ: sine series is odd, cosine series is even
    let mut sign = 1i32;
    let mut t = Real::with_val(p, theta);
    if t.is_sign_negative() {
        t = -t;
        if even {
            sign = -sign;
        }
    }
    let (folded, fold_sign) = reduce(&t, p);
    if even {
        sign *= fold_sign;
    }
    if folded.is_zero() {
        return if even {
            Ok(ctx.zero())
        } else {
            let boosted = ctx.boosted(10);
            let z = zeta(&boosted, &boosted.real(m))?;
            Ok(Real::with_val(ctx.prec(), &z))
        };
    }
    let form = build_form(ctx, m, p);
    let v = eval_form(&form, &folded, p);
    let mut out = Real::with_val(ctx.prec(), &v);
    if sign < 0 {
        out = -out;
    }
    Ok(out)
}

/// Lobachevsky function `Λ(θ) = Cl₂(2θ)/2`.
pub fn lobachevsky(ctx: &Context, theta: &Real) -> Result<Real> {
    let p = ctx.prec() + 32;
    let doubled = Real::with_val(p, theta) * 2u32;
    let v = clausen(ctx, 2, &doubled)?;
    Ok(Real::with_val(ctx.prec(), &v / 2u32))
}

/// Odd-index trig sum `S_m(α) = Σ_{n odd} sin nα/n^m` (even `m`) or
/// `Σ_{n odd} cos nα/n^m` (odd `m`), via `Cl_m(α) − 2^{−m} Cl_m(2α)`.
pub fn odd_trig_sum(ctx: &Context, m: u32, alpha: &Real) -> Result<Real> {
    let p = ctx.prec() + 32;
    let whole = clausen(ctx, m, alpha)?;
    let doubled = Real::with_val(p, alpha) * 2u32;
    let halved = clausen(ctx, m, &doubled)?;
    let mut scale = Real::with_val(p, 1);
    scale >>= m;
    let mut v = Real::with_val(p, &whole);
    v -= scale * halved;
    Ok(Real::with_val(ctx.prec(), &v))
}

/// Polylogarithm `Li_m(x) = Σ xⁿ/n^m` for integer `m ≥ 2`, `|x| ≤ 1`.
pub fn polylog(ctx: &Context, m: u32, x: &Real) -> Result<Real> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "polylog requires order ≥ 2, got {m}"
        )));
    }
    let one = Real::with_val(ctx.prec(), 1);
    let abs_x = Real::with_val(ctx.prec() + 8, x.abs_ref());
    if abs_x > one {
        return Err(Error::Domain(format!(
            "polylog requires |x| ≤ 1, got x = {}",
            ctx.to_decimal(x)
        )));
    }
    let boosted = ctx.boosted(10);
    if x == &one {
        let z = zeta(&boosted, &boosted.real(m))?;
        return Ok(Real::with_val(ctx.prec(), &z));
    }
    let minus_one = -one;
    if x == &minus_one {
        let e = dirichlet_eta(&boosted, &boosted.real(m))?;
        return Ok(Real::with_val(ctx.prec(), -e));
    }
    let p = ctx.prec() + 32;
    let xr = Real::with_val(p, x);
    let mut sum = Real::with_val(p, 0);
    let mut pw = Real::with_val(p, 1);
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 16;
    // geometric tail bound: |Σ_{n>N}| ≤ |x|^{N+1}/((1−|x|)(N+1)^m)
    let mut one_minus = Real::with_val(p, 1);
    one_minus -= Real::with_val(p, x.abs_ref());
    for n in 1..=ctx.max_series_terms() {
        pw *= &xr;
        let mut term = Real::with_val(p, &pw);
        let mut den = Real::with_val(p, 1);
        for _ in 0..m {
            den *= n as u32;
        }
        term /= den;
        sum += &term;
        let mut bound = Real::with_val(p, pw.abs_ref());
        bound /= &one_minus;
        if bound < tol {
            return Ok(Real::with_val(ctx.prec(), &sum));
        }
    }
    Err(Error::NonConvergence {
        detail: format!("polylog series exceeded {} terms", ctx.max_series_terms()),
        partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &sum))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{abs_err, make_context};

    fn ctx() -> Context {
        make_context(40).unwrap()
    }

    fn assert_near(c: &Context, got: &Real, want: &str, tol_exp: i32) {
        let w = c.parse(want).unwrap();
        assert!(
            abs_err(got, &w) < c.pow10(tol_exp),
            "got {}, want {}",
            c.to_decimal(got),
            want
        );
    }

    #[test]
    fn clausen_two_values() {
        let c = ctx();
        let half_pi = Real::with_val(c.prec(), c.pi()) / 2u32;
        let v = clausen(&c, 2, &half_pi).unwrap();
        let g = c.catalan();
        assert!(abs_err(&v, &g) < c.pow10(-44));
        let v = clausen(&c, 2, &c.one()).unwrap();
        assert_near(&c, &v, "1.013959132360768504294574338885914687561179280077717", -44);
        let third_pi = Real::with_val(c.prec(), c.pi()) / 3u32;
        let v = clausen(&c, 2, &third_pi).unwrap();
        assert_near(&c, &v, "1.014941606409653625021202554274520285941689307530300", -44);
        let v = clausen(&c, 2, &c.zero()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn clausen_higher_orders() {
        let c = ctx();
        let v = clausen(&c, 3, &c.one()).unwrap();
        assert_near(&c, &v, "0.4485730072800173977502082474317766565650144736050292", -44);
        let half_pi = Real::with_val(c.prec(), c.pi()) / 2u32;
        let v = clausen(&c, 3, &half_pi).unwrap();
        assert_near(&c, &v, "-0.1126928346712119642562254526416984366342174649069218", -44);
        let v = clausen(&c, 4, &c.one()).unwrap();
        assert_near(&c, &v, "0.8958052386793799625752319400409290993658607704472555", -44);
        let v = clausen(&c, 5, &c.one()).unwrap();
        assert_near(&c, &v, "0.5228208076420942431313810595904258074134576042589723", -44);
        let x = c.parse("0.7").unwrap();
        let v = clausen(&c, 6, &x).unwrap();
        assert_near(&c, &v, "0.6608307565029887746306222419457389042576136075425771", -44);
    }

    #[test]
    fn clausen_at_zero_and_symmetry() {
        let c = ctx();
        let v = clausen(&c, 3, &c.zero()).unwrap();
        let z3 = c.zeta3();
        assert!(abs_err(&v, &z3) < c.pow10(-44));
        // sine series is odd and 2π-periodic
        let x = c.parse("1.3").unwrap();
        let plus = clausen(&c, 2, &x).unwrap();
        let minus = clausen(&c, 2, &c.parse("-1.3").unwrap()).unwrap();
        let sum = Real::with_val(c.prec(), &plus) + minus;
        assert!(abs_err(&sum, &c.zero()) < c.pow10(-42));
        let two_pi = Real::with_val(c.prec() + 32, c.pi()) * 2u32;
        let shifted = Real::with_val(c.prec() + 32, &x) + two_pi;
        let per = clausen(&c, 2, &shifted).unwrap();
        assert!(abs_err(&plus, &per) < c.pow10(-40));
        // cosine series is even
        let p3 = clausen(&c, 3, &x).unwrap();
        let m3 = clausen(&c, 3, &c.parse("-1.3").unwrap()).unwrap();
        assert!(abs_err(&p3, &m3) < c.pow10(-42));
    }

    #[test]
    fn clausen_fold_above_pi() {
        let c = ctx();
        // Cl₂(2π − θ) = −Cl₂(θ)
        let theta = c.parse("2.5").unwrap();
        let p = c.prec() + 32;
        let refl = Real::with_val(p, Constant::Pi) * 2u32 - &theta;
        let a = clausen(&c, 2, &theta).unwrap();
        let b = clausen(&c, 2, &Real::with_val(c.prec(), &refl)).unwrap();
        let sum = Real::with_val(c.prec(), &a) + b;
        assert!(abs_err(&sum, &c.zero()) < c.pow10(-40));
    }

    #[test]
    fn lobachevsky_quarter_pi() {
        let c = ctx();
        let quarter = Real::with_val(c.prec(), c.pi()) / 4u32;
        let v = lobachevsky(&c, &quarter).unwrap();
        let half_g = Real::with_val(c.prec(), c.catalan()) / 2u32;
        assert!(abs_err(&v, &half_g) < c.pow10(-43));
    }

    #[test]
    fn odd_trig_sum_matches_brute_force() {
        let c = ctx();
        let alpha = c.parse("0.9").unwrap();
        let v = odd_trig_sum(&c, 2, &alpha).unwrap();
        // direct Σ_{n odd ≤ 4001} sin(nα)/n² with crude tail allowance
        let p = c.prec() + 16;
        let mut brute = Real::with_val(p, 0);
        let mut n = 1u32;
        while n <= 40_001 {
            let ang = Real::with_val(p, &alpha) * n;
            let mut term = ang.sin();
            term /= n * n;
            brute += term;
            n += 2;
        }
        let diff = abs_err(&v, &brute);
        assert!(diff < c.parse("1e-8").unwrap(), "diff {}", c.to_decimal(&diff));
    }

    #[test]
    fn polylog_values() {
        let c = ctx();
        let v = polylog(&c, 2, &c.one()).unwrap();
        let z2 = {
            let b = c.boosted(5);
            let z = zeta(&b, &b.real(2)).unwrap();
            Real::with_val(c.prec(), &z)
        };
        assert!(abs_err(&v, &z2) < c.pow10(-43));
        let half = c.rational(1, 2);
        let v = polylog(&c, 2, &half).unwrap();
        assert_near(&c, &v, "0.5822405264650125059026563201596801087441984748061264", -44);
        let v = polylog(&c, 3, &half).unwrap();
        assert_near(&c, &v, "0.5372131936080402009406232255949658266704024993403782", -44);
        let third = c.rational(1, 3);
        let v = polylog(&c, 4, &third).unwrap();
        assert_near(&c, &v, "0.3407911308562507524776409440122023152122808582868996", -44);
        let m1 = c.real(-1);
        let v = polylog(&c, 2, &m1).unwrap();
        assert_near(&c, &v, "-0.8224670334241132182362075833230125946094749506033992", -44);
    }

    #[test]
    fn polylog_rejects_outside_disc() {
        let c = ctx();
        assert!(matches!(
            polylog(&c, 2, &c.real(2)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(polylog(&c, 1, &c.rational(1, 2)), Err(Error::Domain(_))));
    }
}
