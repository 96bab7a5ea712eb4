//! Series evaluation: tail-bounded direct summation, alternating-series
//! acceleration, asymptotic tail substitution for Si/Ci-weighted sums, and
//! exact combinatorial identities.
//!
//! Summation is carried at padded precision; truncation error is estimated
//! per decay class and reported in the result alongside the value.  Power
//! decay gets a smooth-tail fit: the last stretch of terms is matched to
//! `n^{−e}(C₀ + C₁/n + … + C_L/n^L)` and the tail closed with Hurwitz zeta
//! values, which handles both integer and half-integer exponents.

use crate::numkernel::binomial;
use crate::quadkit::EvalResult;
use crate::specfun::{
    cos_integral, euler_average, hurwitz_zeta, si, sici_crossover, sin_integral, taylor_parts,
    zeta,
};
use crate::{Context, Error, Real, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::sync::Arc;

/// Which sine/cosine-integral weight rides on a [`TermGenerator`] of class
/// [`DecayClass::SiCiWeighted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiciWeight {
    /// `Si(cn)`
    Si,
    /// `si(cn) = Si(cn) − π/2`
    SmallSi,
    /// `Ci(cn)`
    Ci,
}

/// Index support and sign pattern of a Si/Ci-weighted sum over `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiciPattern {
    /// `Σ_{n≥1} W(cn)/nᵏ`
    All,
    /// `Σ (−1)^{n+1} W(cn)/nᵏ` (first term positive)
    AlternatingPlusFirst,
    /// `Σ (−1)ⁿ W(cn)/nᵏ` (first term negative)
    AlternatingMinusFirst,
    /// `Σ_{n odd} W(cn)/nᵏ`
    OddOnly,
    /// `Σ_{m≥1} (−1)^{m+1} W(c(2m−1))/(2m−1)ᵏ`
    OddAlternatingPlusFirst,
}

/// Weight and pattern of a Si/Ci-weighted sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiciShape {
    pub weight: SiciWeight,
    pub pattern: SiciPattern,
}

/// Decay metadata attached to a term generator; checked against observed
/// term magnitudes before a summation strategy commits to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    Geometric { ratio: f64 },
    Power { exponent: f64 },
    Alternating,
    OscillatoryTrig { frequency: f64 },
    SiCiWeighted(SiciShape),
}

/// An index→value mapping (indices start at 1) with decay metadata.
#[derive(Clone)]
pub struct TermGenerator {
    f: Arc<dyn Fn(&Context, u64) -> Result<Real> + Send + Sync>,
    decay: DecayClass,
}

impl TermGenerator {
    pub fn new<F>(decay: DecayClass, f: F) -> Self
    where
        F: Fn(&Context, u64) -> Result<Real> + Send + Sync + 'static,
    {
        TermGenerator {
            f: Arc::new(f),
            decay,
        }
    }

    pub fn term(&self, ctx: &Context, n: u64) -> Result<Real> {
        (self.f)(ctx, n)
    }

    pub fn decay(&self) -> &DecayClass {
        &self.decay
    }
}

impl std::fmt::Debug for TermGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TermGenerator")
            .field("decay", &self.decay)
            .finish()
    }
}

fn series_result(ctx: &Context, value: Real, err: Real, terms: u64) -> EvalResult {
    EvalResult {
        value: Real::with_val(ctx.prec(), &value),
        err_estimate: Real::with_val(ctx.prec(), &err),
        levels_used: 0,
        terms_used: terms,
    }
}

/// Check observed magnitudes of the first window against the declared
/// class; generous slack, this guards against miswired generators rather
/// than sharpening error bounds.
fn sanity_check(class: &DecayClass, window: &[Real]) -> Result<()> {
    match class {
        DecayClass::Geometric { ratio } => {
            if !(*ratio > 0.0 && *ratio < 1.0) {
                return Err(Error::Config(format!(
                    "geometric ratio must lie in (0,1), got {ratio}"
                )));
            }
            let slack = ratio * 1.5 + 0.05;
            for w in window.windows(2) {
                let (a, b) = (w[0].to_f64().abs(), w[1].to_f64().abs());
                if a > 1e-300 && b > a * slack && b > 1e-280 {
                    return Err(Error::Classification(format!(
                        "terms decay slower than declared geometric ratio {ratio}"
                    )));
                }
            }
            Ok(())
        }
        DecayClass::Power { exponent } => {
            if !(*exponent > 1.0) {
                return Err(Error::Config(format!(
                    "power exponent must exceed 1 for convergence, got {exponent}"
                )));
            }
            if window.len() >= 64 {
                let a = window[31].to_f64().abs();
                let b = window[63].to_f64().abs();
                if a > 1e-280 && b > 1e-300 {
                    let observed = (a / b).log2();
                    if (observed - exponent).abs() > 1.0 {
                        return Err(Error::Classification(format!(
                            "observed decay exponent {observed:.2} is inconsistent with declared {exponent}"
                        )));
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn collect_window(ctx: &Context, gen: &TermGenerator, count: u64) -> Result<Vec<Real>> {
    let p = ctx.prec() + 32;
    let mut out = Vec::with_capacity(count as usize);
    for n in 1..=count {
        let t = gen.term(ctx, n)?;
        out.push(Real::with_val(p, &t));
    }
    Ok(out)
}

/// Direct-part cutoff for fitted-tail summation; deeper cutoffs keep the
/// truncated 1/n expansion accurate when many digits are requested.
fn fit_cutoff(ctx: &Context) -> u64 {
    if ctx.digits() + ctx.guard() <= 70 {
        512
    } else {
        2048
    }
}

fn fit_order(ctx: &Context, n_cut: u64) -> usize {
    let dg = (ctx.digits() + ctx.guard()) as f64;
    ((dg * std::f64::consts::LN_10) / ((n_cut as f64 / 2.0).ln())).ceil() as usize + 2
}

/// Fit `a_n ≈ n^{−e}(C₀ + … + C_L/n^L)` on samples near the cutoff and
/// close the tail `Σ_{n>n_cut}` with Hurwitz zeta values.  Returns
/// `(tail, error_estimate)`.  `samples` must be `(n, a_n)` pairs in
/// increasing `n`; the last is held out for the residual-based error
/// estimate.
fn power_tail(
    ctx: &Context,
    samples: &[(u64, Real)],
    exponent: &Real,
    n_cut: u64,
) -> Result<(Real, Real)> {
    let l_plus_1 = samples.len() - 1;
    let p = ctx.prec() + 192;
    let work = ctx.boosted(12);
    let e = Real::with_val(p, exponent);
    // rows: Σ_ℓ C_ℓ · n_i^{−ℓ} = a_i · n_i^e
    let mut mat: Vec<Vec<Real>> = Vec::with_capacity(l_plus_1);
    for (n, a) in &samples[..l_plus_1] {
        let nr = Real::with_val(p, *n);
        let mut row = Vec::with_capacity(l_plus_1 + 1);
        let mut basis = Real::with_val(p, 1);
        for _ in 0..l_plus_1 {
            row.push(basis.clone());
            basis /= &nr;
        }
        let mut scale = Real::with_val(p, nr.ln_ref());
        scale *= &e;
        let mut rhs = Real::with_val(p, a);
        rhs *= scale.exp();
        row.push(rhs);
        mat.push(row);
    }
    // Gaussian elimination with partial pivoting
    let m = l_plus_1;
    for col in 0..m {
        let mut piv = col;
        for r in (col + 1)..m {
            if Real::with_val(p, mat[r][col].abs_ref())
                > Real::with_val(p, mat[piv][col].abs_ref())
            {
                piv = r;
            }
        }
        mat.swap(col, piv);
        if mat[col][col].is_zero() {
            return Err(Error::Classification(
                "singular system in power-tail fit".into(),
            ));
        }
        for r in (col + 1)..m {
            let factor = Real::with_val(p, &mat[r][col] / &mat[col][col]);
            for c in col..=m {
                let delta = Real::with_val(p, &factor * &mat[col][c]);
                mat[r][c] -= delta;
            }
        }
    }
    let mut coeffs = vec![Real::with_val(p, 0); m];
    for col in (0..m).rev() {
        let mut acc = Real::with_val(p, &mat[col][m]);
        for c in (col + 1)..m {
            let delta = Real::with_val(p, &mat[col][c] * &coeffs[c]);
            acc -= delta;
        }
        acc /= &mat[col][col];
        coeffs[col] = acc;
    }
    // residual at the held-out sample
    let (n_hold, a_hold) = &samples[l_plus_1];
    let nr = Real::with_val(p, *n_hold);
    let mut model = Real::with_val(p, 0);
    let mut basis = Real::with_val(p, 1);
    for c in coeffs.iter() {
        model += Real::with_val(p, c * &basis);
        basis /= &nr;
    }
    let mut scale = Real::with_val(p, nr.ln_ref());
    scale *= &e;
    model *= (-scale).exp();
    let residual = Real::with_val(p, &model - a_hold).abs();
    // tail: Σ_ℓ C_ℓ ζ(e+ℓ, n_cut+1)
    let a_start = work.real(n_cut as i64 + 1);
    let mut tail = Real::with_val(p, 0);
    for (l, c) in coeffs.iter().enumerate() {
        let mut s = Real::with_val(p, &e);
        s += l as u32;
        let hz = hurwitz_zeta(&work, &s, &a_start)?;
        tail += Real::with_val(p, c * &Real::with_val(p, &hz));
    }
    // error: residual advected over the comparable tail mass plus rounding
    let mut err = residual;
    err *= Real::with_val(p, n_cut) * 8u32;
    let mut em1 = Real::with_val(p, &e);
    em1 -= 1u32;
    err /= &em1;
    let mut floor = Real::with_val(p, tail.abs_ref());
    floor >>= ctx.prec();
    err += floor;
    Ok((tail, err))
}

/// Direct summation for geometric decay and smooth power decay.
pub fn sum_series(ctx: &Context, gen: &TermGenerator) -> Result<EvalResult> {
    let p = ctx.prec() + 32;
    match *gen.decay() {
        DecayClass::Geometric { ratio } => {
            let window = collect_window(ctx, gen, 64)?;
            sanity_check(gen.decay(), &window)?;
            let mut tol = Real::with_val(p, 1);
            tol >>= ctx.prec() + 16;
            let mut sum = Real::with_val(p, 0);
            for t in &window {
                sum += t;
            }
            let mut n = window.len() as u64;
            let mut last = window.last().cloned().unwrap_or_else(|| ctx.zero());
            while Real::with_val(p, last.abs_ref()) >= tol {
                n += 1;
                if n > ctx.max_series_terms() as u64 {
                    return Err(Error::NonConvergence {
                        detail: format!(
                            "geometric series exceeded {} terms",
                            ctx.max_series_terms()
                        ),
                        partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &sum))),
                    });
                }
                last = Real::with_val(p, &gen.term(ctx, n)?);
                sum += &last;
            }
            // geometric tail bound |a_N|·r/(1−r)
            let mut err = Real::with_val(p, last.abs_ref());
            err *= ratio;
            err /= 1.0 - ratio;
            let mut floor = Real::with_val(p, sum.abs_ref());
            floor >>= ctx.prec();
            err += floor;
            Ok(series_result(ctx, sum, err, n))
        }
        DecayClass::Power { exponent } => {
            let window = collect_window(ctx, gen, 64)?;
            sanity_check(gen.decay(), &window)?;
            sum_power_fit(ctx, gen, exponent, Some(window))
        }
        _ => Err(Error::Classification(
            "sum_series handles geometric and power decay classes only".into(),
        )),
    }
}

/// Shared power-decay path: direct sum to a fixed cutoff, then the fitted
/// tail.  `window` (terms 1..=64) is reused when already collected.
fn sum_power_fit(
    ctx: &Context,
    gen: &TermGenerator,
    exponent: f64,
    window: Option<Vec<Real>>,
) -> Result<EvalResult> {
    let p = ctx.prec() + 32;
    let n_cut = fit_cutoff(ctx);
    let l = fit_order(ctx, n_cut);
    let step = (n_cut / (2 * (l as u64 + 2))).max(1);
    let sample_at: Vec<u64> = (0..(l + 2))
        .map(|i| n_cut - (l + 1 - i) as u64 * step)
        .collect();
    let mut sum = Real::with_val(p, 0);
    let mut samples: Vec<(u64, Real)> = Vec::with_capacity(sample_at.len());
    let window = window.unwrap_or_default();
    for n in 1..=n_cut {
        let t = if (n as usize) <= window.len() {
            window[n as usize - 1].clone()
        } else {
            Real::with_val(p, &gen.term(ctx, n)?)
        };
        if sample_at.contains(&n) {
            samples.push((n, t.clone()));
        }
        sum += &t;
    }
    let e = Real::with_val(ctx.prec() + 192, exponent);
    let (tail, err) = power_tail(ctx, &samples, &e, n_cut)?;
    sum += tail;
    Ok(series_result(ctx, sum, err, n_cut))
}

/// Alternating-series evaluation by repeated averaging of partial sums;
/// one-signed smooth power-decay inputs fall back to the fitted-tail path
/// with the exponent estimated from the observed window.
pub fn sum_alternating(ctx: &Context, gen: &TermGenerator) -> Result<EvalResult> {
    let p = ctx.prec() + 32;
    let window = collect_window(ctx, gen, 64)?;
    let mut signs: Vec<i32> = Vec::new();
    for t in &window {
        if t.is_zero() {
            continue;
        }
        signs.push(if t.is_sign_negative() { -1 } else { 1 });
    }
    if signs.len() < 8 {
        return Err(Error::Classification(
            "too few nonzero terms to classify alternation".into(),
        ));
    }
    let alternating = signs.windows(2).all(|w| w[0] != w[1]);
    let one_signed = signs.windows(2).all(|w| w[0] == w[1]);
    if alternating {
        let dg = (ctx.digits() + ctx.guard() + 6) as f64;
        let m = (3.4 * dg).ceil() as u64 + 20;
        let mut terms = window.clone();
        for n in (window.len() as u64 + 1)..=m {
            terms.push(Real::with_val(p, &gen.term(ctx, n)?));
        }
        // euler_average expects magnitudes with implied (+,−,+,…) signs
        let lead_sign = signs[0];
        let mags: Vec<Real> = terms
            .iter()
            .map(|t| Real::with_val(p, t.abs_ref()))
            .collect();
        let mut tol = Real::with_val(p, 1);
        tol >>= ctx.prec() + 8;
        let (mut value, diff) = euler_average(p, &mags, &tol);
        if lead_sign < 0 {
            value = -value;
        }
        let mut err = diff;
        let mut floor = Real::with_val(p, value.abs_ref());
        floor >>= ctx.prec();
        err += floor;
        return Ok(series_result(ctx, value, err, m));
    }
    if one_signed {
        // estimate the decay exponent from a dyadic magnitude ratio and
        // snap to the nearest half-integer
        let a = window[31].to_f64().abs();
        let b = window[63].to_f64().abs();
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Classification(
                "cannot estimate decay exponent from vanishing terms".into(),
            ));
        }
        let e_raw = (a / b).log2();
        let e = (e_raw * 2.0).round() / 2.0;
        if e < 1.25 {
            return Err(Error::Classification(format!(
                "one-signed terms decay too slowly (exponent ≈ {e_raw:.2})"
            )));
        }
        if (e_raw - e).abs() > 0.2 {
            return Err(Error::Classification(format!(
                "observed decay exponent {e_raw:.2} is not near a half-integer"
            )));
        }
        return sum_power_fit(ctx, gen, e, Some(window));
    }
    Err(Error::Classification(
        "terms neither alternate nor keep one sign".into(),
    ))
}

// --- Si/Ci-weighted sums ---------------------------------------------------

/// Evaluate the weight `W` at argument `y > 0` cheaply for the sum engine:
/// Taylor below the asymptotic threshold (padding absorbs the growth),
/// the divergent expansion beyond it.
fn w_eval(ctx: &Context, weight: SiciWeight, y: &Real) -> Result<Real> {
    let (_, x_asym) = sici_crossover(ctx);
    let p = ctx.prec() + 32;
    if y.to_f64() < x_asym {
        let (si_series, ci_tail) = taylor_parts(ctx, y);
        return Ok(match weight {
            SiciWeight::Si => Real::with_val(p, &si_series),
            SiciWeight::SmallSi => {
                let hp = Real::with_val(si_series.prec(), Constant::Pi) / 2u32;
                Real::with_val(p, &(si_series - hp))
            }
            SiciWeight::Ci => {
                let mut v = Real::with_val(p, Constant::Euler);
                v += Real::with_val(p, y.ln_ref());
                v += ci_tail;
                v
            }
        });
    }
    match weight {
        SiciWeight::Si => sin_integral(ctx, y),
        SiciWeight::SmallSi => si(ctx, y),
        SiciWeight::Ci => cos_integral(ctx, y),
    }
}

/// Residue weights modulo 4 for each pattern (index = n mod 4).
fn pattern_weights(pattern: SiciPattern) -> [i32; 4] {
    match pattern {
        SiciPattern::All => [1, 1, 1, 1],
        SiciPattern::AlternatingPlusFirst => [-1, 1, -1, 1],
        SiciPattern::AlternatingMinusFirst => [1, -1, 1, -1],
        SiciPattern::OddOnly => [0, 1, 0, 1],
        SiciPattern::OddAlternatingPlusFirst => [0, 1, 0, -1],
    }
}

/// Canonical index mapping: the `m`-th generator term sits at index `n(m)`.
fn canonical_n(pattern: SiciPattern, m: u64) -> u64 {
    match pattern {
        SiciPattern::All
        | SiciPattern::AlternatingPlusFirst
        | SiciPattern::AlternatingMinusFirst => m,
        SiciPattern::OddOnly | SiciPattern::OddAlternatingPlusFirst => 2 * m - 1,
    }
}

fn canonical_sign(pattern: SiciPattern, m: u64) -> i32 {
    match pattern {
        SiciPattern::All | SiciPattern::OddOnly => 1,
        SiciPattern::AlternatingPlusFirst | SiciPattern::OddAlternatingPlusFirst => {
            if m % 2 == 1 {
                1
            } else {
                -1
            }
        }
        SiciPattern::AlternatingMinusFirst => {
            if m % 2 == 1 {
                -1
            } else {
                1
            }
        }
    }
}

/// Memoized `Σ_{n > n_cut, n ≡ ρ (mod 4)} n^{−m} = 4^{−m} ζ(m, n₀/4)`.
struct ResidueZeta {
    work: Context,
    n_cut: u64,
    memo: HashMap<(u32, u8), Real>,
    p: u32,
}

impl ResidueZeta {
    fn new(ctx: &Context, n_cut: u64, p: u32) -> Self {
        ResidueZeta {
            work: ctx.boosted(10),
            n_cut,
            memo: HashMap::new(),
            p,
        }
    }

    fn get(&mut self, m: u32, rho: u8) -> Result<Real> {
        if let Some(v) = self.memo.get(&(m, rho)) {
            return Ok(v.clone());
        }
        let mut n0 = self.n_cut + 1;
        while n0 % 4 != rho as u64 {
            n0 += 1;
        }
        let a = self.work.rational(n0 as i64, 4);
        let s = self.work.real(m);
        let hz = hurwitz_zeta(&self.work, &s, &a)?;
        let mut v = Real::with_val(self.p, &hz);
        v >>= 2 * m;
        self.memo.insert((m, rho), v.clone());
        Ok(v)
    }
}

/// `Σ W(cn)/nᵏ` over the pattern encoded in the generator's decay class,
/// where the scale `c` must be a positive integer multiple of `π/2`.  Terms
/// up to a precision-driven cutoff come from the generator; the tail
/// substitutes the asymptotic expansions of `si`/`Ci` (whose sine/cosine
/// factors are exactly `0`/`±1` at these arguments) and closes each
/// asymptotic order with residue-class Hurwitz zeta values.  Other scales
/// fall back to paired direct summation with a crude error bound.
pub fn sum_sici_weighted(
    ctx: &Context,
    gen: &TermGenerator,
    weight_exponent: u32,
    argument_scale: &Real,
) -> Result<EvalResult> {
    let shape = match gen.decay() {
        DecayClass::SiCiWeighted(shape) => *shape,
        _ => {
            return Err(Error::Classification(
                "sum_sici_weighted requires a SiCiWeighted generator".into(),
            ))
        }
    };
    let k = weight_exponent;
    if !argument_scale.is_finite() || argument_scale.is_sign_negative() || argument_scale.is_zero()
    {
        return Err(Error::Domain("argument scale must be positive".into()));
    }
    match shape.weight {
        SiciWeight::Si => {
            if k < 2 {
                return Err(Error::Domain(
                    "Si-weighted sums need weight exponent ≥ 2".into(),
                ));
            }
        }
        _ => {
            if k < 1 {
                return Err(Error::Domain(
                    "si/Ci-weighted sums need weight exponent ≥ 1".into(),
                ));
            }
        }
    }
    let p = ctx.prec() + 32;
    let half_pi = Real::with_val(p, Constant::Pi) / 2u32;
    let u_real = Real::with_val(p, argument_scale) / &half_pi;
    let u_rounded = Real::with_val(p, u_real.round_ref());
    let u_f = u_rounded.to_f64();
    let mut dev = Real::with_val(p, &u_real - &u_rounded);
    dev.abs_mut();
    let mut snap = Real::with_val(p, 1);
    snap >>= ctx.prec() - 8;
    if !(1.0..=1e6).contains(&u_f) || dev > snap {
        return sici_fallback(ctx, gen);
    }
    let u = u_f as u64;
    let c = Real::with_val(p, &half_pi) * u as u32;
    let c_f = c.to_f64();

    let dg = (ctx.digits() + ctx.guard()) as f64;
    let n_cut = (((dg + 5.0) * std::f64::consts::LN_10 / c_f).ceil() as u64 + 8).max(64);

    // consistency spot-check: generator terms vs the engine's own model
    for m in [1u64, 2u64] {
        let n = canonical_n(shape.pattern, m);
        let y = Real::with_val(p, &c) * n as u32;
        let mut model = w_eval(ctx, shape.weight, &y)?;
        model /= Real::with_val(p, n).pow(k);
        if canonical_sign(shape.pattern, m) < 0 {
            model = -model;
        }
        let given = gen.term(ctx, m)?;
        let mut diff = Real::with_val(p, &model) - Real::with_val(p, &given);
        diff.abs_mut();
        let mut allow = Real::with_val(p, model.abs_ref());
        if allow < 1 {
            allow = Real::with_val(p, 1);
        }
        allow >>= ctx.prec() - 24;
        if diff > allow {
            return Err(Error::Classification(format!(
                "generator term {m} does not match the declared Si/Ci shape"
            )));
        }
    }

    // direct part from the generator
    let mut sum = Real::with_val(p, 0);
    let mut m = 1u64;
    let mut terms_used = 0u64;
    while canonical_n(shape.pattern, m) <= n_cut {
        let t = gen.term(ctx, m)?;
        sum += Real::with_val(p, &t);
        terms_used += 1;
        m += 1;
    }

    // tails over residue classes mod 4
    let weights = pattern_weights(shape.pattern);
    let mut rz = ResidueZeta::new(ctx, n_cut, p);
    let mut tail = Real::with_val(p, 0);
    let mut tol = Real::with_val(p, 1);
    tol >>= ctx.prec() + 16;

    // trig phase per residue class: r = (n·u) mod 4 when n ≡ ρ (mod 4)
    let cos_table = [1i32, 0, -1, 0];
    let sin_table = [0i32, 1, 0, -1];
    // Si = π/2 + si: the constant π/2 sums to a plain residue zeta block
    if matches!(shape.weight, SiciWeight::Si) {
        let mut const_part = Real::with_val(p, 0);
        for rho in 0u8..4 {
            let w = weights[rho as usize];
            if w == 0 {
                continue;
            }
            let z = rz.get(k, rho)?;
            if w > 0 {
                const_part += z;
            } else {
                const_part -= z;
            }
        }
        const_part *= &half_pi;
        tail += const_part;
    }
    // asymptotic orders: f carries 1/y^{2j+1}, g carries 1/y^{2j+2}
    let mut err_tail = Real::with_val(p, 0);
    let mut f_num = Real::with_val(p, 1); // (2j)!
    let mut g_num = Real::with_val(p, 1); // (2j+1)!
    let mut c_pow_f = Real::with_val(p, &c); // c^{2j+1}
    let mut c_pow_g = Real::with_val(p, c.square_ref()); // c^{2j+2}
    let mut prev_order_mag: Option<Real> = None;
    for j in 0..200u32 {
        if j > 0 {
            f_num *= (2 * j - 1) * (2 * j);
            g_num *= (2 * j) * (2 * j + 1);
            let c2 = Real::with_val(p, c.square_ref());
            c_pow_f *= &c2;
            c_pow_g *= &c2;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let mut order_contrib = Real::with_val(p, 0);
        let mut order_mag = Real::with_val(p, 0);
        for rho in 0u8..4 {
            let w = weights[rho as usize];
            if w == 0 {
                continue;
            }
            let r = ((rho as u64 * u) % 4) as usize;
            // si(y) = −f cos y − g sin y ; Ci(y) = f sin y − g cos y ;
            // Si shares si's oscillatory tail
            let (f_mult, g_mult) = match shape.weight {
                SiciWeight::Si | SiciWeight::SmallSi => (-cos_table[r], -sin_table[r]),
                SiciWeight::Ci => (sin_table[r], -cos_table[r]),
            };
            if f_mult != 0 {
                let z = rz.get(k + 2 * j + 1, rho)?;
                let mut piece = Real::with_val(p, &f_num / &c_pow_f);
                piece *= z;
                order_mag += Real::with_val(p, piece.abs_ref());
                piece *= f_mult * sign * w;
                order_contrib += piece;
            }
            if g_mult != 0 {
                let z = rz.get(k + 2 * j + 2, rho)?;
                let mut piece = Real::with_val(p, &g_num / &c_pow_g);
                piece *= z;
                order_mag += Real::with_val(p, piece.abs_ref());
                piece *= g_mult * sign * w;
                order_contrib += piece;
            }
        }
        if let Some(pm) = &prev_order_mag {
            if order_mag > *pm {
                // divergent expansion bottomed out: the first omitted
                // order bounds the substitution error
                err_tail += order_mag;
                break;
            }
        }
        tail += order_contrib;
        if order_mag < tol {
            err_tail += order_mag;
            break;
        }
        prev_order_mag = Some(order_mag);
    }
    sum += tail;
    let mut err = err_tail;
    let mut floor = Real::with_val(p, sum.abs_ref());
    floor >>= ctx.prec() - 4;
    err += floor;
    Ok(series_result(ctx, sum, err, terms_used))
}

/// Paired direct summation for scales that are not multiples of `π/2`;
/// converges only to the loose tolerance class.
fn sici_fallback(ctx: &Context, gen: &TermGenerator) -> Result<EvalResult> {
    let p = ctx.prec() + 32;
    let mut sum = Real::with_val(p, 0);
    let tol = {
        let mut t = Real::with_val(p, 1);
        t >>= 43;
        t
    };
    let mut m = 1u64;
    while m + 1 <= ctx.max_series_terms() as u64 {
        let a = gen.term(ctx, m)?;
        let b = gen.term(ctx, m + 1)?;
        let mut pair = Real::with_val(p, &a);
        pair += Real::with_val(p, &b);
        sum += &pair;
        let pair_mag = Real::with_val(p, pair.abs_ref());
        if pair_mag < tol && m > 64 {
            let err = pair_mag * 16u32;
            return Ok(series_result(ctx, sum, err, m + 1));
        }
        m += 2;
    }
    Err(Error::NonConvergence {
        detail: "paired summation did not reach the loose tolerance".into(),
        partial: Some(ctx.to_decimal(&Real::with_val(ctx.prec(), &sum))),
    })
}

// --- combinatorial double sum ----------------------------------------------

/// `Σ_{n≥1} 2^{−n} Σ_{k=1}^{n} C(n,k) k^{−s}` by direct evaluation with a
/// fitted smooth tail (the summand behaves like `(n/2)^{−s}`); no use is
/// made of the closed form it is expected to equal.
pub fn euler_binomial_double_sum(ctx: &Context, s: &Real) -> Result<EvalResult> {
    let two = Real::with_val(ctx.prec(), 2);
    if !s.is_finite() || *s < two {
        return Err(Error::Domain(format!(
            "euler_binomial_double_sum requires s ≥ 2, got {}",
            ctx.to_decimal(s)
        )));
    }
    let p = ctx.prec() + 32;
    let n_cut = fit_cutoff(ctx);
    let l = fit_order(ctx, n_cut);
    let step = (n_cut / (2 * (l as u64 + 2))).max(1);
    let sample_at: Vec<u64> = (0..(l + 2))
        .map(|i| n_cut - (l + 1 - i) as u64 * step)
        .collect();
    // k^{−s} precomputed
    let minus_s = -Real::with_val(p, s);
    let mut kpows: Vec<Real> = Vec::with_capacity(n_cut as usize + 1);
    kpows.push(Real::with_val(p, 0));
    for k in 1..=n_cut {
        let mut lg = Real::with_val(p, k).ln();
        lg *= &minus_s;
        kpows.push(lg.exp());
    }
    // Pascal row updated in place
    let mut row: Vec<Integer> = vec![Integer::from(1)];
    let mut sum = Real::with_val(p, 0);
    let mut samples: Vec<(u64, Real)> = Vec::with_capacity(sample_at.len());
    for n in 1..=n_cut {
        row.push(Integer::from(1));
        for k in (1..row.len() - 1).rev() {
            let add = row[k - 1].clone();
            row[k] += add;
        }
        let mut inner = Real::with_val(p, 0);
        for k in 1..=(n as usize) {
            inner += Real::with_val(p, &row[k]) * &kpows[k];
        }
        inner >>= n as u32;
        if sample_at.contains(&n) {
            samples.push((n, inner.clone()));
        }
        sum += inner;
    }
    let e = Real::with_val(ctx.prec() + 192, s);
    let (tail, err) = power_tail(ctx, &samples, &e, n_cut)?;
    sum += tail;
    Ok(series_result(ctx, sum, err, n_cut))
}

// --- odd-power trigonometric integrals ---------------------------------------

/// Which odd-power integral [`wiener_odd_power_integral`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WienerKind {
    /// `∫₀ᵗ sin^{2n+1} x dx`
    SinOdd,
    /// `∫₀ᵗ cos^{2n+1} x dx`
    CosOdd,
}

/// Upper limit of the integral, given either as an angle or as the exact
/// rational value of the trig function the finite sum needs (`cos t` for
/// the sine integral, `sin t` for the cosine integral).
#[derive(Clone, Debug)]
pub enum TrigArg {
    Angle(Real),
    CosOf(Rational),
    SinOf(Rational),
}

/// Exact or floating result of the finite binomial sum.
#[derive(Clone, Debug)]
pub enum WienerValue {
    Exact(Rational),
    Numeric(Real),
}

impl WienerValue {
    pub fn to_real(&self, ctx: &Context) -> Real {
        match self {
            WienerValue::Exact(q) => ctx.from_rational(q),
            WienerValue::Numeric(r) => Real::with_val(ctx.prec(), r),
        }
    }
}

/// `∫₀ᵗ sin^{2n+1}x dx = Σ_k C(n,k)(−1)^{k+1} cos^{2k+1}t/(2k+1) + Σ_k C(n,k)(−1)^k/(2k+1)`
/// and `∫₀ᵗ cos^{2n+1}x dx = Σ_k C(n,k)(−1)^k sin^{2k+1}t/(2k+1)`; exact
/// rational arithmetic whenever the needed trig value is given as a
/// rational.
pub fn wiener_odd_power_integral(
    ctx: &Context,
    kind: WienerKind,
    n: u32,
    t: &TrigArg,
) -> Result<WienerValue> {
    match (kind, t) {
        (WienerKind::SinOdd, TrigArg::CosOf(q)) => Ok(WienerValue::Exact(sin_odd_exact(n, q))),
        (WienerKind::CosOdd, TrigArg::SinOf(q)) => Ok(WienerValue::Exact(cos_odd_exact(n, q))),
        (WienerKind::SinOdd, TrigArg::SinOf(_)) | (WienerKind::CosOdd, TrigArg::CosOf(_)) => {
            Err(Error::Config(
                "sine integrals need cos t, cosine integrals need sin t".into(),
            ))
        }
        (WienerKind::SinOdd, TrigArg::Angle(angle)) => {
            let p = ctx.prec() + 16;
            let cq = Real::with_val(p, angle.cos_ref());
            Ok(WienerValue::Numeric(sin_odd_numeric(ctx, n, &cq)))
        }
        (WienerKind::CosOdd, TrigArg::Angle(angle)) => {
            let p = ctx.prec() + 16;
            let sq = Real::with_val(p, angle.sin_ref());
            Ok(WienerValue::Numeric(cos_odd_numeric(ctx, n, &sq)))
        }
    }
}

fn sin_odd_exact(n: u32, cos_t: &Rational) -> Rational {
    let mut acc = Rational::new();
    let c2 = Rational::from(cos_t * cos_t);
    let mut cpow = cos_t.clone();
    for k in 0..=n {
        let b = binomial(n as u64, k as u64);
        let term = Rational::from((b, Integer::from(2 * k + 1)));
        let with_c = Rational::from(&term * &cpow);
        // (−1)^{k+1} on the cosine part, (−1)^k on the constant part
        if k % 2 == 0 {
            acc -= with_c;
            acc += term;
        } else {
            acc += with_c;
            acc -= term;
        }
        cpow *= &c2;
    }
    acc
}

fn cos_odd_exact(n: u32, sin_t: &Rational) -> Rational {
    let mut acc = Rational::new();
    let s2 = Rational::from(sin_t * sin_t);
    let mut spow = sin_t.clone();
    for k in 0..=n {
        let b = binomial(n as u64, k as u64);
        let term = Rational::from((b, Integer::from(2 * k + 1)));
        let with_s = Rational::from(&term * &spow);
        if k % 2 == 0 {
            acc += with_s;
        } else {
            acc -= with_s;
        }
        spow *= &s2;
    }
    acc
}

fn sin_odd_numeric(ctx: &Context, n: u32, cos_t: &Real) -> Real {
    let p = ctx.prec() + 16;
    let mut acc = Real::with_val(p, 0);
    let c2 = Real::with_val(p, cos_t.square_ref());
    let mut cpow = Real::with_val(p, cos_t);
    for k in 0..=n {
        let mut term = Real::with_val(p, &binomial(n as u64, k as u64));
        term /= 2 * k + 1;
        let with_c = Real::with_val(p, &term * &cpow);
        if k % 2 == 0 {
            acc -= with_c;
            acc += term;
        } else {
            acc += with_c;
            acc -= term;
        }
        cpow *= &c2;
    }
    Real::with_val(ctx.prec(), &acc)
}

fn cos_odd_numeric(ctx: &Context, n: u32, sin_t: &Real) -> Real {
    let p = ctx.prec() + 16;
    let mut acc = Real::with_val(p, 0);
    let s2 = Real::with_val(p, sin_t.square_ref());
    let mut spow = Real::with_val(p, sin_t);
    for k in 0..=n {
        let mut term = Real::with_val(p, &binomial(n as u64, k as u64));
        term /= 2 * k + 1;
        term *= &spow;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        spow *= &s2;
    }
    Real::with_val(ctx.prec(), &acc)
}

/// `(2n)!!/(2n+1)!!` as an exact rational.
pub fn double_factorial_ratio(n: u32) -> Rational {
    let mut acc = Rational::from(1);
    for j in 1..=n {
        acc *= Rational::from((2 * j, 2 * j + 1));
    }
    acc
}

// --- harmonic numbers --------------------------------------------------------

/// Exact harmonic numbers `H_n^{(r)}`, `r ∈ {1,2,3,4}`, and odd harmonics
/// `O_n = Σ_{k≤n} 1/(2k−1)`, kept as rationals up to a size bound and
/// served at context precision beyond it (via `ζ(r) − ζ(r, n+1)` and the
/// digamma route).
pub struct HarmonicTable {
    n_max: u64,
    n_small: u64,
    exact: [Vec<Rational>; 4],
    odd_exact: Vec<Rational>,
}

impl HarmonicTable {
    pub fn new(n_max: u64) -> Self {
        let n_small = n_max.min(1024);
        let cap = n_small as usize + 1;
        let mut exact: [Vec<Rational>; 4] = [
            Vec::with_capacity(cap),
            Vec::with_capacity(cap),
            Vec::with_capacity(cap),
            Vec::with_capacity(cap),
        ];
        let mut odd_exact = Vec::with_capacity(cap);
        for v in exact.iter_mut() {
            v.push(Rational::new());
        }
        odd_exact.push(Rational::new());
        for n in 1..=n_small {
            for (i, v) in exact.iter_mut().enumerate() {
                let den = Integer::from(n).pow(i as u32 + 1);
                let prev = v[n as usize - 1].clone();
                v.push(prev + Rational::from((Integer::from(1), den)));
            }
            let prev = odd_exact[n as usize - 1].clone();
            odd_exact.push(prev + Rational::from((1u64, 2 * n - 1)));
        }
        HarmonicTable {
            n_max,
            n_small,
            exact,
            odd_exact,
        }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Exact `H_n^{(r)}` when within the rational range.
    pub fn harmonic_exact(&self, r: u32, n: u64) -> Option<&Rational> {
        if (1..=4).contains(&r) && n <= self.n_small {
            self.exact[r as usize - 1].get(n as usize)
        } else {
            None
        }
    }

    /// Exact `O_n` when within the rational range.
    pub fn odd_exact(&self, n: u64) -> Option<&Rational> {
        if n <= self.n_small {
            self.odd_exact.get(n as usize)
        } else {
            None
        }
    }

    /// `H_n^{(r)}` at context precision for any `n ≤ n_max`.
    pub fn harmonic(&self, ctx: &Context, r: u32, n: u64) -> Result<Real> {
        if !(1..=4).contains(&r) {
            return Err(Error::Domain(format!(
                "harmonic order must be 1..=4, got {r}"
            )));
        }
        if n > self.n_max {
            return Err(Error::Domain(format!(
                "harmonic index {n} exceeds table bound {}",
                self.n_max
            )));
        }
        if let Some(q) = self.harmonic_exact(r, n) {
            return Ok(ctx.from_rational(q));
        }
        let work = ctx.boosted(8);
        if r == 1 {
            // H_n = γ + ψ(n+1)
            let psi = crate::specfun::polygamma(&work, 0, &work.real(n as i64 + 1))?;
            let mut v = Real::with_val(work.prec(), Constant::Euler);
            v += psi;
            Ok(Real::with_val(ctx.prec(), &v))
        } else {
            let s = work.real(r);
            let z = zeta(&work, &s)?;
            let hz = hurwitz_zeta(&work, &s, &work.real(n as i64 + 1))?;
            let v = z - hz;
            Ok(Real::with_val(ctx.prec(), &v))
        }
    }

    /// `O_n = H_{2n} − H_n/2` at context precision for any `2n ≤ n_max`.
    pub fn odd(&self, ctx: &Context, n: u64) -> Result<Real> {
        if let Some(q) = self.odd_exact(n) {
            return Ok(ctx.from_rational(q));
        }
        if 2 * n > self.n_max {
            return Err(Error::Domain(format!(
                "odd harmonic index {n} exceeds table bound {}",
                self.n_max
            )));
        }
        let p = ctx.prec() + 8;
        let h2n = self.harmonic(ctx, 1, 2 * n)?;
        let hn = self.harmonic(ctx, 1, n)?;
        let mut v = Real::with_val(p, &h2n);
        v -= Real::with_val(p, &hn) / 2u32;
        Ok(Real::with_val(ctx.prec(), &v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{abs_err, make_context, rel_err};

    fn ctx() -> Context {
        make_context(40).unwrap()
    }

    #[test]
    fn geometric_series() {
        let c = ctx();
        let gen = TermGenerator::new(DecayClass::Geometric { ratio: 0.25 }, |cc, n| {
            let mut t = Real::with_val(cc.prec() + 32, 1);
            t >>= 2 * n as u32;
            Ok(t)
        });
        let r = sum_series(&c, &gen).unwrap();
        let want = c.rational(1, 3);
        assert!(abs_err(&r.value, &want) < c.pow10(-44));
        assert!(r.err_estimate < c.pow10(-40));
    }

    #[test]
    fn zeta_powers_of_quarter() {
        let c = ctx();
        // Σ_{n≥1} ζ(2n)/4ⁿ = 1/2
        let gen = TermGenerator::new(DecayClass::Geometric { ratio: 0.25 }, |cc, n| {
            let b = cc.boosted(8);
            let z = zeta(&b, &b.real(2 * n as u32))?;
            let mut t = Real::with_val(b.prec(), &z);
            t >>= 2 * n as u32;
            Ok(t)
        });
        let r = sum_series(&c, &gen).unwrap();
        let want = c.rational(1, 2);
        assert!(
            abs_err(&r.value, &want) < c.pow10(-40),
            "got {}",
            c.to_decimal(&r.value)
        );
    }

    #[test]
    fn central_binomial_over_n() {
        let c = ctx();
        // Σ C(2n,n)/(n·4ⁿ) = 2 log 2, Wallis-ratio decay n^{−3/2}
        let gen = TermGenerator::new(DecayClass::Power { exponent: 1.5 }, |cc, n| {
            let p = cc.prec() + 32;
            let mut t = Real::with_val(p, &binomial(2 * n, n));
            t >>= 2 * n as u32;
            t /= Real::with_val(p, n);
            Ok(t)
        });
        let r = sum_series(&c, &gen).unwrap();
        let want = Real::with_val(c.prec(), c.log2()) * 2u32;
        assert!(
            rel_err(&r.value, &want) < c.pow10(-38),
            "got {} want {} err-est {}",
            c.to_decimal(&r.value),
            c.to_decimal(&want),
            c.to_decimal(&r.err_estimate)
        );
    }

    #[test]
    fn basel_under_ten_thousand_terms() {
        let c = ctx();
        let gen = TermGenerator::new(DecayClass::Power { exponent: 2.0 }, |cc, n| {
            let mut t = Real::with_val(cc.prec() + 32, n);
            t.square_mut();
            t.recip_mut();
            Ok(t)
        });
        let r = sum_series(&c, &gen).unwrap();
        let mut want = Real::with_val(c.prec() + 16, c.pi());
        want.square_mut();
        want /= 6u32;
        assert!(rel_err(&r.value, &Real::with_val(c.prec(), &want)) < c.pow10(-35));
        assert!(r.terms_used <= 10_000);
    }

    #[test]
    fn alternating_log_two_and_pi_quarter() {
        let c = ctx();
        let gen = TermGenerator::new(DecayClass::Alternating, |cc, n| {
            let mut t = Real::with_val(cc.prec() + 32, 1);
            t /= n as u32;
            if n % 2 == 0 {
                t = -t;
            }
            Ok(t)
        });
        let r = sum_alternating(&c, &gen).unwrap();
        let want = c.log2();
        assert!(
            abs_err(&r.value, &want) < c.pow10(-38),
            "got {}",
            c.to_decimal(&r.value)
        );
        let gen = TermGenerator::new(DecayClass::Alternating, |cc, n| {
            let mut t = Real::with_val(cc.prec() + 32, 1);
            t /= 2 * n as u32 - 1;
            if n % 2 == 0 {
                t = -t;
            }
            Ok(t)
        });
        let r = sum_alternating(&c, &gen).unwrap();
        let want = Real::with_val(c.prec(), c.pi()) / 4u32;
        assert!(abs_err(&r.value, &want) < c.pow10(-38));
    }

    #[test]
    fn one_signed_fallback_si_series() {
        let c = ctx();
        // Σ (−1)ⁿ si(nπ)/n = (π/2)log2 − π/2; every term is negative
        let gen = TermGenerator::new(DecayClass::Alternating, |cc, n| {
            let p = cc.prec() + 32;
            let arg = Real::with_val(p, Constant::Pi) * n as u32;
            let v = si(cc, &Real::with_val(cc.prec(), &arg))?;
            let mut t = Real::with_val(p, &v);
            t /= n as u32;
            if n % 2 == 1 {
                t = -t;
            }
            Ok(t)
        });
        let r = sum_alternating(&c, &gen).unwrap();
        let mut want = Real::with_val(c.prec() + 16, c.log2());
        want -= 1u32;
        want *= Real::with_val(c.prec() + 16, c.pi());
        want /= 2u32;
        assert!(
            abs_err(&r.value, &Real::with_val(c.prec(), &want)) < c.pow10(-30),
            "got {} want {}",
            c.to_decimal(&r.value),
            c.to_decimal(&want)
        );
    }

    #[test]
    fn sici_si_over_cubes() {
        let c = ctx();
        // Σ Si(nπ)/n³ = 5π³/72
        let shape = SiciShape {
            weight: SiciWeight::Si,
            pattern: SiciPattern::All,
        };
        let gen = TermGenerator::new(DecayClass::SiCiWeighted(shape), |cc, n| {
            let p = cc.prec() + 32;
            let arg = Real::with_val(p, Constant::Pi) * n as u32;
            let v = sin_integral(cc, &Real::with_val(cc.prec(), &arg))?;
            let mut t = Real::with_val(p, &v);
            t /= Real::with_val(p, n).pow(3u32);
            Ok(t)
        });
        let pi = Real::with_val(c.prec() + 32, Constant::Pi);
        let r = sum_sici_weighted(&c, &gen, 3, &pi).unwrap();
        let mut want = Real::with_val(c.prec() + 32, Constant::Pi).pow(3u32);
        want *= 5u32;
        want /= 72u32;
        assert!(
            rel_err(&r.value, &Real::with_val(c.prec(), &want)) < c.pow10(-35),
            "got {} want {}",
            c.to_decimal(&r.value),
            c.to_decimal(&want)
        );
    }

    #[test]
    fn sici_ci_at_even_multiples() {
        let c = ctx();
        // Σ Ci(2nπ)/n² = 2π²(log A − 1/4)
        let shape = SiciShape {
            weight: SiciWeight::Ci,
            pattern: SiciPattern::All,
        };
        let gen = TermGenerator::new(DecayClass::SiCiWeighted(shape), |cc, n| {
            let p = cc.prec() + 32;
            let mut arg = Real::with_val(p, Constant::Pi) * n as u32;
            arg *= 2u32;
            let v = cos_integral(cc, &Real::with_val(cc.prec(), &arg))?;
            let mut t = Real::with_val(p, &v);
            t /= Real::with_val(p, n).pow(2u32);
            Ok(t)
        });
        let two_pi = Real::with_val(c.prec() + 32, Constant::Pi) * 2u32;
        let r = sum_sici_weighted(&c, &gen, 2, &two_pi).unwrap();
        let p = c.prec() + 32;
        let mut want = Real::with_val(p, c.log_glaisher_a());
        want -= Real::with_val(p, 0.25);
        want *= Real::with_val(p, Constant::Pi).square();
        want *= 2u32;
        assert!(
            rel_err(&r.value, &Real::with_val(c.prec(), &want)) < c.pow10(-33),
            "got {} want {}",
            c.to_decimal(&r.value),
            c.to_decimal(&want)
        );
    }

    #[test]
    fn sici_tails_match_direct_summation() {
        let c = make_context(16).unwrap();
        // Σ si(nπ)/n² against a long direct sum
        let shape = SiciShape {
            weight: SiciWeight::SmallSi,
            pattern: SiciPattern::All,
        };
        let gen = TermGenerator::new(DecayClass::SiCiWeighted(shape), |cc, n| {
            let p = cc.prec() + 32;
            let arg = Real::with_val(p, Constant::Pi) * n as u32;
            let v = si(cc, &Real::with_val(cc.prec(), &arg))?;
            let mut t = Real::with_val(p, &v);
            t /= Real::with_val(p, n).pow(2u32);
            Ok(t)
        });
        let pi = Real::with_val(c.prec() + 32, Constant::Pi);
        let r = sum_sici_weighted(&c, &gen, 2, &pi).unwrap();
        let mut direct = Real::with_val(c.prec() + 32, 0);
        for n in 1u64..=4000 {
            direct += Real::with_val(c.prec() + 32, &gen.term(&c, n).unwrap());
        }
        let diff = abs_err(&r.value, &Real::with_val(c.prec(), &direct));
        assert!(
            diff < c.parse("1e-7").unwrap(),
            "engine {} vs direct {}",
            c.to_decimal(&r.value),
            c.to_decimal(&direct)
        );
    }

    #[test]
    fn sici_splitting_identity() {
        let c = ctx();
        // Σ(−1)ⁿCi(nπ)/n² + ΣCi(nπ)/n² = ½·ΣCi(2nπ)/n²
        let p = c.prec() + 32;
        let pi = Real::with_val(p, Constant::Pi);
        let mk = |pattern: SiciPattern, scale_mul: u32| {
            let shape = SiciShape {
                weight: SiciWeight::Ci,
                pattern,
            };
            TermGenerator::new(DecayClass::SiCiWeighted(shape), move |cc, n| {
                let pp = cc.prec() + 32;
                let mut arg = Real::with_val(pp, Constant::Pi) * n as u32;
                arg *= scale_mul;
                let v = cos_integral(cc, &Real::with_val(cc.prec(), &arg))?;
                let mut t = Real::with_val(pp, &v);
                t /= Real::with_val(pp, n).pow(2u32);
                if matches!(pattern, SiciPattern::AlternatingMinusFirst) && n % 2 == 1 {
                    t = -t;
                }
                Ok(t)
            })
        };
        let alt = mk(SiciPattern::AlternatingMinusFirst, 1);
        let plain = mk(SiciPattern::All, 1);
        let doubled = mk(SiciPattern::All, 2);
        let r_alt = sum_sici_weighted(&c, &alt, 2, &pi).unwrap();
        let r_plain = sum_sici_weighted(&c, &plain, 2, &pi).unwrap();
        let two_pi = Real::with_val(p, Constant::Pi) * 2u32;
        let r_dbl = sum_sici_weighted(&c, &doubled, 2, &two_pi).unwrap();
        let mut lhs = Real::with_val(p, &r_alt.value);
        lhs += Real::with_val(p, &r_plain.value);
        let rhs = Real::with_val(p, &r_dbl.value) / 2u32;
        let diff = abs_err(
            &Real::with_val(c.prec(), &lhs),
            &Real::with_val(c.prec(), &rhs),
        );
        assert!(diff < c.pow10(-(c.digits() as i32 - 8)));
    }

    #[test]
    fn binomial_double_sum_values() {
        let c = make_context(30).unwrap();
        // Σ 2^{−n} Σ_k C(n,k)/kˢ = 2ζ(s)
        for s in [2u32, 3, 4] {
            let r = euler_binomial_double_sum(&c, &c.real(s)).unwrap();
            let b = c.boosted(8);
            let z = zeta(&b, &b.real(s)).unwrap();
            let want = Real::with_val(c.prec(), &z) * 2u32;
            assert!(
                rel_err(&r.value, &want) < c.pow10(-25),
                "s={s}: got {} want {}",
                c.to_decimal(&r.value),
                c.to_decimal(&want)
            );
        }
    }

    #[test]
    fn wiener_exact_halfpi() {
        let c = ctx();
        // cos t = 0 (t = π/2): ∫₀^{π/2} sin^{2n+1} = (2n)!!/(2n+1)!!
        for n in 0u32..=12 {
            let v = wiener_odd_power_integral(
                &c,
                WienerKind::SinOdd,
                n,
                &TrigArg::CosOf(Rational::new()),
            )
            .unwrap();
            match v {
                WienerValue::Exact(q) => assert_eq!(q, double_factorial_ratio(n), "n = {n}"),
                _ => panic!("expected exact value"),
            }
        }
        assert_eq!(double_factorial_ratio(0), Rational::from(1));
        assert_eq!(double_factorial_ratio(1), Rational::from((2, 3)));
        assert_eq!(double_factorial_ratio(2), Rational::from((8, 15)));
    }

    #[test]
    fn wiener_third_pi_both_routes() {
        let c = ctx();
        // n=1, t=π/3: cos t = 1/2 → 5/24
        let v = wiener_odd_power_integral(
            &c,
            WienerKind::SinOdd,
            1,
            &TrigArg::CosOf(Rational::from((1, 2))),
        )
        .unwrap();
        match &v {
            WienerValue::Exact(q) => assert_eq!(*q, Rational::from((5, 24))),
            _ => panic!("expected exact value"),
        }
        let third_pi = Real::with_val(c.prec() + 16, Constant::Pi) / 3u32;
        let v2 = wiener_odd_power_integral(&c, WienerKind::SinOdd, 1, &TrigArg::Angle(third_pi))
            .unwrap();
        let exact = v.to_real(&c);
        let numeric = v2.to_real(&c);
        assert!(abs_err(&exact, &numeric) < c.pow10(-38));
        // cosine route: sin(π/6) = 1/2 → 1/2 − 1/24 = 11/24
        let v3 = wiener_odd_power_integral(
            &c,
            WienerKind::CosOdd,
            1,
            &TrigArg::SinOf(Rational::from((1, 2))),
        )
        .unwrap();
        match v3 {
            WienerValue::Exact(q) => assert_eq!(q, Rational::from((11, 24))),
            _ => panic!("expected exact value"),
        }
    }

    #[test]
    fn wiener_rejects_mismatched_inputs() {
        let c = ctx();
        assert!(matches!(
            wiener_odd_power_integral(
                &c,
                WienerKind::SinOdd,
                1,
                &TrigArg::SinOf(Rational::from((1, 2)))
            ),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn harmonic_table_exactness() {
        let c = ctx();
        let table = HarmonicTable::new(4096);
        // H_n − H_{n−1} = 1/n exactly
        for n in [2u64, 17, 256, 1024] {
            let a = table.harmonic_exact(1, n).unwrap();
            let b = table.harmonic_exact(1, n - 1).unwrap();
            let diff = Rational::from(a - b);
            assert_eq!(diff, Rational::from((1u64, n)));
        }
        // H_10 = 7381/2520
        assert_eq!(
            *table.harmonic_exact(1, 10).unwrap(),
            Rational::from((7381, 2520))
        );
        // ψ(n+1) = H_n − γ across modules
        let n = 10u64;
        let h = table.harmonic(&c, 1, n).unwrap();
        let psi = crate::specfun::polygamma(&c, 0, &c.real(n as i64 + 1)).unwrap();
        let mut want = Real::with_val(c.prec() + 16, &h);
        want -= Real::with_val(c.prec() + 16, Constant::Euler);
        assert!(abs_err(&psi, &Real::with_val(c.prec(), &want)) < c.pow10(-38));
        // O_n = H_{2n} − H_n/2 exactly
        let o = table.odd_exact(5).unwrap();
        let h10 = table.harmonic_exact(1, 10).unwrap();
        let h5 = table.harmonic_exact(1, 5).unwrap();
        let want = Rational::from(h10 - &Rational::from(h5 / 2u32));
        assert_eq!(*o, want);
        // floating route beyond the exact range matches the zeta form
        let big = table.harmonic(&c, 2, 2000).unwrap();
        let b = c.boosted(8);
        let z = zeta(&b, &b.real(2)).unwrap();
        let hz = hurwitz_zeta(&b, &b.real(2), &b.real(2001)).unwrap();
        let want = Real::with_val(c.prec(), &(z - hz));
        assert!(abs_err(&big, &want) < c.pow10(-38));
    }

    #[test]
    fn demoivre_finite_identity() {
        let c = ctx();
        // 2ⁿ cosⁿx · cos nx = Σ_k C(n,k) cos 2kx
        let p = c.prec() + 16;
        for n in [1u32, 3, 6] {
            for xi in 1..=5 {
                let x = Real::with_val(p, xi) / 7u32;
                let mut lhs = Real::with_val(p, x.cos_ref()).pow(n);
                lhs <<= n;
                let nx = Real::with_val(p, &x) * n;
                lhs *= nx.cos();
                let mut rhs = Real::with_val(p, 0);
                for k in 0..=n {
                    let mut ang = Real::with_val(p, &x);
                    ang *= 2 * k;
                    rhs += Real::with_val(p, &binomial(n as u64, k as u64)) * ang.cos();
                }
                let diff = abs_err(
                    &Real::with_val(c.prec(), &lhs),
                    &Real::with_val(c.prec(), &rhs),
                );
                assert!(diff < c.pow10(-(c.digits() as i32 - 5)));
            }
        }
    }

    #[test]
    fn generator_mismatch_detected() {
        let c = ctx();
        let shape = SiciShape {
            weight: SiciWeight::Si,
            pattern: SiciPattern::All,
        };
        // wrong power in the denominator vs the declared k = 3
        let gen = TermGenerator::new(DecayClass::SiCiWeighted(shape), |cc, n| {
            let p = cc.prec() + 32;
            let arg = Real::with_val(p, Constant::Pi) * n as u32;
            let v = sin_integral(cc, &Real::with_val(cc.prec(), &arg))?;
            let mut t = Real::with_val(p, &v);
            t /= Real::with_val(p, n).pow(2u32);
            Ok(t)
        });
        let pi = Real::with_val(c.prec() + 32, Constant::Pi);
        assert!(matches!(
            sum_sici_weighted(&c, &gen, 3, &pi),
            Err(Error::Classification(_))
        ));
    }
}
