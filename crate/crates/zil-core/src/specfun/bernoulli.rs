//! Exact Bernoulli and Euler numbers and polynomials.
//!
//! Numbers are produced by the classical recurrences in exact rational
//! (resp. integer) arithmetic and cached process-wide; polynomials are
//! expanded once into monomial coefficient vectors of exact rationals and
//! evaluated by Horner's rule at context precision.

use crate::numkernel::binomial;
use crate::{Context, Real};
use rug::{Integer, Rational};
use std::sync::Mutex;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
static EULER_EVEN: Mutex<Vec<Integer>> = Mutex::new(Vec::new());

/// Exact Bernoulli number Bₙ (convention B₁ = −1/2).
///
/// Computed by the recurrence `Σ_{k=0}^{m} C(m+1,k) B_k = 0` and cached.
pub fn bernoulli_number(n: u32) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n as usize {
        let m = cache.len() as u64;
        if m >= 3 && m % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, b) in cache.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += Rational::from((binomial(m + 1, k as u64), Integer::from(1))) * b;
        }
        acc /= Rational::from(-((m + 1) as i64));
        cache.push(acc);
    }
    cache[n as usize].clone()
}

/// Exact Euler number Eₙ (E₀ = 1, odd-index numbers vanish).
///
/// Even-index values follow the recurrence `Σ_{k=0}^{n} C(2n,2k) E_{2k} = 0`.
pub fn euler_number(n: u32) -> Integer {
    if n % 2 == 1 {
        return Integer::new();
    }
    let half = (n / 2) as usize;
    let mut cache = EULER_EVEN.lock().unwrap();
    if cache.is_empty() {
        cache.push(Integer::from(1));
    }
    while cache.len() <= half {
        let m = cache.len() as u64; // computing E_{2m}
        let mut acc = Integer::new();
        for (k, e) in cache.iter().enumerate() {
            acc += binomial(2 * m, 2 * k as u64) * e;
        }
        cache.push(-acc);
    }
    cache[half].clone()
}

/// Polynomial family selector for [`PolySpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    Bernoulli,
    Euler,
}

/// A Bernoulli or Euler polynomial held as exact rational monomial
/// coefficients (`coefficients[i]` multiplies `x^i`).
#[derive(Debug, Clone)]
pub struct PolySpec {
    pub kind: PolyKind,
    pub degree: u32,
    pub coefficients: Vec<Rational>,
}

/// The Bernoulli polynomial Bₙ(x) as a [`PolySpec`].
///
/// `Bₙ(x) = Σ_{k=0}^{n} C(n,k) B_{n−k} x^k`.
pub fn bernoulli_poly(n: u32) -> PolySpec {
    let mut coeffs = vec![Rational::new(); n as usize + 1];
    for k in 0..=n {
        let b = bernoulli_number(n - k);
        if b.is_zero() {
            continue;
        }
        coeffs[k as usize] = Rational::from((binomial(n as u64, k as u64), Integer::from(1))) * b;
    }
    PolySpec {
        kind: PolyKind::Bernoulli,
        degree: n,
        coefficients: coeffs,
    }
}

/// The Euler polynomial Eₙ(x) as a [`PolySpec`].
///
/// Expanded from `Eₙ(x) = Σ_{k=0}^{n} C(n,k) (E_k/2^k) (x−1/2)^{n−k}` into
/// the monomial basis.
pub fn euler_poly(n: u32) -> PolySpec {
    let mut coeffs = vec![Rational::new(); n as usize + 1];
    for k in 0..=n {
        let e = euler_number(k);
        if e.is_zero() {
            continue;
        }
        let outer = Rational::from((
            binomial(n as u64, k as u64) * &e,
            Integer::from(1) << k,
        ));
        let m = n - k; // expand (x − 1/2)^m
        for j in 0..=m {
            let mut c = Rational::from((binomial(m as u64, j as u64), Integer::from(1) << (m - j)));
            if (m - j) % 2 == 1 {
                c = -c;
            }
            coeffs[j as usize] += c * &outer;
        }
    }
    PolySpec {
        kind: PolyKind::Euler,
        degree: n,
        coefficients: coeffs,
    }
}

/// Evaluates a [`PolySpec`] at `x` by Horner's rule at context precision.
pub fn poly_eval(ctx: &Context, spec: &PolySpec, x: &Real) -> Real {
    let mut acc = ctx.zero();
    for c in spec.coefficients.iter().rev() {
        acc *= x;
        if !c.is_zero() {
            acc += ctx.from_rational(c);
        }
    }
    acc
}

/// Evaluates a [`PolySpec`] at an exact rational point.
pub fn poly_eval_exact(spec: &PolySpec, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in spec.coefficients.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}
