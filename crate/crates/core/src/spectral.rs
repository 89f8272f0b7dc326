//! Maximum coefficients and the sup norm of `T` on the unit circle.
//!
//! The sup norm is estimated by sampling `|T(e^{i theta})|` on an equispaced
//! grid and polishing the best sample with a golden-section search. Each
//! evaluation multiplies the factor magnitudes `|1 - e^{i m theta}| =
//! 2 |sin(m theta / 2)|` directly and never touches the expanded
//! coefficients. The result is the largest value actually evaluated, so it
//! is a lower bound on the true sup (up to floating-point rounding), never
//! an upper bound.

use std::f64::consts::{LN_2, TAU};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{expand_product_within, max_abs, Budget, IntPolynomial, ProductSpec};

/// Above this degree, magnitudes are accumulated as sums of logarithms.
pub const LOG_SPACE_DEGREE: u64 = 10_000;

/// Primes for which the maximum coefficient has a two-sided estimate.
pub const SHARP_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Base of the lower bound for `p > 15`, truncated to the published digits.
pub const LARGE_PRIME_BASE: f64 = 1.219;

const GOLDEN_ITERATIONS: usize = 80;

pub fn max_abs_coeff(poly: &IntPolynomial) -> BigInt {
    max_abs(poly)
}

/// `sum_i |t_i|`, which bounds `|T|` on the unit circle from above.
pub fn abs_coeff_sum(poly: &IntPolynomial) -> BigInt {
    poly.coeffs().iter().map(|c| c.abs()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNormEstimate {
    /// Largest sampled `|T|`; may be `inf` when it exceeds the `f64` range.
    pub value: f64,
    /// Natural log of `value`, finite even when `value` overflows.
    pub log_value: f64,
    /// Angle at which `value` was attained.
    pub theta: f64,
    pub samples: u64,
    pub refined: bool,
}

impl SupNormEstimate {
    pub fn log_base(&self, p: u32) -> f64 {
        self.log_value / (p as f64).ln()
    }
}

fn uses_log_space(spec: &ProductSpec) -> bool {
    spec.degree() > LOG_SPACE_DEGREE
}

/// `ln |T(e^{i theta})|`.
pub fn log_abs_at(spec: &ProductSpec, theta: f64) -> f64 {
    let s = spec.s() as f64;
    spec.factor_exponents()
        .map(|m| s * (2.0 * (m as f64 * theta / 2.0).sin().abs()).ln())
        .sum()
}

/// `|T(e^{i theta})|` as a product of factor magnitudes.
pub fn abs_at(spec: &ProductSpec, theta: f64) -> f64 {
    if uses_log_space(spec) {
        return log_abs_at(spec, theta).exp();
    }
    let s = spec.s() as i32;
    spec.factor_exponents()
        .map(|m| (2.0 * (m as f64 * theta / 2.0).sin().abs()).powi(s))
        .product()
}

/// Monotone key used to compare samples: the magnitude itself, or its log
/// in log-space mode.
fn key_at(spec: &ProductSpec, theta: f64) -> f64 {
    if uses_log_space(spec) {
        log_abs_at(spec, theta)
    } else {
        abs_at(spec, theta)
    }
}

fn sample_floor(spec: &ProductSpec) -> u64 {
    4 * spec.degree()
}

/// Default grid density, `8 deg T`.
pub fn default_samples(spec: &ProductSpec) -> u64 {
    8 * spec.degree()
}

/// Grid angle `2 pi k / samples`; nested grids share points bit-for-bit.
fn grid_theta(k: u64, samples: u64) -> f64 {
    TAU * (k as f64 / samples as f64)
}

fn estimate(spec: &ProductSpec, key: f64, theta: f64, samples: u64, refined: bool) -> SupNormEstimate {
    let (value, log_value) = if uses_log_space(spec) {
        (key.exp(), key)
    } else {
        (key, key.ln())
    };
    SupNormEstimate {
        value,
        log_value,
        theta,
        samples,
        refined,
    }
}

fn best_grid_sample(spec: &ProductSpec, samples: u64) -> Result<(f64, u64)> {
    let floor = sample_floor(spec);
    if samples < floor || samples == 0 {
        return Err(Error::TooFewSamples { samples, floor });
    }
    Ok((0..samples)
        .into_par_iter()
        .map(|k| (key_at(spec, grid_theta(k, samples)), k))
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| match a.0.partial_cmp(&b.0) {
                Some(std::cmp::Ordering::Greater) => a,
                Some(std::cmp::Ordering::Less) => b,
                _ => {
                    if a.1 <= b.1 {
                        a
                    } else {
                        b
                    }
                }
            },
        ))
}

/// Maximum of `|T|` over the equispaced grid alone.
pub fn supnorm_grid(spec: &ProductSpec, samples: u64) -> Result<SupNormEstimate> {
    let (key, k) = best_grid_sample(spec, samples)?;
    Ok(estimate(spec, key, grid_theta(k, samples), samples, false))
}

/// Grid maximum followed by golden-section refinement within one grid gap
/// on either side of the best sample.
pub fn supnorm_sample(spec: &ProductSpec, samples: u64) -> Result<SupNormEstimate> {
    let (mut best_key, k) = best_grid_sample(spec, samples)?;
    let centre = grid_theta(k, samples);
    let mut best_theta = centre;
    let gap = TAU / samples as f64;

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (centre - gap, centre + gap);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = key_at(spec, x1);
    let mut f2 = key_at(spec, x2);
    for _ in 0..GOLDEN_ITERATIONS {
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f > best_key {
                best_key = f;
                best_theta = x;
            }
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = key_at(spec, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = key_at(spec, x1);
        }
    }
    for (x, f) in [(x1, f1), (x2, f2)] {
        if f > best_key {
            best_key = f;
            best_theta = x;
        }
    }
    Ok(estimate(spec, best_key, best_theta, samples, true))
}

/// Natural log of a positive big integer, accurate to `f64` precision.
pub fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * LN_2
}

/// Smallest `f64` not below `x` (for `x >= 0`); `inf` past the range.
pub fn upper_f64(x: &BigInt) -> f64 {
    let f = x.to_f64().unwrap_or(f64::INFINITY);
    if !f.is_finite() {
        return f64::INFINITY;
    }
    match BigInt::from_f64(f) {
        Some(back) if &back < x => f.next_up(),
        _ => f,
    }
}

/// Whether a sampled sup-norm estimate is at most the integer `bound`.
fn estimate_at_most(est: &SupNormEstimate, bound: &BigInt) -> bool {
    if est.value.is_finite() {
        est.value <= upper_f64(bound)
    } else {
        est.log_value <= big_ln(bound)
    }
}

/// One row of a maximum-coefficient trend table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub max_abs_coeff: BigInt,
    /// `log_p(max |t_i|) / (s (n + 1))`.
    pub log_ratio: f64,
    pub supnorm_estimate: f64,
    pub samples: u64,
    /// `sup |T| <= sum |t_i|`.
    pub abs_sum_ok: bool,
    /// `sup |T| <= (deg T + 1) max |t_i|`.
    pub sandwich_ok: bool,
    /// `max |t_i| s p^2 max(n,1)^2 / 1.219^{s (p-1)(n+1)}`, for `p > 15` only.
    #[serde(rename = "trend_base_1.219")]
    pub large_prime_trend: Option<f64>,
}

impl TrendRow {
    pub fn passed(&self) -> bool {
        self.abs_sum_ok && self.sandwich_ok
    }
}

fn trend_row(spec: &ProductSpec, budget: Budget, large_prime: bool) -> Result<TrendRow> {
    let poly = expand_product_within(spec, budget)?;
    let max = max_abs_coeff(&poly);
    let samples = default_samples(spec);
    let est = supnorm_sample(spec, samples)?;
    let (p, s, n) = (spec.p(), spec.s(), spec.n());
    let log_ratio = big_ln(&max) / (p as f64).ln() / (s as f64 * (n as f64 + 1.0));
    let sandwich = &max * BigInt::from(spec.degree() + 1);
    let large_prime_trend = large_prime.then(|| {
        let nn = n.max(1) as f64;
        let log = big_ln(&max) + (s as f64 * (p as f64).powi(2) * nn * nn).ln()
            - (s as f64 * (p as f64 - 1.0) * (n as f64 + 1.0)) * LARGE_PRIME_BASE.ln();
        log.exp()
    });
    Ok(TrendRow {
        p,
        s,
        n,
        log_ratio,
        supnorm_estimate: est.value,
        samples,
        abs_sum_ok: estimate_at_most(&est, &abs_coeff_sum(&poly)),
        sandwich_ok: estimate_at_most(&est, &sandwich),
        large_prime_trend,
        max_abs_coeff: max,
    })
}

/// Trend table for `p ∈ {2, 3, 5, 7, 11, 13}`: reports `log_p max|t| / (s(n+1))`
/// and checks `sup |T| <= (deg T + 1) max |t|` at every `n`.
pub fn borw1_check(p: u32, s: u32, ns: RangeInclusive<u32>, budget: Budget) -> Result<Vec<TrendRow>> {
    if !SHARP_PRIMES.contains(&p) {
        return Err(Error::Unsupported(format!(
            "two-sided estimate needs p in {SHARP_PRIMES:?}, got {p}"
        )));
    }
    ns.map(|n| trend_row(&ProductSpec::new(p, s, n)?, budget, false))
        .collect()
}

/// Trend table for primes `p > 15`: checks
/// `max |t| >= sup |T| / (deg T + 1)` and reports the normalised trend.
pub fn borw2_check(p: u32, s: u32, ns: RangeInclusive<u32>, budget: Budget) -> Result<Vec<TrendRow>> {
    if p <= 15 {
        return Err(Error::Unsupported(format!(
            "large-prime lower bound needs p > 15, got {p}"
        )));
    }
    ns.map(|n| trend_row(&ProductSpec::new(p, s, n)?, budget, true))
        .collect()
}
