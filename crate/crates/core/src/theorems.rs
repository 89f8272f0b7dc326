//! Main terms, the error bound, sign thresholds and verification grids for
//! the progression sums `M(b)` with modulus `N_p = p (n + 1)`.
//!
//! With `e = s (n + 1)` the main term is
//!
//! ```text
//! (p - 1) p^{e-1} / (n + 1)   if p | b
//!       - p^{e-1} / (n + 1)   otherwise
//! ```
//!
//! and `|M(b) - main| <= p^{e/2}`. Every comparison against `p^{e/2}` is done
//! over the integers, squaring both sides when `e` is odd.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::charsieve::m_charsum_all;
use crate::error::{Error, Result};
use crate::numtheory::big_pow;
use crate::polycore::{expand_product_within, Budget, ProductSpec};
use crate::progression::m_all_from_expansion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueClass {
    /// `p | b`
    Divisible,
    /// `p ∤ b`
    Nondivisible,
}

impl ResidueClass {
    pub fn of(p: u32, b: u64) -> Self {
        if b % p as u64 == 0 {
            ResidueClass::Divisible
        } else {
            ResidueClass::Nondivisible
        }
    }

    /// The sign the main term carries.
    pub fn expected_sign(&self) -> Sign {
        match self {
            ResidueClass::Divisible => Sign::Positive,
            ResidueClass::Nondivisible => Sign::Negative,
        }
    }

    /// Representative residue for trend tables.
    pub fn representative(&self) -> u64 {
        match self {
            ResidueClass::Divisible => 0,
            ResidueClass::Nondivisible => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
}

impl Sign {
    pub fn of(v: &BigInt) -> Self {
        match v.sign() {
            num_bigint::Sign::Plus => Sign::Positive,
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
        }
    }
}

/// Numerator over `n + 1` of the main term: `(p-1) p^{e-1}` or `-p^{e-1}`.
pub fn main_term_numerator(spec: &ProductSpec, b: u64) -> BigInt {
    let p = spec.p() as u64;
    let e = spec.s() as u64 * (spec.n() as u64 + 1);
    let base = big_pow(p, e - 1);
    match ResidueClass::of(spec.p(), b) {
        ResidueClass::Divisible => base * (p - 1),
        ResidueClass::Nondivisible => -base,
    }
}

/// Exact main term of `M(b)`.
pub fn main_term(spec: &ProductSpec, b: u64) -> BigRational {
    BigRational::new(
        main_term_numerator(spec, b),
        BigInt::from(spec.n() as u64 + 1),
    )
}

/// Whether `|m - main| <= p^{s(n+1)/2}`, decided over the integers as
/// `((n+1) m - Sigma)^2 <= (n+1)^2 p^{s(n+1)}`.
pub fn error_bound_holds(spec: &ProductSpec, b: u64, m_value: &BigInt) -> bool {
    let e = spec.s() as u64 * (spec.n() as u64 + 1);
    let scale = BigInt::from(spec.n() as u64 + 1);
    let diff = &scale * m_value - main_term_numerator(spec, b);
    &diff * &diff <= &scale * &scale * big_pow(spec.p() as u64, e)
}

/// Whether `coef * p^{s(n+1)/2 - 1} > n + 1`, squared to stay exact.
fn threshold_inequality(p: u64, s: u64, n: u64, coef: u64) -> bool {
    let e = s * (n + 1);
    let lhs = BigInt::from(coef * coef) * big_pow(p, e - 2);
    lhs > BigInt::from((n + 1) * (n + 1))
}

/// Smallest `n >= 1` from which the main term provably dominates the error,
/// so that the sign of `M(b)` is that of its main term.
pub fn sign_threshold(p: u32, s: u32, class: ResidueClass) -> Result<u32> {
    if p < 3 || !crate::numtheory::is_prime(p as u64) {
        return Err(Error::Unsupported(format!("sign threshold needs an odd prime, got {p}")));
    }
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    let coef = match class {
        ResidueClass::Divisible => p as u64 - 1,
        ResidueClass::Nondivisible => 1,
    };
    // Exponential left side beats the linear right side well before this.
    (1u32..=4096)
        .find(|&n| threshold_inequality(p as u64, s as u64, n as u64, coef))
        .ok_or(Error::Overflow)
}

/// Families whose sign pattern is proved for every `n >= 1`.
fn sign_proved_for_all_n(p: u32, s: u32) -> bool {
    matches!((p, s), (3, 1) | (3, 2) | (5, 1))
}

/// Expected sign of `M(b)` if a theorem covers this point, else `None`.
pub fn expected_sign(spec: &ProductSpec, b: u64) -> Result<Option<Sign>> {
    if spec.n() == 0 {
        return Ok(None);
    }
    let class = ResidueClass::of(spec.p(), b);
    if sign_proved_for_all_n(spec.p(), spec.s())
        || spec.n() >= sign_threshold(spec.p(), spec.s(), class)?
    {
        Ok(Some(class.expected_sign()))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub b: u64,
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub m_value: BigInt,
    #[serde(serialize_with = "crate::report::as_decimal_opt")]
    pub m_charsum: Option<BigInt>,
    #[serde(serialize_with = "crate::report::as_ratio")]
    pub main_term: BigRational,
    /// `p^{s(n+1)}`, the square of the error bound.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub error_bound_squared: BigInt,
    pub residue_class: ResidueClass,
    pub sign_expected: Option<Sign>,
    pub sign_observed: Sign,
    pub within_bound: bool,
}

impl VerificationRow {
    pub fn new(spec: &ProductSpec, b: u64, m_value: BigInt, m_charsum: Option<BigInt>) -> Result<Self> {
        let e = spec.s() as u64 * (spec.n() as u64 + 1);
        Ok(VerificationRow {
            p: spec.p(),
            s: spec.s(),
            n: spec.n(),
            b,
            main_term: main_term(spec, b),
            error_bound_squared: big_pow(spec.p() as u64, e),
            residue_class: ResidueClass::of(spec.p(), b),
            sign_expected: expected_sign(spec, b)?,
            sign_observed: Sign::of(&m_value),
            within_bound: error_bound_holds(spec, b, &m_value),
            m_value,
            m_charsum,
        })
    }

    /// `None` where no sign claim applies.
    pub fn sign_ok(&self) -> Option<bool> {
        self.sign_expected.map(|s| s == self.sign_observed)
    }

    pub fn methods_agree(&self) -> Option<bool> {
        self.m_charsum.as_ref().map(|c| c == &self.m_value)
    }

    pub fn passed(&self) -> bool {
        self.within_bound && self.sign_ok() != Some(false) && self.methods_agree() != Some(false)
    }
}

/// One `(p, s, n)` cell of a verification grid, every `b` in `0..N_p`.
/// Both methods are always run and any disagreement is an error.
pub fn verify_spec(spec: &ProductSpec, budget: Budget) -> Result<Vec<VerificationRow>> {
    if spec.p() < 3 {
        return Err(Error::Unsupported(format!(
            "progression theorems need p >= 3, got {spec}"
        )));
    }
    let poly = expand_product_within(spec, budget)?;
    let direct = m_all_from_expansion(&poly, spec);
    let charsum = m_charsum_all(spec)?;
    direct
        .into_iter()
        .zip(charsum)
        .enumerate()
        .map(|(b, (d, c))| {
            if d != c {
                return Err(Error::OracleMismatch {
                    p: spec.p(),
                    s: spec.s(),
                    n: spec.n(),
                    b: b as u64,
                    direct: d.to_string(),
                    charsum: c.to_string(),
                });
            }
            VerificationRow::new(spec, b as u64, d, Some(c))
        })
        .collect()
}

/// Rows for every `(p, s, n, b)` with `0 <= n <= n_max`, sorted by `(p, s, n, b)`.
pub fn verify_grid(ps: &[u32], ss: &[u32], n_max: u32, budget: Budget) -> Result<Vec<VerificationRow>> {
    let mut specs = Vec::new();
    for &p in ps {
        for &s in ss {
            for n in 0..=n_max {
                specs.push(ProductSpec::new(p, s, n)?);
            }
        }
    }
    specs.sort();
    specs.dedup();
    let cells = specs
        .par_iter()
        .map(|spec| verify_spec(spec, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(cells.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioPoint {
    pub n: u32,
    pub b: u64,
    #[serde(serialize_with = "crate::report::as_ratio")]
    pub ratio: BigRational,
    pub ratio_approx: f64,
}

/// `M(b) / main` for `b` the class representative and `1 <= n <= n_max`.
/// Report-only: no rate of convergence is asserted.
pub fn ratio_trend(
    p: u32,
    s: u32,
    class: ResidueClass,
    n_max: u32,
    budget: Budget,
) -> Result<Vec<RatioPoint>> {
    let b = class.representative();
    (1..=n_max)
        .map(|n| {
            let spec = ProductSpec::new(p, s, n)?;
            let poly = expand_product_within(&spec, budget)?;
            let m = &m_all_from_expansion(&poly, &spec)[b as usize];
            let main = main_term(&spec, b);
            debug_assert!(!main.is_zero());
            let ratio = BigRational::from_integer(m.clone()) / main;
            Ok(RatioPoint {
                n,
                b,
                ratio_approx: ratio_to_f64(&ratio),
                ratio,
            })
        })
        .collect()
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
