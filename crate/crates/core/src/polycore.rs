//! Dense integer polynomials and the expansion of `T(p, s, n; q)`.
//!
//! Coefficients are arbitrary-precision from the start: the largest
//! coefficient of `T(3, 1, n)` already leaves the `i64` range near `n = 40`.
//! Multiplying by a sparse factor `(1 - q^m)` is a single in-place
//! shift-subtract pass, so the full expansion costs `O(deg)` big-integer
//! subtractions per factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Default cap on the number of stored coefficients (2^26).
pub const DEFAULT_COEFF_BUDGET: usize = 1 << 26;

/// Upper bound on how many coefficients an expansion may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_coeffs: usize,
}

impl Budget {
    pub const fn new(max_coeffs: usize) -> Self {
        Budget { max_coeffs }
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_coeffs as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_coeffs as u128,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_COEFF_BUDGET)
    }
}

/// The parameter triple `(p, s, n)` of a product `T(p, s, n; q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct ProductSpec {
    p: u32,
    s: u32,
    n: u32,
}

#[derive(Deserialize)]
struct RawSpec {
    p: u32,
    s: u32,
    n: u32,
}

impl TryFrom<RawSpec> for ProductSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        ProductSpec::new(raw.p, raw.s, raw.n)
    }
}

impl ProductSpec {
    /// Validates `p` prime and `s >= 1`, and that every derived constant fits in `u64`.
    pub fn new(p: u32, s: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if s == 0 {
            return Err(Error::ZeroPower);
        }
        let m = n as u128 + 1;
        let deg = (p as u128) * (p as u128 - 1) * (s as u128) * m * m / 2;
        if deg >= u64::MAX as u128 {
            return Err(Error::Overflow);
        }
        Ok(ProductSpec { p, s, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N_p = p (n + 1)`.
    pub fn modulus(&self) -> u64 {
        self.p as u64 * (self.n as u64 + 1)
    }

    /// `|D_p| = (p - 1)(n + 1)`, the number of distinct factor exponents.
    pub fn size_d(&self) -> u64 {
        (self.p as u64 - 1) * (self.n as u64 + 1)
    }

    /// `deg T = p (p - 1) s (n + 1)^2 / 2`.
    pub fn degree(&self) -> u64 {
        let m = self.n as u64 + 1;
        self.p as u64 * (self.p as u64 - 1) / 2 * self.s as u64 * m * m
    }

    /// Exponents `m` of the factors `(1 - q^m)`: the positive non-multiples
    /// of `p` up to `pn + p - 1`, increasing.
    pub fn factor_exponents(&self) -> impl Iterator<Item = u64> {
        let p = self.p as u64;
        (1..self.modulus()).filter(move |m| m % p != 0)
    }

    /// Sign of the leading coefficient, `(-1)^{(p-1)s(n+1)}`.
    pub fn leading_sign(&self) -> i32 {
        if (self.size_d() * self.s as u64) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn with_s(&self, s: u32) -> Result<Self> {
        ProductSpec::new(self.p, s, self.n)
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, s={}, n={})", self.p, self.s, self.n)
    }
}

/// Dense polynomial with big-integer coefficients; index `i` holds the
/// coefficient of `q^i`. Trailing zeros are never stored, so the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(1);
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients, `degree + 1`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `q = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Multiply by `(1 - q^m)^times` in place, without a size check.
    pub fn mul_by_sparse_factor_in_place(&mut self, m: usize, times: u32) {
        assert!(m >= 1, "factor exponent must be positive");
        if self.is_zero() {
            return;
        }
        for _ in 0..times {
            let old_len = self.coeffs.len();
            self.coeffs.resize(old_len + m, BigInt::zero());
            // Descending so each read of index i - m still sees the old value.
            for i in (m..self.coeffs.len()).rev() {
                let (lo, hi) = self.coeffs.split_at_mut(i);
                hi[0] -= &lo[i - m];
            }
        }
    }
}

/// `poly * (1 - q^m)^times`, refusing to grow past `budget` coefficients.
pub fn mul_by_sparse_factor(
    poly: &IntPolynomial,
    m: u64,
    times: u32,
    budget: Budget,
) -> Result<IntPolynomial> {
    if m == 0 || times == 0 {
        return Err(Error::Unsupported(
            "sparse factor needs m >= 1 and times >= 1".into(),
        ));
    }
    if poly.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let needed = poly.len() as u128 + m as u128 * times as u128;
    budget.check(needed)?;
    let mut out = poly.clone();
    out.coeffs.reserve(needed as usize - poly.len());
    out.mul_by_sparse_factor_in_place(m as usize, times);
    Ok(out)
}

/// Expands `T(p, s, n; q)` with the default [`Budget`].
pub fn expand_product(spec: &ProductSpec) -> Result<IntPolynomial> {
    expand_product_within(spec, Budget::default())
}

/// Expands `T(p, s, n; q)` factor by factor in increasing exponent order.
pub fn expand_product_within(spec: &ProductSpec, budget: Budget) -> Result<IntPolynomial> {
    let len = spec.degree() as u128 + 1;
    budget.check(len)?;
    let mut coeffs = Vec::with_capacity(len as usize);
    coeffs.push(BigInt::from(1));
    let mut poly = IntPolynomial { coeffs };
    for m in spec.factor_exponents() {
        poly.mul_by_sparse_factor_in_place(m as usize, spec.s());
    }
    debug_assert_eq!(poly.degree(), Some(spec.degree() as usize));
    Ok(poly)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, x) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += x;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

/// Schoolbook product; used for small identities, not for the expansion.
impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Shared coefficient dump: `{"p","s","n","degree","coeffs"}` with every
/// coefficient as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDump {
    pub p: u32,
    pub s: u32,
    pub n: u32,
    pub degree: u64,
    pub coeffs: Vec<String>,
}

impl CoefficientDump {
    pub fn new(spec: &ProductSpec, poly: &IntPolynomial) -> Self {
        CoefficientDump {
            p: spec.p(),
            s: spec.s(),
            n: spec.n(),
            degree: poly.degree().map_or(0, |d| d as u64),
            coeffs: poly.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<IntPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::Unsupported(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let poly = IntPolynomial::from_coeffs(coeffs);
        if poly.degree().map_or(0, |d| d as u64) != self.degree {
            return Err(Error::LengthMismatch {
                found: poly.degree(),
                expected: self.degree,
            });
        }
        Ok(poly)
    }
}

/// Largest absolute coefficient; zero for the zero polynomial.
pub(crate) fn max_abs(poly: &IntPolynomial) -> BigInt {
    poly.coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
}
