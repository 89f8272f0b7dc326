//! Residue-class decomposition of `T(p, s, n; q)` and direct progression sums.
//!
//! Writing `T(q) = sum_j q^j T_j(q^p)`, part `j` collects the coefficients at
//! indices `p m + j`. The three Borwein sign conjectures are statements about
//! these parts for `(p, s) = (3, 1), (3, 2), (5, 1)`.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{expand_product_within, Budget, IntPolynomial, ProductSpec};

/// The `p` parts `T_j` of an expanded product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSplit {
    spec: ProductSpec,
    parts: Vec<IntPolynomial>,
}

impl ResidueSplit {
    pub fn spec(&self) -> &ProductSpec {
        &self.spec
    }

    pub fn parts(&self) -> &[IntPolynomial] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &IntPolynomial {
        &self.parts[j]
    }

    /// `sum_j q^j T_j(q^p)`.
    pub fn reassemble(&self) -> IntPolynomial {
        let p = self.parts.len();
        let len = self
            .parts
            .iter()
            .enumerate()
            .filter_map(|(j, part)| part.degree().map(|d| d * p + j + 1))
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![BigInt::default(); len];
        for (j, part) in self.parts.iter().enumerate() {
            for (m, c) in part.coeffs().iter().enumerate() {
                coeffs[p * m + j] = c.clone();
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Splits the expansion of `spec` into its `p` residue parts.
pub fn split_residues(poly: &IntPolynomial, spec: &ProductSpec) -> Result<ResidueSplit> {
    if poly.degree() != Some(spec.degree() as usize) {
        return Err(Error::LengthMismatch {
            found: poly.degree(),
            expected: spec.degree(),
        });
    }
    let p = spec.p() as usize;
    let parts = (0..p)
        .map(|j| {
            IntPolynomial::from_coeffs(poly.coeffs().iter().skip(j).step_by(p).cloned().collect())
        })
        .collect();
    Ok(ResidueSplit { spec: *spec, parts })
}

/// The progression `{a m + d}` with `p | a` and `0 <= d < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgressionQuery {
    modulus: u64,
    residue: u64,
    p: u64,
}

impl ProgressionQuery {
    pub fn new(p: u32, modulus: u64, residue: u64) -> Result<Self> {
        let p = p as u64;
        if modulus == 0 || modulus % p != 0 {
            return Err(Error::InvalidProgression { modulus, p });
        }
        if residue >= modulus {
            return Err(Error::ResidueOutOfRange { residue, modulus });
        }
        Ok(ProgressionQuery {
            modulus,
            residue,
            p,
        })
    }

    /// Progression with modulus `p * ell`.
    pub fn with_ell(p: u32, ell: u64, residue: u64) -> Result<Self> {
        let modulus = (p as u64)
            .checked_mul(ell)
            .ok_or(Error::Overflow)?;
        Self::new(p, modulus, residue)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Which residue part `T_j` the progression lives in.
    pub fn j(&self) -> u64 {
        self.residue % self.p
    }

    pub fn ell(&self) -> u64 {
        self.modulus / self.p
    }
}

/// Sum of the coefficients of `poly` at nonnegative indices `≡ d (mod a)`.
pub fn direct_progression_sum(poly: &IntPolynomial, query: &ProgressionQuery) -> BigInt {
    poly.coeffs()
        .iter()
        .skip(query.residue as usize)
        .step_by(query.modulus as usize)
        .sum()
}

/// `M(b)` read off an already expanded product.
pub fn m_from_expansion(poly: &IntPolynomial, spec: &ProductSpec, b: u64) -> Result<BigInt> {
    let query = ProgressionQuery::new(spec.p(), spec.modulus(), b)?;
    Ok(direct_progression_sum(poly, &query))
}

/// `M(b)`: sum of `t_i` over `i ≡ b (mod N_p)`, by direct expansion.
pub fn m_direct(spec: &ProductSpec, b: u64) -> Result<BigInt> {
    let query = ProgressionQuery::new(spec.p(), spec.modulus(), b)?;
    let poly = expand_product_within(spec, Budget::default())?;
    Ok(direct_progression_sum(&poly, &query))
}

/// `M(b)` for every `b` in `0..N_p`, sharing a single expansion.
pub fn m_direct_all(spec: &ProductSpec, budget: Budget) -> Result<Vec<BigInt>> {
    let poly = expand_product_within(spec, budget)?;
    Ok(m_all_from_expansion(&poly, spec))
}

pub fn m_all_from_expansion(poly: &IntPolynomial, spec: &ProductSpec) -> Vec<BigInt> {
    let modulus = spec.modulus() as usize;
    let mut sums = vec![BigInt::default(); modulus];
    for (i, c) in poly.coeffs().iter().enumerate() {
        sums[i % modulus] += c;
    }
    sums
}

/// Which Borwein conjecture a product corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BorweinFamily {
    /// `(p, s) = (3, 1)`: `A, B, C`.
    First,
    /// `(p, s) = (3, 2)`: `alpha, beta, gamma`.
    Second,
    /// `(p, s) = (5, 1)`: `nu, phi, chi, psi, omega`.
    Third,
}

impl BorweinFamily {
    pub fn of(p: u32, s: u32) -> Option<Self> {
        match (p, s) {
            (3, 1) => Some(BorweinFamily::First),
            (3, 2) => Some(BorweinFamily::Second),
            (5, 1) => Some(BorweinFamily::Third),
            _ => None,
        }
    }

    pub fn names(&self) -> &'static [&'static str] {
        match self {
            BorweinFamily::First => &["A", "B", "C"],
            BorweinFamily::Second => &["alpha", "beta", "gamma"],
            BorweinFamily::Third => &["nu", "phi", "chi", "psi", "omega"],
        }
    }
}

/// Named polynomials of a Borwein decomposition, with the conjecture's minus
/// signs absorbed: `T = P_0(q^p) - q P_1(q^p) - ... - q^{p-1} P_{p-1}(q^p)`.
///
/// The conjectures index their products by the number of blocks, so the
/// set extracted from `T(p, s, n)` carries `index = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorweinSet {
    pub family: BorweinFamily,
    pub index: u32,
    pub polys: Vec<IntPolynomial>,
}

impl BorweinSet {
    pub fn get(&self, name: &str) -> Option<&IntPolynomial> {
        let pos = self.family.names().iter().position(|&n| n == name)?;
        self.polys.get(pos)
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, &IntPolynomial)> {
        self.family.names().iter().copied().zip(&self.polys)
    }
}

pub fn extract_borwein_polynomials(split: &ResidueSplit) -> Result<BorweinSet> {
    let spec = split.spec();
    let family = BorweinFamily::of(spec.p(), spec.s()).ok_or_else(|| {
        Error::Unsupported(format!("no Borwein decomposition for {spec}"))
    })?;
    let polys = split
        .parts()
        .iter()
        .enumerate()
        .map(|(j, part)| if j == 0 { part.clone() } else { -part })
        .collect();
    Ok(BorweinSet {
        family,
        index: spec.n() + 1,
        polys,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeCoefficient {
    pub name: &'static str,
    pub index: usize,
    pub value: String,
}

/// Every negative coefficient in a named set. For the second and third
/// conjectures these are warnings: the conjectures are open.
pub fn negative_coefficients(set: &BorweinSet) -> Vec<NegativeCoefficient> {
    set.named()
        .flat_map(|(name, poly)| {
            poly.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_negative())
                .map(move |(index, c)| NegativeCoefficient {
                    name,
                    index,
                    value: c.to_string(),
                })
        })
        .collect()
}

/// The triple `(A_k, B_k, C_k)` of the first conjecture, from the product
/// of `k` blocks `(1 - q^{3j-2})(1 - q^{3j-1})`. `k = 0` is the empty product.
pub fn first_conjecture_triple(k: u32, budget: Budget) -> Result<[IntPolynomial; 3]> {
    if k == 0 {
        return Ok([IntPolynomial::one(), IntPolynomial::zero(), IntPolynomial::zero()]);
    }
    let spec = ProductSpec::new(3, 1, k - 1)?;
    let poly = expand_product_within(&spec, budget)?;
    let set = extract_borwein_polynomials(&split_residues(&poly, &spec)?)?;
    let [a, b, c]: [IntPolynomial; 3] = set.polys.try_into().expect("three parts for p = 3");
    Ok([a, b, c])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionMismatch {
    /// `"A"`, `"B"` or `"C"`.
    pub which: &'static str,
    /// First differing coefficient index.
    pub index: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionStep {
    pub n: u32,
    pub passed: bool,
    pub mismatch: Option<RecursionMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub steps: Vec<RecursionStep>,
}

impl RecursionReport {
    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

fn first_difference(expected: &IntPolynomial, found: &IntPolynomial) -> Option<usize> {
    let len = expected.len().max(found.len());
    (0..len).find(|&i| expected.coeff(i) != found.coeff(i))
}

/// Checks Andrews' recursions at step `n` given the triples at `n - 1` and `n`:
///
/// ```text
/// A_n = (1 + q^{2n-1}) A_{n-1} + q^n B_{n-1} + q^n C_{n-1}
/// B_n = q^{n-1} A_{n-1} + (1 + q^{2n-1}) B_{n-1} - q^n C_{n-1}
/// C_n = q^{n-1} A_{n-1} - q^{n-1} B_{n-1} + (1 + q^{2n-1}) C_{n-1}
/// ```
///
/// The third line follows from multiplying the `n - 1` product by
/// `1 - q^{3n-2} - q^{3n-1} + q^{6n-3}` and collecting the `q^2` class. The
/// variant `+ q^{n-1} B_{n-1} - (1 + q^{2n-1}) C_{n-1}` already fails at `n = 2`.
pub fn check_andrews_step(
    n: u32,
    prev: &[IntPolynomial; 3],
    cur: &[IntPolynomial; 3],
) -> RecursionStep {
    assert!(n >= 1);
    let n_us = n as usize;
    let [a, b, c] = prev;
    let lift = |p: &IntPolynomial| p + &p.shift(2 * n_us - 1);
    let expected = [
        &(&lift(a) + &b.shift(n_us)) + &c.shift(n_us),
        &(&a.shift(n_us - 1) + &lift(b)) - &c.shift(n_us),
        &(&a.shift(n_us - 1) - &b.shift(n_us - 1)) + &lift(c),
    ];
    let mismatch = ["A", "B", "C"]
        .into_iter()
        .zip(expected.iter().zip(cur.iter()))
        .find_map(|(which, (want, got))| {
            first_difference(want, got).map(|index| RecursionMismatch {
                which,
                index,
                expected: want.coeff(index).to_string(),
                found: got.coeff(index).to_string(),
            })
        });
    RecursionStep {
        n,
        passed: mismatch.is_none(),
        mismatch,
    }
}

/// Verifies the three recursions as exact polynomial identities for
/// `1 <= n <= n_max`.
pub fn check_andrews_recursions(n_max: u32, budget: Budget) -> Result<RecursionReport> {
    if n_max == 0 {
        return Err(Error::Unsupported("n_max must be at least 1".into()));
    }
    let triples = (0..=n_max)
        .into_par_iter()
        .map(|k| first_conjecture_triple(k, budget))
        .collect::<Result<Vec<_>>>()?;
    let steps = (1..=n_max)
        .map(|n| check_andrews_step(n, &triples[n as usize - 1], &triples[n as usize]))
        .collect();
    Ok(RecursionReport { steps })
}
