//! Exact arithmetic in `Z[zeta_N]`, enough to decide whether a character sum
//! is a rational integer.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::characters::ramanujan_sum;
use crate::numtheory::divisors;

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, for each divisor d of n in turn.
    let divs = divisors(n);
    let mut found: Vec<(u64, Vec<BigInt>)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for (e, phi_e) in &found {
            if d % e == 0 {
                num = div_monic(&num, phi_e);
            }
        }
        found.push((d, num));
    }
    found.pop().expect("n divides itself").1
}

/// Exact quotient of `num` by a monic divisor; panics if there is a remainder.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let ql = rem.len() + 1 - dl;
    let mut quot = vec![BigInt::zero(); ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Reduce `poly` modulo a monic polynomial, returning the remainder with
/// trailing zeros trimmed.
fn rem_monic(poly: &[BigInt], modulus: &[BigInt]) -> Vec<BigInt> {
    let mut rem = poly.to_vec();
    let dl = modulus.len();
    while rem.len() >= dl {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if !c.is_zero() {
            let shift = top + 1 - dl;
            for (j, mc) in modulus.iter().enumerate() {
                rem[shift + j] -= &c * mc;
            }
        }
        rem.pop();
    }
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    rem
}

/// An element `sum_r counts[r] * zeta_N^r` with `zeta_N = exp(2 pi i / N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInt {
    modulus: u64,
    counts: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(modulus: u64) -> Self {
        assert!(modulus >= 1);
        CyclotomicInt {
            modulus,
            counts: vec![BigInt::zero(); modulus as usize],
        }
    }

    pub fn from_counts(modulus: u64, counts: Vec<BigInt>) -> Self {
        assert_eq!(counts.len() as u64, modulus);
        CyclotomicInt { modulus, counts }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Adds `by * zeta^r`.
    pub fn add_power(&mut self, r: u64, by: impl Into<BigInt>) {
        self.counts[(r % self.modulus) as usize] += by.into();
    }

    /// Canonical representative modulo the cyclotomic polynomial.
    pub fn reduced(&self) -> Vec<BigInt> {
        rem_monic(&self.counts, &cyclotomic_polynomial(self.modulus))
    }

    /// The value as an integer, or `None` when it is not rational.
    pub fn to_integer(&self) -> Option<BigInt> {
        let red = self.reduced();
        match red.len() {
            0 => Some(BigInt::zero()),
            1 => Some(red[0].clone()),
            _ => None,
        }
    }

    /// Field trace down to `Q`: `sum_r counts[r] * c_N(r)`.
    pub fn trace(&self) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .map(|(r, c)| c * ramanujan_sum(self.modulus, r as i64))
            .sum()
    }

    /// Floating-point value `(re, im)`, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.modulus as f64;
        self.counts
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (r, c)| {
                let w = c.to_f64().unwrap_or(f64::NAN);
                let a = std::f64::consts::TAU * r as f64 / n;
                (re + w * a.cos(), im + w * a.sin())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // First cyclotomic polynomial with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2..40 {
            let mut z = CyclotomicInt::zero(n);
            for r in 0..n {
                z.add_power(r, 1);
            }
            assert_eq!(z.to_integer(), Some(BigInt::zero()));
        }
    }

    #[test]
    fn single_root_is_irrational() {
        let mut z = CyclotomicInt::zero(5);
        z.add_power(1, 1);
        assert_eq!(z.to_integer(), None);
        let (re, im) = z.approx();
        assert!((re - (std::f64::consts::TAU / 5.0).cos()).abs() < 1e-12);
        assert!(im > 0.0);
    }

    #[test]
    fn trace_of_rational_is_phi_times_value() {
        let mut z = CyclotomicInt::zero(12);
        z.add_power(0, 7);
        assert_eq!(z.trace(), BigInt::from(4 * 7));
    }
}
