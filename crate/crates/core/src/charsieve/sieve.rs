//! Cycle types, the cycle-index polynomial `Z_k`, and the distinct-tuple
//! character sums `F_psi` over `D_p^k`.
//!
//! For a character `psi` of order `o`, `F_psi` (the sum of
//! `psi(x_1) ... psi(x_k)` over tuples of distinct elements of `D_p`) depends only on `o`:
//!
//! ```text
//! p ∤ o:  F = (-1)^k k! [u^k] (1 - u^o)^{(p-1) N / (p o)}
//! p | o:  F = (-1)^k k! [u^k] (1 + v + ... + v^{p-1})^{N/o},   v = u^{o/p}
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::characters::s_d_by_order;
use super::require_odd_prime;
use crate::error::{Error, Result};
use crate::numtheory::{binomial, factorial, gcd};
use crate::polycore::ProductSpec;

/// Cycle type `(1^{c_1} 2^{c_2} ... k^{c_k})` of a permutation in `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    multiplicities: Vec<u64>,
}

impl CycleType {
    /// `multiplicities[i - 1]` is `c_i`; `k` is `sum i c_i`.
    pub fn new(multiplicities: Vec<u64>) -> Self {
        CycleType { multiplicities }
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn k(&self) -> u64 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c)
            .sum()
    }

    /// `(-1)^{k - sum c_i}`.
    pub fn sign(&self) -> i32 {
        let cycles: u64 = self.multiplicities.iter().sum();
        if (self.k() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All cycle types of `S_k`, i.e. all integer partitions of `k`.
pub fn cycle_types(k: u64) -> Vec<CycleType> {
    fn go(rest: u64, max_part: u64, mult: &mut Vec<u64>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType::new(mult.clone()));
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            mult[part as usize - 1] += 1;
            go(rest - part, part, mult, out);
            mult[part as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut mult = vec![0; k as usize];
    go(k, k, &mut mult, &mut out);
    out
}

/// Number of permutations in `S_k` with the given cycle type,
/// `k! / prod_i (i^{c_i} c_i!)`.
pub fn cycle_count(ct: &CycleType) -> BigInt {
    let den = ct
        .multiplicities()
        .iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, &c)| {
            acc * num_traits::pow(BigInt::from(i as u64 + 1), c as usize) * factorial(c)
        });
    factorial(ct.k()) / den
}

/// `Z_k(t_1, ..., t_k) = sum_c N(c) t_1^{c_1} ... t_k^{c_k}` with `k = t.len()`.
pub fn z_poly(t: &[BigInt]) -> BigInt {
    cycle_types(t.len() as u64)
        .iter()
        .map(|ct| {
            ct.multiplicities()
                .iter()
                .zip(t)
                .fold(cycle_count(ct), |acc, (&c, ti)| {
                    acc * num_traits::pow(ti.clone(), c as usize)
                })
        })
        .sum()
}

fn check_order_and_size(spec: &ProductSpec, order: u64, k: u64) -> Result<()> {
    require_odd_prime(spec)?;
    let modulus = spec.modulus();
    if order == 0 || modulus % order != 0 {
        return Err(Error::InvalidOrder { order, modulus });
    }
    if k > spec.size_d() {
        return Err(Error::SizeOutOfRange {
            k,
            max: spec.size_d(),
        });
    }
    Ok(())
}

/// `[v^m] (1 + v + ... + v^{width-1})^power`, by truncated convolution.
fn geometric_power_coeff(width: u64, power: u64, m: u64) -> BigInt {
    let m = m as usize;
    let mut acc = vec![BigInt::zero(); m + 1];
    acc[0] = BigInt::one();
    for _ in 0..power {
        let mut next = vec![BigInt::zero(); m + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..(width as usize).min(m + 1 - i) {
                next[i + j] += a;
            }
        }
        acc = next;
    }
    acc.swap_remove(m)
}

fn signed(sign_odd: bool, v: BigInt) -> BigInt {
    if sign_odd {
        -v
    } else {
        v
    }
}

/// `F_psi` over distinct `k`-tuples from `D_p`, for any `psi` of the given order.
pub fn f_psi_closed(spec: &ProductSpec, order: u64, k: u64) -> Result<BigInt> {
    check_order_and_size(spec, order, k)?;
    let p = spec.p() as u64;
    let modulus = spec.modulus();
    let coeff = if order % p != 0 {
        let power = (p - 1) * modulus / (p * order);
        if k % order == 0 {
            let j = k / order;
            signed(j % 2 == 1, binomial(power, j))
        } else {
            BigInt::zero()
        }
    } else {
        let step = order / p;
        if k % step == 0 {
            geometric_power_coeff(p, modulus / order, k / step)
        } else {
            BigInt::zero()
        }
    };
    Ok(signed(k % 2 == 1, factorial(k) * coeff))
}

/// `F_psi` through the cycle index: `(-1)^k Z_k(-s_D(psi), ..., -s_D(psi^k))`,
/// where `psi^i` has order `o / gcd(o, i)`.
pub fn f_psi_cycle_index(spec: &ProductSpec, order: u64, k: u64) -> Result<BigInt> {
    check_order_and_size(spec, order, k)?;
    let t: Vec<BigInt> = (1..=k)
        .map(|i| -s_d_by_order(spec, order / gcd(order, i)))
        .collect();
    Ok(signed(k % 2 == 1, z_poly(&t)))
}

/// Whether `sum_{k=0}^{size_d} (-1)^k C(size_d, k)` vanishes.
pub fn alternating_binomial_check(size_d: u64) -> bool {
    let total: BigInt = (0..=size_d)
        .map(|k| signed(k % 2 == 1, binomial(size_d, k)))
        .sum();
    total.is_zero()
}

/// Whether the coefficients of `(1 - u^o)^{(p-1) N / (p o)}` up to `u^{|D_p|}`
/// sum to zero, for `o | N`, `p ∤ o`, `o > 1`. This is what makes the
/// characters of order prime to `p` drop out of `M(b)`.
pub fn p_term_vanishing_check(spec: &ProductSpec, order: u64) -> Result<bool> {
    require_odd_prime(spec)?;
    let p = spec.p() as u64;
    let modulus = spec.modulus();
    if order <= 1 || order % p == 0 || modulus % order != 0 {
        return Err(Error::InvalidOrder { order, modulus });
    }
    let power = (p - 1) * modulus / (p * order);
    let total: BigInt = (0..=spec.size_d())
        .filter(|k| k % order == 0)
        .map(|k| {
            let j = k / order;
            signed(j % 2 == 1, binomial(power, j))
        })
        .sum();
    Ok(total.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::divisors;

    fn spec(p: u32, s: u32, n: u32) -> ProductSpec {
        ProductSpec::new(p, s, n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Rising factorial `a (a+1) ... (a+k-1)`.
    fn rising(a: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (a + i))
    }

    #[test]
    fn cycle_count_examples() {
        assert_eq!(cycle_count(&CycleType::new(vec![2, 0])), BigInt::from(1));
        assert_eq!(cycle_count(&CycleType::new(vec![1, 1, 0])), BigInt::from(3));
        assert_eq!(cycle_count(&CycleType::new(vec![0, 0, 0, 1])), BigInt::from(6));
    }

    #[test]
    fn cycle_counts_total_factorial() {
        for k in 0..=8u64 {
            let types = cycle_types(k);
            assert!(types.iter().all(|t| t.k() == k));
            let total: BigInt = types.iter().map(cycle_count).sum();
            assert_eq!(total, factorial(k), "k = {k}");
            // Equal numbers of even and odd permutations once k >= 2.
            let signed_total: BigInt = types
                .iter()
                .map(|t| cycle_count(t) * t.sign())
                .sum();
            assert_eq!(signed_total, if k < 2 { BigInt::one() } else { BigInt::zero() });
        }
        let partition_numbers: Vec<usize> = (0..=8).map(|k| cycle_types(k).len()).collect();
        assert_eq!(partition_numbers, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn z_poly_examples() {
        assert_eq!(z_poly(&[]), BigInt::one());
        assert_eq!(z_poly(&ints(&[7])), BigInt::from(7));
        assert_eq!(z_poly(&ints(&[2, 5])), BigInt::from(9));
        assert_eq!(z_poly(&ints(&[2, 2, 2])), BigInt::from(24));
    }

    #[test]
    fn z_poly_constant_inputs_give_rising_factorials() {
        for a in 1..=3u64 {
            for k in 0..=6u64 {
                let t = vec![BigInt::from(a); k as usize];
                assert_eq!(z_poly(&t), rising(a, k), "a={a} k={k}");
            }
        }
    }

    #[test]
    fn z_poly_sparse_inputs_match_binomial_series() {
        // t_i = a [d | i] with a = m d: Z_k = k! [u^k] (1 - u^d)^{-m}.
        for d in 1..=3u64 {
            for m in 1..=3u64 {
                let a = m * d;
                for k in 0..=6u64 {
                    let t: Vec<BigInt> = (1..=k)
                        .map(|i| if i % d == 0 { BigInt::from(a) } else { BigInt::zero() })
                        .collect();
                    let series = if k % d == 0 {
                        binomial(m + k / d - 1, k / d)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(z_poly(&t), factorial(k) * series, "d={d} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn f_psi_closed_examples() {
        assert_eq!(f_psi_closed(&spec(3, 1, 0), 3, 2).unwrap(), BigInt::from(2));
        assert_eq!(f_psi_closed(&spec(3, 1, 1), 1, 2).unwrap(), BigInt::from(12));
        for (p, n) in [(3, 0), (3, 2), (5, 1), (7, 0)] {
            let t = spec(p, 1, n);
            for order in divisors(t.modulus()) {
                assert_eq!(f_psi_closed(&t, order, 0).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn f_psi_closed_errors() {
        let t = spec(3, 1, 1);
        assert_eq!(
            f_psi_closed(&t, 4, 1),
            Err(Error::InvalidOrder { order: 4, modulus: 6 })
        );
        assert_eq!(f_psi_closed(&t, 3, 5), Err(Error::SizeOutOfRange { k: 5, max: 4 }));
        assert!(matches!(
            f_psi_closed(&spec(2, 1, 1), 2, 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn closed_form_matches_cycle_index() {
        for (p, n) in [(3u32, 0u32), (3, 1), (3, 2), (3, 3), (5, 0), (5, 1), (7, 0), (11, 0)] {
            let t = spec(p, 1, n);
            for order in divisors(t.modulus()) {
                for k in 0..=t.size_d().min(6) {
                    assert_eq!(
                        f_psi_closed(&t, order, k).unwrap(),
                        f_psi_cycle_index(&t, order, k).unwrap(),
                        "{t} order={order} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn alternating_binomial_examples() {
        assert!(alternating_binomial_check(4));
        assert!(alternating_binomial_check(1));
        assert!(!alternating_binomial_check(0));
        assert!((1..=64).all(alternating_binomial_check));
    }

    #[test]
    fn p_term_vanishing_examples() {
        assert!(p_term_vanishing_check(&spec(3, 1, 1), 2).unwrap());
        assert!(p_term_vanishing_check(&spec(3, 1, 3), 4).unwrap());
        assert!(p_term_vanishing_check(&spec(5, 1, 1), 2).unwrap());
        assert!(p_term_vanishing_check(&spec(3, 1, 1), 3).is_err());
        assert!(p_term_vanishing_check(&spec(3, 1, 1), 1).is_err());
        assert!(p_term_vanishing_check(&spec(3, 1, 1), 4).is_err());
    }
}
