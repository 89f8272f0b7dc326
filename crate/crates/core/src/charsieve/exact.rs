//! Closed-form evaluation of `M(b)` through characters of `Z/N_p`.
//!
//! Expanding the indicator of `i ≡ b (mod N)` in characters gives
//! `M(b) = (1/N) sum_x zeta^{-x b} T(zeta^x)`. At a root of unity of order
//! `d`, the factors `(1 - zeta^{x a})` for `a ∈ D_p` cover each residue class
//! mod `d` prime to `p` exactly `N/d` times, so
//!
//! - `T(zeta^x) = 0` when `p ∤ d` (the class of 0 is present), and
//! - `T(zeta^x) = p^{s N / d}` when `p | d`.
//!
//! Grouping characters by order turns the inner sums into Ramanujan sums:
//!
//! ```text
//! M(b) = (1/N) sum_{d | N, p | d} c_d(b) p^{s N / d}
//! ```
//!
//! The `d = p` term is the main term; the rest is the error the asymptotic
//! bound controls.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::characters::char_classes;
use super::require_odd_prime;
use super::sieve::f_psi_closed;
use crate::error::{Error, Result};
use crate::numtheory::{big_pow, factorial};
use crate::polycore::ProductSpec;

fn exact_div(num: BigInt, divisor: u64) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(divisor));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Integrality { divisor })
    }
}

/// `M(b)` from the character-sum closed form, in exact integer arithmetic.
pub fn m_charsum_exact(spec: &ProductSpec, b: u64) -> Result<BigInt> {
    require_odd_prime(spec)?;
    let modulus = spec.modulus();
    if b >= modulus {
        return Err(Error::ResidueOutOfRange {
            residue: b,
            modulus,
        });
    }
    let p = spec.p() as u64;
    let s = spec.s() as u64;
    let total: BigInt = char_classes(modulus, b as i64)
        .into_iter()
        .filter(|class| class.order % p == 0)
        .map(|class| BigInt::from(class.weight) * big_pow(p, s * modulus / class.order))
        .sum();
    exact_div(total, modulus)
}

/// `M(b)` for every `b` in `0..N_p`.
pub fn m_charsum_all(spec: &ProductSpec) -> Result<Vec<BigInt>> {
    (0..spec.modulus())
        .map(|b| m_charsum_exact(spec, b))
        .collect()
}

/// `M(k_1, ..., k_s; b)` through the character expansion
/// `k_1! ... k_s! M(k; b) = (1/N) sum_psi psi^{-1}(b) prod_i F_psi(k_i)`,
/// with characters of equal order grouped into Ramanujan sums.
pub fn m_fixed_sizes_sieve(spec: &ProductSpec, sizes: &[u64], b: u64) -> Result<BigInt> {
    require_odd_prime(spec)?;
    let modulus = spec.modulus();
    if b >= modulus {
        return Err(Error::ResidueOutOfRange {
            residue: b,
            modulus,
        });
    }
    if sizes.len() != spec.s() as usize {
        return Err(Error::Unsupported(format!(
            "expected {} subset sizes, got {}",
            spec.s(),
            sizes.len()
        )));
    }
    let mut total = BigInt::zero();
    for class in char_classes(modulus, b as i64) {
        if class.weight == 0 {
            continue;
        }
        let mut term = BigInt::from(class.weight);
        for &k in sizes {
            term *= f_psi_closed(spec, class.order, k)?;
        }
        total += term;
    }
    let denom: BigInt = sizes.iter().map(|&k| factorial(k)).product::<BigInt>() * modulus;
    let (q, r) = total.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Integrality { divisor: modulus });
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsieve::m_fixed_sizes_bruteforce;

    fn spec(p: u32, s: u32, n: u32) -> ProductSpec {
        ProductSpec::new(p, s, n).unwrap()
    }

    #[test]
    fn worked_instance() {
        let t = spec(3, 1, 1);
        let got: Vec<BigInt> = (0..6).map(|b| m_charsum_exact(&t, b).unwrap()).collect();
        let want: Vec<BigInt> = [4, -1, -2, 2, -2, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            m_charsum_exact(&spec(2, 1, 3), 0),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(
            m_charsum_exact(&spec(3, 1, 1), 6),
            Err(Error::ResidueOutOfRange {
                residue: 6,
                modulus: 6
            })
        );
    }

    #[test]
    fn sieve_matches_subset_enumeration() {
        for (p, s, n) in [(3u32, 1u32, 0u32), (3, 1, 1), (3, 1, 2), (5, 1, 0), (3, 2, 0), (3, 2, 1), (7, 1, 0)] {
            let t = spec(p, s, n);
            let size = t.size_d();
            let mut sizes = vec![0u64; s as usize];
            loop {
                for b in 0..t.modulus() {
                    assert_eq!(
                        m_fixed_sizes_sieve(&t, &sizes, b).unwrap(),
                        m_fixed_sizes_bruteforce(&t, &sizes, b).unwrap(),
                        "{t} sizes={sizes:?} b={b}"
                    );
                }
                // odometer over 0..=size in each coordinate
                let mut i = 0;
                while i < sizes.len() && sizes[i] == size {
                    sizes[i] = 0;
                    i += 1;
                }
                if i == sizes.len() {
                    break;
                }
                sizes[i] += 1;
            }
        }
    }
}
