use num_bigint::BigInt;
use serde::Serialize;

use super::require_odd_prime;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, gcd, mobius};
use crate::polycore::ProductSpec;

/// Ramanujan sum `c_d(b)`: the sum of the `b`-th powers of the primitive
/// `d`-th roots of unity, via `mu(d/g) phi(d) / phi(d/g)` with `g = gcd(d, b)`.
pub fn ramanujan_sum(d: u64, b: i64) -> i64 {
    assert!(d >= 1, "ramanujan_sum needs d >= 1");
    let b = b.rem_euclid(d as i64) as u64;
    let g = gcd(d, b);
    let q = d / g;
    mobius(q) * (euler_phi(d) / euler_phi(q)) as i64
}

/// The character `y -> exp(2 pi i x y / N)` of `Z/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterFnSpec {
    modulus: u64,
    index: u64,
}

impl CharacterFnSpec {
    pub fn new(modulus: u64, index: u64) -> Result<Self> {
        if index >= modulus {
            return Err(Error::ResidueOutOfRange {
                residue: index,
                modulus,
            });
        }
        Ok(CharacterFnSpec { modulus, index })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `N / gcd(x, N)`; equals 1 exactly for the trivial character.
    pub fn order(&self) -> u64 {
        self.modulus / gcd(self.index, self.modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
}

/// `s_D(psi) = sum_{a in D_p} psi(a)`, from its three-case closed form.
pub fn s_d(spec: &ProductSpec, chi: &CharacterFnSpec) -> Result<BigInt> {
    require_odd_prime(spec)?;
    if chi.modulus() != spec.modulus() {
        return Err(Error::ModulusMismatch {
            found: chi.modulus(),
            expected: spec.modulus(),
        });
    }
    Ok(s_d_by_order(spec, chi.order()))
}

pub(crate) fn s_d_by_order(spec: &ProductSpec, order: u64) -> BigInt {
    let p = spec.p() as u64;
    let cofactor = spec.modulus() / p;
    if order == 1 {
        BigInt::from((p - 1) * cofactor)
    } else if order == p {
        -BigInt::from(cofactor)
    } else {
        BigInt::from(0)
    }
}

/// Characters of `Z/N` grouped by exact order `d`, each weighted by the
/// aggregate `sum_{o(psi) = d} psi^{-1}(b) = c_d(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharClass {
    pub order: u64,
    pub weight: i64,
    pub count: u64,
}

pub fn char_classes(modulus: u64, b: i64) -> Vec<CharClass> {
    divisors(modulus)
        .into_iter()
        .map(|d| CharClass {
            order: d,
            weight: ramanujan_sum(d, b),
            count: euler_phi(d),
        })
        .collect()
}
