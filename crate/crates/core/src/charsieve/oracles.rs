//! Exhaustive enumerations over subsets and tuples of `D_p`.
//!
//! These are the independent references for the closed forms in this
//! module and for the product expansion itself. They are exponential and
//! hard-capped at [`ENUMERATION_CAP`] items.

use num_bigint::BigInt;
use num_traits::Zero;

use super::cyclotomic::CyclotomicInt;
use super::require_odd_prime;
use crate::error::{Error, Result};
use crate::numtheory::binomial;
use crate::polycore::ProductSpec;

pub const ENUMERATION_CAP: u128 = 10_000_000;

fn check_cap(needed: u128) -> Result<()> {
    if needed > ENUMERATION_CAP {
        Err(Error::EnumerationBudget {
            needed,
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

fn d_set(spec: &ProductSpec) -> Vec<u64> {
    spec.factor_exponents().collect()
}

/// `F_psi` for `psi(y) = exp(2 pi i x y / N_p)`, summed over every `k`-tuple
/// of distinct elements of `D_p`, kept exact in `Z[zeta_N]`.
pub fn f_psi_bruteforce(spec: &ProductSpec, x: u64, k: u64) -> Result<CyclotomicInt> {
    require_odd_prime(spec)?;
    let modulus = spec.modulus();
    if x >= modulus {
        return Err(Error::ResidueOutOfRange {
            residue: x,
            modulus,
        });
    }
    let size = spec.size_d();
    if k > size {
        return Err(Error::SizeOutOfRange { k, max: size });
    }
    let needed = (size as u128)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX);
    check_cap(needed)?;

    let elems = d_set(spec);
    let mut counts = vec![0u64; modulus as usize];
    let mut used = vec![false; elems.len()];

    fn go(
        depth: u64,
        k: u64,
        sum: u64,
        elems: &[u64],
        used: &mut [bool],
        modulus: u64,
        counts: &mut [u64],
    ) {
        if depth == k {
            counts[sum as usize] += 1;
            return;
        }
        for i in 0..elems.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            go(depth + 1, k, (sum + elems[i]) % modulus, elems, used, modulus, counts);
            used[i] = false;
        }
    }
    go(0, k, 0, &elems, &mut used, modulus, &mut counts);

    // prod psi(a_i) = zeta^{x * sum a_i}
    let mut value = CyclotomicInt::zero(modulus);
    for (r, &c) in counts.iter().enumerate() {
        if c != 0 {
            value.add_power(x * r as u64 % modulus, c);
        }
    }
    Ok(value)
}

/// Calls `visit` with every `k`-subset of `0..n` as an index slice.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of `s`-tuples `(V_1, ..., V_s)` of subsets of `D_p` with
/// `|V_i| = sizes[i]` whose total element sum is `≡ b (mod N_p)`.
pub fn m_fixed_sizes_bruteforce(spec: &ProductSpec, sizes: &[u64], b: u64) -> Result<BigInt> {
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
    let size = spec.size_d();
    if let Some(&k) = sizes.iter().find(|&&k| k > size) {
        return Err(Error::SizeOutOfRange { k, max: size });
    }
    let needed = sizes.iter().try_fold(1u128, |acc, &k| {
        let c: u128 = binomial(size, k).try_into().unwrap_or(u128::MAX);
        acc.checked_mul(c)
    });
    check_cap(needed.unwrap_or(u128::MAX))?;

    let elems = d_set(spec);
    let m = modulus as usize;
    // Histogram of subset sums mod N for each requested size, combined by
    // cyclic convolution across the s coordinates.
    let mut total = vec![BigInt::zero(); m];
    total[0] = BigInt::from(1);
    for &k in sizes {
        let mut hist = vec![0u64; m];
        for_each_combination(elems.len(), k as usize, |idx| {
            let sum: u64 = idx.iter().map(|&i| elems[i]).sum();
            hist[(sum % modulus) as usize] += 1;
        });
        let mut next = vec![BigInt::zero(); m];
        for (r, a) in total.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r2, &h) in hist.iter().enumerate() {
                if h != 0 {
                    next[(r + r2) % m] += a * h;
                }
            }
        }
        total = next;
    }
    Ok(total.swap_remove(b as usize))
}

/// Counts of `s`-tuples of subsets of `D_p` with a given exact total sum,
/// split by the parity of the total number of elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParityCounts {
    pub even: BigInt,
    pub odd: BigInt,
}

impl ParityCounts {
    pub fn difference(&self) -> BigInt {
        &self.even - &self.odd
    }
}

/// `C_e(j) - C_o(j)` for every `j` in `0..=deg T`.
pub fn partition_parity_table(spec: &ProductSpec) -> Result<Vec<BigInt>> {
    Ok(parity_counts(spec)?
        .iter()
        .map(ParityCounts::difference)
        .collect())
}

/// `C_e(j) - C_o(j)`: signed count of `s`-tuples of subsets of `D_p` whose
/// elements sum to exactly `j`. Should equal the coefficient `t_j`.
pub fn partition_parity_oracle(spec: &ProductSpec, j: u64) -> Result<BigInt> {
    let table = parity_counts(spec)?;
    Ok(table
        .get(j as usize)
        .map(ParityCounts::difference)
        .unwrap_or_default())
}

fn parity_counts(spec: &ProductSpec) -> Result<Vec<ParityCounts>> {
    let elems = d_set(spec);
    let needed = 1u128.checked_shl(elems.len() as u32).unwrap_or(u128::MAX);
    check_cap(needed)?;

    let max_sum: u64 = elems.iter().sum();
    let mut single = vec![[0u64; 2]; max_sum as usize + 1];
    for mask in 0u64..(1u64 << elems.len()) {
        let mut sum = 0;
        for (i, &e) in elems.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += e;
            }
        }
        single[sum as usize][(mask.count_ones() % 2) as usize] += 1;
    }

    let mut total = vec![ParityCounts {
        even: BigInt::from(1),
        odd: BigInt::zero(),
    }];
    for _ in 0..spec.s() {
        let mut next = vec![ParityCounts::default(); total.len() + single.len() - 1];
        for (i, acc) in total.iter().enumerate() {
            for (j, &[e, o]) in single.iter().enumerate() {
                if e == 0 && o == 0 {
                    continue;
                }
                let cell = &mut next[i + j];
                cell.even += &acc.even * e + &acc.odd * o;
                cell.odd += &acc.even * o + &acc.odd * e;
            }
        }
        total = next;
    }
    Ok(total)
}
