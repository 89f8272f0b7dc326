//! Characters of `Z/N_p`, the distinct-tuple sieve over `D_p`, and the exact
//! character-sum evaluation of the progression sums `M(b)`.
//!
//! `D_p` is the set of residues mod `N_p = p(n+1)` not divisible by `p`; it
//! is the complement of the index-`p` subgroup. Every operation here needs
//! `p >= 3`.

mod characters;
mod cyclotomic;
mod exact;
mod oracles;
mod sieve;

pub use characters::{char_classes, ramanujan_sum, s_d, CharClass, CharacterFnSpec};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use exact::{m_charsum_all, m_charsum_exact, m_fixed_sizes_sieve};
pub use oracles::{
    f_psi_bruteforce, m_fixed_sizes_bruteforce, partition_parity_oracle, partition_parity_table,
    ENUMERATION_CAP,
};
pub use sieve::{
    alternating_binomial_check, cycle_count, cycle_types, f_psi_closed, f_psi_cycle_index,
    p_term_vanishing_check, z_poly, CycleType,
};

use crate::error::{Error, Result};
use crate::polycore::ProductSpec;

pub(crate) fn require_odd_prime(spec: &ProductSpec) -> Result<()> {
    if spec.p() < 3 {
        Err(Error::Unsupported(format!(
            "character sieve needs p >= 3, got p = {}",
            spec.p()
        )))
    } else {
        Ok(())
    }
}
