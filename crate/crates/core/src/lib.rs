//! Exact arithmetic for the products
//!
//! ```text
//! T(p, s, n; q) = prod_{j=0}^{n} prod_{k=1}^{p-1} (1 - q^{pj+k})^s
//! ```
//!
//! and for the sums of their coefficients along arithmetic progressions.
//!
//! The crate is split by concern:
//!
//! - [`polycore`]: dense big-integer polynomials and the product expansion.
//! - [`progression`]: residue splits, progression sums, and the named
//!   polynomials of the three Borwein sign conjectures.
//! - [`charsieve`]: characters of `Z/NZ`, the distinct-tuple sieve, brute-force
//!   combinatorial oracles, and a closed form for the progression sums.
//! - [`theorems`]: main terms, error bounds, sign thresholds, verification grids.
//! - [`spectral`]: maximum coefficients and unit-circle sup-norm sampling.
//! - [`report`]: CSV/JSON emitters shared with the command-line tool.

pub mod charsieve;
pub mod error;
pub mod numtheory;
pub mod polycore;
pub mod progression;
pub mod report;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
pub use polycore::{expand_product, expand_product_within, Budget, IntPolynomial, ProductSpec};
pub use progression::{m_direct, ProgressionQuery, ResidueSplit};
pub use charsieve::m_charsum_exact;
pub use theorems::VerificationRow;
pub use spectral::SupNormEstimate;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
