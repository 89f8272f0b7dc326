use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),

    #[error("power s must be at least 1")]
    ZeroPower,

    #[error("parameters overflow the supported integer range")]
    Overflow,

    #[error("{needed} coefficients exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("enumeration of {needed} items exceeds the cap of {cap}")]
    EnumerationBudget { needed: u128, cap: u128 },

    #[error("residue {residue} is out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },

    #[error("progression modulus {modulus} is not a positive multiple of p = {p}")]
    InvalidProgression { modulus: u64, p: u64 },

    #[error("polynomial has degree {found:?}, expected {expected}")]
    LengthMismatch { found: Option<usize>, expected: u64 },

    #[error("order {order} is not admissible for modulus {modulus}")]
    InvalidOrder { order: u64, modulus: u64 },

    #[error("character modulus {found} does not match N_p = {expected}")]
    ModulusMismatch { found: u64, expected: u64 },

    #[error("tuple length {k} is outside 0..={max}")]
    SizeOutOfRange { k: u64, max: u64 },

    #[error("sample count {samples} is below the floor of {floor}")]
    TooFewSamples { samples: u64, floor: u64 },

    #[error("division by {divisor} is not exact")]
    Integrality { divisor: u64 },

    #[error("methods disagree at (p={p}, s={s}, n={n}, b={b}): direct {direct}, charsum {charsum}")]
    OracleMismatch {
        p: u32,
        s: u32,
        n: u32,
        b: u64,
        direct: String,
        charsum: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
