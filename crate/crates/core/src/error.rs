use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{k} is outside the supported range")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("{n} does not divide the multiplicative group order {group}")]
    NotDivisor { n: u64, group: u64 },
    #[error("GF({sub}) is not a subfield of GF({order})")]
    NotSubfield { sub: u64, order: u64 },
    #[error("minimal polynomial coefficient does not lie in the base field")]
    CoefficientNotInSubfield,
    #[error("designed distance {delta} outside [2, {n}]")]
    DeltaOutOfRange { delta: u64, n: u64 },
    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("outside the formula's range: {0}")]
    RangeUnsupported(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("budget exceeded: needs {} units, budget is {budget}", units(*needed))]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("root check failed at exponent {0}")]
    RootCheckFailed(u64),
    #[error("degree {r} out of range for {len} values")]
    ROutOfRange { r: usize, len: usize },
    #[error("values are not pairwise distinct")]
    RepeatedValue,
    #[error("witness rejected: {0}")]
    InvalidWitness(String),
}

/// Saturated counts print as a bound rather than as `u128::MAX`.
fn units(needed: u128) -> String {
    if needed == u128::MAX {
        "more than 2^127".into()
    } else {
        needed.to_string()
    }
}
