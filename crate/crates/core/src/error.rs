use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is not irreducible over F_{0}")]
    NotIrreducible(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("the zero polynomial has no roots to report")]
    ZeroPolynomial,
    #[error("Mobius transformation has zero determinant")]
    SingularMatrix,
    #[error("right-hand side is of the form z^p - z + c; the cover is trivial")]
    TrivialCover,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is divisible by the characteristic")]
    DegreeDivisibleByP(usize),
    #[error("degree {0} needs nested p-power elimination (d >= p^2), which is not supported")]
    UnsupportedNesting(usize),
    #[error("poles are not rational over the working field")]
    PolesNotRational,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("stratum (g={g}, p={p}, s={s}) has no reconstructing invariants (supported: genus 3 and 4)")]
    UnsupportedStratum { g: u64, p: u32, s: u64 },
    #[error("inconsistent invariant values: {0}")]
    InconsistentValues(String),
    #[error("census domain of {size} tuples exceeds the budget of {budget}")]
    DomainTooLarge { size: u128, budget: u128 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("generator t used without a field= declaration")]
    UndeclaredGenerator,
    #[error("invalid isomorphism record: {0}")]
    InvalidRecord(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
