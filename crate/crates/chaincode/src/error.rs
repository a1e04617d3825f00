//! Error type shared by every module of the crate.

use thiserror::Error;

/// Domain errors. Variant names match the error contracts of the operations
/// that raise them; the CLI maps any of these to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonPrime: {0} is not prime")]
    NonPrime(u64),
    #[error("ReducibleModulus: modulus reduces to a reducible polynomial mod p")]
    ReducibleModulus,
    #[error("UnsupportedExtension: ramification index e > 1 is not supported")]
    UnsupportedExtension,
    #[error("Overflow: ring parameters exceed the exact-arithmetic range of this build")]
    Overflow,
    #[error("NonUnit: element has no multiplicative inverse")]
    NonUnit,
    #[error("RingMismatch: operands belong to different rings")]
    RingMismatch,
    #[error("NonMonicDivisor: polynomial division requires a monic divisor")]
    NonMonicDivisor,
    #[error("NotMonic: operation requires a monic polynomial")]
    NotMonic,
    #[error("NotSquareFree: polynomial residue is not square-free")]
    NotSquareFree,
    #[error("NotCoprimeToP: the period is divisible by p (residue not square-free)")]
    NotCoprimeToP,
    #[error("CapExceeded: period exceeds the iteration cap of {0}")]
    CapExceeded(u64),
    #[error("NotADivisor: polynomial is not a product of factors of the anchored factor set")]
    NotADivisor,
    #[error("ZeroPolynomial: operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("LengthMismatch: codes or vectors have different lengths")]
    LengthMismatch,
    #[error("SizeMismatch: matrix dimensions do not match")]
    SizeMismatch,
    #[error("NonUnitA0: associate vector must start with a unit")]
    NonUnitA0,
    #[error("NonUnitConstantTerm: generator polynomial must have a unit constant term")]
    NonUnitConstantTerm,
    #[error("NotSquareFreeAmbient: residue of X^n - Psi(a) is not square-free")]
    NotSquareFreeAmbient,
    #[error("NotFree: operation requires a free polycyclic code")]
    NotFree,
    #[error("ZeroCode: operation undefined for the zero code")]
    ZeroCode,
    #[error("NotPolycyclic: generators do not span a code invariant under D_a")]
    NotPolycyclic,
    #[error("SingularGram: Gram matrix of the a-inner product is not invertible")]
    SingularGram,
    #[error("SigmaUnstableAmbient: ambient polynomial is not fixed by sigma^r")]
    SigmaUnstableAmbient,
    #[error("SubringDegree: {r} does not divide the residue degree m = {m}")]
    SubringDegree { r: u32, m: u32 },
    #[error("BudgetExceeded: scan of {needed} vectors exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("BadDescriptor: {0}")]
    BadDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
