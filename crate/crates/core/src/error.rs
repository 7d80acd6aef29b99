use crate::cyclotomic::ModulusInterval;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },

    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u32, alphabet: u32 },

    #[error("morphism is not prolongable on the requested seed")]
    NotProlongable,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} exceeds the configured limit of {limit}")]
    TooLarge { what: String, limit: u64 },

    #[error("segment set is empty")]
    EmptySegmentSet,

    #[error("curve is not regular: |r| lies in [{}, {}]", .modulus.lower, .modulus.upper)]
    NotRegular { modulus: ModulusInterval },

    /// The heading factor of the first morphism block is a root of unity whose
    /// order has odd part < 3, so no Dekking target exists (the "q = 1" case).
    #[error("heading factor has order {order} with odd part < 3; no Dekking target exists (q = 1)")]
    TrivialHeading { order: u64 },

    #[error("heading exponent {k} is not coprime to order {q}")]
    HeadingNotCoprime { k: u64, q: u64 },

    /// The two block step sums coincide, so the absolute curve collapses and
    /// cannot be rescaled onto a Dekking curve.
    #[error("the block step sums are equal; the absolute curve cannot be related to a Dekking curve")]
    EqualStepSums,

    #[error("no regular Dekking target over q = {q} is reachable by any exponent shift")]
    NoRegularTarget { q: u64 },

    #[error("no exponent d with {base}^d * {k2} = {k1} (mod {q})")]
    NoValidExponent { base: u64, k2: u64, k1: u64, q: u64 },

    #[error("witness endpoints do not share the middle curve")]
    MismatchedComposition,
}
