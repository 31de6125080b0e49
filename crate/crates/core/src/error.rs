use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A `u64` coefficient computation overflowed.
    #[error("coefficient arithmetic overflow")]
    CoefficientOverflow,

    /// `left_sub(a, g)` was called with `a > g`; `-a + g` has no solution.
    #[error("cannot left-subtract {minuend} from {target}: minuend is larger")]
    LeftSubUnderflow { minuend: String, target: String },

    /// The product would create a κ⁺-tier exponent that is not already
    /// present in the right factor; such values lie outside the supported
    /// fragment (κ⁺ participates in arithmetic only through absorption and
    /// coefficient scaling).
    #[error("product lies outside the supported ordinal fragment (new \u{3ba}\u{207a}-tier exponent)")]
    ProductOutsideFragment,

    /// The power is not in the supported fragment (base ω with any exponent,
    /// any base with a natural-number exponent, base κ with a pure exponent).
    #[error("power outside the supported fragment: {0}")]
    PowerOutsideFragment(String),

    /// Division by the ordinal 0.
    #[error("ordinal division by zero")]
    DivisionByZero,

    /// `pred` was called on 0 or a limit ordinal.
    #[error("{0} is not a successor ordinal")]
    NotASuccessor(String),

    /// A limit ordinal was required (for example by `nsup`).
    #[error("{0} is not a limit ordinal")]
    NotALimit(String),

    /// The operation is defined only for infinite ordinals.
    #[error("operation requires an infinite ordinal, got {0}")]
    RequiresInfinite(String),

    /// Zero was passed where a nonzero ordinal is required.
    #[error("zero ordinal is not accepted by {0}")]
    ZeroArgument(&'static str),

    /// Term list handed to a raw constructor violates normal form.
    #[error("term list is not in normal form: {0}")]
    InvalidTerms(String),

    /// Expression / interval syntax error.
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },

    /// The `k+` atom was used while κ⁺ support is disabled.
    #[error("parse error at byte {pos}: k+ is disabled (enable \u{3ba}\u{207a} support)")]
    KappaPlusDisabled { pos: usize },

    /// Set operation on interval sets with different ambient bounds.
    #[error("interval sets have different bounds: {0} vs {1}")]
    BoundMismatch(String, String),

    /// An interval [lo, hi) with lo > hi, or a compactness interval with
    /// β > α.
    #[error("malformed interval [{lo}, {hi})")]
    MalformedInterval { lo: String, hi: String },

    /// A point or interval lies outside the expected ambient range.
    #[error("{what} lies outside {ambient}")]
    OutOfRange { what: String, ambient: String },

    /// `realize_shifted_sum` was asked for a witness that does not exist.
    #[error("{g} is not a shifted sum of {a} and {b}")]
    NotAShiftedSum { g: String, a: String, b: String },

    /// A σ-string expansion would exceed the configured safety cap.
    #[error("\u{3c3}-string expansion too large ({len} items, cap {cap})")]
    ExpansionTooLarge { len: u64, cap: u64 },

    /// A finite-oracle construction exceeds its configured size bound.
    #[error("finite construction too large: {0}")]
    SizeLimit(String),

    /// A descriptor or query is structurally invalid.
    #[error("invalid input: {0}")]
    Invalid(String),
}
