//! Exact symbolic ordinal arithmetic and ordinal-indexed compactness analysis.
//!
//! The crate is organized around a single value type, [`Ordinal`]: a two-tier
//! Cantor normal form with a pure tier below ε₀ and symbolic tiers for an
//! uncountable regular cardinal κ (written `k`) and its successor κ⁺ (written
//! `k+`). On top of it sit:
//!
//! * [`sums`] — the σ-string calculus: shifted sums, mixed sums, their
//!   extrema, and the `+*` operation governing disjoint unions;
//! * [`intervals`] — finite unions of half-open ordinal intervals with exact
//!   order types and shifted-sum witnesses;
//! * [`transfer`] — executable compactness-transfer maps with exact preimage
//!   order types;
//! * [`catalog`] — symbolic space descriptors with compactness verdicts and
//!   Lindelöf-ordinal computation;
//! * [`engine`] — a three-valued rule engine answering "does `[β, α]`-compact
//!   imply `[β′, α′]`-compact?" for several classes of spaces, with witness
//!   spaces drawn from the catalog on the negative side;
//! * [`finite`] — an exhaustive brute-force oracle on explicit finite set
//!   systems, used to cross-validate everything that has a finite shadow;
//! * [`selfcheck`] — the acceptance suite shared by `cargo test` and the
//!   `ordcomp selftest` command.
//!
//! All values are immutable and all operations are pure functions, so the
//! whole crate is safe for unsynchronized concurrent use.

pub mod catalog;
pub mod engine;
mod error;
pub mod finite;
pub mod intervals;
mod ordinal;
mod parse;
pub mod sampling;
pub mod selfcheck;
pub mod sums;
pub mod transfer;

pub use error::Error;
pub use ordinal::{CardClass, Exponent, Ordinal, OrdinalKind, Structure};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
