//! Generic erasure correcting sets over GF(2).
//!
//! A generic `(r,m)`-erasure correcting set `A ⊆ F_2^r` turns any full-rank
//! parity-check matrix `H` of a code with codimension `r` into a collection
//! of checks `{aH : a ∈ A}` on which the peeling decoder recovers every
//! uniquely-decodable erasure pattern of size at most `m`.
//!
//! - [`gf2`]: packed vectors and matrices, rank, inversion, and the
//!   canonical stream of independent column sets.
//! - [`gensets`]: the explicit constructions, the witness procedure and
//!   the size bounds.
//! - [`verifier`]: exhaustive certification and randomized search.
//! - [`decoder`]: codes, check collections, peeling and stopping sets.
//! - [`cli`]: the `gecs` command-line tool.

pub mod cli;
pub mod decoder;
pub mod error;
pub mod gensets;
pub mod gf2;
pub mod verifier;

pub use decoder::{CheckCollection, Code, PeelingTrace, ReceivedWord};
pub use error::{Error, Result};
pub use gensets::GenericSet;
pub use gf2::{BitMatrix, BitVec};
pub use verifier::{SearchOutcome, VerificationReport};
