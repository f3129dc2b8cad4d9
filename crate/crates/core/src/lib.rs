//! Exact enumeration of even-up / odd-up words and restricted Catalan words.
//!
//! A word over `[k] = {1, ..., k}` is *even-up* when every even letter (except
//! the last) is immediately followed by a strictly larger letter. Swapping the
//! constrained parity gives *odd-up* words, relaxing `>` to `>=` gives the
//! *weakly* variants, and applying the rule across the wrap `w_n -> w_1` gives
//! the *cyclic* variants: eight classes in total.
//!
//! Every count is produced by several independent engines that are expected to
//! agree exactly:
//!
//! - [`words`]: the predicates and an exhaustive brute-force oracle
//! - [`transfer`]: transfer-matrix counting (vector iteration and traces)
//! - [`genfunc`]: closed-form rational generating functions
//! - [`catalan`]: Catalan-word enumeration, last-letter DP, the convolution
//!   system and the algebraic generating functions
//! - [`algebra`]: the exact polynomial and power-series arithmetic underneath
//! - [`oeis`]: b-file parsing, caching, fetching and offset-aware comparison

pub mod algebra;
pub mod catalan;
mod error;
pub mod genfunc;
pub mod oeis;
pub mod transfer;
pub mod words;

pub use error::{Error, Result};
pub use words::{CountTable, Parity, Strictness, Topology, Word, WordClass};
