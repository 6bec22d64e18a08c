//! Exact arithmetic around lacunary binary series.
//!
//! The crate evaluates series such as `Σ 2^(-2^n)` and `Σ 2^(-n!)` with
//! rigorous dyadic enclosures, counts representations of integers as sums of
//! sequence terms, screens sequences for looseness and sparseness, and emits
//! independently checkable certificates that a given integer polynomial does
//! not vanish at the Mahler number `μ = Σ 2^(-2^n)` or the Liouville number
//! `λ = Σ 2^(-n!)`.
//!
//! - [`dyadic`]: exact `m·2^(-e)` numbers, intervals, series and digits
//! - [`repcount`]: `d_n(q)` counts, brute-force oracle, lemma audit
//! - [`seqprops`]: representable sets, sparseness and looseness screens
//! - [`refuter`]: Mahler, Liouville and generalized non-vanishing certificates
//! - [`report`] and [`cli`]: serialization and the command-line front end

pub mod budget;
pub mod cli;
pub mod dyadic;
mod error;
pub mod poly;
pub mod ratio;
pub mod refuter;
pub mod repcount;
pub mod report;
mod serde_big;
pub mod seqprops;

pub use budget::Budget;
pub use dyadic::{DyadicInterval, DyadicNumber, FracPart, SeriesSpec};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
