//! Counting representations of integers as sums of sequence terms.
//!
//! `d_n(q)` is the number of ways to write `n` as a sum of `q` terms. In
//! [`Mode::Ordered`] the summands form a tuple (the count used when expanding
//! `f(μ)`); in [`Mode::Unordered`] the indices are non-decreasing. Exponents
//! of two range over `w ≥ 0`, so `3 = 2^0 + 2^1 = 2^1 + 2^0` gives
//! `d_3(2) = 2`. By convention `d_0(0) = 1`.

mod audit;
mod pow2;
mod table;
mod weighted;

pub use audit::{lemma_audit, LemmaAudit, OrderedStepFailures, QMaximum, Violation, ViolationKind};
pub use pow2::{dnq_bruteforce, dnq_pow2, Pow2Memo};
pub use table::{dnq_general, Mode, RepTable};
pub use weighted::{weighted_digit_coeff, WeightedTable};
