//! Screens for the hypotheses of the lacunary generalization: which numbers
//! are sums of at most `q` terms (`q`-representable), whether the
//! representable set has arbitrarily large double gaps (sparse), and whether
//! `d_n(q)` stays bounded (loose). Results are finite-range evidence only.

mod screens;
mod sequence;

pub use screens::{
    check_loose, check_sparse, classify, representable_set, Classification, HistogramBucket,
    LooseVerdict, LoosenessReport, QClassification, SparseStatus, SparsenessReport, CLASSIFY_NOTE,
};
pub use sequence::{SequenceKind, SequenceSpec};
