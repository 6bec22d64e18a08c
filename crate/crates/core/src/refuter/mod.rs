//! Non-vanishing certificates for integer polynomials at lacunary numbers.
//!
//! For `μ = Σ 2^(-2^n)` the digits `d_n = Σ_q a_q d_n(q)` of `f(μ)` vanish on a
//! long stretch `(s, k)` except at `m`, so `{2^s f(μ)}` is pinned near
//! `d_m·2^(s−m)`, strictly between 0 and 1. [`mahler_witness`] builds that
//! record from exact counts and [`verify_certificate`] re-checks it by
//! interval arithmetic alone.

mod generalized;
mod liouville;
mod mahler;
mod sweep;
mod verify;

pub use mahler::{
    choose_p, coeff_bound_d, inequalities_hold, mahler_witness, mahler_witness_with, positions,
    witness_table, MahlerCertificate, Verdict, P_CAP,
};
pub use generalized::{
    generalized_witness, GeneralizedCertificate, GeneralizedOptions, GeneralizedOutcome,
};
pub use liouville::{
    liouville_nonvanishing, LiouvilleCertificate, LiouvilleOutcome, PedagogyStep, PEDAGOGY_S_MAX,
};
pub use sweep::{mahler_sweep, SweepEntry, SweepStatus};
pub use verify::{verify_certificate, RejectReason, Verification, VerifyOptions, GUARD_BITS};
