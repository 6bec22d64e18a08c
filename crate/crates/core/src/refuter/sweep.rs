use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mahler::{choose_p, mahler_witness, mahler_witness_with, MahlerCertificate};
use super::verify::{verify_certificate, Verification, VerifyOptions};
use crate::budget::Budget;
use crate::error::Result;
use crate::poly::IntPolynomial;
use crate::repcount::{Mode, RepTable};
use crate::seqprops::SequenceSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepStatus {
    Certified,
    Rejected,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub poly: IntPolynomial,
    pub status: SweepStatus,
    pub certificate: Option<MahlerCertificate>,
    pub verification: Option<Verification>,
    pub error: Option<String>,
}

/// Builds and verifies a certificate for every polynomial, in parallel. The
/// result keeps the input order.
pub fn mahler_sweep(polys: &[IntPolynomial]) -> Result<Vec<SweepEntry>> {
    // one read-only table sized for the largest witness: k − 1 = 2^(t+p) − 1
    let needs: Vec<(usize, u32)> = polys
        .iter()
        .filter_map(|f| choose_p(f).ok().map(|p| (f.degree(), p)))
        .collect();
    let table = match needs.iter().map(|&(t, p)| t as u32 + p).max() {
        Some(tp) if tp <= 62 => {
            let t_max = needs.iter().map(|&(t, _)| t).max().unwrap_or(1) as u32;
            Some(RepTable::build(
                &SequenceSpec::pow2(),
                Mode::Ordered,
                (1u64 << tp) - 1,
                t_max,
                &Budget::default(),
            )?)
        }
        _ => None,
    };
    let entries = polys
        .par_iter()
        .map(|f| {
            let built = match &table {
                Some(t) => mahler_witness_with(f, t),
                None => mahler_witness(f),
            };
            let cert = match built {
                Ok(c) => c,
                Err(e) => return error_entry(f, e.to_string()),
            };
            match verify_certificate(&cert, &VerifyOptions::default()) {
                Ok(v) => SweepEntry {
                    poly: f.clone(),
                    status: if v.accepted {
                        SweepStatus::Certified
                    } else {
                        SweepStatus::Rejected
                    },
                    certificate: Some(cert),
                    verification: Some(v),
                    error: None,
                },
                Err(e) => error_entry(f, e.to_string()),
            }
        })
        .collect();
    Ok(entries)
}

fn error_entry(f: &IntPolynomial, msg: String) -> SweepEntry {
    SweepEntry {
        poly: f.clone(),
        status: SweepStatus::Error,
        certificate: None,
        verification: None,
        error: Some(msg),
    }
}
