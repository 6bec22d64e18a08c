//! Serialized output: a versioned JSON envelope, plot-ready CSV tables and
//! short human-readable text.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dyadic::{Digits, DyadicInterval};
use crate::error::Error;
use crate::refuter::{
    GeneralizedOutcome, LiouvilleOutcome, MahlerCertificate, SweepEntry, SweepStatus, Verification,
};
use crate::repcount::{LemmaAudit, Mode};
use crate::seqprops::{Classification, LoosenessReport, SparseStatus, SparsenessReport};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidSeries(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: String,
    pub command: String,
    pub result: T,
}

/// A result that can be rendered in every output format.
pub trait Render: Serialize {
    fn csv(&self) -> String;
    fn text(&self) -> String;
}

pub fn emit_report<T: Render>(command: &str, result: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION.to_string(),
                command: command.to_string(),
                result,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => result.csv(),
        Format::Text => result.text(),
    }
}

fn interval_cells(i: Option<&DyadicInterval>) -> String {
    match i {
        Some(i) => format!("{},{}", i.lower(), i.upper()),
        None => ",".to_string(),
    }
}

impl Render for Digits {
    fn csv(&self) -> String {
        format!(
            "series,base,integer_part,digits,terms_used\n{},{},{},{},{}\n",
            self.series, self.base, self.integer_part, self.digits, self.terms_used
        )
    }

    fn text(&self) -> String {
        format!(
            "series {} in base {}: integer part {}\n{}\n",
            self.series, self.base, self.integer_part, self.digits
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCount {
    pub sequence: String,
    pub mode: Mode,
    pub n: u64,
    pub q: u32,
    #[serde(with = "crate::serde_big::biguint")]
    pub count: BigUint,
}

impl Render for RepCount {
    fn csv(&self) -> String {
        format!(
            "sequence,mode,n,q,count\n{},{},{},{},{}\n",
            self.sequence, self.mode, self.n, self.q, self.count
        )
    }

    fn text(&self) -> String {
        format!(
            "d_{}({}) = {} ({} sums over {})\n",
            self.n, self.q, self.count, self.mode, self.sequence
        )
    }
}

impl Render for LemmaAudit {
    fn csv(&self) -> String {
        let mut s = String::from("q,max,argmax,bound\n");
        for m in &self.maxima {
            let _ = writeln!(s, "{},{},{},{}", m.q, m.max, m.argmax, m.bound);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!(
            "representation lemma audit, n <= {}, q <= {}: {} cells, {} violations\n",
            self.n_max,
            self.q_max,
            self.checked,
            self.violations.len()
        );
        for m in &self.maxima {
            let _ = writeln!(
                s,
                "  q={}: max d_n(q) = {} at n = {} (bound {})",
                m.q, m.max, m.argmax, m.bound
            );
        }
        for v in &self.violations {
            let _ = writeln!(s, "  violation {:?} at n={} q={}: {} > {}", v.kind, v.n, v.q, v.value, v.limit);
        }
        if let Some(f) = &self.ordered_step.first {
            let _ = writeln!(
                s,
                "  note: with ordered counts the step inequality fails {} times, first d_{}({}) = {} > {}",
                self.ordered_step.count,
                f.n,
                f.q + 1,
                f.value,
                f.limit
            );
        }
        s
    }
}

fn witness_cells(w: Option<(u64, u64, u64)>) -> String {
    match w {
        Some((a, b, c)) => format!("{a},{b},{c}"),
        None => ",,".to_string(),
    }
}

fn status_word(s: SparseStatus) -> &'static str {
    match s {
        SparseStatus::Found => "found",
        SparseStatus::Inconclusive => "inconclusive",
    }
}

impl Render for SparsenessReport {
    fn csv(&self) -> String {
        format!(
            "q,gap,n_max,status,a,b,c\n{},{},{},{},{}\n",
            self.q,
            self.gap,
            self.n_max,
            status_word(self.status),
            witness_cells(self.witness)
        )
    }

    fn text(&self) -> String {
        match self.witness {
            Some((a, b, c)) => format!(
                "q={}: sparse witness ({a}, {b}, {c}) with gaps {} and {} > {}\n",
                self.q,
                b - a,
                c - b,
                self.gap
            ),
            None => format!(
                "q={}: inconclusive up to {} (no consecutive triple with both gaps > {})\n",
                self.q, self.n_max, self.gap
            ),
        }
    }
}

fn histogram_rows(s: &mut String, r: &LoosenessReport) {
    for b in &r.histogram {
        let _ = writeln!(s, "{},{},{},{}", r.q, r.mode, b.count, b.frequency);
    }
}

impl Render for LoosenessReport {
    /// One row per count bucket.
    fn csv(&self) -> String {
        let mut s = String::from("q,mode,count,frequency\n");
        histogram_rows(&mut s, self);
        s
    }

    fn text(&self) -> String {
        format!(
            "q={} ({}): max d_n(q) = {} at n = {} over n <= {}; {}\n",
            self.q,
            self.mode,
            self.max_count,
            self.argmax,
            self.n_max,
            match self.verdict {
                crate::seqprops::LooseVerdict::BoundedSoFar => "bounded so far".to_string(),
                crate::seqprops::LooseVerdict::GrowthDetected =>
                    format!("growth detected (above {})", self.threshold),
            }
        )
    }
}

impl Render for Classification {
    /// Count histograms for every `q` and both modes.
    fn csv(&self) -> String {
        let mut s = String::from("q,mode,count,frequency\n");
        for row in &self.per_q {
            histogram_rows(&mut s, &row.loose);
            histogram_rows(&mut s, &row.loose_ordered);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!(
            "sequence {} screened for q <= {}, n <= {}, gap > {}\n",
            self.sequence, self.q_max, self.n_max, self.gap
        );
        for row in &self.per_q {
            s.push_str("  ");
            s.push_str(&row.loose.text());
            s.push_str("  ");
            s.push_str(&row.loose_ordered.text());
            s.push_str("  ");
            s.push_str(&row.sparse.text());
        }
        let _ = writeln!(s, "note: {}", self.note);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerRun {
    pub certificate: MahlerCertificate,
    pub verification: Verification,
}

const CERT_HEADER: &str = "poly,status,p,k,m,s,d_m,D,tail_bound,frac_lower,frac_upper,error";

fn cert_row(s: &mut String, poly: &str, status: &str, c: Option<&MahlerCertificate>, err: &str) {
    match c {
        Some(c) => {
            let _ = writeln!(
                s,
                "\"{poly}\",{status},{},{},{},{},{},{},{},{},{err}",
                c.p,
                c.k,
                c.m,
                c.s,
                c.d_m,
                c.coeff_bound,
                c.tail_bound,
                interval_cells(Some(&c.frac_interval))
            );
        }
        None => {
            let _ = writeln!(s, "\"{poly}\",{status},,,,,,,,,,{err}");
        }
    }
}

impl Render for MahlerRun {
    fn csv(&self) -> String {
        let mut s = format!("{CERT_HEADER}\n");
        let status = if self.verification.accepted { "certified" } else { "rejected" };
        cert_row(&mut s, &self.certificate.poly.to_string(), status, Some(&self.certificate), "");
        s
    }

    fn text(&self) -> String {
        let c = &self.certificate;
        let mut s = format!(
            "f(x) = {}: p={} k={} m={} s={} d_m={} D={}\n  tail bound {}\n  {{2^s f(mu)}} in {}\n",
            c.poly, c.p, c.k, c.m, c.s, c.d_m, c.coeff_bound, c.tail_bound, c.frac_interval
        );
        if self.verification.accepted {
            s.push_str("  verified independently: f(mu) != 0\n");
        } else {
            let _ = writeln!(s, "  REJECTED: {:?}", self.verification.reject);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub degree: usize,
    pub height: i64,
    pub total: usize,
    pub certified: usize,
    pub rejected: usize,
    pub errors: usize,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn new(degree: usize, height: i64, entries: Vec<SweepEntry>) -> Self {
        let count = |st| entries.iter().filter(|e| e.status == st).count();
        SweepReport {
            degree,
            height,
            total: entries.len(),
            certified: count(SweepStatus::Certified),
            rejected: count(SweepStatus::Rejected),
            errors: count(SweepStatus::Error),
            entries,
        }
    }

    pub fn complete(&self) -> bool {
        self.certified == self.total
    }
}

fn sweep_status(s: SweepStatus) -> &'static str {
    match s {
        SweepStatus::Certified => "certified",
        SweepStatus::Rejected => "rejected",
        SweepStatus::Error => "error",
    }
}

impl Render for SweepReport {
    fn csv(&self) -> String {
        let mut s = format!("{CERT_HEADER}\n");
        for e in &self.entries {
            let err = e.error.clone().unwrap_or_default().replace(',', ";");
            cert_row(&mut s, &e.poly.to_string(), sweep_status(e.status), e.certificate.as_ref(), &err);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = format!(
            "sweep degree <= {}, |coefficients| <= {}: {} polynomials, {} certified, {} rejected, {} errors\n",
            self.degree, self.height, self.total, self.certified, self.rejected, self.errors
        );
        for e in self.entries.iter().filter(|e| e.status != SweepStatus::Certified) {
            let _ = writeln!(s, "  {}: {}", e.poly, sweep_status(e.status));
        }
        s
    }
}

impl Render for LiouvilleOutcome {
    fn csv(&self) -> String {
        let mut s = String::from("poly,status,precision,value_lower,value_upper\n");
        match self {
            LiouvilleOutcome::Certified(c) => {
                let _ = writeln!(
                    s,
                    "\"{}\",certified,{},{}",
                    c.poly,
                    c.precision,
                    interval_cells(Some(&c.value_interval))
                );
            }
            LiouvilleOutcome::Inconclusive { poly, precision, value_interval } => {
                let _ = writeln!(
                    s,
                    "\"{poly}\",inconclusive,{precision},{}",
                    interval_cells(value_interval.as_ref())
                );
            }
        }
        s
    }

    fn text(&self) -> String {
        match self {
            LiouvilleOutcome::Certified(c) => {
                let mut s = format!(
                    "f(x) = {}: f(lambda) in {} with {} terms, so f(lambda) != 0\n",
                    c.poly, c.value_interval, c.precision
                );
                for p in &c.pedagogy {
                    let _ = writeln!(
                        s,
                        "  s={}: f(lambda_s) = {}, times 2^{} integral: {}, lambda - lambda_s < 2*2^-({}+1)!: {}",
                        p.s, p.f_lambda_s, p.denominator_exponent, p.scaled_is_integer, p.s, p.tail_bound_holds
                    );
                }
                s
            }
            LiouvilleOutcome::Inconclusive { poly, precision, .. } => {
                format!("f(x) = {poly}: inconclusive after {precision} terms\n")
            }
        }
    }
}

impl Render for GeneralizedOutcome {
    fn csv(&self) -> String {
        let mut s = String::from("series,poly,status,s,m,k,horizon,e_m,tail_bound,frac_lower,frac_upper\n");
        match self {
            GeneralizedOutcome::Certified(c) => {
                let _ = writeln!(
                    s,
                    "{},\"{}\",certified,{},{},{},{},{},{},{}",
                    c.series,
                    c.poly,
                    c.s,
                    c.m,
                    c.k,
                    c.horizon,
                    c.e_m,
                    c.tail_bound,
                    interval_cells(Some(&c.frac_interval))
                );
            }
            GeneralizedOutcome::Inconclusive { series, poly, horizon, .. } => {
                let _ = writeln!(s, "{series},\"{poly}\",inconclusive,,,,{horizon},,,,");
            }
        }
        s
    }

    fn text(&self) -> String {
        match self {
            GeneralizedOutcome::Certified(c) => format!(
                "f(x) = {} at {}: e_{} = {} isolated on ({}, {}); {{2^s f}} in {}, so f != 0\n",
                c.poly, c.series, c.m, c.e_m, c.s, c.k, c.frac_interval
            ),
            GeneralizedOutcome::Inconclusive { series, poly, horizon, reason } => {
                format!("f(x) = {poly} at {series}: inconclusive up to horizon {horizon} ({reason})\n")
            }
        }
    }
}
