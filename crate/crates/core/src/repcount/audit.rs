use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Mode, RepTable};
use crate::budget::Budget;
use crate::error::Result;
use crate::seqprops::SequenceSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `d_n(q) > (q!)²`
    Bound,
    /// `d_n(q+1) > 1 + q²·d_n(q)`
    Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub n: u64,
    pub q: u32,
    #[serde(with = "crate::serde_big::biguint")]
    pub value: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub limit: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMaximum {
    pub q: u32,
    #[serde(with = "crate::serde_big::biguint")]
    pub max: BigUint,
    /// Smallest `n` attaining the maximum.
    pub argmax: u64,
    #[serde(with = "crate::serde_big::biguint")]
    pub bound: BigUint,
}

/// Pairs `(n, q)` where the ordered counts break the step inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedStepFailures {
    pub count: u64,
    pub first: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaAudit {
    pub n_max: u64,
    pub q_max: u32,
    pub checked: u64,
    /// Bound violations (ordered counts) and step violations (unordered
    /// counts). Expected empty.
    pub violations: Vec<Violation>,
    /// Maxima of the ordered counts.
    pub maxima: Vec<QMaximum>,
    /// The step inequality evaluated on ordered counts. It fails already at
    /// `d_3(2) = 2 > 1 + 1·d_3(1)`, since `k` distinct powers can be ordered in
    /// `k!` ways; it is reported but not counted as a violation.
    pub ordered_step: OrderedStepFailures,
}

fn factorial(q: u32) -> BigUint {
    (1..=q).fold(BigUint::one(), |acc, k| acc * k)
}

fn step_failure(n: u64, q: u32, d: &BigUint, d_next: &BigUint) -> Option<Violation> {
    let limit = BigUint::from(q) * q * d + 1u32;
    (d_next > &limit).then(|| Violation {
        kind: ViolationKind::Step,
        n,
        q,
        value: d_next.clone(),
        limit,
    })
}

/// Audits the representation lemma for powers of two over `n ≤ n_max`,
/// `q ≤ q_max`: `d_n(q) ≤ (q!)²` on ordered counts, and
/// `d_n(q+1) ≤ 1 + q²·d_n(q)` on unordered counts, where the merge argument
/// behind it applies (at most one multiset of distinct powers sums to `n`).
pub fn lemma_audit(n_max: u64, q_max: u32) -> Result<LemmaAudit> {
    let pow2 = SequenceSpec::pow2();
    let budget = Budget::default();
    let ordered = RepTable::build(&pow2, Mode::Ordered, n_max, q_max + 1, &budget)?;
    let unordered = RepTable::build(&pow2, Mode::Unordered, n_max, q_max + 1, &budget)?;
    let mut violations = Vec::new();
    let mut maxima = Vec::new();
    let mut ordered_step = OrderedStepFailures {
        count: 0,
        first: None,
    };
    let mut checked = 0u64;
    for q in 0..=q_max {
        let bound = factorial(q).pow(2);
        let mut max = BigUint::zero();
        let mut argmax = 0u64;
        let rows = ordered
            .row(q)
            .iter()
            .zip(ordered.row(q + 1))
            .zip(unordered.row(q).iter().zip(unordered.row(q + 1)));
        for (n, ((d, d_next), (u, u_next))) in rows.enumerate() {
            let n = n as u64;
            checked += 1;
            if d > &bound {
                violations.push(Violation {
                    kind: ViolationKind::Bound,
                    n,
                    q,
                    value: d.clone(),
                    limit: bound.clone(),
                });
            }
            violations.extend(step_failure(n, q, u, u_next));
            if let Some(v) = step_failure(n, q, d, d_next) {
                ordered_step.count += 1;
                ordered_step.first.get_or_insert(v);
            }
            if d > &max {
                max = d.clone();
                argmax = n;
            }
        }
        maxima.push(QMaximum {
            q,
            max,
            argmax,
            bound,
        });
    }
    Ok(LemmaAudit {
        n_max,
        q_max,
        checked,
        violations,
        maxima,
        ordered_step,
    })
}
