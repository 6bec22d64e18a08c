use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::SequenceSpec;
use crate::budget::Budget;
use crate::error::Result;
use crate::repcount::{Mode, RepTable};

/// Every `m ≤ n_max` that is a sum of between 1 and `q` terms, repeats allowed.
pub fn representable_set(seq: &SequenceSpec, q: u32, n_max: u64) -> Result<Vec<u64>> {
    Budget::default().check_table(n_max, q)?;
    let terms = seq.terms_up_to(n_max);
    // fewest terms summing to n, by coin-change relaxation
    let len = n_max as usize + 1;
    let mut fewest = vec![u32::MAX; len];
    fewest[0] = 0;
    for n in 1..len {
        for &a in &terms {
            let a = a as usize;
            if a > n {
                break;
            }
            let prev = fewest[n - a];
            if prev < fewest[n] - 1 {
                fewest[n] = prev + 1;
            }
        }
    }
    Ok((1..len)
        .filter(|&n| fewest[n] <= q)
        .map(|n| n as u64)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SparseStatus {
    Found,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsenessReport {
    pub q: u32,
    pub gap: u64,
    pub n_max: u64,
    /// Consecutive `q`-representable `a < b < c ≤ n_max` with both gaps above `gap`.
    pub witness: Option<(u64, u64, u64)>,
    pub status: SparseStatus,
}

fn sparse_from_set(set: &[u64], q: u32, gap: u64, n_max: u64) -> SparsenessReport {
    let witness = set
        .windows(3)
        .find(|w| w[1] - w[0] > gap && w[2] - w[1] > gap)
        .map(|w| (w[0], w[1], w[2]));
    SparsenessReport {
        q,
        gap,
        n_max,
        witness,
        status: if witness.is_some() {
            SparseStatus::Found
        } else {
            SparseStatus::Inconclusive
        },
    }
}

/// Smallest triple of consecutive `q`-representable numbers up to `n_max`
/// whose two gaps both exceed `gap`. Consecutive means no representable
/// number lies strictly between them.
pub fn check_sparse(seq: &SequenceSpec, q: u32, gap: u64, n_max: u64) -> Result<SparsenessReport> {
    let set = representable_set(seq, q, n_max)?;
    Ok(sparse_from_set(&set, q, gap, n_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LooseVerdict {
    BoundedSoFar,
    GrowthDetected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBucket {
    #[serde(with = "crate::serde_big::biguint")]
    pub count: BigUint,
    pub frequency: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoosenessReport {
    pub q: u32,
    pub n_max: u64,
    pub mode: Mode,
    /// `max d_n(q)` over `1 ≤ n ≤ n_max`.
    #[serde(with = "crate::serde_big::biguint")]
    pub max_count: BigUint,
    /// Smallest `n` attaining `max_count`.
    pub argmax: u64,
    /// `4·(q!)²`; a larger maximum is reported as growth.
    #[serde(with = "crate::serde_big::biguint")]
    pub threshold: BigUint,
    /// How many `n` in `1..=n_max` have each count, by increasing count.
    pub histogram: Vec<HistogramBucket>,
    pub verdict: LooseVerdict,
}

fn growth_threshold(q: u32) -> BigUint {
    let f: BigUint = (1..=q).map(BigUint::from).product();
    f.pow(2) * 4u32
}

fn loose_from_table(table: &RepTable, q: u32) -> LoosenessReport {
    let row = &table.row(q)[1..];
    let mut max = BigUint::zero();
    let mut argmax = 0;
    for (i, d) in row.iter().enumerate() {
        if d > &max {
            max = d.clone();
            argmax = i as u64 + 1;
        }
    }
    let mut counts: Vec<&BigUint> = row.iter().collect();
    counts.sort();
    let mut histogram: Vec<HistogramBucket> = Vec::new();
    for c in counts {
        match histogram.last_mut() {
            Some(b) if &b.count == c => b.frequency += 1,
            _ => histogram.push(HistogramBucket {
                count: c.clone(),
                frequency: 1,
            }),
        }
    }
    let threshold = growth_threshold(q);
    let verdict = if max > threshold {
        LooseVerdict::GrowthDetected
    } else {
        LooseVerdict::BoundedSoFar
    };
    LoosenessReport {
        q,
        n_max: table.n_max(),
        mode: table.mode(),
        max_count: max,
        argmax,
        threshold,
        histogram,
        verdict,
    }
}

/// Screens `d_n(q)` for boundedness over `1 ≤ n ≤ n_max`.
pub fn check_loose(seq: &SequenceSpec, q: u32, n_max: u64, mode: Mode) -> Result<LoosenessReport> {
    let table = RepTable::build(seq, mode, n_max, q, &Budget::default())?;
    Ok(loose_from_table(&table, q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QClassification {
    pub q: u32,
    /// Looseness in the index-nondecreasing convention.
    pub loose: LoosenessReport,
    /// The same screen on ordered tuples.
    pub loose_ordered: LoosenessReport,
    pub sparse: SparsenessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub sequence: String,
    pub q_max: u32,
    pub n_max: u64,
    pub gap: u64,
    pub per_q: Vec<QClassification>,
    pub note: String,
}

pub const CLASSIFY_NOTE: &str = "finite-range evidence only: a bounded maximum or a \
sparse triple up to n_max does not prove looseness or sparseness";

/// Runs both screens for `q = 1..=q_max`.
pub fn classify(seq: &SequenceSpec, q_max: u32, n_max: u64, gap: u64) -> Result<Classification> {
    let budget = Budget::default();
    let unordered = RepTable::build(seq, Mode::Unordered, n_max, q_max, &budget)?;
    let ordered = RepTable::build(seq, Mode::Ordered, n_max, q_max, &budget)?;
    let mut per_q = Vec::new();
    for q in 1..=q_max {
        let set = representable_set(seq, q, n_max)?;
        per_q.push(QClassification {
            q,
            loose: loose_from_table(&unordered, q),
            loose_ordered: loose_from_table(&ordered, q),
            sparse: sparse_from_set(&set, q, gap, n_max),
        });
    }
    Ok(Classification {
        sequence: seq.to_string(),
        q_max,
        n_max,
        gap,
        per_q,
        note: CLASSIFY_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcount::dnq_general;
    use proptest::prelude::*;

    #[test]
    fn representable_examples() {
        assert_eq!(
            representable_set(&SequenceSpec::pow2(), 2, 10).unwrap(),
            vec![1, 2, 3, 4, 5, 6, 8, 9, 10]
        );
        assert_eq!(representable_set(&SequenceSpec::fib(), 1, 10).unwrap(), vec![1, 2, 3, 5, 8]);
        assert_eq!(
            representable_set(&SequenceSpec::naturals(), 1, 5).unwrap(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn pow2_representable_by_popcount() {
        for q in 1..=4 {
            let set = representable_set(&SequenceSpec::pow2(), q, 4096).unwrap();
            let expect: Vec<u64> = (1..=4096u64).filter(|m| m.count_ones() <= q).collect();
            assert_eq!(set, expect);
        }
    }

    fn verify_witness(seq: &SequenceSpec, r: &SparsenessReport) {
        let (a, b, c) = r.witness.unwrap();
        let set = representable_set(seq, r.q, r.n_max).unwrap();
        assert!(a < b && b < c && c <= r.n_max);
        assert!(b - a > r.gap && c - b > r.gap);
        for x in [a, b, c] {
            assert!(set.binary_search(&x).is_ok());
        }
        assert!(set.iter().all(|&x| !(a < x && x < b) && !(b < x && x < c)));
    }

    #[test]
    fn sparse_examples() {
        let r = check_sparse(&SequenceSpec::pow2(), 1, 3, 100).unwrap();
        assert_eq!(r.status, SparseStatus::Found);
        // the first consecutive powers of two with both gaps above 3
        assert_eq!(r.witness, Some((4, 8, 16)));
        verify_witness(&SequenceSpec::pow2(), &r);

        let r = check_sparse(&SequenceSpec::naturals(), 1, 1, 1000).unwrap();
        assert_eq!(r.status, SparseStatus::Inconclusive);
        assert_eq!(r.witness, None);

        let r = check_sparse(&SequenceSpec::pow2(), 2, 5, 4096).unwrap();
        assert_eq!(r.status, SparseStatus::Found);
        verify_witness(&SequenceSpec::pow2(), &r);
    }

    #[test]
    fn loose_examples() {
        let r = check_loose(&SequenceSpec::naturals(), 2, 100, Mode::Unordered).unwrap();
        assert_eq!(r.max_count, BigUint::from(50u32));
        assert_eq!(r.argmax, 100);
        assert_eq!(r.verdict, LooseVerdict::GrowthDetected);

        let r = check_loose(&SequenceSpec::pow2(), 2, 1024, Mode::Ordered).unwrap();
        assert_eq!(r.max_count, BigUint::from(2u32));
        assert_eq!(r.verdict, LooseVerdict::BoundedSoFar);
        let r = check_loose(&SequenceSpec::pow2(), 2, 1024, Mode::Unordered).unwrap();
        assert_eq!(r.max_count, BigUint::from(1u32));

        let r = check_loose(&SequenceSpec::fib(), 2, 1000, Mode::Unordered).unwrap();
        assert_eq!(r.verdict, LooseVerdict::BoundedSoFar);
        let total: u64 = r.histogram.iter().map(|b| b.frequency).sum();
        assert_eq!(total, 1000);
    }

    #[test]
    fn naturals_grow_linearly() {
        for n in [10, 57, 100, 333, 1000] {
            let r = check_loose(&SequenceSpec::naturals(), 2, n, Mode::Unordered).unwrap();
            assert!(BigUint::from(2u32) * &r.max_count + 2u32 >= BigUint::from(n));
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&SequenceSpec::pow2(), 3, 1 << 14, 100).unwrap();
        assert_eq!(c.per_q.len(), 3);
        for row in &c.per_q {
            assert_eq!(row.loose.verdict, LooseVerdict::BoundedSoFar);
            assert_eq!(row.loose_ordered.verdict, LooseVerdict::BoundedSoFar);
            assert_eq!(row.sparse.status, SparseStatus::Found);
            verify_witness(&SequenceSpec::pow2(), &row.sparse);
        }
        assert_eq!(c.per_q[1].loose_ordered.max_count, BigUint::from(2u32));

        let c = classify(&SequenceSpec::naturals(), 2, 1000, 1).unwrap();
        assert_eq!(c.per_q[0].sparse.status, SparseStatus::Inconclusive);
        assert_eq!(c.per_q[1].loose.verdict, LooseVerdict::GrowthDetected);

        let c = classify(&SequenceSpec::geomfloor("1.1".parse().unwrap()), 2, 100_000, 50).unwrap();
        assert_eq!(c.per_q.len(), 2);
    }

    fn sequences() -> impl Strategy<Value = SequenceSpec> {
        prop_oneof![
            Just(SequenceSpec::pow2()),
            Just(SequenceSpec::fib()),
            Just(SequenceSpec::factorial()),
            Just(SequenceSpec::geomfloor("3/2".parse().unwrap())),
            prop::collection::btree_set(1u64..200, 1..8)
                .prop_map(|s| SequenceSpec::custom(s.into_iter().collect()).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn at_most_q_is_monotone(seq in sequences(), q in 1u32..4, n in 1u64..400) {
            let small = representable_set(&seq, q, n).unwrap();
            let big = representable_set(&seq, q + 1, n).unwrap();
            prop_assert!(small.iter().all(|x| big.binary_search(x).is_ok()));
        }

        #[test]
        fn representable_iff_some_count_positive(seq in sequences(), q in 1u32..4) {
            let n_max = 120;
            let set = representable_set(&seq, q, n_max).unwrap();
            let table = RepTable::build(&seq, Mode::Unordered, n_max, q, &Budget::default()).unwrap();
            for m in 1..=n_max {
                let any = (1..=q).any(|j| !table.get(m, j).unwrap().is_zero());
                prop_assert_eq!(set.binary_search(&m).is_ok(), any);
            }
            // and a single dnq_general call agrees for the largest m
            let direct = (1..=q).any(|j| !dnq_general(&seq, n_max, j, Mode::Unordered).unwrap().is_zero());
            prop_assert_eq!(set.binary_search(&n_max).is_ok(), direct);
        }
    }
}
