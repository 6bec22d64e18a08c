use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::seqprops::SequenceSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Tuples `(i_1, …, i_q)` in any order.
    Ordered,
    /// Index-nondecreasing tuples `i_1 ≤ … ≤ i_q`.
    Unordered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ordered => "ordered",
            Mode::Unordered => "unordered",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordered" => Ok(Mode::Ordered),
            "unordered" => Ok(Mode::Unordered),
            _ => Err(Error::InvalidSequence {
                line: None,
                reason: format!("unknown mode {s:?}; expected ordered or unordered"),
            }),
        }
    }
}

/// `d_n(q)` for every `n ≤ n_max`, `q ≤ q_max`. Immutable once built.
#[derive(Clone, Debug)]
pub struct RepTable {
    sequence: SequenceSpec,
    mode: Mode,
    n_max: u64,
    q_max: u32,
    rows: Vec<Vec<BigUint>>,
}

impl RepTable {
    pub fn build(
        sequence: &SequenceSpec,
        mode: Mode,
        n_max: u64,
        q_max: u32,
        budget: &Budget,
    ) -> Result<Self> {
        budget.check_table(n_max, q_max)?;
        let terms = sequence.terms_up_to(n_max);
        let len = n_max as usize + 1;
        let mut rows = vec![vec![BigUint::zero(); len]; q_max as usize + 1];
        rows[0][0] = BigUint::one();
        match mode {
            Mode::Ordered => {
                for q in 1..rows.len() {
                    let (done, rest) = rows.split_at_mut(q);
                    let prev = &done[q - 1];
                    let cur = &mut rest[0];
                    for (n, slot) in cur.iter_mut().enumerate() {
                        for &a in &terms {
                            let a = a as usize;
                            if a > n {
                                break;
                            }
                            *slot += &prev[n - a];
                        }
                    }
                }
            }
            Mode::Unordered => {
                // multiply in 1/(1 − y·x^a) one term at a time; row j−1 already
                // includes the current term, which allows repeats
                for &a in &terms {
                    let a = a as usize;
                    for q in 1..rows.len() {
                        let (done, rest) = rows.split_at_mut(q);
                        let prev = &done[q - 1];
                        let cur = &mut rest[0];
                        for n in a..len {
                            *cur.get_mut(n).expect("n < len") += &prev[n - a];
                        }
                    }
                }
            }
        }
        Ok(RepTable {
            sequence: sequence.clone(),
            mode,
            n_max,
            q_max,
            rows,
        })
    }

    pub fn get(&self, n: u64, q: u32) -> Option<&BigUint> {
        self.rows.get(q as usize)?.get(usize::try_from(n).ok()?)
    }

    /// `d_0(q), …, d_{n_max}(q)`.
    pub fn row(&self, q: u32) -> &[BigUint] {
        &self.rows[q as usize]
    }

    pub fn sequence(&self) -> &SequenceSpec {
        &self.sequence
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }
}

/// Number of solutions of `n = a_{i_1} + … + a_{i_q}` in the given mode.
pub fn dnq_general(seq: &SequenceSpec, n: u64, q: u32, mode: Mode) -> Result<BigUint> {
    let table = RepTable::build(seq, mode, n, q, &Budget::default())?;
    Ok(table.get(n, q).cloned().expect("within table"))
}
