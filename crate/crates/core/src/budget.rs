//! Work limits shared by every analyzer.

use crate::error::{Error, Result};

/// Default cap on binary exponents handled by series evaluation (2^20 bits).
pub const DEFAULT_EXPONENT_BITS: u64 = 1 << 20;
/// Default cap on the largest `n` tabulated by representation tables.
pub const DEFAULT_TABLE_N: u64 = 1 << 22;
/// Default cap on the number of summands `q` in representation tables.
pub const DEFAULT_TABLE_Q: u32 = 64;
/// Default cap on the number of series terms summed in one evaluation.
pub const DEFAULT_MAX_TERMS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub exponent_bits: u64,
    pub table_n: u64,
    pub table_q: u32,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exponent_bits: DEFAULT_EXPONENT_BITS,
            table_n: DEFAULT_TABLE_N,
            table_q: DEFAULT_TABLE_Q,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl Budget {
    pub(crate) fn check_exponent(&self, exponent: u64) -> Result<()> {
        if exponent > self.exponent_bits {
            return Err(Error::BudgetExceeded {
                what: "exponent",
                requested: exponent as u128,
                limit: self.exponent_bits as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_table(&self, n_max: u64, q_max: u32) -> Result<()> {
        if n_max > self.table_n {
            return Err(Error::BudgetExceeded {
                what: "table size",
                requested: n_max as u128,
                limit: self.table_n as u128,
            });
        }
        if q_max > self.table_q {
            return Err(Error::BudgetExceeded {
                what: "summand count",
                requested: q_max as u128,
                limit: self.table_q as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_terms(&self, terms: usize) -> Result<()> {
        if terms > self.max_terms {
            return Err(Error::BudgetExceeded {
                what: "term count",
                requested: terms as u128,
                limit: self.max_terms as u128,
            });
        }
        Ok(())
    }
}
