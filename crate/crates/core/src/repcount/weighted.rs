use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::SeriesSpec;
use crate::error::Result;

/// `c_m(q)` for every `m ≤ m_max`, `q ≤ q_max`, where
/// `(Σ b_n R^(-a_n))^q = Σ_m c_m(q) R^(-m)`.
#[derive(Clone, Debug)]
pub struct WeightedTable {
    m_max: u64,
    q_max: u32,
    rows: Vec<Vec<BigInt>>,
}

impl WeightedTable {
    pub fn build(series: &SeriesSpec, m_max: u64, q_max: u32) -> Result<Self> {
        series.budget().check_table(m_max, q_max)?;
        // merging equal exponents does not change the products summed here
        let terms = series.canonicalize().terms_through(m_max)?;
        let len = m_max as usize + 1;
        let mut rows = vec![vec![BigInt::zero(); len]; q_max as usize + 1];
        rows[0][0] = BigInt::one();
        for q in 1..rows.len() {
            let (done, rest) = rows.split_at_mut(q);
            let prev = &done[q - 1];
            let cur = &mut rest[0];
            for t in &terms {
                if t.coeff.is_zero() {
                    continue;
                }
                let a = t.exponent as usize;
                for m in a..len {
                    if !prev[m - a].is_zero() {
                        cur[m] += &t.coeff * &prev[m - a];
                    }
                }
            }
        }
        Ok(WeightedTable { m_max, q_max, rows })
    }

    pub fn get(&self, m: u64, q: u32) -> Option<&BigInt> {
        self.rows.get(q as usize)?.get(usize::try_from(m).ok()?)
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }
}

/// Sum of `b_{i_1}···b_{i_q}` over ordered tuples with `a_{i_1}+…+a_{i_q} = m`.
pub fn weighted_digit_coeff(series: &SeriesSpec, m: u64, q: u32) -> Result<BigInt> {
    let table = WeightedTable::build(series, m, q)?;
    Ok(table.get(m, q).cloned().expect("within table"))
}
