use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

const BRUTE_MAX_N: u64 = 1 << 20;
const BRUTE_MAX_Q: u32 = 6;

/// Memoized `d_n(q) = Σ_r d_{n−2^r}(q−1)` for powers of two, ordered tuples.
#[derive(Debug, Default, Clone)]
pub struct Pow2Memo {
    memo: HashMap<(u64, u32), BigUint>,
}

impl Pow2Memo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&mut self, n: u64, q: u32) -> BigUint {
        if q == 0 {
            return if n == 0 { BigUint::one() } else { BigUint::zero() };
        }
        // every summand is at least 1
        if n < u64::from(q) {
            return BigUint::zero();
        }
        if let Some(v) = self.memo.get(&(n, q)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for r in 0..64 {
            let p = 1u64 << r;
            if p > n {
                break;
            }
            total += self.count(n - p, q - 1);
        }
        self.memo.insert((n, q), total.clone());
        total
    }
}

/// Number of ordered `(w_1, …, w_q)`, `w_i ≥ 0`, with `n = 2^{w_1} + … + 2^{w_q}`.
pub fn dnq_pow2(n: u64, q: u32) -> BigUint {
    Pow2Memo::new().count(n, q)
}

/// Exhaustive count of the same tuples, with every exponent in
/// `[0, bit_length(n)]`. Limited to `n ≤ 2^20`, `q ≤ 6`.
pub fn dnq_bruteforce(n: u64, q: u32) -> Result<u64> {
    if n > BRUTE_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "brute-force n",
            requested: n as u128,
            limit: BRUTE_MAX_N as u128,
        });
    }
    if q > BRUTE_MAX_Q {
        return Err(Error::BudgetExceeded {
            what: "brute-force q",
            requested: q as u128,
            limit: BRUTE_MAX_Q as u128,
        });
    }
    let top = 64 - n.leading_zeros();
    let q = q as usize;
    let mut w = vec![0u32; q];
    let mut count = 0u64;
    loop {
        let sum: u64 = w.iter().map(|&e| 1u64 << e).sum();
        if sum == n {
            count += 1;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == q {
                return Ok(count);
            }
            if w[i] < top {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}
