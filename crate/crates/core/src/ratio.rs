//! Exact rational growth factors for `⌊θ^n⌋` sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational `θ = num/den > 1`, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidSeries("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        if num <= den {
            return Err(Error::InvalidSeries(format!(
                "growth factor {num}/{den} must exceed 1"
            )));
        }
        Ok(Ratio { num, den })
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    /// Iterator over `⌊θ^n⌋` for `n = 0, 1, …`, saturating at `u64::MAX`.
    pub fn floor_powers(&self) -> FloorPowers {
        FloorPowers {
            ratio: self.clone(),
            num_pow: BigUint::one(),
            den_pow: BigUint::one(),
        }
    }

    /// Smallest `j ≥ 1` with `θ^j > (a+1)/a`. No `n` has more than `j`
    /// consecutive powers `θ^n, …` inside `[a, a+1)`, and the bound is
    /// non-increasing in `a`.
    pub fn run_length_bound(&self, a: u64) -> u64 {
        let a_big = BigUint::from(a.max(1));
        let a1 = &a_big + 1u32;
        let mut np = self.num.clone();
        let mut dp = self.den.clone();
        let mut j = 1;
        while &np * &a_big <= &a1 * &dp {
            np *= &self.num;
            dp *= &self.den;
            j += 1;
        }
        j
    }
}

pub struct FloorPowers {
    ratio: Ratio,
    num_pow: BigUint,
    den_pow: BigUint,
}

impl Iterator for FloorPowers {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let v = (&self.num_pow / &self.den_pow).to_u64().unwrap_or(u64::MAX);
        if v < u64::MAX {
            self.num_pow *= &self.ratio.num;
            self.den_pow *= &self.ratio.den;
        }
        Some(v)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.1"` or an integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSeries(format!("cannot parse growth factor {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigUint = n.trim().parse().map_err(|_| bad())?;
            let d: BigUint = d.trim().parse().map_err(|_| bad())?;
            return Ratio::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigUint = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = BigUint::from(10u32).pow(frac.len() as u32);
        Ratio::new(digits, den)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ratio({self})")
    }
}
