//! Integer polynomials `a_t x^t + … + a_1 x + a_0` with `a_t ≠ 0`, `t ≥ 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicNumber;
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first. The textual and serialized
/// forms list them leading coefficient first (`a_t,…,a_0`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly", into = "RawPoly")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    #[serde(with = "crate::serde_big::bigint_vec")]
    coefficients_leading_first: Vec<BigInt>,
}

impl TryFrom<RawPoly> for IntPolynomial {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Self> {
        let mut c = raw.coefficients_leading_first;
        c.reverse();
        IntPolynomial::new(c)
    }
}

impl From<IntPolynomial> for RawPoly {
    fn from(p: IntPolynomial) -> Self {
        RawPoly {
            coefficients_leading_first: p.leading_first(),
        }
    }
}

impl IntPolynomial {
    /// Builds from `a_0, a_1, …, a_t`. The last entry must be nonzero and the
    /// degree at least one.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            None => return Err(Error::InvalidPolynomial("no coefficients".into())),
            Some(c) if c.is_zero() => {
                return Err(Error::InvalidPolynomial(
                    "leading coefficient must be nonzero".into(),
                ))
            }
            _ => {}
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Builds from `a_t, …, a_0`.
    pub fn from_leading_first<I, T>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        c.reverse();
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("degree >= 1")
    }

    pub fn leading_first(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn negated(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact Horner evaluation at a dyadic point.
    pub fn eval(&self, x: &DyadicNumber) -> DyadicNumber {
        let mut acc = DyadicNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &DyadicNumber::from_int(c.clone());
        }
        acc
    }

    /// Every polynomial with `1 ≤ t ≤ degree`, `|a_i| ≤ height` and `a_t > 0`,
    /// in lexicographic order of `(t, a_t, …, a_0)`. `a_t > 0` picks one of each
    /// sign-symmetric pair `f`, `−f`.
    pub fn enumerate(degree: usize, height: i64) -> Vec<IntPolynomial> {
        let mut out = Vec::new();
        for t in 1..=degree {
            let width = (2 * height + 1) as usize;
            let lower_count = width.pow(t as u32);
            for lead in 1..=height {
                for idx in 0..lower_count {
                    let mut rest = idx;
                    // a_{t-1} is the most significant digit of idx
                    let mut lower = vec![BigInt::zero(); t];
                    for slot in (0..t).rev() {
                        lower[slot] = BigInt::from((rest % width) as i64 - height);
                        rest /= width;
                    }
                    let mut coeffs = lower;
                    coeffs.push(BigInt::from(lead));
                    out.push(IntPolynomial { coeffs });
                }
            }
        }
        out
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses `"a_t,…,a_0"`, e.g. `"1,-1,0"` for `x² − x`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidPolynomial(format!(
                "expected comma-separated integers a_t,...,a_0, got {s:?}"
            )));
        }
        let coeffs = parts
            .iter()
            .map(|p| {
                p.parse::<BigInt>().map_err(|_| {
                    Error::InvalidPolynomial(format!("coefficient {p:?} is not an integer"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_leading_first(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let unit = a == BigInt::from(1);
            match i {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{a}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
