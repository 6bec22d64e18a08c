use std::fmt;

use serde::{Deserialize, Serialize};

use super::DyadicNumber;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A closed interval `[lower, upper]` with exact dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct DyadicInterval {
    lower: DyadicNumber,
    upper: DyadicNumber,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lower: DyadicNumber,
    upper: DyadicNumber,
}

impl TryFrom<RawInterval> for DyadicInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        DyadicInterval::new(raw.lower, raw.upper)
    }
}

impl From<DyadicInterval> for RawInterval {
    fn from(i: DyadicInterval) -> Self {
        RawInterval {
            lower: i.lower,
            upper: i.upper,
        }
    }
}

impl DyadicInterval {
    pub fn new(lower: DyadicNumber, upper: DyadicNumber) -> Result<Self> {
        if lower > upper {
            return Err(Error::InvalidInterval);
        }
        Ok(DyadicInterval { lower, upper })
    }

    pub fn point(x: DyadicNumber) -> Self {
        DyadicInterval {
            lower: x.clone(),
            upper: x,
        }
    }

    /// `[center − radius, center + radius]`; `radius` must be non-negative.
    pub fn around(center: &DyadicNumber, radius: &DyadicNumber) -> Self {
        debug_assert!(radius.signum() >= 0);
        DyadicInterval {
            lower: center - radius,
            upper: center + radius,
        }
    }

    pub fn lower(&self) -> &DyadicNumber {
        &self.lower
    }

    pub fn upper(&self) -> &DyadicNumber {
        &self.upper
    }

    pub fn width(&self) -> DyadicNumber {
        &self.upper - &self.lower
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: &DyadicNumber) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    pub fn excludes_zero(&self) -> bool {
        self.lower.signum() > 0 || self.upper.signum() < 0
    }

    /// True when some integer lies in the open interval `(lower, upper)`.
    pub fn has_interior_integer(&self) -> bool {
        // smallest integer strictly above lower
        let next = self.lower.floor() + 1;
        DyadicNumber::from_int(next) < self.upper
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lower: -&self.upper,
            upper: -&self.lower,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DyadicInterval {
            lower: &self.lower + &other.lower,
            upper: &self.upper + &other.upper,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_scalar(&self, c: &DyadicNumber) -> Self {
        DyadicInterval {
            lower: &self.lower + c,
            upper: &self.upper + c,
        }
    }

    /// Product by sign-case analysis: the extreme values of `x·y` over a box
    /// are attained at corners.
    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lower * &other.lower,
            &self.lower * &other.upper,
            &self.upper * &other.lower,
            &self.upper * &other.upper,
        ];
        let lower = products.iter().min().cloned().expect("four products");
        let upper = products.iter().max().cloned().expect("four products");
        DyadicInterval { lower, upper }
    }

    /// Multiplies both endpoints by `2^k`.
    pub fn shift(&self, k: i64) -> Self {
        DyadicInterval {
            lower: self.lower.shift(k),
            upper: self.upper.shift(k),
        }
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Interval Horner evaluation: the result contains `f(v)` for every `v` in `x`.
pub fn eval_poly_interval(poly: &IntPolynomial, x: &DyadicInterval) -> DyadicInterval {
    let mut coeffs = poly.coeffs().iter().rev();
    let lead = coeffs.next().expect("degree >= 1").clone();
    let mut acc = DyadicInterval::point(DyadicNumber::from_int(lead));
    for c in coeffs {
        acc = acc.mul(x).add_scalar(&DyadicNumber::from_int(c.clone()));
    }
    acc
}

/// Result of taking fractional parts of an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FracPart {
    /// The translate `x − ⌊lower⌋`, contained in `[0, 1]`. An endpoint equals
    /// 0 or 1 only when `x` touches an integer at that end.
    Interval(DyadicInterval),
    /// An integer lies strictly inside `x`, or `x` is at least 1 wide.
    Straddle,
}

impl FracPart {
    pub fn interval(&self) -> Option<&DyadicInterval> {
        match self {
            FracPart::Interval(i) => Some(i),
            FracPart::Straddle => None,
        }
    }

    /// True when the fractional parts are confined to the open interval (0, 1),
    /// i.e. no point of the source interval is an integer.
    pub fn excludes_integers(&self) -> bool {
        match self {
            FracPart::Interval(i) => {
                i.lower.signum() > 0 && i.upper < DyadicNumber::one()
            }
            FracPart::Straddle => false,
        }
    }
}

/// Fractional parts `{v} ∈ [0, 1)` of the values in `x`.
pub fn frac_part_interval(x: &DyadicInterval) -> FracPart {
    if x.width() >= DyadicNumber::one() || x.has_interior_integer() {
        return FracPart::Straddle;
    }
    let shift = DyadicNumber::from_int(-x.lower.floor());
    FracPart::Interval(DyadicInterval {
        lower: &x.lower + &shift,
        upper: &x.upper + &shift,
    })
}
