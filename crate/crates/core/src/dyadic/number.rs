use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An exact dyadic rational `mantissa · 2^(-exponent)`.
///
/// Values are kept canonical: when `exponent > 0` the mantissa is odd, and
/// zero is always `0 · 2^0`. Two canonical values are equal iff their fields
/// are equal, so the derived `PartialEq`/`Hash` agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDyadic", into = "RawDyadic")]
pub struct DyadicNumber {
    mantissa: BigInt,
    exponent: u64,
}

#[derive(Serialize, Deserialize)]
struct RawDyadic {
    mantissa: String,
    exponent: u64,
}

impl TryFrom<RawDyadic> for DyadicNumber {
    type Error = String;

    fn try_from(raw: RawDyadic) -> Result<Self, String> {
        let mantissa: BigInt = raw.mantissa.parse().map_err(|e| format!("{e}"))?;
        let value = DyadicNumber::new(mantissa.clone(), raw.exponent);
        if value.mantissa != mantissa || value.exponent != raw.exponent {
            return Err(format!(
                "dyadic value {}·2^-{} is not in canonical form",
                raw.mantissa, raw.exponent
            ));
        }
        Ok(value)
    }
}

impl From<DyadicNumber> for RawDyadic {
    fn from(d: DyadicNumber) -> Self {
        RawDyadic {
            mantissa: d.mantissa.to_string(),
            exponent: d.exponent,
        }
    }
}

impl DyadicNumber {
    pub fn new(mantissa: BigInt, exponent: u64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0).min(exponent);
        DyadicNumber {
            mantissa: mantissa >> tz,
            exponent: exponent - tz,
        }
    }

    pub fn zero() -> Self {
        DyadicNumber {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        DyadicNumber {
            mantissa: v.into(),
            exponent: 0,
        }
    }

    /// `2^k` for any signed `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Self::from_int(BigInt::one() << k as u64)
        } else {
            DyadicNumber {
                mantissa: BigInt::one(),
                exponent: k.unsigned_abs(),
            }
        }
    }

    /// `value · 2^(-exponent)`, canonicalized.
    pub fn from_scaled(value: BigInt, exponent: u64) -> Self {
        Self::new(value, exponent)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        DyadicNumber {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiplies by `2^k`; exact for every signed `k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k <= self.exponent {
                DyadicNumber {
                    mantissa: self.mantissa.clone(),
                    exponent: self.exponent - k,
                }
            } else {
                DyadicNumber {
                    mantissa: &self.mantissa << (k - self.exponent),
                    exponent: 0,
                }
            }
        } else {
            let k = k.unsigned_abs();
            Self::new(self.mantissa.clone(), self.exponent + k)
        }
    }

    /// The numerator of `self` over the denominator `2^exponent`, for any
    /// `exponent >= self.exponent()`.
    pub fn scaled_to(&self, exponent: u64) -> BigInt {
        debug_assert!(exponent >= self.exponent);
        &self.mantissa << (exponent - self.exponent)
    }

    pub fn floor(&self) -> BigInt {
        if self.exponent == 0 {
            self.mantissa.clone()
        } else {
            self.mantissa
                .div_floor(&(BigInt::one() << self.exponent))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits();
        let keep = 60u64;
        let (m, extra) = if bits > keep {
            (&self.mantissa >> (bits - keep), (bits - keep) as i64)
        } else {
            (self.mantissa.clone(), 0)
        };
        let m: f64 = i64::try_from(m).map(|v| v as f64).unwrap_or(f64::NAN);
        let e = extra - self.exponent as i64;
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (self.scaled_to(e), other.scaled_to(e), e)
    }
}

impl Default for DyadicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for DyadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DyadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/2^{}", self.mantissa, self.exponent)
        }
    }
}

impl Ord for DyadicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.mantissa.cmp(&other.mantissa);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a DyadicNumber> for &'a DyadicNumber {
    type Output = DyadicNumber;

    fn add(self, rhs: &DyadicNumber) -> DyadicNumber {
        let (a, b, e) = self.aligned(rhs);
        DyadicNumber::new(a + b, e)
    }
}

impl<'a> Sub<&'a DyadicNumber> for &'a DyadicNumber {
    type Output = DyadicNumber;

    fn sub(self, rhs: &DyadicNumber) -> DyadicNumber {
        let (a, b, e) = self.aligned(rhs);
        DyadicNumber::new(a - b, e)
    }
}

impl<'a> Mul<&'a DyadicNumber> for &'a DyadicNumber {
    type Output = DyadicNumber;

    fn mul(self, rhs: &DyadicNumber) -> DyadicNumber {
        DyadicNumber::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &DyadicNumber {
    type Output = DyadicNumber;

    fn neg(self) -> DyadicNumber {
        DyadicNumber {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<DyadicNumber> for DyadicNumber {
            type Output = DyadicNumber;
            fn $m(self, rhs: DyadicNumber) -> DyadicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a DyadicNumber> for DyadicNumber {
            type Output = DyadicNumber;
            fn $m(self, rhs: &'a DyadicNumber) -> DyadicNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DyadicNumber {
    type Output = DyadicNumber;

    fn neg(self) -> DyadicNumber {
        -&self
    }
}

impl From<i64> for DyadicNumber {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for DyadicNumber {
    fn from(v: BigInt) -> Self {
        Self::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(m: i64, e: u64) -> DyadicNumber {
        DyadicNumber::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(4, 3), d(1, 1));
        assert_eq!(d(0, 9).exponent(), 0);
        assert_eq!(d(12, 0).mantissa(), &BigInt::from(12));
        assert_eq!(d(12, 1), d(6, 0));
    }

    #[test]
    fn arithmetic_examples() {
        let half = DyadicNumber::pow2(-1);
        let quarter = DyadicNumber::pow2(-2);
        assert_eq!(&half + &quarter, d(3, 2));
        assert_eq!(&half - &quarter, quarter);
        assert_eq!(&half * &half, quarter);
        assert_eq!(d(-3, 4).floor(), BigInt::from(-1));
        assert_eq!(d(-3, 4).ceil(), BigInt::from(0));
        assert_eq!(d(21, 4).floor(), BigInt::from(1));
        assert_eq!(d(5, 0).shift(-2), d(5, 2));
        assert_eq!(d(5, 2).shift(3), d(10, 0));
        assert!(d(-1, 1) < d(1, 10));
    }

    #[test]
    fn rejects_non_canonical_json() {
        let bad = r#"{"mantissa":"4","exponent":3}"#;
        assert!(serde_json::from_str::<DyadicNumber>(bad).is_err());
        let good = r#"{"mantissa":"-13","exponent":4}"#;
        assert_eq!(serde_json::from_str::<DyadicNumber>(good).unwrap(), d(-13, 4));
    }

    fn arb_dyadic() -> impl Strategy<Value = DyadicNumber> {
        (any::<i64>(), 0u64..200).prop_map(|(m, e)| d(m, e))
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in arb_dyadic(), b in arb_dyadic()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn shift_round_trip(a in arb_dyadic(), k in -300i64..300) {
            prop_assert_eq!(a.shift(k).shift(-k), a);
        }

        #[test]
        fn product_matches_scaled_integers(a in arb_dyadic(), b in arb_dyadic()) {
            let p = &a * &b;
            let e = a.exponent() + b.exponent();
            prop_assert_eq!(p.scaled_to(e), a.mantissa() * b.mantissa());
        }

        #[test]
        fn canonical_is_unique(m in any::<i32>(), e in 0u64..40, k in 0u64..20) {
            let x = d(m as i64, e);
            let y = DyadicNumber::new(BigInt::from(m) << k, e + k);
            prop_assert_eq!(x.clone(), y.clone());
            prop_assert_eq!(x.mantissa(), y.mantissa());
        }

        #[test]
        fn floor_brackets(a in arb_dyadic()) {
            let f = DyadicNumber::from_int(a.floor());
            prop_assert!(f <= a);
            prop_assert!(a < &f + &DyadicNumber::one());
        }

        #[test]
        fn json_round_trip(a in arb_dyadic()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<DyadicNumber>(&s).unwrap(), a);
        }
    }
}
