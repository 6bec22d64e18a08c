use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SeriesSpec;
use crate::error::{Error, Result};

/// Leading digits of a series value: `integer_part` is `⌊x⌋` and `digits` are
/// the first digits of `{x} = x − ⌊x⌋` after the radix point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digits {
    pub series: String,
    pub base: u32,
    #[serde(with = "crate::serde_big::bigint")]
    pub integer_part: BigInt,
    pub digits: String,
    pub terms_used: usize,
}

/// `⌊num · base^count / radix^exponent⌋`
fn scaled_floor(num: &BigInt, radix: u32, exponent: u64, base: u32, count: usize) -> BigInt {
    let top = num * num_traits::pow(BigInt::from(base), count);
    let den = num_traits::pow(BigInt::from(radix), exponent as usize);
    top.div_floor(&den)
}

fn split(z: &BigInt, base: u32, count: usize) -> (BigInt, String) {
    let scale = num_traits::pow(BigInt::from(base), count);
    let (int, frac) = z.div_mod_floor(&scale);
    let mut s = frac.to_str_radix(base);
    if s.len() < count {
        s = "0".repeat(count - s.len()) + &s;
    }
    (int, s)
}

fn common_prefix(a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .collect()
}

/// First `count` digits of the exact series value in base 2 or 10.
///
/// The canonical term count is doubled until the lower and upper ends of the
/// enclosure agree on every requested digit. If the exponent or term budget
/// runs out first, the error carries the digits resolved so far.
pub fn digits(series: &SeriesSpec, base: u32, count: usize) -> Result<Digits> {
    if base != 2 && base != 10 {
        return Err(Error::UnsupportedBase(base));
    }
    if count == 0 {
        return Err(Error::InvalidSeries("digit count must be at least 1".into()));
    }
    let s = series.canonicalize();
    // start near the term count whose tail is about as small as the last
    // digit; log2(10) is taken as 4 for the request and 3 for the radix so
    // the estimate never overshoots
    let bits_per_digit: u64 = if base == 10 { 4 } else { 1 };
    let bits_per_place: u64 = if s.radix() == 10 { 3 } else { 1 };
    let bits_needed = (count as u64).saturating_mul(bits_per_digit);
    let mut n = 1usize;
    while n < s.budget().max_terms {
        let Ok(terms) = s.terms(n + 1) else { break };
        match terms.get(n) {
            Some(t) if t.exponent.saturating_mul(bits_per_place) < bits_needed => n *= 2,
            _ => break,
        }
    }
    n = n.min(s.budget().max_terms).max(1);

    let mut best: Option<(BigInt, BigInt)> = None;
    loop {
        let enc = match s.enclosure(n) {
            Ok(e) => e,
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        let lo = scaled_floor(&enc.lower_num(), enc.radix, enc.exponent, base, count);
        let hi = scaled_floor(&enc.upper_num(), enc.radix, enc.exponent, base, count);
        if lo == hi {
            let (integer_part, digits) = split(&lo, base, count);
            return Ok(Digits {
                series: series.to_string(),
                base,
                integer_part,
                digits,
                terms_used: n,
            });
        }
        best = Some((lo, hi));
        if n >= s.budget().max_terms {
            break;
        }
        n = (n * 2).min(s.budget().max_terms);
    }
    let (integer_part, prefix) = match best {
        Some((lo, hi)) => {
            let (il, dl) = split(&lo, base, count);
            let (ih, dh) = split(&hi, base, count);
            if il == ih {
                (il.to_string(), common_prefix(&dl, &dh))
            } else {
                (String::from("?"), String::new())
            }
        }
        None => (String::from("?"), String::new()),
    };
    Err(Error::PrecisionUnresolvable {
        integer_part,
        prefix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn mahler_binary() {
        let d = digits(&SeriesSpec::mahler(), 2, 16).unwrap();
        assert_eq!(d.integer_part, BigInt::from(0));
        assert_eq!(d.digits, "1101000100000001");
    }

    #[test]
    fn nu_decimal() {
        let d = digits(&SeriesSpec::nu10(), 10, 17).unwrap();
        assert_eq!(d.digits, "11010001000000010");
    }

    #[test]
    fn liouville_binary() {
        let d = digits(&SeriesSpec::liouville(), 2, 8).unwrap();
        assert_eq!(d.integer_part, BigInt::from(1));
        assert_eq!(d.digits, "01000100");
    }

    #[test]
    fn mahler_decimal_matches_float() {
        // μ ≈ 0.8164215090218931
        let d = digits(&SeriesSpec::mahler(), 10, 16).unwrap();
        assert_eq!(d.digits, "8164215090218931");
    }

    #[test]
    fn negative_values_use_floor() {
        let s = SeriesSpec::custom(vec![(2, (-1).into())]);
        let d = digits(&s, 2, 4).unwrap();
        // −1/4 = −1 + 0.11₂
        assert_eq!(d.integer_part, BigInt::from(-1));
        assert_eq!(d.digits, "1100");
    }

    #[test]
    fn boundary_value_is_unresolvable() {
        // Σ 2^(-n) = 2 exactly: every enclosure straddles the digit boundary
        let small = Budget {
            max_terms: 256,
            ..Budget::default()
        };
        let err = digits(&SeriesSpec::geometric().with_budget(small), 2, 8).unwrap_err();
        match err {
            Error::PrecisionUnresolvable { integer_part, prefix } => {
                assert_eq!(integer_part, "?");
                assert_eq!(prefix, "");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_requests() {
        assert_eq!(digits(&SeriesSpec::mahler(), 3, 4), Err(Error::UnsupportedBase(3)));
        assert!(digits(&SeriesSpec::mahler(), 2, 0).is_err());
    }

    #[test]
    fn digit_prefixes_are_stable() {
        let presets = [
            SeriesSpec::mahler(),
            SeriesSpec::liouville(),
            SeriesSpec::nu10(),
            SeriesSpec::fib(),
            SeriesSpec::geomfloor("3/2".parse().unwrap()),
        ];
        for s in &presets {
            for base in [2, 10] {
                for c in (1..=200).step_by(19) {
                    let short = digits(s, base, c).unwrap();
                    let long = digits(s, base, c + 10).unwrap();
                    assert_eq!(short.integer_part, long.integer_part, "{s} base {base}");
                    assert!(long.digits.starts_with(&short.digits), "{s} base {base} c={c}");
                }
            }
        }
    }
}
