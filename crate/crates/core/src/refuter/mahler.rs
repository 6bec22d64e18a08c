use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::dyadic::{frac_part_interval, DyadicInterval, DyadicNumber, FracPart};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::repcount::{Mode, RepTable};
use crate::seqprops::SequenceSpec;

pub const P_CAP: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NonzeroCertified,
}

/// Record that `f(μ) ≠ 0`: the fractional part of `2^s·f(μ)` lies in
/// `frac_interval`, which contains no integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerCertificate {
    pub poly: IntPolynomial,
    pub p: u32,
    pub k: u64,
    pub m: u64,
    pub s: u64,
    /// `d_m = a_t·d_m(t)`
    #[serde(with = "crate::serde_big::bigint")]
    pub d_m: BigInt,
    /// `D ≥ |d_n|` for every `n`
    #[serde(rename = "D", with = "crate::serde_big::bigint")]
    pub coeff_bound: BigInt,
    /// `D·2^(s+1−k) ≥ |Σ_{n≥k} d_n 2^(s−n)|`
    pub tail_bound: DyadicNumber,
    pub frac_interval: DyadicInterval,
    pub verdict: Verdict,
}

fn factorial(q: usize) -> BigInt {
    (1..=q).fold(BigInt::one(), |acc, k| acc * k)
}

/// `D = Σ_q |a_q|·(q!)²`, which bounds every `|d_n| = |Σ_q a_q d_n(q)|`.
pub fn coeff_bound_d(poly: &IntPolynomial) -> BigInt {
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(q, a)| a.abs() * factorial(q).pow(2))
        .sum()
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// `x < 2^e`, without materializing huge powers.
fn below_pow2(x: &BigInt, e: u64) -> bool {
    !x.is_positive() || bits(x) <= e
}

/// Conditions (i) and (ii) for a given `p`, with `A = |a_t|·t!`.
fn p_works(a: &BigInt, d: &BigInt, p: u32) -> bool {
    let Some(big_k) = 1u64.checked_shl(p) else {
        return true;
    };
    let half = big_k / 2;
    let limit = bits(&(a * 2 + d * 4)) + 2;
    if half > limit {
        // both conditions hold with room to spare once 2^(K/2) > 2A + 4D
        return true;
    }
    // (i) D·2^(1−K) < A  ⟺  2D < A·2^K
    let cond1 = d * 2 < (a << big_k);
    // (ii) (A + D·2^(1−K))·2^(−K/2) < 1/2  ⟺  2A·2^K + 4D < 2^(K + K/2)
    let lhs = ((a * 2) << big_k) + d * 4;
    let cond2 = below_pow2(&lhs, big_k + half);
    cond1 && cond2
}

/// Smallest `p ≥ 1` with `D·2^(1−2^p) < |a_t|·t!` and
/// `(|a_t|·t! + D·2^(1−2^p))·2^(−2^(p−1)) < 1/2`.
pub fn choose_p(poly: &IntPolynomial) -> Result<u32> {
    let a = poly.leading().abs() * factorial(poly.degree());
    let d = coeff_bound_d(poly);
    (1..=P_CAP)
        .find(|&p| p_works(&a, &d, p))
        .ok_or(Error::CapExceeded(P_CAP))
}

/// `(k, m, s)` for degree `t` and parameter `p`.
pub fn positions(t: usize, p: u32) -> Result<(u64, u64, u64)> {
    let tp = t as u64 + u64::from(p);
    if tp > 62 {
        return Err(Error::BudgetExceeded {
            what: "witness position exponent",
            requested: tp as u128,
            limit: 62,
        });
    }
    let k = 1u64 << tp;
    let m = (1u64 << p) * ((1u64 << t) - 1);
    let s = m - (1u64 << (p - 1));
    Ok((k, m, s))
}

/// Table large enough for a witness with the given degree and `p`.
pub fn witness_table(t: usize, p: u32, budget: &Budget) -> Result<RepTable> {
    let (k, _, _) = positions(t, p)?;
    RepTable::build(&SequenceSpec::pow2(), Mode::Ordered, k - 1, t as u32, budget)
}

/// Builds the certificate from exact counts `d_n(q)`, `n < k`.
pub fn mahler_witness(poly: &IntPolynomial) -> Result<MahlerCertificate> {
    let p = choose_p(poly)?;
    let table = witness_table(poly.degree(), p, &Budget::default())?;
    mahler_witness_with(poly, &table)
}

/// As [`mahler_witness`], reading counts from a prebuilt ordered pow2 table.
pub fn mahler_witness_with(poly: &IntPolynomial, table: &RepTable) -> Result<MahlerCertificate> {
    let t = poly.degree();
    let p = choose_p(poly)?;
    let (k, m, s) = positions(t, p)?;
    if table.mode() != Mode::Ordered
        || table.sequence() != &SequenceSpec::pow2()
        || table.n_max() + 1 < k
        || (table.q_max() as usize) < t
    {
        return witness_table(t, p, &Budget::default())
            .and_then(|own| mahler_witness_with(poly, &own));
    }
    let digit = |n: u64| -> BigInt {
        poly.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(q, a)| a * BigInt::from(table.get(n, q as u32).expect("n < k").clone()))
            .sum()
    };
    let d_m = digit(m);
    let expected = poly.leading() * factorial(t);
    if d_m != expected {
        return Err(Error::CertificateInvariant(format!(
            "d_{m} = {d_m}, expected a_t·t! = {expected}"
        )));
    }
    for n in (s + 1)..k {
        if n != m && !digit(n).is_zero() {
            return Err(Error::CertificateInvariant(format!(
                "d_{n} is nonzero inside ({s}, {k})"
            )));
        }
    }
    let coeff_bound = coeff_bound_d(poly);
    let tail_bound = DyadicNumber::from_int(coeff_bound.clone()).shift(s as i64 + 1 - k as i64);
    let main = DyadicNumber::from_int(d_m.clone()).shift(s as i64 - m as i64);
    check_inequalities(&main, &tail_bound)?;
    let frac = frac_part_interval(&DyadicInterval::around(&main, &tail_bound));
    let frac_interval = match frac {
        FracPart::Interval(i) if frac.excludes_integers() => i,
        _ => {
            return Err(Error::CertificateInvariant(
                "fractional interval touches an integer".into(),
            ))
        }
    };
    Ok(MahlerCertificate {
        poly: poly.clone(),
        p,
        k,
        m,
        s,
        d_m,
        coeff_bound,
        tail_bound,
        frac_interval,
        verdict: Verdict::NonzeroCertified,
    })
}

/// `tail < |main|` and `|main| + tail < 1/2`.
pub fn inequalities_hold(main: &DyadicNumber, tail: &DyadicNumber) -> (bool, bool) {
    let abs_main = main.abs();
    let one = tail < &abs_main;
    let two = &abs_main + tail < DyadicNumber::pow2(-1);
    (one, two)
}

fn check_inequalities(main: &DyadicNumber, tail: &DyadicNumber) -> Result<()> {
    match inequalities_hold(main, tail) {
        (true, true) => Ok(()),
        (false, _) => Err(Error::CertificateInvariant(
            "inequality (1) fails: tail is not below the main term".into(),
        )),
        (_, false) => Err(Error::CertificateInvariant(
            "inequality (2) fails: main term plus tail reaches 1/2".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcount::dnq_pow2;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn coeff_bound_examples() {
        assert_eq!(coeff_bound_d(&poly("1,-1,0")), BigInt::from(5));
        assert_eq!(coeff_bound_d(&poly("1,0")), BigInt::from(1));
        assert_eq!(coeff_bound_d(&poly("2,0,0,1")), BigInt::from(73));
    }

    #[test]
    fn coeff_bound_dominates_digits() {
        for s in ["1,-1,0", "2,0,0,1", "3,-5,2,-1", "1,1,1,1"] {
            let f = poly(s);
            let d = coeff_bound_d(&f);
            for n in 0..=1024u64 {
                let dn: BigInt = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(q, a)| a * BigInt::from(dnq_pow2(n, q as u32)))
                    .sum();
                assert!(dn.abs() <= d, "{s} n={n}");
            }
        }
    }

    /// The two conditions evaluated with exact dyadics, as stated.
    fn conditions_exact(f: &IntPolynomial, p: u32) -> bool {
        let a = DyadicNumber::from_int(f.leading().abs() * factorial(f.degree()));
        let d = DyadicNumber::from_int(coeff_bound_d(f));
        let tail = d.shift(1 - (1i64 << p));
        let one = tail < a;
        let two = (&a + &tail).shift(-(1i64 << (p - 1))) < DyadicNumber::pow2(-1);
        one && two
    }

    #[test]
    fn choose_p_examples() {
        assert_eq!(choose_p(&poly("1,-1,0")), Ok(3));
        assert_eq!(choose_p(&poly("1,0")), Ok(2));
        assert_eq!(choose_p(&poly("1000,0")), Ok(5));
        assert_eq!(choose_p(&poly("2,-3,1")), Ok(3));
    }

    #[test]
    fn choose_p_is_minimal() {
        for f in IntPolynomial::enumerate(2, 6).iter().step_by(7) {
            let p = choose_p(f).unwrap();
            assert!(conditions_exact(f, p), "{f}");
            assert!((1..p).all(|q| !conditions_exact(f, q)), "{f}");
        }
        let huge = poly("123456789123456789,0,-987654321987654321");
        let p = choose_p(&huge).unwrap();
        assert!(conditions_exact(&huge, p) && !conditions_exact(&huge, p - 1));
    }

    #[test]
    fn witness_examples() {
        let c = mahler_witness(&poly("1,-1,0")).unwrap();
        assert_eq!((c.p, c.k, c.m, c.s), (3, 32, 24, 20));
        assert_eq!(c.d_m, BigInt::from(2));
        assert_eq!(c.coeff_bound, BigInt::from(5));
        let c = mahler_witness(&poly("1,0")).unwrap();
        assert_eq!((c.p, c.k, c.m, c.s), (2, 8, 4, 2));
        assert_eq!(c.d_m, BigInt::from(1));
        let c = mahler_witness(&poly("2,-3,1")).unwrap();
        assert_eq!((c.p, c.k, c.m, c.s), (3, 32, 24, 20));
        assert_eq!(c.d_m, BigInt::from(4));
        assert_eq!(c.coeff_bound, BigInt::from(12));
    }

    #[test]
    fn certificate_structure() {
        for f in IntPolynomial::enumerate(3, 2) {
            let c = mahler_witness(&f).unwrap();
            let t = f.degree() as u32;
            assert_eq!(c.m.count_ones(), t);
            assert_eq!(c.s.count_ones(), t);
            assert!(((c.s + 1)..c.k).all(|n| n == c.m || n.count_ones() > t));
            assert_eq!(BigInt::from(dnq_pow2(c.m, t)), factorial(t as usize));
            let main = DyadicNumber::from_int(c.d_m.clone()).shift(c.s as i64 - c.m as i64);
            assert_eq!(inequalities_hold(&main, &c.tail_bound), (true, true));
            assert!(c.frac_interval.width() < DyadicNumber::one());
        }
    }

    #[test]
    fn negative_leading_coefficient() {
        let c = mahler_witness(&poly("-1,1,0")).unwrap();
        assert_eq!(c.d_m, BigInt::from(-2));
        // the main term is in (−1/2, 0), so the fractional part is above 1/2
        assert!(c.frac_interval.lower() > &DyadicNumber::pow2(-1));
    }

    #[test]
    fn json_round_trip() {
        let c = mahler_witness(&poly("1,-1,0")).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains(r#""D":"5""#));
        let back: MahlerCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
