use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::mahler::{coeff_bound_d, inequalities_hold, positions, MahlerCertificate};
use crate::dyadic::{eval_poly_interval, frac_part_interval, DyadicInterval, DyadicNumber, FracPart, SeriesSpec};
use crate::error::{Error, Result};

/// Guard bits beyond `k` used when enclosing `μ`.
pub const GUARD_BITS: u64 = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Force this many canonical terms of `μ` instead of the precision-derived
    /// count. Too few terms make the check fail with a straddle.
    pub terms: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", content = "detail", rename_all = "kebab-case")]
pub enum RejectReason {
    /// Positions, bounds or inequalities are inconsistent.
    Structure(String),
    /// The independent enclosure of `{2^s f(μ)}` reaches an integer.
    Straddle(String),
    /// The independent enclosure misses the certified interval.
    Disjoint(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub accepted: bool,
    pub terms_used: usize,
    /// `{2^s f(μ)}` from interval evaluation, when it could be formed.
    pub independent_interval: Option<DyadicInterval>,
    pub reject: Option<RejectReason>,
}

impl Verification {
    fn reject(terms_used: usize, independent_interval: Option<DyadicInterval>, r: RejectReason) -> Self {
        Verification {
            accepted: false,
            terms_used,
            independent_interval,
            reject: Some(r),
        }
    }
}

fn factorial(q: usize) -> BigInt {
    (1..=q).fold(BigInt::one(), |acc, k| acc * k)
}

fn structure(cert: &MahlerCertificate) -> std::result::Result<(), String> {
    let t = cert.poly.degree();
    if cert.p == 0 {
        return Err("p must be at least 1".into());
    }
    let (k, m, s) = positions(t, cert.p).map_err(|e| e.to_string())?;
    if (cert.k, cert.m, cert.s) != (k, m, s) {
        return Err(format!(
            "positions (k, m, s) = ({}, {}, {}) do not match ({k}, {m}, {s}) for t = {t}, p = {}",
            cert.k, cert.m, cert.s, cert.p
        ));
    }
    let expected = cert.poly.leading() * factorial(t);
    if cert.d_m != expected {
        return Err(format!("d_m = {} but a_t·t! = {expected}", cert.d_m));
    }
    let d = coeff_bound_d(&cert.poly);
    if cert.coeff_bound < d {
        return Err(format!("D = {} is below Σ|a_q|(q!)² = {d}", cert.coeff_bound));
    }
    let tail = DyadicNumber::from_int(cert.coeff_bound.clone()).shift(s as i64 + 1 - k as i64);
    if cert.tail_bound < tail {
        return Err(format!("tail bound {} is below D·2^(s+1−k) = {tail}", cert.tail_bound));
    }
    let main = DyadicNumber::from_int(cert.d_m.abs()).shift(s as i64 - m as i64);
    match inequalities_hold(&main, &cert.tail_bound) {
        (true, true) => {}
        (false, _) => return Err("inequality (1) fails".into()),
        (_, false) => return Err("inequality (2) fails".into()),
    }
    let fi = &cert.frac_interval;
    if !(fi.lower().signum() > 0 && fi.upper() < &DyadicNumber::one()) {
        return Err(format!("frac_interval {fi} is not inside (0, 1)"));
    }
    Ok(())
}

/// Re-derives `{2^s f(μ)}` by interval evaluation of `μ` and `f`, without the
/// digit tables, and accepts iff it avoids integers and meets the certified
/// interval.
pub fn verify_certificate(cert: &MahlerCertificate, options: &VerifyOptions) -> Result<Verification> {
    if let Err(msg) = structure(cert) {
        return Ok(Verification::reject(0, None, RejectReason::Structure(msg)));
    }
    let mu = SeriesSpec::mahler().canonicalize();
    let n = match options.terms {
        Some(n) => n,
        // width 2T ≤ 2^-(k+8)
        None => mu
            .terms_for_precision(cert.k + GUARD_BITS + 1)?
            .ok_or(Error::BudgetExceeded {
                what: "verification precision",
                requested: u128::from(cert.k + GUARD_BITS + 1),
                limit: mu.budget().exponent_bits as u128,
            })?,
    };
    let x = mu.eval_interval(n)?;
    let value = eval_poly_interval(&cert.poly, &x).shift(cert.s as i64);
    let frac = frac_part_interval(&value);
    let interval = match &frac {
        FracPart::Straddle => {
            return Ok(Verification::reject(
                n,
                None,
                RejectReason::Straddle(format!(
                    "2^s·f(μ) ⊂ {value} contains an integer in its interior; {n} terms are too few"
                )),
            ))
        }
        FracPart::Interval(i) => i.clone(),
    };
    if !frac.excludes_integers() {
        return Ok(Verification::reject(
            n,
            Some(interval.clone()),
            RejectReason::Straddle(format!("fractional enclosure {interval} touches an integer")),
        ));
    }
    if !interval.intersects(&cert.frac_interval) {
        return Ok(Verification::reject(
            n,
            Some(interval.clone()),
            RejectReason::Disjoint(format!(
                "independent enclosure {interval} misses certified {}",
                cert.frac_interval
            )),
        ));
    }
    Ok(Verification {
        accepted: true,
        terms_used: n,
        independent_interval: Some(interval),
        reject: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refuter::mahler_witness;
    use crate::IntPolynomial;

    fn cert(s: &str) -> MahlerCertificate {
        mahler_witness(&s.parse::<IntPolynomial>().unwrap()).unwrap()
    }

    #[test]
    fn accepts_genuine_certificates() {
        for s in ["1,-1,0", "1,0", "2,-3,1", "-1,1,0", "1000,0"] {
            let v = verify_certificate(&cert(s), &VerifyOptions::default()).unwrap();
            assert!(v.accepted, "{s}: {:?}", v.reject);
        }
    }

    #[test]
    fn rejects_corrupted_position() {
        let mut c = cert("1,-1,0");
        c.s = 21;
        let v = verify_certificate(&c, &VerifyOptions::default()).unwrap();
        assert!(matches!(v.reject, Some(RejectReason::Structure(_))));
    }

    #[test]
    fn rejects_moved_interval() {
        let mut c = cert("1,-1,0");
        // {2^20 (μ² − μ)} is near 1/16; move the claimed interval near 3/4
        c.frac_interval = DyadicInterval::around(&DyadicNumber::new(3.into(), 2), &DyadicNumber::pow2(-8));
        let v = verify_certificate(&c, &VerifyOptions::default()).unwrap();
        assert!(matches!(v.reject, Some(RejectReason::Disjoint(_))), "{v:?}");
    }

    #[test]
    fn truncated_precision_straddles() {
        let c = cert("1,-1,0");
        let v = verify_certificate(&c, &VerifyOptions { terms: Some(3) }).unwrap();
        assert!(!v.accepted);
        assert!(matches!(v.reject, Some(RejectReason::Straddle(_))), "{v:?}");
    }
}
