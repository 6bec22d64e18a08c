use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::mahler::inequalities_hold;
use super::verify::GUARD_BITS;
use crate::dyadic::{eval_poly_interval, frac_part_interval, DyadicInterval, DyadicNumber, FracPart, SeriesSpec};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::repcount::WeightedTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedOptions {
    /// First digit horizon; doubled until `max_horizon`.
    pub initial_horizon: u64,
    pub max_horizon: u64,
}

impl Default for GeneralizedOptions {
    fn default() -> Self {
        GeneralizedOptions {
            initial_horizon: 64,
            max_horizon: 2048,
        }
    }
}

/// `f(x) ≠ 0` for the series value `x`: with `e_n` the digits of `f(x)`,
/// `e_n = 0` on `(s, k)` except at `m`, so `{2^s f(x)}` lies in
/// `frac_interval`, away from the integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedCertificate {
    pub series: String,
    pub poly: IntPolynomial,
    pub s: u64,
    pub m: u64,
    pub k: u64,
    pub horizon: u64,
    #[serde(with = "crate::serde_big::bigint")]
    pub e_m: BigInt,
    /// Bounds `|Σ_{n≥k} e_n 2^(s−n)|`.
    pub tail_bound: DyadicNumber,
    pub frac_interval: DyadicInterval,
    /// `{2^s f(x)}` from direct interval evaluation of the series.
    pub independent_interval: DyadicInterval,
    pub terms_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GeneralizedOutcome {
    Certified(Box<GeneralizedCertificate>),
    Inconclusive {
        series: String,
        poly: IntPolynomial,
        horizon: u64,
        reason: String,
    },
}

impl GeneralizedOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, GeneralizedOutcome::Certified(_))
    }
}

struct Digits {
    /// `e_n` for `n < horizon`.
    e: Vec<BigInt>,
    /// `prefix[q][j] = Σ_{n<j} C_n(q) 2^(-n)` for the absolute series.
    prefix: Vec<Vec<DyadicNumber>>,
    /// `Y^q` for an upper bound `Y` of the absolute series.
    y_pow: Vec<DyadicNumber>,
}

fn digits(series: &SeriesSpec, abs: &SeriesSpec, poly: &IntPolynomial, horizon: u64) -> Result<Option<Digits>> {
    let t = poly.degree() as u32;
    let w = WeightedTable::build(series, horizon - 1, t)?;
    let a = WeightedTable::build(abs, horizon - 1, t)?;
    let e: Vec<BigInt> = (0..horizon)
        .map(|n| {
            poly.coeffs()
                .iter()
                .enumerate()
                .map(|(q, c)| c * w.get(n, q as u32).expect("in table"))
                .sum()
        })
        .collect();
    let prefix = (0..=t)
        .map(|q| {
            let mut acc = DyadicNumber::zero();
            let mut out = Vec::with_capacity(horizon as usize + 1);
            out.push(acc.clone());
            for n in 0..horizon {
                let c = a.get(n, q).expect("in table");
                if !c.is_zero() {
                    acc = &acc + &DyadicNumber::from_int(c.clone()).shift(-(n as i64));
                }
                out.push(acc.clone());
            }
            out
        })
        .collect();
    let Some(n_abs) = abs.terms_for_precision(horizon + 32)? else {
        return Ok(None);
    };
    let y = abs.eval_interval(n_abs)?.upper().clone();
    let mut y_pow = vec![DyadicNumber::one()];
    for q in 1..=t as usize {
        let next = &y_pow[q - 1] * &y;
        y_pow.push(next);
    }
    Ok(Some(Digits { e, prefix, y_pow }))
}

fn tail_bound(poly: &IntPolynomial, d: &Digits, s: u64, k: u64) -> DyadicNumber {
    let mut sum = DyadicNumber::zero();
    for (q, a) in poly.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let rest = &d.y_pow[q] - &d.prefix[q][k as usize];
        sum = &sum + &(&DyadicNumber::from_int(a.abs()) * &rest);
    }
    sum.shift(s as i64)
}

/// `{2^s f(x)}` by interval evaluation at `bits` of series precision.
fn independent(series: &SeriesSpec, poly: &IntPolynomial, s: u64, bits: u64) -> Result<Option<(DyadicInterval, usize)>> {
    let Some(n) = series.terms_for_precision(bits)? else {
        return Ok(None);
    };
    let x = series.eval_interval(n)?;
    let value = eval_poly_interval(poly, &x).shift(s as i64);
    let frac = frac_part_interval(&value);
    match frac {
        FracPart::Interval(ref i) if frac.excludes_integers() => Ok(Some((i.clone(), n))),
        _ => Ok(None),
    }
}

fn search(
    series: &SeriesSpec,
    poly: &IntPolynomial,
    d: &Digits,
    horizon: u64,
) -> Result<Option<GeneralizedCertificate>> {
    let nonzero: Vec<u64> = (0..horizon).filter(|&n| !d.e[n as usize].is_zero()).collect();
    for (i, &m) in nonzero.iter().enumerate() {
        if m == 0 {
            continue;
        }
        // digits at or below s only add integers to 2^s f(x)
        let s = if i > 0 { nonzero[i - 1] } else { 0 };
        let k = nonzero.get(i + 1).copied().unwrap_or(horizon);
        let e_m = d.e[m as usize].clone();
        let main = DyadicNumber::from_int(e_m.clone()).shift(s as i64 - m as i64);
        let tail = tail_bound(poly, d, s, k);
        if inequalities_hold(&main, &tail) != (true, true) {
            continue;
        }
        let frac = frac_part_interval(&DyadicInterval::around(&main, &tail));
        let FracPart::Interval(frac_interval) = frac.clone() else {
            continue;
        };
        if !frac.excludes_integers() {
            continue;
        }
        let mut bits = k + GUARD_BITS + 1;
        for _ in 0..3 {
            match independent(series, poly, s, bits)? {
                Some((iv, n)) if iv.intersects(&frac_interval) => {
                    return Ok(Some(GeneralizedCertificate {
                        series: series.to_string(),
                        poly: poly.clone(),
                        s,
                        m,
                        k,
                        horizon,
                        e_m,
                        tail_bound: tail,
                        frac_interval,
                        independent_interval: iv,
                        terms_used: n,
                    }))
                }
                // disjoint enclosures mean a bug somewhere; refuse to certify
                Some(_) => break,
                None => bits *= 2,
            }
        }
    }
    Ok(None)
}

/// Looks for a Mahler-style witness `(s, m, k)` for `f(x) ≠ 0` with `x` the
/// value of a radix-2 series. Inconclusive results are values, not errors;
/// a certificate is only returned after the independent interval check.
pub fn generalized_witness(
    series: &SeriesSpec,
    poly: &IntPolynomial,
    options: &GeneralizedOptions,
) -> Result<GeneralizedOutcome> {
    if series.radix() != 2 {
        return Err(Error::NotDyadic(series.radix()));
    }
    let x = series.canonicalize();
    let abs = series.absolute().canonicalize();
    let mut horizon = options.initial_horizon.max(2);
    let mut reached = 0;
    let mut reason = String::from("no position triple closes the argument below the horizon");
    while horizon <= options.max_horizon {
        reached = horizon;
        match digits(&x, &abs, poly, horizon) {
            Ok(Some(d)) => {
                if let Some(cert) = search(&x, poly, &d, horizon)? {
                    return Ok(GeneralizedOutcome::Certified(Box::new(cert)));
                }
            }
            Ok(None) | Err(Error::BudgetExceeded { .. }) => {
                reason = format!("budget exhausted at horizon {horizon}");
                break;
            }
            Err(e) => return Err(e),
        }
        horizon *= 2;
    }
    Ok(GeneralizedOutcome::Inconclusive {
        series: series.to_string(),
        poly: poly.clone(),
        horizon: reached,
        reason,
    })
}
