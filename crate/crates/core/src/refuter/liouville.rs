use serde::{Deserialize, Serialize};

use crate::dyadic::{eval_poly_interval, DyadicInterval, DyadicNumber, SeriesSpec};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Largest `s` for which the side conditions are evaluated.
pub const PEDAGOGY_S_MAX: u64 = 5;

/// The two inequalities of the classical argument, evaluated at `λ_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PedagogyStep {
    pub s: u64,
    /// `λ_s = Σ_{n≤s} 2^(-n!)`
    pub lambda_s: DyadicNumber,
    pub f_lambda_s: DyadicNumber,
    /// `t·s!`
    pub denominator_exponent: u64,
    /// `f(λ_s)·2^(t·s!)` is an integer.
    pub scaled_is_integer: bool,
    /// `f(λ_s) = 0` or `|f(λ_s)| ≥ 2^(-t·s!)`.
    pub lower_bound_holds: bool,
    /// An upper bound for `λ − λ_s` that is below `2·2^(-(s+1)!)`.
    pub tail_upper: DyadicNumber,
    pub tail_bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiouvilleCertificate {
    pub poly: IntPolynomial,
    /// Canonical terms of `λ` used.
    pub precision: usize,
    /// Encloses `f(λ)` and excludes zero.
    pub value_interval: DyadicInterval,
    pub pedagogy: Vec<PedagogyStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LiouvilleOutcome {
    Certified(LiouvilleCertificate),
    Inconclusive {
        poly: IntPolynomial,
        precision: usize,
        value_interval: Option<DyadicInterval>,
    },
}

impl LiouvilleOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, LiouvilleOutcome::Certified(_))
    }
}

fn pedagogy(poly: &IntPolynomial, lambda: &SeriesSpec) -> Result<Vec<PedagogyStep>> {
    let raw = SeriesSpec::liouville();
    let t = poly.degree() as u64;
    let mut out = Vec::new();
    let mut fact = 1u64;
    for s in 0..=PEDAGOGY_S_MAX {
        if s > 1 {
            fact *= s;
        }
        let next_fact = fact * (s + 1);
        let lambda_s = raw.partial_sum(s as usize + 1)?;
        let f_lambda_s = poly.eval(&lambda_s);
        let denominator_exponent = t * fact;
        let scaled = f_lambda_s.shift(denominator_exponent as i64);
        let scaled_is_integer = scaled.is_integer();
        let lower_bound_holds =
            f_lambda_s.is_zero() || f_lambda_s.abs() >= DyadicNumber::pow2(-(denominator_exponent as i64));
        // canonical terms s+3 reach past (s+1)! by two factorial steps, within budget for s ≤ 5
        let upper = lambda.eval_interval(s as usize + 3)?.upper().clone();
        let tail_upper = &upper - &lambda_s;
        let tail_bound_holds = tail_upper < DyadicNumber::pow2(1 - next_fact as i64);
        out.push(PedagogyStep {
            s,
            lambda_s,
            f_lambda_s,
            denominator_exponent,
            scaled_is_integer,
            lower_bound_holds,
            tail_upper,
            tail_bound_holds,
        });
    }
    Ok(out)
}

/// Certifies `f(λ) ≠ 0` by enclosing `f(λ)` in intervals of growing precision
/// until one excludes zero.
pub fn liouville_nonvanishing(poly: &IntPolynomial) -> Result<LiouvilleOutcome> {
    let lambda = SeriesSpec::liouville().canonicalize();
    let mut last = None;
    let mut n = 1usize;
    loop {
        let x = match lambda.eval_interval(n) {
            Ok(x) => x,
            Err(Error::BudgetExceeded { .. }) => {
                return Ok(LiouvilleOutcome::Inconclusive {
                    poly: poly.clone(),
                    precision: n - 1,
                    value_interval: last,
                })
            }
            Err(e) => return Err(e),
        };
        let value = eval_poly_interval(poly, &x);
        if value.excludes_zero() {
            return Ok(LiouvilleOutcome::Certified(LiouvilleCertificate {
                poly: poly.clone(),
                precision: n,
                value_interval: value,
                pedagogy: pedagogy(poly, &lambda)?,
            }));
        }
        last = Some(value);
        n += 1;
    }
}
