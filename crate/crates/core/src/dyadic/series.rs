//! Lacunary series `Σ b_n · R^(-a_n)` with rigorous tail bounds.
//!
//! A series is a generator of exponents `a_n` paired with a generator of
//! integer coefficients `b_n`, summed in radix `R` (2 for every dyadic preset,
//! 10 for `nu10`). Canonicalization merges terms with equal exponents so that
//! exponents strictly increase; the Liouville exponents need this because
//! `0! = 1! = 1`.
//!
//! Tail bounds use geometric domination. Let `N` be a canonical index, `r_N`
//! the raw index where group `N` starts, and `M` a bound on the number of raw
//! terms merged into any group `j ≥ N`. If every raw coefficient satisfies
//! `|b_n| ≤ α + β·n`, then
//!
//! ```text
//! Σ_{j≥N} |c_j| R^(-a_j) ≤ 2·M·(α + β·(r_N + 2M − 1)) · R^(-a_N)
//! ```
//!
//! because canonical exponents grow by at least one per group. For `M = 1`,
//! `β = 0` this is the familiar `B · 2^(1 − a_N)`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{DyadicInterval, DyadicNumber};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSpec {
    /// `a_n = 2^n`
    Mahler,
    /// `a_n = n!`
    Liouville,
    /// `a_n = f_n` with `f_0 = f_1 = 1`
    Fibonacci,
    /// `a_n = ⌊θ^n⌋`
    GeomFloor(Ratio),
    /// `a_n = n`
    Geometric,
    /// A finite explicit list, in any order; repeats allowed.
    Custom(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffSpec {
    Ones,
    /// `b_n = n`; unbounded, so tails carry a linear envelope.
    Index,
    Constant(BigInt),
    /// A finite list; the series ends where the list ends.
    Custom(Vec<BigInt>),
}

impl CoeffSpec {
    fn get(&self, n: usize) -> Option<BigInt> {
        match self {
            CoeffSpec::Ones => Some(BigInt::one()),
            CoeffSpec::Index => Some(BigInt::from(n)),
            CoeffSpec::Constant(c) => Some(c.clone()),
            CoeffSpec::Custom(v) => v.get(n).cloned(),
        }
    }

    /// `(α, β)` with `|b_n| ≤ α + β·n` for every `n ≥ from`.
    fn envelope(&self, from: usize) -> (BigInt, BigInt) {
        match self {
            CoeffSpec::Ones => (BigInt::one(), BigInt::zero()),
            CoeffSpec::Index => (BigInt::zero(), BigInt::one()),
            CoeffSpec::Constant(c) => (c.abs(), BigInt::zero()),
            CoeffSpec::Custom(v) => (
                v.iter().skip(from).map(|c| c.abs()).max().unwrap_or_default(),
                BigInt::zero(),
            ),
        }
    }
}

/// One term `coeff · R^(-exponent)`. For canonical terms `raw_index` and
/// `raw_len` locate the merged raw terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponent: u64,
    pub coeff: BigInt,
    pub raw_index: usize,
    pub raw_len: usize,
}

/// Exact enclosure `[(center − radius), (center + radius)] · R^(-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub center: BigInt,
    pub radius: BigInt,
    pub radix: u32,
    pub exponent: u64,
}

impl Enclosure {
    pub fn lower_num(&self) -> BigInt {
        &self.center - &self.radius
    }

    pub fn upper_num(&self) -> BigInt {
        &self.center + &self.radius
    }

    pub fn to_dyadic(&self) -> Result<DyadicInterval> {
        if self.radix != 2 {
            return Err(Error::NotDyadic(self.radix));
        }
        DyadicInterval::new(
            DyadicNumber::new(self.lower_num(), self.exponent),
            DyadicNumber::new(self.upper_num(), self.exponent),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    exponents: ExponentSpec,
    coefficients: CoeffSpec,
    radix: u32,
    canonical: bool,
    budget: Budget,
}

impl SeriesSpec {
    pub fn new(exponents: ExponentSpec, coefficients: CoeffSpec, radix: u32) -> Result<Self> {
        if radix != 2 && radix != 10 {
            return Err(Error::UnsupportedBase(radix));
        }
        if let (ExponentSpec::Custom(e), CoeffSpec::Custom(c)) = (&exponents, &coefficients) {
            if e.len() != c.len() {
                return Err(Error::InvalidSeries(format!(
                    "{} exponents but {} coefficients",
                    e.len(),
                    c.len()
                )));
            }
        }
        Ok(SeriesSpec {
            exponents,
            coefficients,
            radix,
            canonical: false,
            budget: Budget::default(),
        })
    }

    fn preset(exponents: ExponentSpec, radix: u32) -> Self {
        SeriesSpec::new(exponents, CoeffSpec::Ones, radix).expect("valid preset")
    }

    /// `μ = Σ 2^(-2^n)`
    pub fn mahler() -> Self {
        Self::preset(ExponentSpec::Mahler, 2)
    }

    /// `λ = Σ 2^(-n!)`
    pub fn liouville() -> Self {
        Self::preset(ExponentSpec::Liouville, 2)
    }

    /// `ν = Σ 10^(-2^n)`
    pub fn nu10() -> Self {
        Self::preset(ExponentSpec::Mahler, 10)
    }

    /// `Σ 2^(-f_n)` over Fibonacci numbers `1, 1, 2, 3, 5, …`
    pub fn fib() -> Self {
        Self::preset(ExponentSpec::Fibonacci, 2)
    }

    pub fn geomfloor(theta: Ratio) -> Self {
        Self::preset(ExponentSpec::GeomFloor(theta), 2)
    }

    /// `Σ_{n≥0} 2^(-n) = 2`
    pub fn geometric() -> Self {
        Self::preset(ExponentSpec::Geometric, 2)
    }

    /// A finite series from explicit `(exponent, coefficient)` pairs.
    pub fn custom(terms: Vec<(u64, BigInt)>) -> Self {
        let (e, c): (Vec<u64>, Vec<BigInt>) = terms.into_iter().unzip();
        SeriesSpec::new(ExponentSpec::Custom(e), CoeffSpec::Custom(c), 2).expect("equal lengths")
    }

    pub fn with_coefficients(mut self, coefficients: CoeffSpec) -> Result<Self> {
        if let (ExponentSpec::Custom(e), CoeffSpec::Custom(c)) = (&self.exponents, &coefficients) {
            if e.len() != c.len() {
                return Err(Error::InvalidSeries(format!(
                    "{} exponents but {} coefficients",
                    e.len(),
                    c.len()
                )));
            }
        }
        self.coefficients = coefficients;
        Ok(self)
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn canonicalize(&self) -> Self {
        SeriesSpec {
            canonical: true,
            ..self.clone()
        }
    }

    /// The same series with every coefficient replaced by its absolute value.
    /// Canonical terms of the result dominate `|c_j|` of the original.
    pub fn absolute(&self) -> Self {
        let coefficients = match &self.coefficients {
            CoeffSpec::Constant(c) => CoeffSpec::Constant(c.abs()),
            CoeffSpec::Custom(v) => CoeffSpec::Custom(v.iter().map(|c| c.abs()).collect()),
            other => other.clone(),
        };
        SeriesSpec {
            coefficients,
            ..self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn exponents(&self) -> &ExponentSpec {
        &self.exponents
    }

    pub fn coefficients(&self) -> &CoeffSpec {
        &self.coefficients
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.exponents, ExponentSpec::Custom(_))
            || matches!(self.coefficients, CoeffSpec::Custom(_))
    }

    fn raw_exponents(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match &self.exponents {
            ExponentSpec::Mahler => Box::new((0u32..).map(|n| {
                if n < 64 {
                    1u64 << n
                } else {
                    u64::MAX
                }
            })),
            ExponentSpec::Liouville => Box::new((0u64..).scan(1u64, |fact, n| {
                if n > 1 {
                    *fact = fact.saturating_mul(n);
                }
                Some(*fact)
            })),
            ExponentSpec::Fibonacci => Box::new(
                std::iter::successors(Some((1u64, 1u64)), |&(a, b)| Some((b, a.saturating_add(b))))
                    .map(|(a, _)| a),
            ),
            ExponentSpec::GeomFloor(theta) => Box::new(theta.floor_powers()),
            ExponentSpec::Geometric => Box::new(0u64..),
            ExponentSpec::Custom(v) => Box::new(v.iter().copied()),
        }
    }

    fn checked_coeff(&self, n: usize) -> Result<Option<BigInt>> {
        let Some(b) = self.coefficients.get(n) else {
            return Ok(None);
        };
        let (alpha, beta) = self.coefficients.envelope(0);
        let bound = alpha + beta * BigInt::from(n);
        if b.abs() > bound {
            return Err(Error::CoefficientBound {
                index: n,
                value: b.to_string(),
                bound: bound.to_string(),
            });
        }
        Ok(Some(b))
    }

    /// The first `count` terms (canonical or raw according to the flag), or
    /// fewer if the series is finite. Asking for a term whose exponent exceeds
    /// the budget is an error.
    pub fn terms(&self, count: usize) -> Result<Vec<Term>> {
        self.budget.check_terms(count)?;
        if self.canonical {
            self.canonical_terms(count, None)
        } else {
            self.raw_terms(count)
        }
    }

    fn raw_terms(&self, count: usize) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        for (n, a) in self.raw_exponents().enumerate().take(count) {
            let Some(coeff) = self.checked_coeff(n)? else {
                break;
            };
            self.budget.check_exponent(a)?;
            out.push(Term {
                exponent: a,
                coeff,
                raw_index: n,
                raw_len: 1,
            });
        }
        Ok(out)
    }

    /// Canonical terms with exponent at most `max_exponent`.
    pub fn terms_through(&self, max_exponent: u64) -> Result<Vec<Term>> {
        self.canonical_terms(usize::MAX, Some(max_exponent))
    }

    fn canonical_terms(&self, count: usize, max_exponent: Option<u64>) -> Result<Vec<Term>> {
        let limit = max_exponent.unwrap_or(u64::MAX);
        if let ExponentSpec::Custom(_) = self.exponents {
            let mut raw = self.raw_terms(usize::MAX)?;
            raw.sort_by_key(|t| t.exponent);
            let mut merged = merge_sorted(raw)?;
            merged.retain(|t| t.exponent <= limit);
            merged.truncate(count);
            return Ok(merged);
        }
        let raw_cap = self.budget.max_terms.saturating_mul(64);
        let mut out: Vec<Term> = Vec::new();
        for (n, a) in self.raw_exponents().enumerate() {
            if n >= raw_cap {
                return Err(Error::BudgetExceeded {
                    what: "raw term count",
                    requested: n as u128,
                    limit: raw_cap as u128,
                });
            }
            let Some(b) = self.checked_coeff(n)? else {
                break;
            };
            if let Some(last) = out.last_mut() {
                if last.exponent == a {
                    last.coeff += b;
                    last.raw_len += 1;
                    continue;
                }
                if a < last.exponent {
                    return Err(Error::NonMonotoneExponents {
                        index: n,
                        value: a,
                        previous: last.exponent,
                    });
                }
            }
            // a new exponent closes the previous group
            if out.len() == count || a > limit {
                break;
            }
            self.budget.check_exponent(a)?;
            out.push(Term {
                exponent: a,
                coeff: b,
                raw_index: n,
                raw_len: 1,
            });
        }
        Ok(out)
    }

    /// Exact `Σ_{n<N} b_n·2^(-a_n)` over raw terms, or over merged terms when
    /// canonicalized (the value is the same whenever both are defined).
    pub fn partial_sum(&self, n: usize) -> Result<DyadicNumber> {
        if self.radix != 2 {
            return Err(Error::NotDyadic(self.radix));
        }
        let terms = self.terms(n)?;
        let (num, e) = scaled_sum(&terms, 2);
        Ok(DyadicNumber::new(num, e))
    }

    /// `(numerator, exponent)` of the tail bound after `n` canonical terms,
    /// meaning `numerator · R^(-exponent)`.
    fn tail_bound_scaled(&self, n: usize, terms: &[Term]) -> Result<(BigInt, u64)> {
        if !self.canonical {
            return Err(Error::NotCanonical);
        }
        let Some(next) = terms.get(n) else {
            return Ok((BigInt::zero(), 0));
        };
        let a_n = next.exponent;
        if let ExponentSpec::Custom(_) = self.exponents {
            let all = self.canonical_terms(usize::MAX, None)?;
            let alpha = all[n..].iter().map(|t| t.coeff.abs()).max().unwrap_or_default();
            return Ok((alpha * 2, a_n));
        }
        let m = match &self.exponents {
            ExponentSpec::Liouville | ExponentSpec::Fibonacci if n == 0 => 2u64,
            ExponentSpec::GeomFloor(theta) => theta.run_length_bound(a_n),
            _ => 1,
        };
        let (alpha, beta) = self.coefficients.envelope(next.raw_index);
        if alpha.is_zero() && beta.is_zero() {
            return Ok((BigInt::zero(), 0));
        }
        let m_big = BigInt::from(m);
        let span = BigInt::from(next.raw_index) + BigInt::from(2 * m) - 1;
        let num = BigInt::from(2) * &m_big * (alpha + beta * span);
        Ok((num, a_n))
    }

    /// A value `T ≥ |Σ_{n≥N} b_n·2^(-a_n)|` for a canonicalized series.
    pub fn tail_bound(&self, n: usize) -> Result<DyadicNumber> {
        if self.radix != 2 {
            return Err(Error::NotDyadic(self.radix));
        }
        let terms = self.terms(n + 1)?;
        let (num, e) = self.tail_bound_scaled(n, &terms)?;
        Ok(DyadicNumber::new(num, e))
    }

    /// Exact enclosure of the series value from `n` canonical terms and the
    /// tail bound, in the series' own radix.
    pub fn enclosure(&self, n: usize) -> Result<Enclosure> {
        if !self.canonical {
            return Err(Error::NotCanonical);
        }
        let terms = self.terms(n + 1)?;
        let head = &terms[..n.min(terms.len())];
        let (sum, e_sum) = scaled_sum(head, self.radix);
        let (tail, e_tail) = self.tail_bound_scaled(n, &terms)?;
        let e = e_sum.max(e_tail);
        let r = BigInt::from(self.radix);
        let scale = |v: BigInt, from: u64| v * num_traits::pow(r.clone(), (e - from) as usize);
        Ok(Enclosure {
            center: scale(sum, e_sum),
            radius: scale(tail, e_tail),
            radix: self.radix,
            exponent: e,
        })
    }

    /// `[S_N − T_N, S_N + T_N]`; nested in `N`.
    pub fn eval_interval(&self, n: usize) -> Result<DyadicInterval> {
        if self.radix != 2 {
            return Err(Error::NotDyadic(self.radix));
        }
        self.enclosure(n)?.to_dyadic()
    }

    /// Smallest canonical `N` whose tail bound is at most `2^(-bits)`, or
    /// `None` if the budget runs out first.
    pub fn terms_for_precision(&self, bits: u64) -> Result<Option<usize>> {
        if !self.canonical {
            return Err(Error::NotCanonical);
        }
        let target = DyadicNumber::pow2(-(bits as i64));
        let mut n = 0usize;
        loop {
            let t = match self.tail_bound(n) {
                Ok(t) => t,
                Err(Error::BudgetExceeded { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            if t <= target {
                return Ok(Some(n));
            }
            n += 1;
        }
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

/// `(Σ c·R^(E − a), E)` with `E` the largest exponent.
fn scaled_sum(terms: &[Term], radix: u32) -> (BigInt, u64) {
    let e = terms.iter().map(|t| t.exponent).max().unwrap_or(0);
    let r = BigInt::from(radix);
    let mut sorted: Vec<&Term> = terms.iter().collect();
    sorted.sort_by_key(|t| t.exponent);
    // Horner in increasing exponent order
    let mut acc = BigInt::zero();
    let mut prev = sorted.first().map(|t| t.exponent).unwrap_or(0);
    for t in sorted {
        let gap = t.exponent - prev;
        if gap > 0 {
            acc = if radix == 2 {
                acc << gap
            } else {
                acc * num_traits::pow(r.clone(), gap as usize)
            };
        }
        acc += &t.coeff;
        prev = t.exponent;
    }
    let rest = e - prev;
    if rest > 0 {
        acc *= num_traits::pow(r, rest as usize);
    }
    (acc, e)
}

/// Merges runs of equal exponents; input must be sorted by exponent.
fn merge_sorted(raw: Vec<Term>) -> Result<Vec<Term>> {
    let mut out: Vec<Term> = Vec::new();
    for (i, t) in raw.into_iter().enumerate() {
        match out.last_mut() {
            Some(last) if last.exponent == t.exponent => {
                last.coeff += t.coeff;
                last.raw_len += 1;
            }
            Some(last) if last.exponent > t.exponent => {
                return Err(Error::NonMonotoneExponents {
                    index: i,
                    value: t.exponent,
                    previous: last.exponent,
                })
            }
            _ => out.push(Term {
                raw_index: i,
                raw_len: 1,
                ..t
            }),
        }
    }
    Ok(out)
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.exponents, self.radix) {
            (ExponentSpec::Mahler, 10) => write!(f, "nu10")?,
            (ExponentSpec::Mahler, _) => write!(f, "mahler")?,
            (ExponentSpec::Liouville, _) => write!(f, "liouville")?,
            (ExponentSpec::Fibonacci, _) => write!(f, "fib")?,
            (ExponentSpec::GeomFloor(t), _) => write!(f, "geomfloor:{t}")?,
            (ExponentSpec::Geometric, _) => write!(f, "geometric")?,
            (ExponentSpec::Custom(v), _) => write!(f, "list:{}", join(v))?,
        }
        match &self.coefficients {
            CoeffSpec::Ones => Ok(()),
            CoeffSpec::Index => write!(f, "*index"),
            CoeffSpec::Constant(c) => write!(f, "*const:{c}"),
            CoeffSpec::Custom(v) => write!(f, "*list:{}", join(v)),
        }
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidSeries(format!("bad list entry {p:?}")))
        })
        .collect()
}

impl FromStr for SeriesSpec {
    type Err = Error;

    /// Grammar: `<exponents>[*<coefficients>]` with exponents one of
    /// `mahler`, `liouville`, `nu10`, `fib`, `geometric`, `geomfloor:<θ>`,
    /// `list:<a,…>`, `file:<path>`, and coefficients one of `ones`, `index`,
    /// `const:<c>`, `list:<b,…>`.
    fn from_str(s: &str) -> Result<Self> {
        let (exp, coef) = s.split_once('*').unwrap_or((s, "ones"));
        let base = match exp.trim() {
            "mahler" => Self::mahler(),
            "liouville" => Self::liouville(),
            "nu10" => Self::nu10(),
            "fib" => Self::fib(),
            "geometric" => Self::geometric(),
            other => {
                if let Some(t) = other.strip_prefix("geomfloor:") {
                    Self::geomfloor(t.parse()?)
                } else if let Some(l) = other.strip_prefix("list:") {
                    Self::preset(ExponentSpec::Custom(parse_list(l)?), 2)
                } else if let Some(p) = other.strip_prefix("file:") {
                    Self::preset(ExponentSpec::Custom(read_exponent_file(Path::new(p))?), 2)
                } else {
                    return Err(Error::InvalidSeries(format!("unknown series {other:?}")));
                }
            }
        };
        let coefficients = match coef.trim() {
            "ones" => CoeffSpec::Ones,
            "index" => CoeffSpec::Index,
            other => {
                if let Some(c) = other.strip_prefix("const:") {
                    CoeffSpec::Constant(
                        c.trim()
                            .parse()
                            .map_err(|_| Error::InvalidSeries(format!("bad constant {c:?}")))?,
                    )
                } else if let Some(l) = other.strip_prefix("list:") {
                    CoeffSpec::Custom(parse_list(l)?)
                } else {
                    return Err(Error::InvalidSeries(format!("unknown coefficients {other:?}")));
                }
            }
        };
        base.with_coefficients(coefficients)
    }
}

fn read_exponent_file(path: &Path) -> Result<Vec<u64>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|_| Error::InvalidSequence {
            line: Some(i + 1),
            reason: format!("{line:?} is not a non-negative integer"),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den_log2: u64) -> DyadicNumber {
        DyadicNumber::new(BigInt::from(num), den_log2)
    }

    fn presets() -> Vec<SeriesSpec> {
        vec![
            SeriesSpec::mahler(),
            SeriesSpec::liouville(),
            SeriesSpec::fib(),
            SeriesSpec::geometric(),
            SeriesSpec::geomfloor("1.1".parse().unwrap()),
            SeriesSpec::geomfloor("3/2".parse().unwrap()),
            SeriesSpec::mahler().with_coefficients(CoeffSpec::Index).unwrap(),
            SeriesSpec::custom(vec![(3, 1.into()), (1, (-2).into()), (3, 5.into()), (7, 1.into())]),
        ]
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(SeriesSpec::mahler().partial_sum(3).unwrap(), q(13, 4));
        assert_eq!(SeriesSpec::liouville().partial_sum(3).unwrap(), q(5, 2));
        assert_eq!(SeriesSpec::mahler().partial_sum(0).unwrap(), DyadicNumber::zero());
    }

    #[test]
    fn liouville_canonical_terms_merge_the_repeated_exponent() {
        let t = SeriesSpec::liouville().canonicalize().terms(4).unwrap();
        let exps: Vec<u64> = t.iter().map(|t| t.exponent).collect();
        assert_eq!(exps, vec![1, 2, 6, 24]);
        assert_eq!(t[0].coeff, BigInt::from(2));
        assert_eq!(t[0].raw_len, 2);
        assert_eq!(t[3].raw_index, 4);
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(SeriesSpec::mahler().canonicalize().tail_bound(3).unwrap(), q(1, 7));
        assert_eq!(SeriesSpec::liouville().canonicalize().tail_bound(3).unwrap(), q(1, 23));
        let zeros = SeriesSpec::mahler()
            .with_coefficients(CoeffSpec::Constant(BigInt::zero()))
            .unwrap()
            .canonicalize();
        for n in 0..5 {
            assert_eq!(zeros.tail_bound(n).unwrap(), DyadicNumber::zero());
        }
        assert_eq!(SeriesSpec::mahler().tail_bound(3), Err(Error::NotCanonical));
    }

    #[test]
    fn eval_interval_examples() {
        let mu = SeriesSpec::mahler().canonicalize();
        let i3 = mu.eval_interval(3).unwrap();
        assert_eq!(i3, DyadicInterval::around(&q(13, 4), &q(1, 7)));
        assert!(i3.contains_interval(&mu.eval_interval(5).unwrap()));
        let finite = SeriesSpec::custom(vec![(1, 1.into()), (4, 3.into())]).canonicalize();
        for n in [2, 3, 10] {
            assert_eq!(finite.eval_interval(n).unwrap(), DyadicInterval::point(q(11, 4)));
        }
    }

    #[test]
    fn radix_ten_is_not_dyadic() {
        assert_eq!(SeriesSpec::nu10().partial_sum(2), Err(Error::NotDyadic(10)));
        let e = SeriesSpec::nu10().canonicalize().enclosure(3).unwrap();
        // 0.11 01 + tail 2·10^-8 at exponent 8
        assert_eq!(e.center, BigInt::from(11010000));
        assert_eq!(e.radius, BigInt::from(2));
        assert_eq!(e.exponent, 8);
    }

    #[test]
    fn budget_is_enforced() {
        let lam = SeriesSpec::liouville().canonicalize();
        // 3628800 = 10! exceeds the default 2^20 exponent budget
        assert!(lam.eval_interval(8).is_ok());
        assert!(matches!(lam.eval_interval(9), Err(Error::BudgetExceeded { .. })));
        let tight = SeriesSpec::mahler().with_budget(Budget {
            exponent_bits: 100,
            ..Budget::default()
        });
        assert!(tight.partial_sum(7).is_ok());
        assert!(matches!(tight.partial_sum(8), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn custom_series_canonicalizes_by_sorting_and_merging() {
        let s = SeriesSpec::custom(vec![(3, 1.into()), (1, (-2).into()), (3, 5.into())]).canonicalize();
        let t = s.terms(10).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].exponent, t[0].coeff.clone()), (1, BigInt::from(-2)));
        assert_eq!((t[1].exponent, t[1].coeff.clone()), (3, BigInt::from(6)));
    }

    #[test]
    fn parse_and_display() {
        for s in ["mahler", "liouville", "nu10", "fib", "geometric", "geomfloor:11/10", "mahler*index", "list:1,3,7*list:1,-1,2"] {
            let spec: SeriesSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("list:1,2*list:1".parse::<SeriesSpec>().is_err());
        assert!("pi".parse::<SeriesSpec>().is_err());
    }

    #[test]
    fn nestedness_for_presets() {
        for s in presets() {
            let s = s.canonicalize();
            let intervals: Vec<_> = (0..=32)
                .map_while(|n| s.eval_interval(n).ok())
                .collect();
            assert!(intervals.len() >= 8, "{s}");
            for w in intervals.windows(2) {
                assert!(w[0].contains_interval(&w[1]), "{s}: {:?} vs {:?}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn tails_contain_later_partial_sums() {
        for s in presets() {
            let s = s.canonicalize();
            for n in 0..=12 {
                let Ok(iv) = s.eval_interval(n) else { break };
                for k in 0..=32 {
                    let Ok(ps) = s.partial_sum(n + k) else { break };
                    assert!(iv.contains(&ps), "{s}: N={n} k={k}");
                }
            }
        }
    }
}
