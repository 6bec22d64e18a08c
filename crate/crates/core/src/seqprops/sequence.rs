use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// 1, 2, 4, 8, …
    Pow2,
    /// 1, 2, 6, 24, … (`0! = 1!` kept once)
    Factorial,
    /// 1, 2, 3, 5, 8, … (the leading 1 kept once)
    Fib,
    /// 1, 2, 3, …
    Naturals,
    /// Distinct values of `⌊θ^n⌋`, `n ≥ 0`.
    GeomFloor(Ratio),
    /// A finite strictly increasing list of positive integers.
    Custom(Vec<u64>),
}

/// A strictly increasing sequence of positive integers `a_1 < a_2 < …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    kind: SequenceKind,
}

impl SequenceSpec {
    pub fn pow2() -> Self {
        SequenceSpec {
            kind: SequenceKind::Pow2,
        }
    }

    pub fn factorial() -> Self {
        SequenceSpec {
            kind: SequenceKind::Factorial,
        }
    }

    pub fn fib() -> Self {
        SequenceSpec {
            kind: SequenceKind::Fib,
        }
    }

    pub fn naturals() -> Self {
        SequenceSpec {
            kind: SequenceKind::Naturals,
        }
    }

    pub fn geomfloor(theta: Ratio) -> Self {
        SequenceSpec {
            kind: SequenceKind::GeomFloor(theta),
        }
    }

    pub fn custom(terms: Vec<u64>) -> Result<Self> {
        for (i, &t) in terms.iter().enumerate() {
            if t == 0 {
                return Err(Error::InvalidSequence {
                    line: None,
                    reason: format!("term {} is zero; terms must be positive", i + 1),
                });
            }
            if i > 0 && t <= terms[i - 1] {
                return Err(Error::InvalidSequence {
                    line: None,
                    reason: format!(
                        "term {} ({t}) does not exceed the previous term ({})",
                        i + 1,
                        terms[i - 1]
                    ),
                });
            }
        }
        Ok(SequenceSpec {
            kind: SequenceKind::Custom(terms),
        })
    }

    /// Reads one positive integer per line, strictly increasing. Blank lines
    /// and lines starting with `#` are skipped; errors report 1-based lines.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_lines(&text)
    }

    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut terms: Vec<u64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = Some(i + 1);
            let v: u64 = line.parse().map_err(|_| Error::InvalidSequence {
                line: lineno,
                reason: format!("{line:?} is not a positive integer"),
            })?;
            if v == 0 {
                return Err(Error::InvalidSequence {
                    line: lineno,
                    reason: "terms must be positive".into(),
                });
            }
            if let Some(&prev) = terms.last() {
                if v <= prev {
                    return Err(Error::InvalidSequence {
                        line: lineno,
                        reason: format!("{v} does not exceed the previous term {prev}"),
                    });
                }
            }
            terms.push(v);
        }
        Ok(SequenceSpec {
            kind: SequenceKind::Custom(terms),
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// All terms `≤ limit`, increasing.
    pub fn terms_up_to(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut push = |v: u64| -> bool {
            if v > limit {
                return false;
            }
            if out.last().is_none_or(|&p| v > p) {
                out.push(v);
            }
            true
        };
        match &self.kind {
            SequenceKind::Pow2 => {
                for k in 0..64 {
                    if !push(1u64 << k) {
                        break;
                    }
                }
            }
            SequenceKind::Factorial => {
                let mut f = 1u64;
                for k in 1u64.. {
                    f = match f.checked_mul(k) {
                        Some(v) => v,
                        None => break,
                    };
                    if !push(f) {
                        break;
                    }
                }
            }
            SequenceKind::Fib => {
                let (mut a, mut b) = (1u64, 2u64);
                while push(a) {
                    let Some(c) = a.checked_add(b) else { break };
                    a = b;
                    b = c;
                }
            }
            SequenceKind::Naturals => {
                for v in 1..=limit {
                    push(v);
                }
            }
            SequenceKind::GeomFloor(theta) => {
                for v in theta.floor_powers() {
                    if v == u64::MAX || !push(v) {
                        break;
                    }
                }
            }
            SequenceKind::Custom(v) => {
                for &t in v {
                    if !push(t) {
                        break;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SequenceKind::Pow2 => write!(f, "pow2"),
            SequenceKind::Factorial => write!(f, "factorial"),
            SequenceKind::Fib => write!(f, "fib"),
            SequenceKind::Naturals => write!(f, "naturals"),
            SequenceKind::GeomFloor(t) => write!(f, "geomfloor:{t}"),
            SequenceKind::Custom(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "list:{}", s.join(","))
            }
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    /// `pow2`, `factorial`, `fib`, `naturals`, `geomfloor:<θ>`, `list:<a,…>`
    /// or `file:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "pow2" => return Ok(Self::pow2()),
            "factorial" => return Ok(Self::factorial()),
            "fib" => return Ok(Self::fib()),
            "naturals" => return Ok(Self::naturals()),
            _ => {}
        }
        if let Some(t) = s.strip_prefix("geomfloor:") {
            return Ok(Self::geomfloor(t.parse()?));
        }
        if let Some(l) = s.strip_prefix("list:") {
            let terms = l
                .split(',')
                .map(|p| {
                    p.trim().parse().map_err(|_| Error::InvalidSequence {
                        line: None,
                        reason: format!("{p:?} is not a positive integer"),
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
            return Self::custom(terms);
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Self::from_file(Path::new(p));
        }
        Err(Error::InvalidSequence {
            line: None,
            reason: format!("unknown sequence {s:?}"),
        })
    }
}
