//! Command-line front end. Every subcommand is deterministic; exit codes are
//! 0 when all results are complete or certified, 2 when some result is
//! inconclusive or rejected, and 1 on errors.
//!
//! Hard caps come from the environment: `LACUNARY_MAX_EXPONENT_BITS`,
//! `LACUNARY_MAX_TABLE_N`, `LACUNARY_MAX_TABLE_Q` and `LACUNARY_MAX_TERMS`.
//! Requests beyond a cap are rejected before any work starts.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::dyadic::{digits, SeriesSpec};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::refuter::{
    generalized_witness, liouville_nonvanishing, mahler_sweep, mahler_witness, verify_certificate,
    GeneralizedOptions, VerifyOptions,
};
use crate::report::{emit_report, Format, MahlerRun, RepCount, Render, SweepReport};
use crate::repcount::{dnq_pow2, lemma_audit, Mode, RepTable};
use crate::seqprops::{classify, SequenceKind, SequenceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lacunary", version, about = "Exact computations around lacunary binary series")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Ordered,
    Unordered,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Ordered => Mode::Ordered,
            ModeArg::Unordered => Mode::Unordered,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Leading digits of a series value.
    Digits {
        /// Series, e.g. mahler, nu10, liouville, geomfloor:1.1, mahler*index.
        series: String,
        #[arg(long, default_value_t = 2)]
        base: u32,
        #[arg(long)]
        count: usize,
    },
    /// Number of representations d_n(q) of n as a sum of q sequence terms.
    Repcount {
        n: u64,
        q: u32,
        #[arg(long = "seq", default_value = "pow2")]
        seq: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Ordered)]
        mode: ModeArg,
    },
    /// Audit the representation lemma for powers of two.
    AuditLemma {
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        qmax: u32,
    },
    /// Screen a sequence for looseness and sparseness.
    Analyze {
        /// Sequence: pow2, factorial, fib, naturals, geomfloor:θ, list:…, file:path.
        sequence: String,
        #[arg(long)]
        qmax: u32,
        /// Largest n examined.
        #[arg(long = "N", alias = "n-max")]
        n_max: u64,
        /// Gap threshold for sparse triples.
        #[arg(long = "M", alias = "gap")]
        gap: u64,
    },
    /// Certify f(μ) ≠ 0 for the Mahler number μ = Σ 2^(-2^n).
    RefuteMahler(RefuteMahlerArgs),
    /// Certify f(λ) ≠ 0 for the Liouville number λ = Σ 2^(-n!).
    RefuteLiouville {
        /// Coefficients a_t,…,a_0, leading first.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Search for a Mahler-style witness for an arbitrary binary series.
    Explore {
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 2048)]
        max_horizon: u64,
    },
}

#[derive(Args, Debug)]
struct RefuteMahlerArgs {
    /// Coefficients a_t,…,a_0, leading first.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "sweep", required_unless_present = "sweep")]
    poly: Option<String>,
    /// Run every polynomial with degree ≤ --degree and |coefficients| ≤ --height.
    #[arg(long, requires_all = ["degree", "height"])]
    sweep: bool,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    height: Option<i64>,
}

fn env_cap<T: std::str::FromStr>(name: &str, default: T) -> Result<T> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map_err(|_| Error::InvalidCap {
            name: name.to_string(),
            value: v,
        }),
        Err(_) => Ok(default),
    }
}

/// Budget from the environment, falling back to the library defaults.
pub fn budget_from_env() -> Result<Budget> {
    let d = Budget::default();
    Ok(Budget {
        exponent_bits: env_cap("LACUNARY_MAX_EXPONENT_BITS", d.exponent_bits)?,
        table_n: env_cap("LACUNARY_MAX_TABLE_N", d.table_n)?,
        table_q: env_cap("LACUNARY_MAX_TABLE_Q", d.table_q)?,
        max_terms: env_cap("LACUNARY_MAX_TERMS", d.max_terms)?,
    })
}

fn check_cap(what: &'static str, requested: u64, limit: u64) -> Result<()> {
    if requested > limit {
        return Err(Error::BudgetExceeded {
            what,
            requested: requested.into(),
            limit: limit.into(),
        });
    }
    Ok(())
}

fn render<T: Render>(command: &str, result: &T, format: Format) -> String {
    emit_report(command, result, format)
}

fn execute(cli: Cli, budget: &Budget) -> Result<(String, i32, Option<String>)> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Digits { series, base, count } => {
            // each digit needs at least one bit of precision
            check_cap("digit count", count as u64, budget.exponent_bits)?;
            let spec: SeriesSpec = series.parse()?;
            let spec = spec.with_budget(*budget);
            match digits(&spec, base, count) {
                Ok(d) => Ok((render("digits", &d, format), EXIT_OK, None)),
                Err(e @ Error::PrecisionUnresolvable { .. }) => {
                    let Error::PrecisionUnresolvable { integer_part, prefix } = &e else {
                        unreachable!()
                    };
                    // a partial report only makes sense once the integer part is known
                    let report = match integer_part.parse() {
                        Ok(ip) => render(
                            "digits",
                            &crate::dyadic::Digits {
                                series: spec.to_string(),
                                base,
                                integer_part: ip,
                                digits: prefix.clone(),
                                terms_used: spec.budget().max_terms,
                            },
                            format,
                        ),
                        Err(_) => String::new(),
                    };
                    Ok((report, EXIT_INCONCLUSIVE, Some(format!("warning: {e}"))))
                }
                Err(e) => Err(e),
            }
        }
        Command::Repcount { n, q, seq, mode } => {
            let sequence: SequenceSpec = seq.parse()?;
            let mode: Mode = mode.into();
            check_cap("summand count", q.into(), budget.table_q.into())?;
            let count = if *sequence.kind() == SequenceKind::Pow2 && mode == Mode::Ordered {
                dnq_pow2(n, q)
            } else {
                check_cap("table size", n, budget.table_n)?;
                RepTable::build(&sequence, mode, n, q, budget)?
                    .get(n, q)
                    .cloned()
                    .expect("within table")
            };
            let r = RepCount {
                sequence: sequence.to_string(),
                mode,
                n,
                q,
                count,
            };
            Ok((render("repcount", &r, format), EXIT_OK, None))
        }
        Command::AuditLemma { nmax, qmax } => {
            check_cap("table size", nmax, budget.table_n)?;
            check_cap("summand count", u64::from(qmax) + 1, budget.table_q.into())?;
            let audit = lemma_audit(nmax, qmax)?;
            let code = if audit.violations.is_empty() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok((render("audit-lemma", &audit, format), code, None))
        }
        Command::Analyze { sequence, qmax, n_max, gap } => {
            check_cap("table size", n_max, budget.table_n)?;
            check_cap("summand count", qmax.into(), budget.table_q.into())?;
            let seq: SequenceSpec = sequence.parse()?;
            let report = classify(&seq, qmax, n_max, gap)?;
            Ok((render("analyze", &report, format), EXIT_OK, None))
        }
        Command::RefuteMahler(args) => {
            if args.sweep {
                let degree = args.degree.expect("required by clap");
                let height = args.height.expect("required by clap");
                if degree == 0 || height < 1 {
                    return Err(Error::InvalidPolynomial(
                        "sweep needs --degree >= 1 and --height >= 1".into(),
                    ));
                }
                check_cap("summand count", degree as u64, budget.table_q.into())?;
                let polys = IntPolynomial::enumerate(degree, height);
                let report = SweepReport::new(degree, height, mahler_sweep(&polys)?);
                let code = if report.complete() { EXIT_OK } else { EXIT_INCONCLUSIVE };
                Ok((render("refute-mahler", &report, format), code, None))
            } else {
                let poly: IntPolynomial = args.poly.expect("required by clap").parse()?;
                check_cap("summand count", poly.degree() as u64, budget.table_q.into())?;
                let certificate = mahler_witness(&poly)?;
                let verification = verify_certificate(&certificate, &VerifyOptions::default())?;
                let code = if verification.accepted { EXIT_OK } else { EXIT_INCONCLUSIVE };
                let run = MahlerRun {
                    certificate,
                    verification,
                };
                Ok((render("refute-mahler", &run, format), code, None))
            }
        }
        Command::RefuteLiouville { poly } => {
            let poly: IntPolynomial = poly.parse()?;
            let outcome = liouville_nonvanishing(&poly)?;
            let code = if outcome.is_certified() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok((render("refute-liouville", &outcome, format), code, None))
        }
        Command::Explore { series, poly, max_horizon } => {
            check_cap("digit horizon", max_horizon, budget.table_n)?;
            let spec: SeriesSpec = series.parse()?;
            let spec = spec.with_budget(*budget);
            let poly: IntPolynomial = poly.parse()?;
            let options = GeneralizedOptions {
                max_horizon,
                ..GeneralizedOptions::default()
            };
            let outcome = generalized_witness(&spec, &poly, &options)?;
            let code = if outcome.is_certified() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok((render("explore", &outcome, format), code, None))
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    let result = budget_from_env().and_then(|b| execute(cli, &b));
    match result {
        Ok((report, code, note)) => {
            if let Some(note) = note {
                let _ = writeln!(err, "{note}");
            }
            if out.write_all(report.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lacunary").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn refute_mahler_single() {
        let (code, out, _) = call(&["refute-mahler", "--poly", "1,-1,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let c = &v["result"]["certificate"];
        assert_eq!((c["p"].as_u64(), c["k"].as_u64(), c["m"].as_u64(), c["s"].as_u64()), (Some(3), Some(32), Some(24), Some(20)));
        assert_eq!(c["d_m"], "2");
        assert_eq!(v["result"]["verification"]["accepted"], true);
    }

    #[test]
    fn digits_nu10() {
        let (code, out, _) = call(&["digits", "nu10", "--base", "10", "--count", "17", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "11010001000000010"), "{out}");
    }

    #[test]
    fn analyze_naturals() {
        let (code, out, _) = call(&["analyze", "naturals", "--qmax", "2", "--N", "1000", "--M", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["per_q"][0]["sparse"]["status"], "inconclusive");
        assert_eq!(v["result"]["per_q"][1]["loose"]["verdict"], "growth-detected");
    }

    #[test]
    fn exit_codes_and_diagnostics() {
        let (code, _, err) = call(&["refute-mahler", "--poly", "0,1"]);
        assert_eq!(code, 1);
        assert!(err.contains("invalid polynomial"));
        let (code, _, err) = call(&["analyze", "list:1,3,2", "--qmax", "1", "--N", "10", "--M", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("invalid sequence"));
        let (code, _, err) = call(&["audit-lemma", "--nmax", "100000000000", "--qmax", "2"]);
        assert_eq!(code, 1);
        assert!(err.contains("budget exceeded"));
        let (code, _, _) = call(&["explore", "geometric", "--poly", "1,-2", "--max-horizon", "128"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("refute-mahler"));
    }

    #[test]
    fn repcount_modes() {
        let (code, out, _) = call(&["repcount", "3", "2", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("d_3(2) = 2"));
        let (_, out, _) = call(&["repcount", "10", "2", "--seq", "fib", "--mode", "unordered", "--format", "csv"]);
        assert_eq!(out.lines().nth(1), Some("fib,unordered,10,2,2"));
    }
}
