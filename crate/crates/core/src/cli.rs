//! Command-line driver. [`run`] returns the process exit code:
//! 0 success, 1 invalid input, 2 verification failure, 3 oracle protocol error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classifier::{self, CaseReport, HypothesisCheck, RadicandCase};
use crate::cyclo5::CycInt;
use crate::error::Error;
use crate::harness::oracle::{OracleClient, ResponseCache};
use crate::harness::{self, VerificationReport};
use crate::splitting::{self, FieldKind, SplittingPattern};
use crate::symbols::{self, RationalPrimeSymbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAIL: i32 = 2;
pub const EXIT_ORACLE_PROTOCOL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Gamma,
    K0,
    K,
}

#[derive(Debug, Parser)]
#[command(
    name = "quintessa",
    version,
    about = "Arithmetic of pure quintic fields and their normal closures"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a radicand and describe the predicted generators of C_k,5.
    Classify {
        n: u64,
        /// Auxiliary prime for the [L] generator.
        #[arg(long)]
        l: Option<u64>,
        /// List the first few auxiliary prime candidates with their symbols.
        #[arg(long)]
        suggest_l: bool,
    },
    /// Decompose a rational prime in Γ, k0 or k.
    Split {
        p: u64,
        #[arg(long, value_enum)]
        field: FieldArg,
        /// Radicand, required for gamma and k.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Quintic residue symbol of alpha (`c0,c1,c2,c3` or an integer) at the primes over p.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        alpha: CycInt,
        p: u64,
    },
    /// Kind of Q(⁵√n) and the conductor of k/k0.
    Kind { n: u64 },
    /// Replay fixture tables.
    Verify {
        #[arg(required = true)]
        fixtures: Vec<PathBuf>,
        /// Oracle command, run through `sh -c`.
        #[arg(long)]
        oracle: Option<String>,
        /// Per-request oracle timeout in seconds.
        #[arg(long, default_value_t = 600)]
        timeout: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub input: u64,
    pub report: CaseReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suggestions: Vec<HypothesisCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Output {
    Classify(ClassifyOutput),
    Split(SplittingPattern),
    Symbol(RationalPrimeSymbol),
    Kind(FieldKind),
    Verify(VerificationReport),
}

impl Output {
    pub fn to_text(&self) -> String {
        match self {
            Output::Classify(c) => {
                let mut s = String::new();
                if c.input != c.report.n {
                    s.push_str(&format!(
                        "input {} reduced to its fifth-power-free part\n",
                        c.input
                    ));
                }
                s.push_str(&c.report.to_string());
                if !c.suggestions.is_empty() {
                    s.push_str("auxiliary prime candidates:\n");
                    for h in &c.suggestions {
                        s.push_str(&format!(
                            "  l = {}: symbol at {} is {}\n",
                            h.base, h.modulus, h.computed
                        ));
                    }
                }
                s
            }
            Output::Split(p) => {
                let mut s = format!("{p}\n");
                if let Some(note) = &p.note {
                    s.push_str(&format!("  inferred: {note}\n"));
                }
                s
            }
            Output::Symbol(sym) => {
                let mut s = String::new();
                for (prime, v) in &sym.per_prime {
                    s.push_str(&format!("{prime} (f = {}): {v}\n", prime.residue_degree));
                }
                s.push_str(&format!("product over {}: {}\n", sym.p, sym.product));
                s
            }
            Output::Kind(k) => format!(
                "n = {}: {} kind, radical R = {}, f^4 = {}\n",
                k.n, k.kind, k.radical_r, k.conductor_f4
            ),
            Output::Verify(r) => r.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    fn exit_code(&self) -> i32 {
        match self {
            Output::Verify(r) if r.has_protocol_error() => EXIT_ORACLE_PROTOCOL,
            Output::Verify(r) if r.has_failures() => EXIT_VERIFY_FAIL,
            _ => EXIT_OK,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::OracleProtocol { .. } => EXIT_ORACLE_PROTOCOL,
        _ => EXIT_INVALID,
    }
}

/// Execute one parsed command.
pub fn execute(command: Command) -> crate::Result<Output> {
    match command {
        Command::Classify { n, l, suggest_l } => {
            let reduced = classifier::normalize_radicand(n)?;
            let mut report = classifier::classify(reduced)?;
            let needs_l = matches!(
                report.case,
                RadicandCase::Case1 { .. } | RadicandCase::Case2 { .. }
            );
            if l.is_some() || !needs_l {
                report = classifier::hypothesis_check(&report, l)?;
            }
            let suggestions = if suggest_l {
                classifier::suggest_auxiliary(&report, 5)?
            } else {
                Vec::new()
            };
            Ok(Output::Classify(ClassifyOutput {
                input: n,
                report,
                suggestions,
            }))
        }
        Command::Split { p, field, n } => {
            let need_n =
                || n.ok_or_else(|| Error::InvalidArgument("--n is required for this field".into()));
            let pattern = match field {
                FieldArg::K0 => splitting::split_in_k0(p)?,
                FieldArg::Gamma => splitting::split_in_gamma(p, need_n()?)?,
                FieldArg::K => splitting::split_in_k(p, need_n()?)?,
            };
            Ok(Output::Split(pattern))
        }
        Command::Symbol { alpha, p } => Ok(Output::Symbol(symbols::symbol_at_rational_prime(
            &alpha, p,
        )?)),
        Command::Kind { n } => Ok(Output::Kind(splitting::field_kind(n)?)),
        Command::Verify {
            fixtures,
            oracle,
            timeout,
        } => {
            let mut rows = Vec::new();
            for f in &fixtures {
                rows.extend(harness::load_table(f)?);
            }
            let report = match oracle {
                Some(cmd) => {
                    let mut client = OracleClient::new(cmd, ResponseCache::from_env()?)
                        .with_timeout(Duration::from_secs(timeout));
                    harness::verify_rows(&rows, Some(&mut client))
                }
                None => harness::verify_rows(&rows, None),
            };
            Ok(Output::Verify(report))
        }
    }
}

/// Parse `args` (including the program name), run, print, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(output) => {
            let text = match cli.format {
                Format::Text => output.to_text(),
                Format::Json => output.to_json() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            output.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
