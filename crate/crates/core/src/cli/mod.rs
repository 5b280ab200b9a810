//! Command-line front end.
//!
//! Exit codes: `0` when every check passes, `1` when a check fails, `2` on
//! usage, parse or input errors.

pub mod expr;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use expr::{parse, BundleExpr, ElabError, ParseError};
pub use report::{Check, Report, Summary, REPORT_VERSION};
pub use verify::{verify, Target, VerifyError};

use crate::cohomology;
use crate::proj_bundle::taut_degree;
use crate::rank_loci::{self, ExactMatrix, SampleConfig, Variant};
use report::{int_array, int_value, uint_value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pbundle",
    version,
    about = "Exact intersection numbers on projective bundles over P^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SamplingArgs {
    /// Number of random matrices per probe
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Entries are drawn from [-bound, bound]
    #[arg(long, default_value_t = 10)]
    pub bound: u32,
}

impl From<SamplingArgs> for SampleConfig {
    fn from(a: SamplingArgs) -> Self {
        SampleConfig {
            seed: a.seed,
            bound: a.bound,
            samples: a.samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChowKind {
    Chern,
    Segre,
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Hom,
    Alt,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Hom => Variant::Hom,
            VariantArg::Alt => Variant::Alt,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full check battery for a theorem or lemma
    Verify {
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Chern class, Segre class or tautological degree of a bundle expression
    Chow {
        kind: ChowKind,
        #[arg(long)]
        n: usize,
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Bott's table for H^q(P^n, Omega^p(t))
    Bott {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long)]
        json: bool,
    },
    /// Pfaffian of an alternating matrix stored as JSON
    Pfaffian {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sampling probes of the matrix projection and its exceptional locus
    Probe {
        variant: VariantArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

fn result_object(command: &str, params: Value, result: Value) -> String {
    let v = json!({ "version": REPORT_VERSION, "command": command, "params": params, "result": result });
    serde_json::to_string_pretty(&v).expect("serializable")
}

struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn emit_report(report: &Report, json: bool, out: &mut dyn Write) -> std::io::Result<i32> {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure(EXIT_FAILED, e.to_string());
    match cmd {
        Command::Verify {
            target,
            n,
            json,
            sampling,
        } => {
            let report = verify(target, n, &sampling.into()).map_err(usage)?;
            emit_report(&report, json, out).map_err(io)
        }
        Command::Chow { kind, n, expr, json } => {
            let parsed = parse(&expr).map_err(usage)?;
            let bundle = parsed.elaborate(n).map_err(usage)?;
            let (text, value) = match kind {
                ChowKind::Chern => (bundle.chern().to_string(), int_array(bundle.chern().coeffs())),
                ChowKind::Segre => {
                    let s = bundle.segre();
                    (s.to_string(), int_array(s.coeffs()))
                }
                ChowKind::Degree => {
                    let d = taut_degree(&bundle).map_err(usage)?;
                    (d.to_string(), int_value(&d))
                }
            };
            let name = format!("chow {}", format!("{kind:?}").to_lowercase());
            if json {
                let params = json!({ "n": n, "expr": parsed.to_string(), "rank": bundle.rank() });
                writeln!(out, "{}", result_object(&name, params, value)).map_err(io)?;
            } else {
                writeln!(out, "{text}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Bott { n, p, t, json } => {
            let table = cohomology::bott(n, p, t).map_err(usage)?;
            if json {
                let dims = Value::Array(table.dims().iter().map(uint_value).collect());
                let params = json!({ "n": n, "p": p, "t": t });
                writeln!(out, "{}", result_object("bott", params, dims)).map_err(io)?;
            } else {
                writeln!(out, "{table}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Pfaffian { file, json } => {
            let src =
                std::fs::read_to_string(&file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let m = ExactMatrix::from_json(&src).map_err(usage)?;
            let pf = rank_loci::pfaffian(&m).map_err(usage)?;
            if json {
                let params = json!({ "file": file.display().to_string(), "size": m.rows() });
                writeln!(
                    out,
                    "{}",
                    result_object("pfaffian", params, json!(pf.to_string()))
                )
                .map_err(io)?;
            } else {
                writeln!(out, "{pf}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Probe {
            variant,
            n,
            json,
            sampling,
        } => {
            let cfg: SampleConfig = sampling.into();
            let variant: Variant = variant.into();
            rank_loci::check_probe_params(variant, n, &cfg).map_err(usage)?;
            let report = Report::new(vec![
                verify::probe_birational_check(variant, n, &cfg),
                verify::probe_exceptional_check(variant, n, &cfg),
            ]);
            emit_report(&report, json, out).map_err(io)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_exit_one() {
        let report = Report::new(vec![Check::new("broken", json!({}), json!(1), json!(0))]);
        let mut out = Vec::new();
        assert_eq!(emit_report(&report, false, &mut out).unwrap(), EXIT_FAILED);
        assert!(String::from_utf8(out).unwrap().starts_with("FAIL broken"));
        let ok = Report::new(vec![Check::new("fine", json!({}), json!(1), json!(1))]);
        assert_eq!(emit_report(&ok, true, &mut Vec::new()).unwrap(), EXIT_OK);
    }

    #[test]
    fn run_writes_to_the_given_streams() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["pbundle", "chow", "degree", "--n", "3", "T(-1)^3"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_OK);
        assert_eq!(String::from_utf8(out).unwrap(), "1\n");
        let code = run(
            ["pbundle", "chow", "degree", "--n", "3", "T(-2)"],
            &mut Vec::new(),
            &mut err,
        );
        assert_eq!(code, EXIT_USAGE);
    }
}
