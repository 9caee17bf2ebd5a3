//! Command-line front end. Every command prints one JSON document; exit
//! codes are 0 affirmative, 1 negative, 2 unknown, 3 input error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::j2::{classify, rule_trace, J2DigitPair};
use crate::lattice::{digits_for_similar, is_similar_to_jordan, represent_similar, SimilarConstruction};
use crate::linalg::{hnf_decompose, jordan_block, parse_int, IntMatrix, IntVector};
use crate::numeration::{shortest_representation, Certificate, NumberSystem, Representer, Verdict, Word};
use crate::obstructions::{cone_obstruction_jordan, residue_obstruction};
use crate::search::{check_full, search_certificate};
use crate::threedigit::{pmz_system, render_pmz, three_digit_certificate, word_w, word_z};
use crate::zero_lang::{is_zero_word, pumping_witness_check, space_profile, zero_oracle};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "matnum", version, about = "Matrix numeration systems over unipotent bases")]
pub struct Cli {
    /// Worker cap. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct BaseArgs {
    /// Use the Jordan block J_N as base.
    #[arg(long, conflicts_with = "matrix")]
    pub jordan: Option<usize>,
    /// Base matrix as a JSON file, or `-` for standard input.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Digits as `x,y,..;x,y,..`.
    #[arg(long, allow_hyphen_values = true)]
    pub digits: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a digit word.
    Eval {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        word: String,
    },
    /// Decide completeness of a two-digit system over J_2.
    #[command(name = "classify-j2")]
    ClassifyJ2 {
        /// `a,b;c,d`.
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        #[arg(long, default_value_t = 50)]
        k_max: usize,
    },
    /// Bounded completeness check.
    #[command(name = "check-full")]
    CheckFull {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        #[arg(long, default_value_t = 16)]
        max_mod: u64,
    },
    /// Represent a target vector.
    Represent {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Certificate JSON, or a `construct` output.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
    },
    /// Shortest representation by iterative deepening.
    Shortest {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Build a full digit set with its certificate.
    Construct {
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Hermite decomposition P = B U.
    Hnf {
        #[arg(long)]
        matrix: String,
    },
    /// Print W_k, or Z_k with `--zeta`.
    #[command(name = "thue-morse")]
    ThueMorse {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        zeta: bool,
    },
    /// Zero-word language over J_2 with digits (0,1), (0,-1).
    #[command(name = "zero-lang", subcommand)]
    ZeroLang(ZeroCommand),
    /// Search for a residue or cone obstruction.
    Obstruct {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 16)]
        max_mod: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZeroCommand {
    Check {
        #[arg(long)]
        word: String,
    },
    Pump {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    Space {
        #[arg(long, default_value_t = 16)]
        max_log_len: u32,
    },
}

/// Exit code and the text for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses `argv` (program name first), runs the command and renders output.
pub fn dispatch<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_AFFIRMATIVE, stdout: e.to_string() };
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return Outcome { code: EXIT_INPUT, stdout: error_json("usage", &first) };
        }
    };
    match run(&cli.command, stdin) {
        Ok((code, value)) => Outcome { code, stdout: render(&value, cli.output) },
        Err(e) => {
            let msg = match &e {
                Error::Input(m) | Error::Dimension(m) | Error::Certificate(m) | Error::Internal(m) => m.clone(),
            };
            let code = if matches!(e, Error::Internal(_)) { EXIT_UNKNOWN } else { EXIT_INPUT };
            Outcome { code, stdout: error_json(e.kind(), &msg) }
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let v = json!({ "error": { "kind": kind, "message": message } });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn render(v: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        OutputFormat::Text => {
            let mut out = String::new();
            if let Value::Object(map) = v {
                for (k, x) in map {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}: {s}\n"));
                }
            } else {
                out.push_str(&v.to_string());
                out.push('\n');
            }
            out
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Error::input(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::input(format!("reading {path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("malformed {what} JSON: {e}")))
}

fn parse_vector(text: &str) -> Result<IntVector> {
    let entries = text.split(',').map(parse_int).collect::<Result<Vec<_>>>()?;
    IntVector::new(entries)
}

/// `x,y;x,y` into digit vectors.
pub fn parse_digits(text: &str) -> Result<Vec<IntVector>> {
    text.split(';').map(|d| parse_vector(d.trim())).collect()
}

fn base_matrix(base: &BaseArgs, stdin: &mut dyn Read) -> Result<IntMatrix> {
    match (&base.jordan, &base.matrix) {
        (Some(n), None) => jordan_block(*n),
        (None, Some(path)) => parse_json(&read_source(path, stdin)?, "matrix"),
        _ => Err(Error::input("give exactly one of --jordan and --matrix")),
    }
}

fn system(base: &BaseArgs, stdin: &mut dyn Read) -> Result<NumberSystem> {
    let m = base_matrix(base, stdin)?;
    let digits = base.digits.as_deref().ok_or_else(|| Error::input("--digits is required"))?;
    NumberSystem::new(m, parse_digits(digits)?)
}

fn verdict_value(v: &Verdict) -> (i32, Value) {
    match v {
        Verdict::Full { rule, certificate } => {
            (EXIT_AFFIRMATIVE, json!({ "verdict": "full", "rule": rule, "certificate": to_value(certificate) }))
        }
        Verdict::NotFull { rule, obstruction } => {
            (EXIT_NEGATIVE, json!({ "verdict": "not_full", "rule": rule, "obstruction": to_value(obstruction) }))
        }
        Verdict::Unknown { max_len, max_mod } => {
            (EXIT_UNKNOWN, json!({ "verdict": "unknown", "max_len": max_len, "max_mod": max_mod }))
        }
    }
}

fn run(cmd: &Command, stdin: &mut dyn Read) -> Result<(i32, Value)> {
    match cmd {
        Command::Eval { base, word } => {
            let ns = system(base, stdin)?;
            let w = Word::parse(word, ns.digit_count())?;
            Ok((EXIT_AFFIRMATIVE, json!({ "word": w.render(ns.digit_count()), "value": to_value(&ns.evaluate(&w)?) })))
        }
        Command::ClassifyJ2 { digits, k_max } => {
            let pair = J2DigitPair::parse(digits)?;
            let (code, mut v) = verdict_value(&classify(&pair, *k_max)?);
            v["rules"] = to_value(&rule_trace(&pair));
            Ok((code, v))
        }
        Command::CheckFull { base, max_len, max_mod } => {
            let ns = system(base, stdin)?;
            Ok(verdict_value(&check_full(&ns, *max_len, *max_mod)?))
        }
        Command::Represent { base, target, certificate, max_len } => represent_cmd(base, target, certificate.as_deref(), *max_len, stdin),
        Command::Shortest { base, target, max_len } => {
            let ns = system(base, stdin)?;
            let t = parse_vector(target)?;
            Ok(match shortest_representation(&ns, &t, *max_len)? {
                Some(w) => (EXIT_AFFIRMATIVE, json!({ "word": w.render(ns.digit_count()), "length": w.len() })),
                None => (EXIT_UNKNOWN, json!({ "word": Value::Null, "max_len": max_len })),
            })
        }
        Command::Construct { base } => {
            if base.digits.is_some() {
                return Err(Error::input("construct chooses its own digits"));
            }
            match (&base.jordan, &base.matrix) {
                (Some(n), None) => {
                    let ns = pmz_system(*n)?;
                    let cert = three_digit_certificate(*n)?;
                    Ok((EXIT_AFFIRMATIVE, json!({ "digits": to_value(&ns.digits()), "certificate": to_value(&cert) })))
                }
                _ => {
                    let m = base_matrix(base, stdin)?;
                    if !is_similar_to_jordan(&m) {
                        return Ok((EXIT_NEGATIVE, json!({ "similar_to_jordan": false })));
                    }
                    Ok((EXIT_AFFIRMATIVE, to_value(&digits_for_similar(&m)?)))
                }
            }
        }
        Command::Hnf { matrix } => {
            let p: IntMatrix = parse_json(&read_source(matrix, stdin)?, "matrix")?;
            let (b, u) = hnf_decompose(&p)?;
            Ok((EXIT_AFFIRMATIVE, json!({ "B": to_value(&b), "U": to_value(&u) })))
        }
        Command::ThueMorse { k, zeta } => {
            let w = if *zeta { word_z(*k)? } else { word_w(*k)? };
            Ok((EXIT_AFFIRMATIVE, json!({ "word": render_pmz(&w) })))
        }
        Command::ZeroLang(z) => zero_cmd(z),
        Command::Obstruct { base, max_mod } => {
            let ns = system(base, stdin)?;
            let mut found = if ns.is_jordan() { cone_obstruction_jordan(&ns)? } else { None };
            if found.is_none() && *max_mod >= 2 {
                found = residue_obstruction(&ns, *max_mod)?;
            }
            Ok(match found {
                Some(o) => (EXIT_NEGATIVE, json!({ "obstruction": to_value(&o) })),
                None => (EXIT_UNKNOWN, json!({ "obstruction": Value::Null, "max_mod": max_mod })),
            })
        }
    }
}

fn represent_cmd(base: &BaseArgs, target: &str, cert_path: Option<&str>, max_len: usize, stdin: &mut dyn Read) -> Result<(i32, Value)> {
    let t = parse_vector(target)?;
    let m = base_matrix(base, stdin)?;
    let doc: Option<Value> = cert_path.map(|p| read_source(p, stdin).and_then(|s| parse_json(&s, "certificate"))).transpose()?;
    let word_value = |ns: &NumberSystem, w: &Word| json!({ "word": w.render(ns.digit_count()), "length": w.len(), "target": to_value(&t) });

    let construction = match &doc {
        Some(v) if v.get("conjugator").is_some() => Some(parse_json::<SimilarConstruction>(&v.to_string(), "construction")?),
        None if base.digits.is_none() && !m.is_upper_triangular() => Some(digits_for_similar(&m)?),
        _ => None,
    };
    if let Some(c) = construction {
        let w = represent_similar(&m, &c, &t)?;
        return Ok((EXIT_AFFIRMATIVE, word_value(&c.system(&m)?, &w)));
    }

    let (ns, cert) = match (&base.digits, &doc) {
        (Some(d), Some(v)) => {
            let ns = NumberSystem::new(m, parse_digits(d)?)?;
            let cert_doc = v.get("certificate").unwrap_or(v);
            (ns, parse_json::<Certificate>(&cert_doc.to_string(), "certificate")?)
        }
        (None, Some(v)) => {
            let digits: Vec<IntVector> = parse_json(&v.get("digits").ok_or_else(|| Error::input("--digits is required"))?.to_string(), "digits")?;
            let cert_doc = v.get("certificate").ok_or_else(|| Error::input("document has no certificate"))?;
            (NumberSystem::new(m, digits)?, parse_json::<Certificate>(&cert_doc.to_string(), "certificate")?)
        }
        (Some(d), None) => {
            let ns = NumberSystem::new(m, parse_digits(d)?)?;
            let ones = vec![crate::linalg::Int::from(1); ns.dim()];
            match search_certificate(&ns, &ones, max_len, max_len)? {
                Some(c) => (ns, c),
                None => return Ok((EXIT_UNKNOWN, json!({ "word": Value::Null, "max_len": max_len }))),
            }
        }
        (None, None) => {
            if !crate::linalg::is_jordan_block(&m) {
                return Err(Error::input("--digits is required"));
            }
            (pmz_system(m.rows())?, three_digit_certificate(m.rows())?)
        }
    };
    let mut rep = Representer::new(&ns, &cert)?;
    let w = rep.represent(&t)?;
    Ok((EXIT_AFFIRMATIVE, word_value(&ns, &w)))
}

fn zero_cmd(z: &ZeroCommand) -> Result<(i32, Value)> {
    match z {
        ZeroCommand::Check { word } => {
            let w = Word::parse(word, 2)?;
            let run = is_zero_word(&w)?;
            let oracle = zero_oracle(&w)?;
            let code = if run.member { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE };
            Ok((code, json!({ "member": run.member, "oracle": oracle, "peak_bits": run.peak_bits, "peak_first": run.peak_first.to_string() })))
        }
        ZeroCommand::Pump { p, report } => {
            let r = pumping_witness_check(*p)?;
            let v = to_value(&r);
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
                fs::write(path, text).map_err(|e| Error::input(format!("writing {}: {e}", path.display())))?;
            }
            Ok((if r.holds { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE }, v))
        }
        ZeroCommand::Space { max_log_len } => {
            if *max_log_len == 0 || *max_log_len > 24 {
                return Err(Error::input("--max-log-len must be in 1..=24"));
            }
            let lengths: Vec<usize> = (1..=*max_log_len).map(|e| 1usize << e).collect();
            let rows = space_profile(&lengths)?;
            let ok = rows.iter().all(|r| r.peak_bits <= r.bound);
            let table: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "length": r.length, "peak_bits": r.peak_bits, "peak_first": r.peak_first.to_string(), "bound": r.bound }))
                .collect();
            Ok((if ok { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE }, json!({ "rows": table, "within_bound": ok })))
        }
    }
}
