//! Command-line front end. Every invocation prints one JSON document on stdout.

pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::biquotient::{family3_ring, formality_obstruction, freeness_check, ActionMatrix};
use crate::classify::{check_elliptic_inequalities, classify_dim5_ring, classify_dim6, EllipticProfile};
use crate::error::Error;
use crate::graded::{Presentation, QuotientAlgebra};
use crate::model::{borel_model, build_model, RankTable};
use crate::parse::{parse_presentation, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sullivan", version, about = "Minimal models and cohomology-ring classification over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal model of the ring through a degree
    Model {
        file: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
    /// Rational homotopy ranks through a degree
    Ranks {
        file: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
    /// Ellipticity inequalities for ranks given from degree 2 upward
    Elliptic {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
    },
    /// Classify a Poincaré duality ring of dimension 5 or 6
    Classify {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(5..=6))]
        dim: u32,
    },
    /// Poincaré pairing check in a formal dimension
    Duality {
        file: PathBuf,
        #[arg(long)]
        dim: u32,
    },
    /// Freeness of a T^3 action, or the family-3 ring and its obstruction
    Biquotient {
        /// a1,a2,a3,b1,b2,b3,c1,c2,c3
        #[arg(long, allow_hyphen_values = true, conflicts_with = "family3", required_unless_present = "family3")]
        matrix: Option<String>,
        /// b1,c1,c2
        #[arg(long, allow_hyphen_values = true)]
        family3: Option<String>,
        #[arg(long, requires = "family3")]
        obstruction: bool,
    },
    /// Two-stage model and regularity certificate of an evenly generated ring
    Borel { file: PathBuf },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    kind: String,
    message: String,
    line: Option<usize>,
    column: Option<usize>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, kind: "UsageError".into(), message: message.into(), line: None, column: None }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let column = match &e {
            ParseError::Syntax { column, .. } | ParseError::UnknownGenerator { column, .. } => Some(*column),
            _ => None,
        };
        let line = Some(e.line()).filter(|&l| l > 0);
        Failure { code: EXIT_USAGE, kind: e.kind().into(), message: e.to_string(), line, column }
    }
}

/// Exit status for a library error: 3 for a failed internal verification, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ReductionMismatch(_) => EXIT_VERIFICATION,
        _ => EXIT_PRECONDITION,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = exit_code(&e);
        let kind = format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
        Failure { code, kind, message: e.to_string(), line: None, column: None }
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Input {
    digest_source: Vec<u8>,
}

fn read_presentation(path: &PathBuf, input: &mut Input) -> Result<Presentation, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    input.digest_source = bytes.clone();
    let text = String::from_utf8(bytes).map_err(|_| Failure::usage(format!("{} is not UTF-8", path.display())))?;
    Ok(parse_presentation(&text)?)
}

fn with_dim(p: Presentation, dim: u32) -> Result<Presentation, Failure> {
    match p.formal_dimension() {
        Some(n) if n != dim => Err(Failure {
            code: EXIT_PRECONDITION,
            kind: "DimensionMismatch".into(),
            message: format!("file declares dim = {n} but --dim {dim} was given"),
            line: None,
            column: None,
        }),
        _ => Ok(p.with_formal_dimension(Some(dim))),
    }
}

fn int_list(s: &str, len: usize, flag: &str) -> Result<Vec<BigInt>, Failure> {
    let v: Vec<BigInt> = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("--{flag} expects {len} comma-separated integers, got `{s}`")))?;
    if v.len() != len {
        return Err(Failure::usage(format!("--{flag} expects {len} comma-separated integers, got {}", v.len())));
    }
    Ok(v)
}

fn execute(cmd: &Command, input: &mut Input) -> Result<Value, Failure> {
    match cmd {
        Command::Model { file, max_degree } | Command::Ranks { file, max_degree } => {
            let p = read_presentation(file, input)?;
            let q = QuotientAlgebra::with_default_cap(p);
            let (pm, ranks) = build_model(&q, *max_degree)?;
            Ok(match cmd {
                Command::Model { .. } => report::model(&pm, &ranks),
                _ => json!({ "ranks": report::ranks(&ranks) }),
            })
        }
        Command::Elliptic { dim, ranks } => {
            let mut counts = vec![0, 0];
            counts.extend(ranks);
            let profile = EllipticProfile::new(*dim, RankTable::from_counts(&counts));
            let (even, odd) = profile.weighted_sums();
            Ok(json!({
                "dimension": dim,
                "ranks": report::ranks(&profile.ranks),
                "even_sum": even,
                "odd_sum": odd,
                "even_bound": dim,
                "odd_bound": (2 * *dim as u64).saturating_sub(1),
                "passes": check_elliptic_inequalities(&profile),
            }))
        }
        Command::Classify { file, dim } => {
            let p = with_dim(read_presentation(file, input)?, *dim)?;
            let q = QuotientAlgebra::with_default_cap(p);
            let c = if *dim == 5 { classify_dim5_ring(&q)? } else { classify_dim6(&q)? };
            Ok(report::classification(&c, &q))
        }
        Command::Duality { file, dim } => {
            let p = with_dim(read_presentation(file, input)?, *dim)?;
            Ok(report::duality(&QuotientAlgebra::with_default_cap(p), *dim))
        }
        Command::Biquotient { matrix: Some(m), .. } => {
            let entries = int_list(m, 9, "matrix")?;
            let a = ActionMatrix::from_entries(&entries).expect("nine entries");
            let rows: Vec<Vec<Value>> = a.entries.iter().map(|r| r.iter().map(report::integer).collect()).collect();
            let mut v = report::freeness(&freeness_check(&a));
            v["matrix"] = json!(rows);
            Ok(v)
        }
        Command::Biquotient { family3: Some(f), obstruction, .. } => {
            let params = int_list(f, 3, "family3")?;
            let small: Vec<i64> = params
                .iter()
                .map(|b| i64::try_from(b).map_err(|_| Failure::usage("--family3 parameters must fit in 64 bits")))
                .collect::<Result<_, _>>()?;
            let r = family3_ring(small[0], small[1], small[2]);
            let q = r.quotient();
            let alg = r.presentation.algebra();
            let mut v = json!({
                "b1": small[0],
                "c1": small[1],
                "c2": small[2],
                "relations": r.presentation.relations().iter().map(|p| alg.display(p)).collect::<Vec<_>>(),
                "hilbert": q.hilbert_coefficients(),
                "pairing_nondegenerate": q.poincare_pairing_check(6),
                "action": report::freeness(&freeness_check(&ActionMatrix::family3(small[0], small[1], small[2]))),
            });
            if *obstruction {
                v["obstruction"] = report::obstruction(&formality_obstruction(&r)?, alg);
            }
            Ok(v)
        }
        Command::Biquotient { .. } => Err(Failure::usage("biquotient needs --matrix or --family3")),
        Command::Borel { file } => {
            let p = read_presentation(file, input)?;
            Ok(report::borel(&borel_model(&p)?))
        }
    }
}

fn document(args: &[String], digest: &str, key: &str, payload: Value) -> String {
    let doc = json!({
        "command": args,
        "input_digest": digest,
        "tool_version": env!("CARGO_PKG_VERSION"),
        key: payload,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run(argv: &[String]) -> Outcome {
    let args: Vec<String> = argv.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                let f = Failure::usage(text.lines().next().unwrap_or("usage error").trim_start_matches("error: "));
                Outcome { stdout: failure_document(&args, &hex_digest(args.join("\0").as_bytes()), &f), stderr: text, code }
            };
        }
    };
    let mut input = Input { digest_source: args.join("\0").into_bytes() };
    let result = execute(&cli.command, &mut input);
    let digest = hex_digest(&input.digest_source);
    match result {
        Ok(v) => Outcome { stdout: document(&args, &digest, "result", v), stderr: String::new(), code: EXIT_OK },
        Err(f) => {
            let stderr = format!("error: {}\n", f.message);
            Outcome { stdout: failure_document(&args, &digest, &f), stderr, code: f.code }
        }
    }
}

fn failure_document(args: &[String], digest: &str, f: &Failure) -> String {
    let mut e = json!({ "kind": f.kind, "message": f.message, "exit_code": f.code });
    if let Some(l) = f.line {
        e["line"] = json!(l);
    }
    if let Some(c) = f.column {
        e["column"] = json!(c);
    }
    document(args, digest, "error", e)
}
