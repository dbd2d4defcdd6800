use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use creal_core::certificate::{certify, verify, CertRequest, Certificate};
use creal_core::oracles::{census, CensusConfig, CensusMode, Execution};
use creal_core::reality::{claim_check_theorem22, FormKind};
use creal_core::{with_field, Error, Field, FieldCtx, Mat, SearchConfig};

/// Decide conjugate reality in GL_n over fields with involution and emit
/// checkable certificates.
#[derive(Debug, Parser)]
#[command(name = "creal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Field spec: F4, F9, F16, Fp2:p=5, Q, Qi; append `:c=id` for the
    /// trivial involution.
    #[arg(long, global = true, default_value = "F4")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized fallback.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on search trials and brute-force enumeration sizes.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hermitian,
    Skew,
    Symmetric,
}

impl From<Kind> for FormKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Hermitian => FormKind::Hermitian,
            Kind::Skew => FormKind::SkewHermitian,
            Kind::Symmetric => FormKind::SymmetricBilinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Elements,
    Classes,
}

#[derive(Debug, Args)]
struct MatrixInput {
    /// Matrix literal such as "[[0,1];[1,1]]".
    matrix: Option<String>,
    /// Read the matrix literal from a file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide c-reality and print the duality pairing.
    Classify(MatrixInput),
    /// Build a conjugator S with S T S^-1 = (T^c)^-1.
    Witness(MatrixInput),
    /// Build a T-invariant nondegenerate form.
    Form {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, value_enum, default_value_t = Kind::Hermitian)]
        kind: Kind,
    },
    /// Re-check a certificate, optionally against a matrix.
    Verify {
        /// Certificate JSON produced by `classify`, `witness` or `form`.
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Classify every element or class of GL_n over a finite field.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Elements)]
        mode: Mode,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Compare the characteristic 2 symmetric-form criterion with a direct
    /// search (needs `:c=id` or a prime field of characteristic 2).
    Claimcheck(MatrixInput),
}

/// Outcome of a subcommand: rendered output and exit status.
struct Report {
    body: String,
    code: u8,
}

const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotCReal { .. } => EXIT_FALSE,
        Error::FactorizationUnsupported(_)
        | Error::CapExceeded { .. }
        | Error::UnsupportedField(_)
        | Error::Internal(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    }
}

fn read_matrix<F: Field>(f: &F, input: &MatrixInput) -> anyhow::Result<Mat<F::Elem>> {
    let literal = match (&input.matrix, &input.input) {
        (Some(m), None) => m.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (Some(_), Some(_)) => anyhow::bail!("give the matrix either inline or with --in, not both"),
        (None, None) => anyhow::bail!("no matrix given"),
    };
    Ok(Mat::parse(f, literal.trim())?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// The serialized name of a unit enum variant.
fn tag<T: serde::Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn rows_text(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", inner.join(";"))
}

fn certificate_text(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field: {}", cert.field);
    let _ = writeln!(out, "T: {}", rows_text(&cert.t));
    let _ = writeln!(out, "c-real: {}", cert.c_real);
    if !cert.paper_range {
        let _ = writeln!(out, "note: n = 1 lies outside the usual n >= 2 setting");
    }
    if let Some(w) = &cert.not_c_real_witness {
        let _ = writeln!(out, "unpaired divisor: {w}");
    }
    if let Some(pairing) = &cert.pairing {
        let _ = writeln!(out, "pairing:");
        for entry in pairing {
            let divs: Vec<String> = entry
                .divisors
                .iter()
                .map(|d| format!("({})^{} x{}", d.p, d.k, d.mult))
                .collect();
            let _ = writeln!(out, "  {}: {}", entry.kind, divs.join(" <-> "));
        }
    }
    if let Some(s) = &cert.s {
        let _ = writeln!(out, "S: {}", rows_text(s));
        let _ = writeln!(out, "S^2 = I: {}", cert.s_is_involution.unwrap_or(false));
        let methods: Vec<String> = cert.conj_methods.iter().map(tag).collect();
        let _ = writeln!(out, "S methods: {}", methods.join(", "));
    }
    if let Some(kind) = cert.h_kind {
        match &cert.h {
            Some(h) => {
                let _ = writeln!(out, "H ({}): {}", kind.name(), rows_text(h));
                let methods: Vec<String> = cert.form_methods.iter().map(tag).collect();
                let _ = writeln!(out, "H methods: {}", methods.join(", "));
            }
            None => {
                let _ = writeln!(out, "H ({}): none exists", kind.name());
            }
        }
    }
    out
}

fn run_with<F: Field>(f: &F, cli: &Cli) -> anyhow::Result<Report> {
    let common = &cli.common;
    let cfg = SearchConfig {
        seed: common.seed,
        cap: common.cap,
    };
    let render_cert = |cert: &Certificate, code: u8| Report {
        body: match common.format {
            Format::Json => json(cert),
            Format::Text => certificate_text(cert),
        },
        code,
    };
    match &cli.command {
        Command::Classify(input) => {
            let t = read_matrix(f, input)?;
            let cert = certify(f, &t, CertRequest::default(), &cfg)?;
            let code = if cert.c_real { 0 } else { EXIT_FALSE };
            Ok(render_cert(&cert, code))
        }
        Command::Witness(input) => {
            let t = read_matrix(f, input)?;
            let req = CertRequest {
                conjugator: true,
                form: None,
            };
            let cert = certify(f, &t, req, &cfg)?;
            let code = if cert.c_real { 0 } else { EXIT_FALSE };
            Ok(render_cert(&cert, code))
        }
        Command::Form { input, kind } => {
            let t = read_matrix(f, input)?;
            let req = CertRequest {
                conjugator: false,
                form: Some((*kind).into()),
            };
            let cert = certify(f, &t, req, &cfg)?;
            let code = if cert.h.is_some() { 0 } else { EXIT_FALSE };
            Ok(render_cert(&cert, code))
        }
        Command::Verify { cert, input } => {
            let text = std::fs::read_to_string(cert)
                .with_context(|| format!("reading {}", cert.display()))?;
            let parsed: Certificate =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let t = match (&input.matrix, &input.input) {
                (None, None) => None,
                _ => Some(read_matrix(f, input)?),
            };
            let v = verify(f, &parsed, t.as_ref())?;
            let body = match common.format {
                Format::Json => json(&v),
                Format::Text => {
                    let mut out = String::new();
                    for c in &v.checks {
                        let _ = writeln!(out, "{:<4} {}", if c.ok { "ok" } else { "FAIL" }, c.name);
                    }
                    let _ = writeln!(
                        out,
                        "certificate {}",
                        if v.ok { "valid" } else { "INVALID" }
                    );
                    out
                }
            };
            Ok(Report {
                body,
                code: if v.ok { 0 } else { EXIT_FALSE },
            })
        }
        Command::Census {
            n,
            mode,
            sequential,
        } => {
            let execution = if *sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            let ccfg = CensusConfig {
                mode: match mode {
                    Mode::Elements => CensusMode::Elements,
                    Mode::Classes => CensusMode::Classes,
                },
                search: cfg,
                execution,
                ..CensusConfig::default()
            };
            let r = census(f, *n, &ccfg)?;
            let body = match common.format {
                Format::Json => json(&r),
                Format::Text => r.to_table(),
            };
            let code = if r.disagreements.is_empty() {
                0
            } else {
                EXIT_FALSE
            };
            Ok(Report { body, code })
        }
        Command::Claimcheck(input) => {
            let t = read_matrix(f, input)?;
            let r = claim_check_theorem22(f, &t, &cfg)?;
            let body = match common.format {
                Format::Json => json(&r),
                Format::Text => format!(
                    "{} {} divisors [{}] predicted={} ground_truth={} {}\n",
                    r.field,
                    r.matrix,
                    r.elementary_divisors.join(", "),
                    r.predicted,
                    r.ground_truth
                        .map_or_else(|| "unknown".to_string(), |g| g.to_string()),
                    r.verdict()
                ),
            };
            Ok(Report { body, code: 0 })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> anyhow::Result<()> {
    match &cli.common.out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = FieldCtx::parse(&cli.common.field)
        .map_err(anyhow::Error::from)
        .and_then(|ctx| with_field!(&ctx, |f| run_with(f, &cli)));
    match result.and_then(|report| emit(&cli, &report.body).map(|()| report.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Error>().map_or(EXIT_INPUT, exit_code);
            ExitCode::from(code)
        }
    }
}
