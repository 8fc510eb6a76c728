//! `gso`: build, verify and tabulate Galois self-orthogonal MDS codes.
//!
//! Exit codes: 0 verified, 1 negative verdict, 2 usage or precondition error,
//! 3 internal verification failure.

mod doc;

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use gso_core::codes::{is_mds, CertifiedCode, MdsStatus};
use gso_core::construct::{
    self, construct_affine, construct_coset_sum, construct_distinct, construct_hermitian_lift,
    construct_q_plus_1, construct_theta_blocks, effective_e, enumerate_params, subcode,
    transfer_eprime, ConstructError,
};
use gso_core::gf::{table_limit_from_env, FieldCtx, Fe};
use gso_core::orth::{gram_report_grs, multipliers_to_lambda};
use gso_core::quantum::{ea_singleton_check, eaqecc_params, propagate, HullTarget, SingletonVerdict};
use gso_core::Method;
use serde::Serialize;
use thiserror::Error;

use doc::{CodeSpecDocument, Meta};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("Malformed: {0}")]
    Malformed(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Verification(String),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 3,
            _ => 2,
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(err: ConstructError) -> Self {
        match err {
            ConstructError::VerificationFailed { .. } => CliError::Verification(err.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "gso", version, about = "Galois self-orthogonal GRS and EGRS MDS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters and, with --e, the subgroup of (p^e+1)-th powers.
    Field(FieldArgs),
    /// Build a certified code and print its JSON document.
    Construct(ConstructArgs),
    /// Gram check of a JSON document.
    Verify(VerifyArgs),
    /// CSV table of (n, kMax) rows.
    Enumerate(EnumerateArgs),
    /// Propagate to a target hull dimension and derive EAQECC parameters.
    Quantum(QuantumArgs),
}

#[derive(Args)]
struct FieldOpts {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
}

impl FieldOpts {
    fn ctx(&self) -> Result<Arc<FieldCtx>, CliError> {
        FieldCtx::with_limit(self.p, self.m, table_limit_from_env())
            .map(Arc::new)
            .map_err(|err| CliError::Precondition(err.to_string()))
    }
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldOpts,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    method: Method,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    /// Number of θ-blocks.
    #[arg(long)]
    r: Option<usize>,
    /// Comma-separated block sizes for coset sums.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    /// Affine relation σ^e(x) = a·x + b, as packed integers.
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long, default_value_t = 0)]
    b: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Base document for transfer and subcode.
    #[arg(long, alias = "spec")]
    base: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    field: FieldOpts,
    /// Restrict to these e; defaults to 1..m−1.
    #[arg(long, value_delimiter = ',')]
    e: Option<Vec<u32>>,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
struct QuantumArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    rule: u8,
    #[arg(long, default_value_t = 0)]
    i: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the propagated code document.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Field(args) => cmd_field(&args, &mut out),
        Command::Construct(args) => cmd_construct(&args, &mut out),
        Command::Verify(args) => cmd_verify(&args, &mut out),
        Command::Enumerate(args) => cmd_enumerate(&args, &mut out),
        Command::Quantum(args) => cmd_quantum(&args, &mut out),
    }
}

fn check_e(ctx: &FieldCtx, e: u32) -> Result<(), CliError> {
    if e >= ctx.m() {
        return Err(CliError::Precondition(format!(
            "PreconditionViolated: need 0 <= e < m = {}, got e = {e}",
            ctx.m()
        )));
    }
    Ok(())
}

fn cmd_field(args: &FieldArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let ctx = args.field.ctx()?;
    writeln!(out, "p={} m={} q={}", ctx.p(), ctx.m(), ctx.q())?;
    writeln!(out, "modulus={:?}", ctx.modulus())?;
    writeln!(out, "w={}", ctx.w().enc())?;
    if let Some(e) = args.e {
        check_e(&ctx, e)?;
        let h = ctx.h_subgroup(e);
        writeln!(
            out,
            "e={e} s={} index={} order={} generator={} case={:?}",
            h.s, h.index, h.order, h.generator.enc(), h.case
        )?;
    }
    Ok(0)
}

fn required<T: Copy>(value: Option<T>, flag: &str, method: Method) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --method {method}")))
}

fn build(args: &ConstructArgs, ctx: &Arc<FieldCtx>) -> Result<CertifiedCode, CliError> {
    let (e, k, method) = (args.e, args.k, args.method);
    check_e(ctx, e)?;
    let elem = |x: u32| {
        if ctx.contains(Fe(x)) {
            Ok(Fe(x))
        } else {
            Err(CliError::Precondition(format!("NotInField: element {x} is outside the field")))
        }
    };
    let code = match method {
        Method::Affine => {
            let n = required(args.n, "n", method)?;
            construct_affine(ctx, e, elem(args.a)?, elem(args.b)?, n, k)?
        }
        Method::Coset => {
            let part = args.partition.as_ref().ok_or_else(|| {
                CliError::Usage("--partition is required for --method coset".into())
            })?;
            construct_coset_sum(ctx, e, part, k)?
        }
        Method::Distinct => construct_distinct(ctx, e, required(args.n, "n", method)?, k)?,
        Method::Hermitian => {
            construct_hermitian_lift(ctx, e, required(args.n, "n", method)?, k, None)?
        }
        Method::Theta => construct_theta_blocks(ctx, e, required(args.r, "r", method)?, k, args.seed)?,
        Method::QPlus1 | Method::QPlus1Iso => construct_q_plus_1(ctx, e, k)?,
        Method::Transfer | Method::Subcode => {
            let path = args.base.as_deref().ok_or_else(|| {
                CliError::Usage(format!("--base is required for --method {method}"))
            })?;
            let base_doc = CodeSpecDocument::read(path)?;
            let spec = base_doc.to_spec()?;
            if *spec.ctx != **ctx {
                return Err(CliError::Precondition(
                    "PreconditionViolated: the base document is over a different field".into(),
                ));
            }
            let base = construct::certify(spec, base_doc.e, base_doc.meta.lambda_degree)
                .map_err(|_| {
                    CliError::Precondition("NotSelfOrthogonal: the base code fails its Gram check".into())
                })?;
            if method == Method::Subcode {
                subcode(&base, k)?
            } else {
                transfer_eprime(&base, e, k)?
            }
        }
    };
    if let Some(n) = args.n {
        if code.n() != n {
            return Err(CliError::Precondition(format!(
                "PreconditionViolated: --method {method} builds length {}, not {n}",
                code.n()
            )));
        }
    }
    Ok(code)
}

fn cmd_construct(args: &ConstructArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let ctx = args.field.ctx()?;
    let code = build(args, &ctx)?;
    let seed = (args.method == Method::Theta).then_some(args.seed);
    let json = CodeSpecDocument::from_certified(&code, args.method.name(), seed).to_json();
    eprintln!(
        "[{}, {}]_{} e={} hullDim={} mds={:?}",
        code.n(),
        code.k(),
        ctx.q(),
        code.e,
        code.hull_dim,
        code.mds
    );
    emit(&json, args.out.as_deref(), out)?;
    Ok(0)
}

fn emit(json: &str, path: Option<&str>, out: &mut impl Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, format!("{json}\n"))?,
        None => writeln!(out, "{json}")?,
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let doc = CodeSpecDocument::read(&args.spec)?;
    let spec = doc.to_spec()?;
    let e = args.e.unwrap_or(doc.e);
    check_e(&spec.ctx, e)?;
    let report = gram_report_grs(&spec, e);
    let mds = match is_mds(&spec.to_code(), 0) {
        MdsStatus::Structural => "structural".to_string(),
        other => format!("{other:?}"),
    };
    writeln!(out, "isZero={}", report.is_zero)?;
    writeln!(out, "hullDim={}", report.hull_dim)?;
    writeln!(out, "mds={mds}")?;
    let ee = effective_e(spec.ctx.m(), e);
    if let Ok(Some(wit)) = multipliers_to_lambda(&spec, ee) {
        writeln!(out, "lambdaDegree={}", wit.lam.degree().unwrap_or(0))?;
    }
    Ok(if report.is_zero { 0 } else { 1 })
}

#[derive(Serialize)]
struct CsvRow {
    p: u32,
    m: u32,
    e: u32,
    n: usize,
    k_max: usize,
    method: &'static str,
    verified: bool,
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let ctx = args.field.ctx()?;
    let es: Vec<u32> = match &args.e {
        Some(list) => list.clone(),
        None => (1..ctx.m()).collect(),
    };
    for &e in &es {
        check_e(&ctx, e)?;
    }
    let mut writer = csv::Writer::from_writer(out);
    let mut sorted = es.clone();
    sorted.sort_unstable();
    sorted.dedup();
    for e in sorted {
        for row in enumerate_params(&ctx, e, args.max_n) {
            writer
                .serialize(CsvRow {
                    p: row.p,
                    m: row.m,
                    e: row.e,
                    n: row.n,
                    k_max: row.k_max,
                    method: row.method.name(),
                    verified: row.verified,
                })
                .map_err(|err| CliError::Io(err.into()))?;
        }
    }
    writer.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct QuantumRow {
    rule: u8,
    i: usize,
    l: usize,
    n: usize,
    k: usize,
    form: u8,
    qn: u64,
    qk: u64,
    qd: u64,
    qc: u64,
    q: u128,
    singleton: &'static str,
    mds: bool,
}

fn cmd_quantum(args: &QuantumArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let doc = CodeSpecDocument::read(&args.spec)?;
    let spec = doc.to_spec()?;
    let q = spec.ctx.q() as u128;
    let base = construct::certify(spec, doc.e, doc.meta.lambda_degree).map_err(|_| {
        CliError::Precondition("NotSelfOrthogonal: the base code fails its Gram check".into())
    })?;
    let target = HullTarget { rule: args.rule, i: args.i, l: args.l };
    let hull = propagate(&base, target, args.seed).map_err(|err| CliError::Precondition(err.to_string()))?;
    let measured = gram_report_grs(&hull.spec, hull.e).hull_dim;
    if measured != args.l {
        return Err(CliError::Verification(format!(
            "VerificationFailed: hull dimension {measured} differs from the target {}",
            args.l
        )));
    }
    let (n, k) = (hull.n(), hull.k());
    let (one, two) = eaqecc_params(n as u64, k as u64, args.l as u64, q)
        .map_err(|err| CliError::Precondition(err.to_string()))?;
    let mut writer = csv::Writer::from_writer(out);
    let mut all_pass = true;
    for (form, params) in [(1u8, one), (2u8, two)] {
        let verdict = ea_singleton_check(&params);
        all_pass &= verdict.passed();
        let (singleton, mds) = match verdict {
            SingletonVerdict::Pass { mds } => ("pass", mds),
            SingletonVerdict::Fail(which) => (
                match which {
                    gso_core::quantum::SingletonBound::First => "fail-first",
                    gso_core::quantum::SingletonBound::Second => "fail-second",
                    gso_core::quantum::SingletonBound::Third => "fail-third",
                },
                false,
            ),
        };
        writer
            .serialize(QuantumRow {
                rule: args.rule,
                i: args.i,
                l: args.l,
                n,
                k,
                form,
                qn: params.n,
                qk: params.k,
                qd: params.d,
                qc: params.c,
                q,
                singleton,
                mds,
            })
            .map_err(|err| CliError::Io(err.into()))?;
    }
    writer.flush()?;
    if let Some(path) = &args.out {
        let meta = Meta {
            method: format!("rule{}", args.rule),
            seed: Some(args.seed),
            lambda_degree: None,
        };
        std::fs::write(path, CodeSpecDocument::from_spec(&hull.spec, hull.e, meta).to_json() + "\n")?;
    }
    Ok(if all_pass { 0 } else { 1 })
}
