//! `eamod`: build modules for elementary abelian p-groups, query their Jordan
//! types and rank varieties, and run the verification suites.
//!
//! Exit codes: 0 success (or all checks pass), 1 failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eamod::gf::{Fel, FieldCtx};
use eamod::io::{module_from_json, module_to_json, parse_alpha, parse_element};
use eamod::modrep::{fitting_decompose, DecompositionStatus, EAModule};
use eamod::suite::{run_suite, Suite, SuiteParams, SuiteReport};
use eamod::symrep::{block_model_d1, d_r, PkPoly, SymContext};
use eamod::variety::{generic_type, green_witness, variety_points, zero_points};
use eamod::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "eamod", version, about = "Modules over elementary abelian p-groups: Jordan types, rank varieties, constructions")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a module and write it as an eamod-v1 file.
    Build(BuildArgs),
    /// Jordan type of u_a - 1 at one point.
    Jordan {
        module: PathBuf,
        /// Point, e.g. "1,1,w" or "2w+1,0".
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        ext: Option<u32>,
    },
    /// Generic Jordan type estimated from random points.
    Generic {
        module: PathBuf,
        #[arg(long, default_value_t = 4)]
        ext: u32,
        #[arg(long, default_value_t = 24)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Classify every projective point over the module's field.
    Variety {
        module: PathBuf,
        #[arg(long)]
        ext: Option<u32>,
        /// Target point set; only `pk` (zeros of p_k) is available.
        #[arg(long, value_parser = ["pk"])]
        poly: Option<String>,
        /// Compare the variety with the target.
        #[arg(long, requires = "poly")]
        compare: bool,
    },
    /// Exact projectivity test via the socle element.
    Projective { module: PathBuf },
    /// Randomized Fitting decomposition.
    Decompose {
        module: PathBuf,
        #[arg(long)]
        ext: Option<u32>,
        #[arg(long, default_value_t = 60)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Search for a variety point outside every proper base subspace.
    Green {
        module: PathBuf,
        #[arg(long)]
        ext: Option<u32>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ext: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Include wall time in the report (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    D1,
    Dr,
    Benson,
    Linear,
    Induce,
    Sum,
    Tensor,
    Wedge,
    Dual,
    Regular,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    /// Exterior power degree.
    #[arg(short = 'r', long = "r")]
    r: Option<usize>,
    /// Build over F_{p^ext}.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Spanning vectors for `linear`, separated by ';' (e.g. "1,1;0,w").
    #[arg(long, allow_hyphen_values = true)]
    span: Option<String>,
    /// Integer embedding vectors for `induce`, separated by ';'.
    #[arg(long)]
    embed: Option<String>,
    /// Input module file (induce, sum, tensor, wedge, dual).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Second module file (sum, tensor).
    #[arg(long)]
    with: Option<PathBuf>,
}

/// Outcome classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseFailure { .. } | Error::BadParams(_) | Error::Shape(_) | Error::NonPrime(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type CmdResult<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CmdResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> CmdResult<T> {
    v.clone().ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn load(path: &Path) -> CmdResult<EAModule> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    Ok(module_from_json(&text)?)
}

fn extend(m: EAModule, ext: Option<u32>) -> CmdResult<EAModule> {
    match ext {
        None => Ok(m),
        Some(e) => {
            let target = FieldCtx::new(m.p() as u64, e)?;
            Ok(m.change_field(&target)?)
        }
    }
}

/// Parse ';'-separated vectors in the point grammar, with error positions
/// relative to the whole string.
fn parse_vectors(field: &FieldCtx, text: &str) -> CmdResult<Vec<Vec<Fel>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        match parse_alpha(field, part) {
            Ok(p) => out.push(p.coords),
            Err(Error::ParseFailure { pos, msg }) => {
                return Err(Error::ParseFailure { pos: pos + offset, msg }.into());
            }
            Err(e) => return Err(e.into()),
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

fn parse_int_vectors(text: &str) -> CmdResult<Vec<Vec<u32>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|v| {
            v.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad integer {c:?} in --embed"))))
                .collect()
        })
        .collect()
}

fn build(args: &BuildArgs) -> CmdResult<EAModule> {
    let field = || -> CmdResult<FieldCtx> { Ok(FieldCtx::new(need(&args.p, "p")? as u64, args.ext)?) };
    let sym = || -> CmdResult<SymContext> { Ok(SymContext::new(need(&args.p, "p")?, need(&args.k, "k")?)?) };
    Ok(match args.kind {
        Kind::D1 => block_model_d1(&sym()?, &field()?)?,
        Kind::Dr => {
            let (s, r) = (sym()?, need(&args.r, "r")?);
            if r > s.dim_d1() {
                return usage(format!("r must be at most {}", s.dim_d1()));
            }
            d_r(&s, &field()?, r)?
        }
        Kind::Benson => {
            let f = field()?;
            let l = parse_element(&f, &need(&args.lambda, "lambda")?)?;
            let m = parse_element(&f, &need(&args.mu, "mu")?)?;
            EAModule::benson(&f, l, m)?
        }
        Kind::Linear => {
            let f = field()?;
            let k = need(&args.k, "k")?;
            let span = match &args.span {
                Some(s) if !s.trim().is_empty() => parse_vectors(&f, s)?,
                _ => Vec::new(),
            };
            EAModule::linear_variety_module(&f, k, &span)?
        }
        Kind::Regular => EAModule::regular(&field()?, need(&args.k, "k")?),
        Kind::Induce => {
            let m = load(&need(&args.input, "input")?)?;
            let embed = parse_int_vectors(&args.embed.clone().unwrap_or_default())?;
            m.induce(need(&args.k, "k")?, &embed)?
        }
        Kind::Sum | Kind::Tensor => {
            let a = load(&need(&args.input, "input")?)?;
            let b = load(&need(&args.with, "with")?)?;
            if args.kind == Kind::Sum { a.direct_sum(&b)? } else { a.tensor(&b)? }
        }
        Kind::Wedge => load(&need(&args.input, "input")?)?.wedge(need(&args.r, "r")?)?,
        Kind::Dual => load(&need(&args.input, "input")?)?.dual(),
    })
}

fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Key/value rows for flat JSON objects.
fn kv_rows(v: &Value) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
    if let Value::Object(map) = v {
        for (k, val) in map {
            let s = match val {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            rows.push(vec![k.clone(), s]);
        }
    }
    rows
}

fn emit(cli: &Cli, text: &str) -> CmdResult<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Runtime(e.to_string()))
        }
    }
}

fn emit_value(cli: &Cli, v: &Value, rows: Option<Vec<Vec<String>>>) -> CmdResult<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Csv => csv_string(&rows.unwrap_or_else(|| kv_rows(v))),
    };
    emit(cli, &text)
}

fn suite_value(rep: &SuiteReport) -> Value {
    serde_json::to_value(rep).expect("serializable")
}

fn verify(cli: &Cli, name: &str, params: SuiteParams, timing: bool) -> CmdResult<bool> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(name) {
            Some(s) => vec![s],
            None => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return usage(format!("unknown suite {name:?}; expected one of {} or all", names.join(", ")));
            }
        }
    };
    let mut reports = Vec::new();
    let mut ok = true;
    for s in suites {
        let start = Instant::now();
        let mut rep = run_suite(s, &params)?;
        let ms = start.elapsed().as_millis() as u64;
        eprintln!(
            "{}: {} ({} checks, {} ms)",
            s.name(),
            if s.exploratory() { "report" } else if rep.passed() { "pass" } else { "FAIL" },
            rep.checks.len(),
            ms
        );
        if timing {
            rep.wall_ms = Some(ms);
        }
        ok &= s.exploratory() || rep.passed();
        reports.push(rep);
    }
    let (value, rows) = if reports.len() == 1 {
        (suite_value(&reports[0]), reports[0].to_csv_rows())
    } else {
        let mut rows = Vec::new();
        for (i, r) in reports.iter().enumerate() {
            rows.extend(r.to_csv_rows().into_iter().skip(if i == 0 { 0 } else { 1 }));
        }
        (json!({"suites": reports.iter().map(suite_value).collect::<Vec<_>>(), "pass": ok}), rows)
    };
    emit_value(cli, &value, Some(rows))?;
    Ok(ok)
}

fn run(cli: &Cli) -> CmdResult<bool> {
    match &cli.command {
        Command::Build(args) => {
            let m = build(args)?;
            let valid = m.validate().is_ok();
            emit(cli, &(module_to_json(&m) + "\n"))?;
            eprintln!("dim {}, k {}, field {}, {}", m.dim(), m.k(), field_name(m.field()), if valid { "valid" } else { "INVALID" });
            Ok(valid)
        }
        Command::Jordan { module, alpha, ext } => {
            let m = extend(load(module)?, *ext)?;
            let a = parse_alpha(m.field(), alpha)?;
            if a.k() != m.k() {
                return usage(format!("--alpha has {} coordinates, module has k = {}", a.k(), m.k()));
            }
            let t = m.point_jordan_type(&a)?;
            let v = json!({
                "field": m.field().spec(),
                "alpha": a.coords.iter().map(|&c| m.field().format(c)).collect::<Vec<_>>(),
                "type": t.to_string(),
                "multiplicities": t.mult,
                "free": m.is_free_at(&a)?,
            });
            emit_value(cli, &v, None)?;
            Ok(true)
        }
        Command::Generic { module, ext, trials, seed } => {
            let m = load(module)?;
            let g = generic_type(&m, *ext, *trials, *seed)?;
            let v = json!({
                "status": g.status,
                "type": g.jordan.as_ref().map(|t| t.to_string()),
                "attained": g.attained,
                "samples": g.samples,
                "ext": g.ext,
                "seed": seed,
                "observed": g.observed.iter().map(|(t, c)| json!({"type": t.to_string(), "count": c})).collect::<Vec<_>>(),
            });
            emit_value(cli, &v, None)?;
            Ok(true)
        }
        Command::Variety { module, ext, poly, compare } => {
            let m = extend(load(module)?, *ext)?;
            let mut rep = variety_points(&m)?;
            let mut extra = None;
            if poly.is_some() {
                let zeros = zero_points(&PkPoly::new(m.p(), m.k()), m.field())?;
                if *compare {
                    rep = rep.with_target("pk", &zeros);
                } else {
                    extra = Some(zeros.iter().map(|p| p.format(m.field())).collect::<Vec<_>>());
                }
            }
            let mut v = rep.to_json();
            if let Some(z) = extra {
                v["target"] = json!("pk");
                v["target_points"] = json!(z);
            }
            emit_value(cli, &v, Some(rep.to_csv_rows()))?;
            Ok(true)
        }
        Command::Projective { module } => {
            let m = load(module)?;
            let (proj, free) = m.projective_test()?;
            emit_value(cli, &json!({"dim": m.dim(), "projective": proj, "free_summands": free}), None)?;
            Ok(true)
        }
        Command::Decompose { module, ext, trials, seed } => {
            let m = extend(load(module)?, *ext)?;
            let d = fitting_decompose(&m, *trials, *seed);
            let status = match d.status {
                DecompositionStatus::Decomposed => "Decomposed".to_string(),
                DecompositionStatus::NoSplitFound(_) => "NoSplitFound".to_string(),
            };
            let summands: Vec<Value> = d
                .summands
                .iter()
                .map(|s| {
                    let (proj, free) = s.projective_test().unwrap_or((false, 0));
                    json!({"dim": s.dim(), "projective": proj, "free_summands": free})
                })
                .collect();
            let v = json!({"status": status, "trials": trials, "seed": seed, "summands": summands});
            emit_value(cli, &v, None)?;
            Ok(true)
        }
        Command::Green { module, ext } => {
            let m = extend(load(module)?, *ext)?;
            let w = green_witness(&m)?;
            let v = json!({"field": m.field().spec(), "witness": w.map(|p| p.coords.iter().map(|&c| m.field().format(c)).collect::<Vec<_>>())});
            emit_value(cli, &v, None)?;
            Ok(true)
        }
        Command::Verify { suite, p, k, ext, seed, trials, timing } => {
            let params = SuiteParams { p: *p, k: *k, ext: *ext, seed: *seed, trials: *trials };
            verify(cli, suite, params, *timing)
        }
    }
}

fn field_name(f: &FieldCtx) -> String {
    format!("F_{}", f.q())
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("EAMOD_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("EAMOD_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err("EAMOD_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
