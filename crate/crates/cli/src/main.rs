//! Command-line front end: compute classical and q-deformed Genocchi values,
//! run the identity-verification suites, and inspect Dirichlet characters.
//!
//! Exit codes: 0 success / all verdicts pass; 1 at least one failing verdict;
//! 2 configuration or input-file error; 3 computation error; 4 grid guard
//! exceeded.

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{Map, Value};

use genocchi::classical;
use genocchi::qgenocchi::{self, QGenocchiParams, Shift, Verdict, Weight};
use genocchi::rational::Rational;
use genocchi::scalar::{Backend, QParam};
use genocchi::verify;
use genocchi::DirichletCharacter;

/// Refuse q/hq/barnes grids whose character window has more than this many
/// lattice points (d^r) unless --guard raises the bound.
const DEFAULT_GUARD: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "qgenocchi",
    version,
    about = "Exact q-Genocchi families attached to Dirichlet characters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical (q-free) Genocchi values G^(r)_{n,chi}(x)
    Classical(ClassicalArgs),
    /// Normalized order-r q-values g_n = G_{n+r}/(C(n+r,r) r!)
    Q(ValueArgs),
    /// Normalized (h, r) weighted q-values
    Hq(ValueArgs),
    /// Normalized Barnes-type weighted q-values
    Barnes(ValueArgs),
    /// Run an identity-verification suite
    Verify(VerifyArgs),
    /// Dirichlet character utilities
    Char(CharArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Symbolic,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CharacterArgs {
    /// Character modulus (odd)
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// Built-in character kind: principal | quadratic
    #[arg(long = "char", default_value = "principal")]
    char_kind: String,
    /// JSON character specification file (overrides --char/--d)
    #[arg(long = "char-file")]
    char_file: Option<String>,
}

#[derive(Args)]
struct ClassicalArgs {
    /// Single index n
    #[arg(long)]
    n: Option<usize>,
    /// Table over 0..=n-max
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[command(flatten)]
    chi: CharacterArgs,
    /// Argument shift x as a rational
    #[arg(long, default_value = "0")]
    x: String,
    /// Backend: exact | float
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ValueArgs {
    /// Single index n
    #[arg(long)]
    n: Option<u32>,
    /// Table over 0..=n-max
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Weight exponent h (hq only)
    #[arg(long)]
    h: Option<i64>,
    /// Comma-separated Barnes weights (barnes only)
    #[arg(long)]
    w: Option<String>,
    #[command(flatten)]
    chi: CharacterArgs,
    /// Nonnegative integer shift x (a real is allowed in the float backend)
    #[arg(long, default_value = "0")]
    x: String,
    /// q value: a rational like 1/2 (exact) or a complex like 0.3+0.1i (float)
    #[arg(long)]
    q: Option<String>,
    /// Backend: exact | symbolic | float (inferred from --q when absent)
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Lattice guard: refuse d^r above this
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: pascal | bridge | distribution | shift | symmetry | limit |
    /// oracle | vanishing | prime-scan
    identity: String,
    /// Restrict to one modulus (grid suites)
    #[arg(long)]
    d: Option<u64>,
    /// Restrict to one order (limit suite)
    #[arg(long)]
    r: Option<u32>,
    /// Bound for the pascal / bridge / prime-scan suites
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Tolerance label recorded in float-mode reports
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CharArgs {
    #[command(subcommand)]
    action: CharAction,
}

#[derive(Subcommand)]
enum CharAction {
    /// List all characters of the given odd modulus
    Enumerate {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate a JSON character specification file
    Validate { file: String },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn compute(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 3,
        }
    }

    fn guard(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout with success; real usage
            // errors map to the config exit code
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Classical(args) => cmd_classical(args),
        Command::Q(args) => cmd_value(args, Family::OrderR),
        Command::Hq(args) => cmd_value(args, Family::WeightedH),
        Command::Barnes(args) => cmd_value(args, Family::Barnes),
        Command::Verify(args) => cmd_verify(args),
        Command::Char(args) => cmd_char(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn resolve_character(args: &CharacterArgs) -> Result<DirichletCharacter, CliError> {
    if let Some(path) = &args.char_file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {}", path, e)))?;
        return DirichletCharacter::from_json_str(&text).map_err(|e| CliError::config(e.to_string()));
    }
    match args.char_kind.as_str() {
        "principal" => DirichletCharacter::principal(args.d).map_err(|e| CliError::config(e.to_string())),
        "quadratic" => DirichletCharacter::quadratic(args.d).map_err(|e| CliError::config(e.to_string())),
        other => Err(CliError::config(format!(
            "unknown character kind {:?} (expected principal or quadratic)",
            other
        ))),
    }
}

fn parse_q(text: &str) -> Result<QParam, CliError> {
    if let Ok(r) = Rational::from_str(text) {
        return QParam::rational(r).map_err(|e| CliError::config(e.to_string()));
    }
    if let Ok(c) = Complex64::from_str(text) {
        return QParam::complex(c).map_err(|e| CliError::config(e.to_string()));
    }
    Err(CliError::config(format!(
        "cannot parse q value {:?} (expected p/q or a+bi)",
        text
    )))
}

fn index_range<T: Copy>(n: Option<T>, n_max: Option<T>) -> Result<(T, bool), CliError> {
    match (n, n_max) {
        (Some(_), Some(_)) => Err(CliError::config("--n and --n-max are mutually exclusive")),
        (Some(n), None) => Ok((n, false)),
        (None, Some(m)) => Ok((m, true)),
        (None, None) => Err(CliError::config("one of --n or --n-max is required")),
    }
}

fn emit_table(
    header: &[&str],
    rows: Vec<Vec<String>>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let bytes = match output.format {
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).map_err(|e| CliError::compute(e.to_string()))?;
            for row in rows {
                w.write_record(&row).map_err(|e| CliError::compute(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::compute(e.to_string()))?
        }
        FormatArg::Json => {
            let objects: Vec<Value> = rows
                .into_iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (key, value) in header.iter().zip(row) {
                        obj.insert((*key).to_string(), Value::String(value));
                    }
                    Value::Object(obj)
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&objects).expect("serializable");
            text.push('\n');
            text.into_bytes()
        }
    };
    write_out(&bytes, output)
}

fn write_out(bytes: &[u8], output: &OutputArgs) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| CliError::compute(format!("cannot write {}: {}", path, e))),
        None => {
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| CliError::compute(e.to_string()))
        }
    }
}

fn cmd_classical(args: ClassicalArgs) -> Result<u8, CliError> {
    let chi = resolve_character(&args.chi)?;
    let x = Rational::from_str(&args.x)
        .map_err(|_| CliError::config(format!("cannot parse x value {:?}", args.x)))?;
    if args.r == 0 {
        return Err(CliError::config("order r must be >= 1"));
    }
    let backend = match args.backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
        BackendArg::Symbolic => {
            return Err(CliError::config(
                "classical values contain no q; use --backend exact or float",
            ))
        }
    };
    let (bound, table) = index_range(args.n, args.n_max)?;
    let indices: Vec<usize> = if table { (0..=bound).collect() } else { vec![bound] };
    let mut rows = Vec::with_capacity(indices.len());
    for n in indices {
        let value = classical::generalized_genocchi(n, args.r, &chi, &x, backend)
            .map_err(|e| CliError::compute(e.to_string()))?;
        rows.push(vec![
            n.to_string(),
            args.r.to_string(),
            chi.modulus().to_string(),
            chi.label(),
            x.to_string(),
            value.to_string(),
        ]);
    }
    emit_table(&["n", "r", "d", "chi", "x", "value"], rows, &args.output)?;
    Ok(0)
}

enum Family {
    OrderR,
    WeightedH,
    Barnes,
}

fn parse_weights(text: &str, float_backend: bool) -> Result<Vec<Weight>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            if let Ok(v) = part.parse::<u64>() {
                return Ok(Weight::Int(v));
            }
            if float_backend {
                if let Ok(r) = Rational::from_str(part) {
                    return Ok(Weight::Rat(r));
                }
            }
            Err(CliError::config(format!("cannot parse weight {:?}", part)))
        })
        .collect()
}

fn cmd_value(args: ValueArgs, family: Family) -> Result<u8, CliError> {
    let chi = resolve_character(&args.chi)?;
    let q = match (&args.backend, &args.q) {
        (Some(BackendArg::Symbolic), None) => QParam::symbolic(),
        (Some(BackendArg::Symbolic), Some(_)) => {
            return Err(CliError::config("the symbolic backend takes no --q"))
        }
        (Some(BackendArg::Exact), Some(text)) => {
            let q = parse_q(text)?;
            match q.backend() {
                Backend::Exact => q,
                _ => return Err(CliError::config("--backend exact needs a rational --q like 1/2")),
            }
        }
        (Some(BackendArg::Float), Some(text)) => match parse_q(text)? {
            QParam::Rational(r) => QParam::complex(Complex64::new(
                genocchi::rational::rational_to_f64(&r),
                0.0,
            ))
            .map_err(|e| CliError::config(e.to_string()))?,
            q => q,
        },
        (Some(_), None) => return Err(CliError::config("this backend requires --q")),
        (None, Some(text)) => parse_q(text)?,
        (None, None) => QParam::symbolic(),
    };
    let float_backend = q.backend() == Backend::Float;
    let x = if let Ok(v) = args.x.parse::<u32>() {
        Shift::Int(v)
    } else if float_backend {
        let v: f64 = args
            .x
            .parse()
            .map_err(|_| CliError::config(format!("cannot parse x value {:?}", args.x)))?;
        Shift::Real(v)
    } else {
        return Err(CliError::config(
            "x must be a nonnegative integer in exact and symbolic backends",
        ));
    };
    if args.r == 0 {
        return Err(CliError::config("order r must be >= 1"));
    }
    let lattice = (chi.modulus() as f64).powi(args.r as i32);
    if lattice > args.guard as f64 {
        return Err(CliError::guard(format!(
            "character window has d^r = {}^{} points, above the guard {}",
            chi.modulus(),
            args.r,
            args.guard
        )));
    }
    let weights = match (&family, &args.w) {
        (Family::Barnes, Some(text)) => Some(parse_weights(text, float_backend)?),
        (Family::Barnes, None) => return Err(CliError::config("barnes requires --w")),
        (_, Some(_)) => return Err(CliError::config("only barnes takes --w")),
        (_, None) => None,
    };
    let h = match (&family, args.h) {
        (Family::WeightedH, Some(h)) => Some(h),
        (Family::WeightedH, None) => return Err(CliError::config("hq requires --h")),
        (_, Some(_)) => return Err(CliError::config("only hq takes --h")),
        (_, None) => None,
    };

    let (bound, table) = index_range(args.n, args.n_max)?;
    let indices: Vec<u32> = if table { (0..=bound).collect() } else { vec![bound] };
    let mut rows = Vec::with_capacity(indices.len());
    for n in indices {
        let params = QGenocchiParams {
            n,
            r: args.r,
            h,
            chi: chi.clone(),
            x: x.clone(),
            q: q.clone(),
            weights: weights.clone(),
        };
        let value = match family {
            Family::OrderR => qgenocchi::q_genocchi_r(&params),
            Family::WeightedH => qgenocchi::q_genocchi_hr(&params),
            Family::Barnes => qgenocchi::barnes_q_genocchi(&params),
        }
        .map_err(|e| CliError::compute(e.to_string()))?;
        let mut row = vec![n.to_string(), args.r.to_string()];
        if let Some(h) = h {
            row.push(h.to_string());
        }
        if let Some(ws) = &weights {
            row.push(
                ws.iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        row.extend([
            chi.modulus().to_string(),
            chi.label(),
            x.to_string(),
            q.label(),
            value.g.to_string(),
            value.unnormalized().to_string(),
        ]);
        rows.push(row);
    }
    let mut header = vec!["n", "r"];
    if h.is_some() {
        header.push("h");
    }
    if weights.is_some() {
        header.push("w");
    }
    header.extend(["d", "chi", "x", "q", "normalized", "unnormalized"]);
    emit_table(&header, rows, &args.output)?;
    Ok(0)
}

fn params_to_string(params: &Map<String, Value>) -> String {
    serde_json::to_string(params).expect("serializable")
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let verdicts: Vec<Verdict> = match args.identity.as_str() {
        "pascal" => {
            let mut v = verify::pascal_suite(args.n_max.unwrap_or(20) as u64);
            v.extend(verify::qcalc_suite(0x51ec7));
            v
        }
        "bridge" => verify::bridge_suite(args.n_max.unwrap_or(15)),
        "distribution" => {
            verify::distribution_suite(args.d).map_err(|e| CliError::compute(e.to_string()))?
        }
        "shift" => verify::shift_suite(args.d).map_err(|e| CliError::compute(e.to_string()))?,
        "symmetry" => verify::symmetry_suite(args.d).map_err(|e| CliError::compute(e.to_string()))?,
        "limit" => {
            verify::limit_suite(args.d, args.r).map_err(|e| CliError::compute(e.to_string()))?
        }
        "oracle" => verify::oracle_suite().map_err(|e| CliError::compute(e.to_string()))?,
        "vanishing" => verify::vanishing_suite().map_err(|e| CliError::compute(e.to_string()))?,
        "prime-scan" => verify::prime_scan_suite(args.n_max.unwrap_or(100))
            .map_err(|e| CliError::config(e.to_string()))?,
        other => {
            return Err(CliError::config(format!(
                "unknown suite {:?} (expected pascal, bridge, distribution, shift, symmetry, \
                 limit, oracle, vanishing or prime-scan)",
                other
            )))
        }
    };
    // tolerance floor for float verdicts: anything with a recorded abs_diff
    // above the requested tolerance is demoted to a failure
    let verdicts: Vec<Verdict> = verdicts
        .into_iter()
        .map(|mut v| {
            let above = v
                .abs_diff
                .as_deref()
                .and_then(|s| s.parse::<f64>().ok())
                .map_or(false, |diff| diff > args.tol);
            if above {
                v.status = genocchi::VerdictStatus::Fail;
            }
            v
        })
        .collect();
    let failed = verdicts.iter().filter(|v| !v.passed()).count();
    match args.output.format {
        FormatArg::Csv => {
            let rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|v| {
                    vec![
                        v.identity.clone(),
                        params_to_string(&v.params),
                        v.backend.clone(),
                        v.status.to_string(),
                        v.lhs.clone(),
                        v.rhs.clone(),
                        v.abs_diff.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            emit_table(
                &["identity", "params", "backend", "status", "lhs", "rhs", "abs_diff"],
                rows,
                &args.output,
            )?;
        }
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(&verdicts).expect("serializable");
            text.push('\n');
            write_out(text.as_bytes(), &args.output)?;
        }
    }
    eprintln!(
        "suite {}: {}/{} passed",
        args.identity,
        verdicts.len() - failed,
        verdicts.len()
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

fn cmd_char(args: CharArgs) -> Result<u8, CliError> {
    match args.action {
        CharAction::Enumerate { d, output } => {
            let chars =
                DirichletCharacter::enumerate(d).map_err(|e| CliError::config(e.to_string()))?;
            let rows: Vec<Vec<String>> = chars
                .iter()
                .enumerate()
                .map(|(i, chi)| {
                    vec![
                        i.to_string(),
                        chi.modulus().to_string(),
                        chi.label(),
                        chi.order().to_string(),
                        chi.is_real().to_string(),
                        chi.values()
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            emit_table(
                &["index", "modulus", "kind", "order", "real", "values"],
                rows,
                &output,
            )?;
            Ok(0)
        }
        CharAction::Validate { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| CliError::config(format!("cannot read {}: {}", file, e)))?;
            let chi = DirichletCharacter::from_json_str(&text)
                .map_err(|e| CliError::config(e.to_string()))?;
            println!(
                "ok: {} (order {}, {})",
                chi.label(),
                chi.order(),
                if chi.is_real() { "real" } else { "non-real" }
            );
            Ok(0)
        }
    }
}
