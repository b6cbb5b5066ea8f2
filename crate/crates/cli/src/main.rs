use std::fs;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand};

use inkbasis::approx::{norm_report, project, reconstruct, symbol_curve, timing_report};
use inkbasis::bases::{build_basis, condition_number, BasisKind};
use inkbasis::classify::{
    evaluate_protocol, extract_features, labels_of, save_model, train_ovo, EvalOptions,
    FeatureOptions, DEFAULT_C, DEFAULT_POINTS,
};
use inkbasis::data_io::{first_per_class, parse_pendigits, read_ink_json, ParseMode};
use inkbasis::report_io::{
    bench_table, eval_table, norms_table, per_sample_norms_table, render_csv, render_svg_overlay,
    Cell, Table,
};
use inkbasis::{InkSymbol, DEFAULT_MU, MAX_DEGREE};
use inkbasis_service::{AppState, DEFAULT_PORT};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(
    name = "inkbasis",
    version,
    about = "Orthogonal polynomial approximation of digital ink"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project one symbol of an ink JSON document and write an SVG overlay and/or coefficient CSV.
    Approximate(ApproximateArgs),
    /// Mean coefficient norm per basis and degree over a pendigits file.
    Norms(NormsArgs),
    /// Per-sample projection time per basis and degree.
    Bench(BenchArgs),
    /// Train a one-vs-one SVM model on a pendigits file.
    Train(TrainArgs),
    /// Recognition accuracy over repeated random train/test splits.
    Eval(EvalArgs),
    /// Evaluation condition numbers of a polynomial on a uniform grid.
    Condition(ConditionArgs),
    /// Start the HTTP service.
    Serve(ServeArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Dataset {
    /// Pendigits file (16 coordinates and a class per line).
    #[arg(long)]
    data: PathBuf,
    /// Use only the first N samples of each class.
    #[arg(long, value_name = "N")]
    per_class: Option<usize>,
    /// Skip malformed lines instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct ApproximateArgs {
    /// Ink JSON document.
    #[arg(long)]
    input: PathBuf,
    /// Index of the symbol within the document.
    #[arg(long, default_value_t = 0)]
    symbol: usize,
    /// Basis names, comma-separated, or `all`.
    #[arg(long, default_value = "chebyshev-sobolev")]
    basis: String,
    #[arg(long, default_value_t = 12)]
    degree: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Points per reconstruction.
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Coefficient table; standard output when neither this nor --svg is given.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct NormsArgs {
    #[command(flatten)]
    dataset: Dataset,
    /// Inclusive range `a..b`, or a comma-separated list.
    #[arg(long, default_value = "5..20")]
    degrees: String,
    #[arg(long, default_value = "all")]
    basis: String,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Also write one row per sample to this file.
    #[arg(long)]
    per_sample: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    dataset: Dataset,
    #[arg(long, default_value = "5..20")]
    degrees: String,
    #[arg(long, default_value = "all")]
    basis: String,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[arg(long, default_value_t = 5)]
    repetitions: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TrainArgs {
    #[command(flatten)]
    dataset: Dataset,
    #[arg(long, default_value = "chebyshev-sobolev")]
    basis: String,
    #[arg(long, default_value_t = 12)]
    degree: usize,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[arg(long, default_value_t = DEFAULT_C)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resampled points per symbol before projection.
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    /// Model file to write.
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    dataset: Dataset,
    #[arg(long, default_value = "chebyshev-sobolev")]
    basis: String,
    /// Single degree; overridden by --degrees.
    #[arg(long, default_value_t = 12)]
    degree: usize,
    #[arg(long)]
    degrees: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    #[arg(long, default_value_t = 100)]
    splits: usize,
    #[arg(long, default_value_t = 0.8)]
    train_frac: f64,
    #[arg(long, default_value_t = DEFAULT_C)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ConditionArgs {
    #[arg(long, default_value = "chebyshev-sobolev")]
    basis: String,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Coefficients in the chosen basis, comma-separated; the degree is their count minus one.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Uniform grid size on [-1, 1].
    #[arg(long, default_value_t = 201)]
    grid: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = DEFAULT_PORT)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Model file to load; the file stem becomes its id. Repeatable.
    #[arg(long)]
    model: Vec<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<inkbasis::Error> for Failure {
    fn from(e: inkbasis::Error) -> Self {
        match e {
            inkbasis::Error::InvalidArgument(r) => Failure::Usage(r),
            other => Failure::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_kinds(s: &str) -> Result<Vec<BasisKind>, Failure> {
    if s.trim() == "all" {
        return Ok(BasisKind::ALL.to_vec());
    }
    s.split(',')
        .map(|k| {
            k.parse::<BasisKind>()
                .map_err(|_| usage(format!("unknown basis '{k}'")))
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<BasisKind, Failure> {
    s.parse().map_err(|_| usage(format!("unknown basis '{s}'")))
}

/// `a..b` (inclusive), a single degree, or a comma-separated list.
fn parse_degrees(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("invalid degree list '{s}'"));
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|d| d.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    check_degrees(&out)?;
    Ok(out)
}

fn check_degrees(ds: &[usize]) -> Run {
    match ds.iter().find(|&&d| d > MAX_DEGREE) {
        Some(d) => Err(usage(format!("degree {d} exceeds {MAX_DEGREE}"))),
        None => Ok(()),
    }
}

fn check_mu(mu: f64) -> Run {
    if mu.is_finite() && mu >= 0.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "mu must be finite and nonnegative, got {mu}"
        )))
    }
}

fn load_dataset(d: &Dataset) -> Result<Vec<InkSymbol>, Failure> {
    let mode = if d.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    let file = parse_pendigits(&d.data, mode).map_err(|e| in_file(&d.data, e))?;
    for (line, reason) in &file.skipped {
        eprintln!("skipped line {line}: {reason}");
    }
    let symbols = match d.per_class {
        Some(n) => first_per_class(&file.symbols, n),
        None => file.symbols,
    };
    if symbols.is_empty() {
        return Err(Failure::Data("dataset is empty".into()));
    }
    Ok(symbols)
}

fn in_file(path: &Path, e: inkbasis::Error) -> Failure {
    Failure::Data(format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Run {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn approximate(a: ApproximateArgs) -> Run {
    let kinds = parse_kinds(&a.basis)?;
    check_degrees(&[a.degree])?;
    check_mu(a.mu)?;
    let doc = read_ink_json(&a.input).map_err(|e| in_file(&a.input, e))?;
    let symbol = doc.symbols.get(a.symbol).ok_or_else(|| {
        usage(format!(
            "symbol index {} out of range ({} symbols)",
            a.symbol,
            doc.symbols.len()
        ))
    })?;
    let curve = symbol_curve(symbol)?;
    let mut recs = Vec::new();
    let mut table = Table::new(["basis", "degree", "mu", "index", "x", "y"]);
    for kind in kinds {
        let basis = build_basis(kind, a.degree, a.mu)?;
        let cv = project(&curve, &basis)?;
        for (i, (x, y)) in cv.xs.iter().zip(&cv.ys).enumerate() {
            table.push(vec![
                kind.name().into(),
                a.degree.into(),
                Cell::Real(a.mu),
                i.into(),
                (*x).into(),
                (*y).into(),
            ])?;
        }
        recs.push((kind, reconstruct(&cv, &basis, a.points)?));
    }
    if let Some(p) = &a.svg {
        fs::write(p, render_svg_overlay(&curve, &recs))?;
    }
    if a.csv.is_some() || a.svg.is_none() {
        emit(&render_csv(&table)?, a.csv.as_deref())?;
    }
    Ok(())
}

fn norms(a: NormsArgs) -> Run {
    let kinds = parse_kinds(&a.basis)?;
    let degrees = parse_degrees(&a.degrees)?;
    check_mu(a.mu)?;
    let data = load_dataset(&a.dataset)?;
    let report = norm_report(&data, &kinds, &degrees, a.mu)?;
    if let Some(p) = &a.per_sample {
        fs::write(p, render_csv(&per_sample_norms_table(&report))?)?;
    }
    emit(&render_csv(&norms_table(&report))?, a.output.out.as_deref())
}

fn bench(a: BenchArgs) -> Run {
    let kinds = parse_kinds(&a.basis)?;
    let degrees = parse_degrees(&a.degrees)?;
    check_mu(a.mu)?;
    if a.repetitions == 0 {
        return Err(usage("--repetitions must be positive"));
    }
    let data = load_dataset(&a.dataset)?;
    let report = timing_report(&data, &kinds, &degrees, a.mu, a.repetitions)?;
    emit(&render_csv(&bench_table(&report))?, a.output.out.as_deref())
}

fn train(a: TrainArgs) -> Run {
    let kind = parse_kind(&a.basis)?;
    check_degrees(&[a.degree])?;
    check_mu(a.mu)?;
    if !(a.c > 0.0 && a.c.is_finite()) {
        return Err(usage(format!("--c must be positive, got {}", a.c)));
    }
    let data = load_dataset(&a.dataset)?;
    let labels = labels_of(&data)?;
    let basis = build_basis(kind, a.degree, a.mu)?;
    let opts = FeatureOptions {
        points: a.points,
        ..FeatureOptions::default()
    };
    let feats = data
        .iter()
        .map(|s| extract_features(s, &basis, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut classes = labels.clone();
    classes.sort_unstable();
    classes.dedup();
    let model = train_ovo(&feats, &labels, &classes, a.c, a.seed)?;
    save_model(&model, &a.out)?;
    Ok(())
}

fn eval(a: EvalArgs) -> Run {
    let kinds = parse_kinds(&a.basis)?;
    let degrees = match &a.degrees {
        Some(d) => parse_degrees(d)?,
        None => {
            check_degrees(&[a.degree])?;
            vec![a.degree]
        }
    };
    check_mu(a.mu)?;
    let data = load_dataset(&a.dataset)?;
    let mut classes = labels_of(&data)?;
    classes.sort_unstable();
    classes.dedup();
    let opts = EvalOptions {
        n_splits: a.splits,
        train_fraction: a.train_frac,
        base_seed: a.seed,
        c_param: a.c,
        features: FeatureOptions {
            points: a.points,
            ..FeatureOptions::default()
        },
        classes,
        ..EvalOptions::default()
    };
    let report = evaluate_protocol(&data, &kinds, &degrees, a.mu, &opts)?;
    emit(&render_csv(&eval_table(&report))?, a.output.out.as_deref())
}

fn condition(a: ConditionArgs) -> Run {
    let kind = parse_kind(&a.basis)?;
    check_mu(a.mu)?;
    let coeffs: Vec<f64> = a
        .coeffs
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("invalid coefficient '{c}'")))
        })
        .collect::<Result<_, _>>()?;
    if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(usage("coefficients must be finite"));
    }
    check_degrees(&[coeffs.len() - 1])?;
    if a.grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }
    let basis = build_basis(kind, coeffs.len() - 1, a.mu)?;
    let p = basis.poly(coeffs)?;
    let mut table = Table::new(["s", "value", "absolute", "relative"]);
    for k in 0..a.grid {
        let s = (-1.0 + 2.0 * k as f64 / (a.grid - 1) as f64).min(1.0);
        let c = condition_number(&p, s)?;
        table.push(vec![
            s.into(),
            c.value.into(),
            c.absolute.into(),
            c.relative.into(),
        ])?;
    }
    emit(&render_csv(&table)?, a.output.out.as_deref())
}

fn serve(a: ServeArgs) -> Run {
    let state = Arc::new(AppState::with_model_files(&a.model)?);
    let addr = SocketAddr::new(a.host, a.port);
    let rt = tokio::runtime::Runtime::new()?;
    eprintln!("listening on http://{addr}");
    for id in state.model_ids() {
        eprintln!("model '{id}' loaded");
    }
    rt.block_on(inkbasis_service::serve(addr, state))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = match &cli.command {
        Command::Approximate(_) => "approximate",
        Command::Norms(_) => "norms",
        Command::Bench(_) => "bench",
        Command::Train(_) => "train",
        Command::Eval(_) => "eval",
        Command::Condition(_) => "condition",
        Command::Serve(_) => "serve",
    };
    let result = match cli.command {
        Command::Approximate(a) => approximate(a),
        Command::Norms(a) => norms(a),
        Command::Bench(a) => bench(a),
        Command::Train(a) => train(a),
        Command::Eval(a) => eval(a),
        Command::Condition(a) => condition(a),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            let mut cmd = Cli::command();
            if let Some(sub) = cmd.find_subcommand_mut(name) {
                eprint!("{}", sub.render_help());
            }
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
