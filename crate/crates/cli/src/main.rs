use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weilcheck::asymptotics::{sweep, DensityReading, Universe};
use weilcheck::enumeration::{enumerate_valid, valid_triples, Admissibility, Enumerated, Mode};
use weilcheck::lmfdb::{
    audit, classify_all, decode_label, parse_records, write_records, AdapterConfig, Ingested, IsogenyRecord,
};
use weilcheck::numeric::{is_prime, prime_power};
use weilcheck::rules::{catalog, FactorCountConvention, Interpretation, RuleEngine, Verdict};
use weilcheck::stats::{compare, read_expected, CensusTables, OverlapMatrix};
use weilcheck::weil::{FieldParams, Profile, WeilCoeffs};
use weilcheck::Error;

const EXIT_IO: u8 = 1;
const EXIT_OBSTRUCTED: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_AUDIT: u8 = 4;
const EXIT_MISMATCH: u8 = 5;
const EXIT_SCHEMA: u8 = 6;

/// Decide which obstructions forbid a genus-3 hyperelliptic Jacobian in an
/// isogeny class of abelian threefolds over a finite field.
///
/// Exit codes: 0 success or unobstructed, 1 I/O error, 2 obstructed
/// (classify), 3 invalid input, 4 audit found false positives, 5 census
/// differs from --expect, 6 schema or ingest error.
#[derive(Parser)]
#[command(name = "weilcheck", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify Weil polynomials given as labels, "q,s,t,u" tuples, or a file of either.
    Classify(ClassifyArgs),
    /// Validate a dataset and write it in the normalized format.
    Ingest(IngestArgs),
    /// Check that no rule fires on a class flagged as containing a hyperelliptic Jacobian.
    Audit(DatasetArgs),
    /// Per-rule hits, undetected proportions by category, and rule overlaps.
    Stats(StatsArgs),
    /// List every (s, t, u) passing the root-locus test over F_q.
    Enumerate(EnumerateArgs),
    /// Parity-rule proportions and predicted split counts over a sweep of fields.
    Asymptotics(AsymptoticsArgs),
    /// The rule catalog.
    Catalog(FormatArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EngineArgs {
    /// Ambiguous-reading switch, e.g. `N.3.0.0=floor-two-sqrt-q`,
    /// `N.N.N.2=plus-root`, `factor-count=distinct`. Repeatable.
    #[arg(long = "interpretation")]
    interpretation: Vec<String>,
}

impl EngineArgs {
    fn engine(&self) -> Result<RuleEngine, CliError> {
        let mut interp = Interpretation::default();
        for spec in &self.interpretation {
            interp.apply(spec).map_err(CliError::invalid)?;
        }
        Ok(RuleEngine::new(interp))
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// Labels like 3.25.f_ay_ajl, tuples like "25,5,-24,-245", or a file with one per line.
    #[arg(required = true)]
    inputs: Vec<String>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    out: FormatArgs,
}

#[derive(Args)]
struct DatasetArgs {
    /// Normalized CSV, or a raw export when --adapter is given.
    input: PathBuf,
    /// TOML field map for raw LMFDB exports.
    #[arg(long)]
    adapter: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    out: FormatArgs,
}

#[derive(Args)]
struct IngestArgs {
    #[command(flatten)]
    data: DatasetArgs,
    /// Also write the validated records here in the normalized format.
    #[arg(long)]
    normalized: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    data: DatasetArgs,
    /// Expected tables (`table,key,first,second`); any difference exits with 5.
    #[arg(long)]
    expect: Option<PathBuf>,
    /// Also write the rule overlap matrix (CSV) here.
    #[arg(long)]
    overlaps: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdmissibilityArg {
    #[value(name = "root_locus", alias = "root-locus")]
    RootLocus,
    Dataset,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "root_locus")]
    admissibility: AdmissibilityArg,
    /// Dataset for --admissibility dataset (normalized CSV).
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Print only the number of polynomials.
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum, default_value = "multiplicity")]
    factor_count: FactorCountArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FactorCountArg {
    Multiplicity,
    Distinct,
}

impl From<FactorCountArg> for FactorCountConvention {
    fn from(v: FactorCountArg) -> Self {
        match v {
            FactorCountArg::Multiplicity => FactorCountConvention::Multiplicity,
            FactorCountArg::Distinct => FactorCountConvention::Distinct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UniverseArg {
    RootLocus,
    Ordinary,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DensityArg {
    Totient,
    One,
}

#[derive(Args)]
struct AsymptoticsArgs {
    /// Odd primes up to --qmax (default 499).
    #[arg(long, conflicts_with = "even")]
    odd: bool,
    /// Powers of two up to --qmax (default 256).
    #[arg(long)]
    even: bool,
    #[arg(long)]
    qmax: Option<u64>,
    /// Explicit fields, overriding --odd/--even/--qmax.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    #[arg(long, value_enum, default_value = "root-locus")]
    universe: UniverseArg,
    /// Dataset for --universe records (normalized CSV).
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Density factor r in the predicted counts.
    #[arg(long, value_enum, default_value = "totient")]
    density: DensityArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn invalid(e: Error) -> Self {
        match e {
            Error::Io(e) => Self::new(EXIT_IO, e.to_string()),
            e => Self::new(EXIT_INVALID, e.to_string()),
        }
    }

    fn data(e: Error) -> Self {
        match e {
            Error::Io(e) => Self::new(EXIT_IO, e.to_string()),
            e => Self::new(EXIT_SCHEMA, e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::new(EXIT_IO, e.to_string())
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn sink(output: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match output {
        Some(path) => Box::new(io::BufWriter::new(
            File::create(path).map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn load(path: &Path, adapter: Option<&Path>, convention: FactorCountConvention) -> Result<Ingested, CliError> {
    let source = open(path)?;
    match adapter {
        Some(config) => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", config.display())))?;
            let config = AdapterConfig::from_toml(&text).map_err(CliError::data)?;
            config.ingest(source, convention).map_err(CliError::data)
        }
        None => parse_records(source, convention).map_err(CliError::data),
    }
}

fn load_dataset(args: &DatasetArgs) -> Result<(Ingested, RuleEngine), CliError> {
    let engine = args.engine.engine()?;
    let convention = engine.interpretation().factor_count;
    Ok((load(&args.input, args.adapter.as_deref(), convention)?, engine))
}

fn parse_input(input: &str) -> Result<WeilCoeffs, Error> {
    if input.contains(',') {
        let parts: Vec<&str> = input.split(',').map(str::trim).collect();
        let bad = || Error::Schema(format!("`{input}` is not q,s,t,u"));
        let [q, s, t, u] = parts.as_slice() else { return Err(bad()) };
        let field = FieldParams::from_q(q.parse().map_err(|_| bad())?)?;
        let n = |x: &str| x.parse::<i64>().map_err(|_| bad());
        return Ok(WeilCoeffs::new(field, n(s)?, n(t)?, n(u)?));
    }
    let parts = decode_label(input)?;
    if parts.g != 3 {
        return Err(Error::UnsupportedGenus(parts.g));
    }
    let field = FieldParams::from_q(parts.q)?;
    Ok(WeilCoeffs::new(field, parts.coeffs[0], parts.coeffs[1], parts.coeffs[2]))
}

fn expand_inputs(inputs: &[String]) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for input in inputs {
        let path = Path::new(input);
        if !input.contains(',') && path.is_file() {
            let text = std::fs::read_to_string(path)?;
            out.extend(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from));
        } else {
            out.push(input.clone());
        }
    }
    Ok(out)
}

fn verdict_json(input: &str, profile: &Profile, verdict: &Verdict) -> Value {
    let fired: Vec<Value> = verdict
        .fired
        .iter()
        .map(|r| json!({ "rule": r.as_str(), "provenance": r.def().provenance.to_string() }))
        .collect();
    json!({
        "input": input,
        "profile": profile.summary(),
        "fired": fired,
        "obstructed": verdict.obstructed,
        "advisory": verdict.advisory,
    })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8, CliError> {
    let engine = args.engine.engine()?;
    let mut results = Vec::new();
    for input in expand_inputs(&args.inputs)? {
        let coeffs = parse_input(&input).map_err(CliError::invalid)?;
        let profile = Profile::new(coeffs).map_err(CliError::invalid)?;
        let verdict = engine.classify(&profile);
        results.push((input, profile, verdict));
    }
    let mut out = sink(&args.out.output)?;
    match args.out.format {
        Format::Json => {
            let items: Vec<Value> = results.iter().map(|(i, p, v)| verdict_json(i, p, v)).collect();
            let value = if items.len() == 1 { items[0].clone() } else { Value::Array(items) };
            emit_json(&mut out, &value)?;
        }
        Format::Csv => {
            writeln!(out, "input,q,s,t,u,p_rank,factor_count,fired,obstructed")?;
            for (input, p, v) in &results {
                let fired: Vec<&str> = v.fired.iter().map(|r| r.as_str()).collect();
                let c = &p.coeffs;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    csv_cell(input),
                    c.field.q(),
                    c.s,
                    c.t,
                    c.u,
                    p.p_rank,
                    p.factor_count(),
                    fired.join(";"),
                    u8::from(v.obstructed)
                )?;
            }
        }
        Format::Md => {
            for (input, p, v) in &results {
                let s = p.summary();
                writeln!(out, "## {input}\n")?;
                writeln!(out, "- field: F_{} (p = {}, r = {})", s.q, s.p, s.r)?;
                writeln!(out, "- real Weil polynomial: x^3 + ({})x^2 + ({})x + ({})", p.real.a, p.real.b, p.real.c)?;
                writeln!(out, "- shape: {:?}", p.shape)?;
                writeln!(out, "- p-rank: {}, slopes: {}", p.p_rank, s.slopes.join(", "))?;
                if v.fired.is_empty() {
                    writeln!(out, "- no rule fires")?;
                }
                for r in &v.fired {
                    writeln!(out, "- fires {r} ({})", r.def().provenance)?;
                }
                if let Some(a) = &v.advisory {
                    writeln!(out, "- advisory: {a}")?;
                }
                writeln!(out)?;
            }
        }
    }
    out.flush()?;
    Ok(if results.iter().any(|(_, _, v)| v.obstructed) { EXIT_OBSTRUCTED } else { 0 })
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_ingest(args: &IngestArgs) -> Result<u8, CliError> {
    let (data, _) = load_dataset(&args.data)?;
    if let Some(path) = &args.normalized {
        write_records(sink(&Some(path.clone()))?, &data.records, true).map_err(CliError::data)?;
    }
    let summary = data.summary();
    let mut out = sink(&args.data.out.output)?;
    match args.data.out.format {
        Format::Json => emit_json(&mut out, &json!(summary))?,
        Format::Csv => {
            writeln!(out, "q,records")?;
            for (q, n) in &summary.per_q {
                writeln!(out, "{q},{n}")?;
            }
        }
        Format::Md => {
            writeln!(out, "rows read: {}", summary.rows_read)?;
            writeln!(out, "records: {}", summary.records)?;
            writeln!(out, "skipped (dimension other than 3): {}", summary.skipped_other_genus)?;
            writeln!(out, "with hyperelliptic flag: {}\n", summary.with_hyp_flag)?;
            writeln!(out, "| q | records |\n|---|---|")?;
            for (q, n) in &summary.per_q {
                writeln!(out, "| {q} | {n} |")?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_audit(args: &DatasetArgs) -> Result<u8, CliError> {
    let (data, engine) = load_dataset(args)?;
    let report = audit(&data.records, &engine);
    let mut out = sink(&args.out.output)?;
    match args.out.format {
        Format::Json => emit_json(&mut out, &json!(report))?,
        Format::Csv => {
            writeln!(out, "label,fired")?;
            for fp in &report.false_positives {
                let fired: Vec<&str> = fp.fired.iter().map(|r| r.as_str()).collect();
                writeln!(out, "{},{}", fp.label, fired.join(";"))?;
            }
        }
        Format::Md => {
            writeln!(out, "records: {} (hyperelliptic flag known: {})", report.total, report.flagged)?;
            writeln!(out, "false positives: {}\n", report.false_positives.len())?;
            for fp in &report.false_positives {
                let fired: Vec<&str> = fp.fired.iter().map(|r| r.as_str()).collect();
                writeln!(out, "- {}: {}", fp.label, fired.join(", "))?;
            }
        }
    }
    out.flush()?;
    if !report.is_sound() {
        eprintln!("audit failed: {} flagged class(es) obstructed", report.false_positives.len());
        return Ok(EXIT_AUDIT);
    }
    Ok(0)
}

fn cmd_stats(args: &StatsArgs) -> Result<u8, CliError> {
    let (data, engine) = load_dataset(&args.data)?;
    let verdicts = classify_all(&data.records, &engine);
    let census = CensusTables::from_verdicts(&data.records, &verdicts);
    if let Some(path) = &args.overlaps {
        OverlapMatrix::from_verdicts(&verdicts).write_csv(sink(&Some(path.clone()))?).map_err(CliError::data)?;
    }
    let mismatches = match &args.expect {
        Some(path) => Some(compare(&read_expected(open(path)?).map_err(CliError::invalid)?, &census)),
        None => None,
    };
    let mut out = sink(&args.data.out.output)?;
    match args.data.out.format {
        Format::Json => emit_json(
            &mut out,
            &json!({
                "census": census,
                "reference_deltas": census.reference_deltas(),
                "mismatches": mismatches,
            }),
        )?,
        Format::Csv => census.write_csv(&mut out).map_err(CliError::data)?,
        Format::Md => {
            write!(out, "{}", census.to_markdown())?;
            let deltas = census.reference_deltas();
            if !deltas.is_empty() {
                writeln!(out, "\n| Rule | reference classes | hits |\n|---|---|---|")?;
                for d in deltas {
                    writeln!(out, "| {} | {} | {} |", d.rule, d.reference, d.hits)?;
                }
            }
        }
    }
    out.flush()?;
    match mismatches {
        Some(m) if !m.is_empty() => {
            for x in &m {
                eprintln!("mismatch {} {}: expected {:?}, found {:?}", x.table, x.key, x.expected, x.found);
            }
            Ok(EXIT_MISMATCH)
        }
        _ => Ok(0),
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<u8, CliError> {
    let field = FieldParams::from_q(args.q).map_err(CliError::invalid)?;
    let convention = args.factor_count.into();
    let dataset = match (&args.admissibility, &args.dataset) {
        (AdmissibilityArg::Dataset, Some(path)) => Some(load(path, None, convention)?.records),
        (AdmissibilityArg::Dataset, None) => {
            return Err(CliError::invalid(Error::DatasetNotLoaded));
        }
        _ => None,
    };
    let admissibility = match &dataset {
        Some(records) => Admissibility::Dataset(records),
        None => Admissibility::RootLocus,
    };
    let mut out = sink(&args.output)?;
    if args.count {
        let n = enumerate_valid(field, Mode::Count, admissibility).map_err(CliError::invalid)?.len();
        match args.format {
            Format::Json => emit_json(&mut out, &json!({ "q": args.q, "count": n }))?,
            Format::Csv => writeln!(out, "q,count\n{},{n}", args.q)?,
            Format::Md => writeln!(out, "| q | count |\n|---|---|\n| {} | {n} |", args.q)?,
        }
        out.flush()?;
        return Ok(0);
    }
    let records: Vec<IsogenyRecord> = match admissibility {
        Admissibility::RootLocus => valid_triples(field)
            .map(|c| IsogenyRecord::from_coeffs(c, convention, None, None))
            .collect::<Result<_, _>>()
            .map_err(CliError::invalid)?,
        Admissibility::Dataset(_) => {
            let Enumerated::Profiles(profiles) =
                enumerate_valid(field, Mode::Materialize, admissibility).map_err(CliError::invalid)?
            else {
                unreachable!("materialize mode yields profiles")
            };
            profiles
                .into_iter()
                .map(|p| IsogenyRecord::from_coeffs(p.coeffs, convention, None, None))
                .collect::<Result<_, _>>()
                .map_err(CliError::invalid)?
        }
    };
    match args.format {
        Format::Csv => write_records(&mut out, &records, false).map_err(CliError::data)?,
        Format::Json => {
            let items: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "label": r.label, "q": r.q(), "s": r.coeffs.s, "t": r.coeffs.t, "u": r.coeffs.u,
                        "p_rank": r.p_rank, "factor_count": r.factor_count,
                    })
                })
                .collect();
            emit_json(&mut out, &Value::Array(items))?;
        }
        Format::Md => {
            writeln!(out, "| label | s | t | u | p-rank | factors |\n|---|---|---|---|---|---|")?;
            for r in &records {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.label, r.coeffs.s, r.coeffs.t, r.coeffs.u, r.p_rank, r.factor_count
                )?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn sweep_fields(args: &AsymptoticsArgs) -> Vec<u64> {
    if !args.q.is_empty() {
        return args.q.clone();
    }
    let odd_max = args.qmax.unwrap_or(499);
    let even_max = args.qmax.unwrap_or(256);
    let odd = (3..=odd_max).filter(|&q| is_prime(q));
    let even = (1..63).map(|k| 1u64 << k).take_while(|&q| q <= even_max);
    match (args.odd, args.even) {
        (true, _) => odd.collect(),
        (_, true) => even.collect(),
        _ => odd.chain(even).collect(),
    }
}

fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<u8, CliError> {
    let qs = sweep_fields(args);
    for &q in &qs {
        if prime_power(q).is_none() {
            return Err(CliError::invalid(Error::NotPrimePower(q)));
        }
    }
    let records = match (args.universe, &args.dataset) {
        (UniverseArg::Records, Some(path)) => load(path, None, FactorCountConvention::Multiplicity)?.records,
        (UniverseArg::Records, None) => return Err(CliError::invalid(Error::DatasetNotLoaded)),
        _ => Vec::new(),
    };
    let universe = match args.universe {
        UniverseArg::RootLocus => Universe::RootLocus,
        UniverseArg::Ordinary => Universe::Ordinary,
        UniverseArg::Records => Universe::Records(&records),
    };
    let density = match args.density {
        DensityArg::Totient => DensityReading::TotientRatio,
        DensityArg::One => DensityReading::One,
    };
    let report = sweep(&qs, universe, density).map_err(CliError::invalid)?;
    let mut out = sink(&args.output)?;
    match args.format {
        Format::Csv => report.write_csv(&mut out).map_err(CliError::data)?,
        Format::Json => emit_json(&mut out, &json!(report))?,
        Format::Md => write!(out, "{}", report.to_markdown())?,
    }
    out.flush()?;
    Ok(0)
}

fn cmd_catalog(args: &FormatArgs) -> Result<u8, CliError> {
    let entries = catalog();
    let mut out = sink(&args.output)?;
    match args.format {
        Format::Json => emit_json(&mut out, &json!(entries))?,
        Format::Csv => {
            writeln!(out, "rule,parity,factors,p_rank,other,provenance,reference_count,condition")?;
            for e in &entries {
                let parity = json!(e.parity).as_str().unwrap_or_default().to_string();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    e.id,
                    csv_cell(&parity),
                    csv_cell(&e.factors),
                    csv_cell(&e.p_rank),
                    csv_cell(e.other),
                    e.provenance,
                    e.reference_count,
                    csv_cell(e.condition)
                )?;
            }
        }
        Format::Md => {
            writeln!(out, "| Rule | Factors | p-rank | Other | Condition | Status |\n|---|---|---|---|---|---|")?;
            for e in &entries {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    e.id, e.factors, e.p_rank, e.other, e.condition, e.provenance
                )?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Ingest(a) => cmd_ingest(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Asymptotics(a) => cmd_asymptotics(a),
        Command::Catalog(a) => cmd_catalog(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
