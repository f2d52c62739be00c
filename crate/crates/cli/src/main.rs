mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use domdim::predict::{self, Verdict};
use domdim::quiver::dsl::{self, Document};
use domdim::quiver::family::{generate_family, FamilySpec, Segment};
use domdim::rep::DEFAULT_SEED;
use domdim::{BoundAlgebra, DomDim, Field, FieldSpec, PrimeField, Rationals};
use serde::Serialize;

use report::{ClassSummary, Engine, RunReport};

#[derive(Parser)]
#[command(name = "domdim", version, about = "Dominant dimension of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the dominant dimension from minimal injective resolutions.
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include every resolution term and the basis of each projective.
        #[arg(long)]
        resolution: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Predict the value from the closed-form results alone.
    Predict {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute, predict and compare.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Write a quiver from one of the built-in families.
    Generate(GenerateArgs),
    /// Check every `.qv` file in a directory, or every path listed in a
    /// manifest, and summarize.
    Batch {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Number of inputs processed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

#[derive(Args, Clone)]
struct EngineArgs {
    /// `rational` or `prime:<p>`; overrides the field named in the file.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Give up on a resolution after this many terms.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Seed for the randomized isomorphism test.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    /// linear, truncated, disjoint, monotone, random-disjoint,
    /// random-monotone, random-tree or random-relations.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Vertex count for random trees.
    #[arg(long)]
    v: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random relations.
    #[arg(long, default_value_t = 0)]
    count: usize,
    /// Make the source start a relation and the sink end one.
    #[arg(long)]
    anchored: bool,
    /// Relations for disjoint and monotone families as `start:length`,
    /// comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_segment)]
    segments: Vec<Segment>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_segment(s: &str) -> Result<Segment, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected start:length, got `{s}`"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((num(a)?, num(b)?))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Status {
    Ok,
    Input,
    Defect,
    OutOfScope,
    Mismatch,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Input => 1,
            Status::Defect => 2,
            Status::OutOfScope => 3,
            Status::Mismatch => 4,
        }
    }

    fn of(e: &domdim::Error) -> Self {
        if e.is_input_error() {
            Status::Input
        } else {
            Status::Defect
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Compute { full: bool },
    Predict,
    Check,
}

fn engine<F: Field>(doc: &Document, field: F, args: &EngineArgs, full: bool) -> domdim::Result<Engine> {
    let mut alg = BoundAlgebra::new(doc.quiver.clone(), doc.relations.clone(), field)?.with_seed(args.seed);
    if let Some(cap) = args.max_steps {
        alg = alg.with_cap(cap);
    }
    let report = alg.dominant_dimension()?;
    Ok(Engine::new(&alg, report, full))
}

fn run(input: &str, text: Result<String, String>, mode: Mode, args: &EngineArgs) -> (RunReport, Status) {
    let start = Instant::now();
    let mut report = RunReport {
        input: input.to_string(),
        class: None,
        field: args.field.unwrap_or_default().to_string(),
        seed: args.seed,
        engine: None,
        prediction: None,
        verdict: None,
        error: None,
        elapsed_ms: 0.0,
    };
    let status = run_inner(&mut report, text, mode, args);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    (report, status)
}

fn run_inner(report: &mut RunReport, text: Result<String, String>, mode: Mode, args: &EngineArgs) -> Status {
    let fail = |report: &mut RunReport, status, msg: String| {
        report.error = Some(msg);
        status
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(report, Status::Input, e),
    };
    let doc = match dsl::parse(&text) {
        Ok(d) => d,
        Err(e) => return fail(report, Status::Input, e.to_string()),
    };
    match ClassSummary::new(&doc.quiver, &doc.relations) {
        Ok(c) => report.class = Some(c),
        Err(e) => return fail(report, Status::Input, e.to_string()),
    }
    let field = args.field.unwrap_or(doc.field);
    report.field = field.to_string();

    if mode != Mode::Predict {
        let full = matches!(mode, Mode::Compute { full: true });
        let computed = match field {
            FieldSpec::Rational => engine(&doc, Rationals, args, full),
            FieldSpec::Prime(p) => PrimeField::new(p).and_then(|f| engine(&doc, f, args, full)),
        };
        match computed {
            Ok(e) => report.engine = Some(e),
            Err(e) => return fail(report, Status::of(&e), e.to_string()),
        }
    }
    if !matches!(mode, Mode::Compute { .. }) {
        let prediction = match predict::predict(&doc.quiver, &doc.relations) {
            Ok(p) => p,
            Err(e) => return fail(report, Status::of(&e), e.to_string()),
        };
        let out_of_scope = prediction.is_out_of_scope();
        if let Some(e) = &report.engine {
            report.verdict = Some(predict::reconcile(&prediction, e.dominant_dimension));
        }
        report.prediction = Some(prediction);
        if mode == Mode::Predict && out_of_scope {
            return Status::OutOfScope;
        }
    }
    if report.verdict == Some(Verdict::Mismatch) {
        return Status::Mismatch;
    }
    Status::Ok
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn single(file: &Path, json: bool, mode: Mode, args: &EngineArgs) -> anyhow::Result<u8> {
    let (report, status) = run(&file.display().to_string(), read(file), mode, args);
    if json {
        print_json(&report)?;
    } else {
        print!("{}", report.render());
    }
    if let Some(e) = &report.error {
        eprintln!("domdim: {e}");
    }
    Ok(status.code())
}

/// Inputs of a batch: the `.qv` files of a directory by name, or the
/// non-empty, non-comment lines of a manifest resolved against its
/// directory.
fn batch_inputs(input: &Path) -> anyhow::Result<Vec<(String, PathBuf)>> {
    if input.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(input)
            .with_context(|| format!("reading {}", input.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "qv"))
            .collect();
        files.sort();
        return Ok(files
            .into_iter()
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), p))
            .collect());
    }
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let base = input.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| (l.to_string(), base.join(l)))
        .collect())
}

#[derive(Serialize)]
struct Summary {
    inputs: usize,
    agree: usize,
    within_interval: usize,
    mismatch: usize,
    errors: usize,
    histogram: BTreeMap<String, usize>,
}

fn histogram_key(d: DomDim) -> (usize, String) {
    match d {
        DomDim::Finite(k) => (k, k.to_string()),
        DomDim::Infinite => (usize::MAX, d.to_string()),
    }
}

#[cfg(feature = "parallel")]
fn run_all(inputs: &[(String, PathBuf)], jobs: usize, args: &EngineArgs) -> anyhow::Result<Vec<(RunReport, Status)>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    Ok(pool.install(|| inputs.par_iter().map(|(name, path)| run(name, read(path), Mode::Check, args)).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_all(inputs: &[(String, PathBuf)], _jobs: usize, args: &EngineArgs) -> anyhow::Result<Vec<(RunReport, Status)>> {
    Ok(inputs.iter().map(|(name, path)| run(name, read(path), Mode::Check, args)).collect())
}

fn batch(input: &Path, json: bool, jobs: usize, args: &EngineArgs) -> anyhow::Result<u8> {
    let inputs = batch_inputs(input)?;
    if inputs.is_empty() {
        bail!("no inputs found in {}", input.display());
    }
    let results = run_all(&inputs, jobs, args)?;

    let mut summary = Summary {
        inputs: results.len(),
        agree: 0,
        within_interval: 0,
        mismatch: 0,
        errors: 0,
        histogram: BTreeMap::new(),
    };
    let mut counts: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for (r, _) in &results {
        match r.verdict {
            Some(Verdict::Agree) => summary.agree += 1,
            Some(Verdict::WithinInterval) => summary.within_interval += 1,
            Some(Verdict::Mismatch) => summary.mismatch += 1,
            None => {}
        }
        if r.error.is_some() {
            summary.errors += 1;
        }
        if let Some(e) = &r.engine {
            *counts.entry(histogram_key(e.dominant_dimension)).or_default() += 1;
        }
    }

    if json {
        for (r, _) in &results {
            print_json(r)?;
        }
    } else {
        println!("{:<28} {:>8} {:>12}  verdict", "input", "engine", "prediction");
        for (r, _) in &results {
            let engine = r.engine.as_ref().map(|e| e.dominant_dimension.to_string()).unwrap_or_else(|| "-".into());
            let pred = r.prediction.as_ref().map(|p| p.value.to_string()).unwrap_or_else(|| "-".into());
            let verdict = match (r.verdict, &r.error) {
                (_, Some(e)) => format!("error: {e}"),
                (Some(Verdict::Agree), _) => "agree".into(),
                (Some(Verdict::WithinInterval), _) => "within interval".into(),
                (Some(Verdict::Mismatch), _) => "MISMATCH".into(),
                (None, None) => "-".into(),
            };
            println!("{:<28} {engine:>8} {pred:>12}  {verdict}", r.input);
        }
        println!();
        println!(
            "{} inputs: {} agree, {} within interval, {} mismatch, {} errors",
            summary.inputs, summary.agree, summary.within_interval, summary.mismatch, summary.errors
        );
        println!("dominant dimension histogram:");
        for ((_, label), count) in &counts {
            println!("  {label:>8} {count:>5} {}", "#".repeat((*count).min(60)));
        }
    }
    summary.histogram = counts.into_iter().map(|((_, label), c)| (label, c)).collect();
    if json {
        print_json(&serde_json::json!({ "summary": summary }))?;
    }
    for (r, _) in &results {
        if let Some(e) = &r.error {
            eprintln!("domdim: {}: {e}", r.input);
        }
    }
    let worst = results.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    Ok(worst.code())
}

fn family_spec(a: &GenerateArgs) -> anyhow::Result<FamilySpec> {
    let need = |x: Option<usize>, flag: &str| x.with_context(|| format!("--family {} needs --{flag}", a.family));
    Ok(match a.family.as_str() {
        "linear" => FamilySpec::Linear { n: need(a.n, "n")? },
        "truncated" => FamilySpec::Truncated { n: need(a.n, "n")?, m: need(a.m, "m")? },
        "disjoint" => FamilySpec::Disjoint { n: need(a.n, "n")?, relations: a.segments.clone() },
        "monotone" => FamilySpec::Monotone { n: need(a.n, "n")?, relations: a.segments.clone() },
        "random-disjoint" => FamilySpec::RandomDisjoint { n: need(a.n, "n")?, seed: a.seed },
        "random-monotone" => FamilySpec::RandomMonotone { n: need(a.n, "n")?, seed: a.seed },
        "random-tree" => FamilySpec::RandomTree { vertices: need(a.v, "v")?, relations: a.count, seed: a.seed },
        "random-relations" => {
            FamilySpec::RandomRelations { n: need(a.n, "n")?, count: a.count.max(1), seed: a.seed, anchored: a.anchored }
        }
        other => bail!("unknown family `{other}`"),
    })
}

fn generate(a: &GenerateArgs) -> anyhow::Result<u8> {
    let spec = family_spec(a)?;
    let (quiver, relations) = match generate_family(&spec) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("domdim: {e}");
            return Ok(Status::Input.code());
        }
    };
    let text = dsl::serialize(&Document { quiver, relations, field: FieldSpec::Rational });
    match &a.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { file, json, resolution, engine } => {
            single(file, *json, Mode::Compute { full: *resolution }, engine)
        }
        Command::Predict { file, json } => {
            let args = EngineArgs { field: None, max_steps: None, seed: DEFAULT_SEED };
            single(file, *json, Mode::Predict, &args)
        }
        Command::Check { file, json, engine } => single(file, *json, Mode::Check, engine),
        Command::Generate(a) => generate(a),
        Command::Batch { input, json, jobs, engine } => batch(input, *json, *jobs, engine),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("domdim: {e:#}");
            ExitCode::from(Status::Input.code())
        }
    }
}
