mod cache;

use cache::Cache;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use weylext::abw::{parse_label, AbwError, BasedModule, WeylModule};
use weylext::combinatorics::{compositions, CombError, Partition, SkewShape};
use weylext::homology::{ext_weyl, hom_cyclic, ExtResult, HomologyError};
use weylext::sweep::{jobs, render_table, run_grouped, summarize, to_json_lines, Job, Kind};
use weylext::theorems::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "weylext", version, about = "Weyl modules, integral Ext groups and verification sweeps")]
struct Cli {
    /// Largest partition degree in verification sweeps.
    #[arg(long, global = true, env = "WEYLEXT_MAX_DEGREE", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    /// Highest Ext degree computed.
    #[arg(long, global = true, env = "WEYLEXT_MAX_I", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    max_i: u64,
    /// Number of letters; defaults to the number of rows needed.
    #[arg(long, global = true, env = "WEYLEXT_N")]
    n: Option<usize>,
    #[arg(long, global = true, env = "WEYLEXT_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, env = "WEYLEXT_CACHE_DIR", default_value = ".weylext-cache")]
    cache_dir: PathBuf,
    #[arg(long, global = true, env = "WEYLEXT_NO_CACHE")]
    no_cache: bool,
    /// Worker threads; 0 means one per core.
    #[arg(long, global = true, env = "WEYLEXT_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Attach wall-clock milliseconds to each report (bypasses cached reports).
    #[arg(long, global = true, env = "WEYLEXT_TIMINGS")]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Standard basis of K_SHAPE by weight.
    Basis { shape: String },
    /// Expresses an element of K_SHAPE in the standard basis.
    ///
    /// ELEMENT is a sum of terms `c*ROWS`, rows written like `1^2 2 | 3`.
    Straighten { shape: String, element: String },
    /// Hom(K_A, K_B) over the integers.
    Hom { a: String, b: String },
    /// Ext^i(K_LAMBDA, K_MU) for i up to --max-i.
    Ext { lambda: String, mu: String },
    /// Runs one family of checks.
    Verify { kind: String },
    /// Runs every family of checks.
    Sweep,
}

enum Failure {
    Invalid(String),
    Runtime(String),
    Verification,
}

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<AbwError> for Failure {
    fn from(e: AbwError) -> Self {
        match e {
            AbwError::NotInSpan => Failure::Runtime(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Abw(a) => a.into(),
            HomologyError::DegreeMismatch(..) | HomologyError::LetterMismatch(..) | HomologyError::BadModulus(_) => {
                Failure::Invalid(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(format!("cache: {e}"))
    }
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn module(shape: &SkewShape, n: Option<usize>) -> Result<WeylModule, Failure> {
    let need = shape.num_rows().max(1);
    let n = n.unwrap_or(need);
    if n < need {
        return Err(AbwError::TooFewLetters(shape.to_string(), need).into());
    }
    Ok(WeylModule::new(shape.clone(), n))
}

fn basis(cli: &Cli, shape: &str) -> Result<(), Failure> {
    let shape: SkewShape = shape.parse()?;
    let m = module(&shape, cli.n)?;
    let mut weights = Vec::new();
    let mut rank = 0;
    for w in compositions(shape.degree(), m.n()).into_iter().rev() {
        let ts = m.standard_tableaux(&w);
        if ts.is_empty() {
            continue;
        }
        rank += ts.len();
        weights.push((w, ts));
    }
    match cli.format {
        Format::Json => {
            let ws: Vec<_> = weights
                .iter()
                .map(|(w, ts)| json!({"weight": w, "tableaux": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>()}))
                .collect();
            println!("{}", json!({"shape": shape.to_string(), "n": m.n(), "rank": rank, "weights": ws}));
        }
        Format::Table => {
            for (w, ts) in &weights {
                for t in ts {
                    println!("{w:?}  {t}");
                }
            }
            println!("rank {rank}");
        }
    }
    Ok(())
}

fn parse_element(s: &str) -> Result<Vec<(Vec<Vec<u8>>, BigInt)>, Failure> {
    let bad = || Failure::Invalid(format!("cannot parse element {s:?}"));
    let mut out = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad());
        }
        let (c, body) = match term.split_once('*') {
            Some((c, b)) => (c.trim().parse::<BigInt>().map_err(|_| bad())?, b),
            None => (BigInt::from(1), term),
        };
        out.push((parse_label(body)?, c));
    }
    Ok(out)
}

fn straighten(cli: &Cli, shape: &str, element: &str) -> Result<(), Failure> {
    let shape: SkewShape = shape.parse()?;
    let m = module(&shape, cli.n)?;
    let elem = parse_element(element)?;
    let rows = shape.row_lengths();
    for (label, _) in &elem {
        let lens: Vec<usize> = label.iter().map(Vec::len).collect();
        if lens != rows || label.iter().flatten().any(|&x| x as usize > m.n()) {
            return Err(Failure::Invalid(format!("term {label:?} does not fill shape {shape} with letters 1..={}", m.n())));
        }
    }
    let (w, coords) = m.straighten(&elem)?;
    let ts = m.standard_tableaux(&w);
    let terms: Vec<(String, &BigInt)> =
        ts.iter().zip(&coords).filter(|(_, c)| **c != BigInt::from(0)).map(|(t, c)| (t.to_string(), c)).collect();
    match cli.format {
        Format::Json => {
            let ts: Vec<_> = terms.iter().map(|(t, c)| json!({"coefficient": int_json(c), "tableau": t})).collect();
            println!("{}", json!({"shape": shape.to_string(), "n": m.n(), "weight": w, "terms": ts}));
        }
        Format::Table => {
            for (t, c) in &terms {
                println!("{c:>6}  {t}");
            }
            if terms.is_empty() {
                println!("0");
            }
        }
    }
    Ok(())
}

fn hom(cli: &Cli, a: &str, b: &str) -> Result<(), Failure> {
    let a: SkewShape = a.parse()?;
    let b: SkewShape = b.parse()?;
    let n = cli.n.unwrap_or(a.num_rows().max(b.num_rows()).max(1));
    let target = module(&b, Some(n))?;
    let (nu, basis) = hom_cyclic(&a, &target)?;
    let rank = basis.cols();
    let images: Vec<Vec<serde_json::Value>> =
        (0..rank).map(|j| (0..basis.rows()).map(|i| int_json(&basis.get(i, j))).collect()).collect();
    match cli.format {
        Format::Json => println!(
            "{}",
            json!({"source": a.to_string(), "target": b.to_string(), "n": n, "free_rank": rank, "generator_weight": nu, "images": images})
        ),
        Format::Table => println!("Hom(K_{a}, K_{b}) = {}", if rank == 0 { "0".into() } else if rank == 1 { "Z".into() } else { format!("Z^{rank}") }),
    }
    Ok(())
}

fn open_cache(cli: &Cli) -> Result<Option<Cache>, Failure> {
    if cli.no_cache {
        return Ok(None);
    }
    Cache::open(&cli.cache_dir).map(Some).map_err(|e| Failure::Runtime(format!("cache {}: {e}", cli.cache_dir.display())))
}

fn ext(cli: &Cli, lambda: &str, mu: &str) -> Result<(), Failure> {
    let lambda: Partition = lambda.parse()?;
    let mu: Partition = mu.parse()?;
    if lambda.degree() != mu.degree() {
        return Err(CombError::DegreeMismatch(lambda.degree(), mu.degree()).into());
    }
    let max_i = cli.max_i as usize;
    let n = cli.n.unwrap_or(lambda.len().max(mu.len()).max(1));
    let key = format!("ext|{lambda}|{mu}|{n}|{max_i}");
    let mut cache = open_cache(cli)?;
    let results: Vec<ExtResult> = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(r) => r,
        None => {
            let r = ext_weyl(&lambda, &mu, Some(n), max_i)?;
            if let Some(c) = cache.as_mut() {
                c.put(&key, &r);
                c.save()?;
            }
            r
        }
    };
    match cli.format {
        Format::Json => {
            for r in &results {
                println!("{}", serde_json::to_string(r).expect("serializes"));
            }
        }
        Format::Table => {
            for r in &results {
                println!("Ext^{}(K_{}, K_{}) = {}", r.i, r.source, r.target, r.group);
            }
        }
    }
    Ok(())
}

fn run_kinds(cli: &Cli, kinds: &[Kind]) -> Result<(), Failure> {
    let all: Vec<Job> = kinds.iter().flat_map(|&k| jobs(k, cli.max_degree as usize, cli.max_i as usize)).collect();
    let mut cache = open_cache(cli)?;
    let mut slots: Vec<Option<Vec<VerificationReport>>> = all
        .iter()
        .map(|j| if cli.timings { None } else { cache.as_ref().and_then(|c| c.get(&j.key())) })
        .collect();
    let todo: Vec<Job> = all.iter().zip(&slots).filter(|(_, s)| s.is_none()).map(|(j, _)| j.clone()).collect();
    let workers = if cli.jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { cli.jobs };
    let mut fresh = todo.iter().zip(run_grouped(&todo, workers, cli.timings));
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        let (job, r) = fresh.next().expect("one group per job");
        if let Some(c) = cache.as_mut() {
            let plain: Vec<VerificationReport> = r.iter().cloned().map(|x| VerificationReport { ms: None, ..x }).collect();
            c.put(&job.key(), &plain);
        }
        *slot = Some(r);
    }
    if let Some(c) = cache.as_mut() {
        c.save()?;
    }
    let reports: Vec<VerificationReport> = slots.into_iter().flatten().flatten().collect();
    let summary = summarize(&reports);
    match cli.format {
        Format::Json => {
            print!("{}", to_json_lines(&reports));
            println!("{}", json!({"summary": summary}));
        }
        Format::Table => print!("{}", render_table(&reports)),
    }
    if summary.failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Basis { shape } => basis(cli, shape),
        Command::Straighten { shape, element } => straighten(cli, shape, element),
        Command::Hom { a, b } => hom(cli, a, b),
        Command::Ext { lambda, mu } => ext(cli, lambda, mu),
        Command::Verify { kind } => {
            let k: Kind = kind.parse().map_err(Failure::Invalid)?;
            run_kinds(cli, &[k])
        }
        Command::Sweep => run_kinds(cli, &Kind::ALL),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
