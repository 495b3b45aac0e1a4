use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use alcs::corpus::{self, CorpusSpec};
use alcs::{io as index_io, oracle, query_with_stats, verify_result, AlcsIndex, Algorithm, BuildOptions, QueryResult};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "alcs", version, about = "Approximate longest common substring index over LZ77")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a text.
    Build(BuildArgs),
    /// Query an index with one or more patterns.
    Query(QueryArgs),
    /// Exact longest common substring of a pattern and a text.
    Oracle(OracleArgs),
    /// Generate a repetitive corpus.
    Gen(GenArgs),
    /// Measure build size and query latency.
    Bench(BenchArgs),
    /// Print the header fields of an index file.
    Stats(StatsArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long)]
    max_pattern_len: Option<usize>,
    #[arg(long, env = "ALCS_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Naive,
    Pruned,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Naive => Algorithm::Naive,
            AlgoArg::Pruned => Algorithm::Pruned,
        }
    }
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long, alias = "out")]
    index: PathBuf,
    /// File holding a single raw pattern.
    #[arg(long, conflicts_with = "patterns_file", required_unless_present = "patterns_file")]
    pattern: Option<PathBuf>,
    /// File with one pattern per line ("-" for stdin).
    #[arg(long)]
    patterns_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pruned")]
    algo: AlgoArg,
    /// Re-check every answer against the raw text.
    #[arg(long, requires = "text")]
    verify: bool,
    #[arg(long)]
    text: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1024)]
    base_len: usize,
    #[arg(long, default_value_t = 64)]
    repeats: usize,
    #[arg(long, default_value_t = 0.001)]
    mut_rate: f64,
    #[arg(long, env = "ALCS_SEED", default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value = "ACGT")]
    alphabet: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long)]
    max_pattern_len: Option<usize>,
    /// One pattern per line; when absent, patterns are sampled from the text.
    #[arg(long)]
    patterns_file: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    num_patterns: usize,
    #[arg(long, default_value_t = 256)]
    pattern_len: usize,
    /// Substitution rate applied to sampled patterns.
    #[arg(long, default_value_t = 0.1)]
    pattern_mut_rate: f64,
    #[arg(long, value_enum, default_value = "pruned")]
    algo: AlgoArg,
    #[arg(long, env = "ALCS_SEED", default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    json: bool,
}

/// Error carrying the process exit code.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(1, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn read_lines(path: &Path) -> Result<Vec<Vec<u8>>, Failure> {
    let data = if path == Path::new("-") {
        let mut buf = Vec::new();
        io::Read::read_to_end(&mut io::stdin(), &mut buf)?;
        buf
    } else {
        read_file(path)?
    };
    let mut lines: Vec<Vec<u8>> = data.split(|&b| b == b'\n').map(<[u8]>::to_vec).collect();
    if data.is_empty() || data.ends_with(b"\n") {
        lines.pop();
    }
    Ok(lines)
}

fn load_index(path: &Path) -> Result<AlcsIndex, Failure> {
    let file = fs::File::open(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))?;
    index_io::load(io::BufReader::new(file)).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

/// Prints `key=value` lines, or one JSON object.
fn report(json: bool, fields: &[(&str, serde_json::Value)]) {
    if json {
        let obj: serde_json::Map<String, serde_json::Value> =
            fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        println!("{}", serde_json::Value::Object(obj));
    } else {
        for (k, v) in fields {
            match v {
                serde_json::Value::String(s) => println!("{k}={s}"),
                other => println!("{k}={other}"),
            }
        }
    }
}

fn cmd_build(a: BuildArgs) -> CmdResult {
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(Failure(1, "epsilon must be in (0,1)".into()));
    }
    let text = read_file(&a.text)?;
    let t0 = Instant::now();
    let index = AlcsIndex::build(
        &text,
        a.epsilon,
        BuildOptions {
            seed: a.seed,
            max_pattern_len: a.max_pattern_len,
        },
    )?;
    let build_ms = t0.elapsed().as_secs_f64() * 1e3;
    let file = fs::File::create(&a.out).map_err(|e| Failure(1, format!("{}: {e}", a.out.display())))?;
    let bytes = index_io::save(&index, BufWriter::new(file))?;
    report(
        a.json,
        &[
            ("n", json!(index.n())),
            ("z", json!(index.z())),
            ("lengths", json!(index.lengths().len())),
            ("left_entries", json!(index.left_map().len())),
            ("right_entries", json!(index.right_map().len())),
            ("bytes", json!(bytes)),
            ("seed", json!(index.seed())),
            ("build_ms", json!((build_ms * 1000.0).round() / 1000.0)),
        ],
    );
    Ok(())
}

fn format_result(ordinal: usize, r: &QueryResult, pattern: &[u8]) -> String {
    if r.is_empty() {
        format!("{ordinal}\t0\t-\t-\t-\t-")
    } else {
        format!(
            "{ordinal}\t{}\t{}\t{}\t{}\t{}",
            r.length,
            r.p_start,
            r.p_end,
            r.t_pos.map_or("-".to_string(), |t| t.to_string()),
            hex::encode(r.slice(pattern))
        )
    }
}

fn run_queries(index: &AlcsIndex, patterns: &[Vec<u8>], algo: Algorithm, threads: usize) -> Vec<QueryResult> {
    let threads = threads.max(1).min(patterns.len().max(1));
    if threads == 1 {
        return patterns.iter().map(|p| query_with_stats(index, p, algo).0).collect();
    }
    let chunk = patterns.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = patterns
            .chunks(chunk)
            .map(|ps| s.spawn(move || ps.iter().map(|p| query_with_stats(index, p, algo).0).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn cmd_query(a: QueryArgs) -> CmdResult {
    let index = load_index(&a.index)?;
    let patterns = match (&a.pattern, &a.patterns_file) {
        (Some(p), _) => vec![read_file(p)?],
        (None, Some(f)) => read_lines(f)?,
        (None, None) => unreachable!("clap requires one pattern source"),
    };
    let text = match (&a.text, a.verify) {
        (Some(t), true) => Some(read_file(t)?),
        _ => None,
    };
    let results = run_queries(&index, &patterns, a.algo.into(), a.threads);

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut failed = Vec::new();
    for (k, (r, p)) in results.iter().zip(&patterns).enumerate() {
        let ordinal = k + 1;
        let verified = text.as_ref().map(|t| verify_result(r, p, t));
        if verified == Some(false) {
            failed.push(ordinal);
        }
        if a.json {
            let mut obj = json!({
                "ordinal": ordinal,
                "length": r.length,
                "p_start": (!r.is_empty()).then_some(r.p_start),
                "p_end": (!r.is_empty()).then_some(r.p_end),
                "t_pos": r.t_pos,
                "hex": hex::encode(r.slice(p)),
            });
            if let Some(v) = verified {
                obj["verified"] = json!(v);
            }
            writeln!(out, "{obj}")?;
        } else {
            writeln!(out, "{}", format_result(ordinal, r, p))?;
        }
    }
    out.flush()?;
    if failed.is_empty() {
        Ok(())
    } else {
        for ordinal in &failed {
            eprintln!("verify failed: pattern {ordinal}");
        }
        Err(Failure(2, format!("{} pattern(s) failed verification", failed.len())))
    }
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let text = read_file(&a.text)?;
    let pattern = read_file(&a.pattern)?;
    let ans = oracle::exact_lcs(&pattern, &text);
    let span = |(s, e): (usize, usize)| if ans.length == 0 { json!("-") } else { json!(format!("{s}-{e}")) };
    report(
        a.json,
        &[
            ("length", json!(ans.length)),
            ("p_span", span(ans.p_span)),
            ("t_span", span(ans.t_span)),
        ],
    );
    Ok(())
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let spec = CorpusSpec {
        base_len: a.base_len,
        repeats: a.repeats,
        mut_rate: a.mut_rate,
        seed: a.seed,
        alphabet: a.alphabet.into_bytes(),
    };
    spec.validate().map_err(|e| Failure(1, e))?;
    let data = corpus::generate(&spec);
    fs::write(&a.out, &data).map_err(|e| Failure(1, format!("{}: {e}", a.out.display())))?;
    report(a.json, &[("bytes", json!(data.len())), ("seed", json!(spec.seed))]);
    Ok(())
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let k = ((sorted.len() as f64 - 1.0) * q).round() as usize;
    sorted[k]
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(Failure(1, "epsilon must be in (0,1)".into()));
    }
    let text = read_file(&a.text)?;
    let t0 = Instant::now();
    let index = AlcsIndex::build(
        &text,
        a.epsilon,
        BuildOptions {
            seed: Some(a.seed),
            max_pattern_len: a.max_pattern_len,
        },
    )?;
    let build_ms = t0.elapsed().as_secs_f64() * 1e3;
    let index_bytes = index_io::to_bytes(&index).len();

    let patterns = match &a.patterns_file {
        Some(f) => read_lines(f)?,
        None => {
            let mut alphabet: Vec<u8> = text.clone();
            alphabet.sort_unstable();
            alphabet.dedup();
            corpus::sample_patterns(&text, a.num_patterns, a.pattern_len, a.pattern_mut_rate, &alphabet, a.seed)
        }
    };
    let algo: Algorithm = a.algo.into();
    let mut latencies = Vec::with_capacity(patterns.len());
    let mut total_checks = 0u64;
    let mut total_grid = 0u64;
    let mut total_len = 0usize;
    for p in &patterns {
        let t = Instant::now();
        let (r, stats) = query_with_stats(&index, p, algo);
        latencies.push(t.elapsed().as_secs_f64() * 1e6);
        total_checks += stats.checks;
        total_grid += stats.grid_queries;
        total_len += r.length;
    }
    let q = patterns.len().max(1) as f64;
    let mean = latencies.iter().sum::<f64>() / q;
    latencies.sort_by(f64::total_cmp);
    let round = |x: f64| (x * 1000.0).round() / 1000.0;
    report(
        a.json,
        &[
            ("algo", json!(match a.algo { AlgoArg::Naive => "naive", AlgoArg::Pruned => "pruned" })),
            ("n", json!(index.n())),
            ("z", json!(index.z())),
            ("entries", json!(index.entry_count())),
            ("build_ms", json!(round(build_ms))),
            ("index_bytes", json!(index_bytes)),
            ("queries", json!(patterns.len())),
            ("mean_us", json!(round(mean))),
            ("median_us", json!(round(percentile(&latencies, 0.5)))),
            ("p99_us", json!(round(percentile(&latencies, 0.99)))),
            ("mean_checks", json!(round(total_checks as f64 / q))),
            ("total_checks", json!(total_checks)),
            ("mean_grid_queries", json!(round(total_grid as f64 / q))),
            ("mean_length", json!(round(total_len as f64 / q))),
        ],
    );
    Ok(())
}

fn cmd_stats(a: StatsArgs) -> CmdResult {
    let bytes = read_file(&a.index)?;
    let index = index_io::from_bytes(&bytes).map_err(|e| Failure(1, format!("{}: {e}", a.index.display())))?;
    report(
        a.json,
        &[
            ("magic", json!("ALCS")),
            ("format_version", json!(index_io::FORMAT_VERSION)),
            ("epsilon", json!(index.epsilon())),
            ("n", json!(index.n())),
            ("z", json!(index.z())),
            ("kr_base", json!(index.kr().base())),
            ("kr_seed", json!(index.seed())),
            ("max_len", json!(index.lengths().max_len())),
            ("lengths", json!(index.lengths().len())),
            ("left_entries", json!(index.left_map().len())),
            ("right_entries", json!(index.right_map().len())),
            ("file_bytes", json!(bytes.len())),
        ],
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Query(a) => cmd_query(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Stats(a) => cmd_stats(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("alcs: {msg}");
            ExitCode::from(code)
        }
    }
}
