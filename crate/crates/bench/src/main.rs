use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dynmatch::dynamic::Combine;
use dynmatch::estimators::Algorithm;
use dynmatch::UpdateStream;
use dynmatch_bench::audit::{audit_stream, verify_lemma44};
use dynmatch_bench::generators::{gen_stream, GenParams, GeneratorKind};
use dynmatch_bench::report::{format_tightness, summary_json, write_rows_csv};
use dynmatch_bench::runner::{run_experiment, ExperimentConfig, SparsifyGrid};
use dynmatch_bench::{BenchError, Result};

#[derive(Parser)]
#[command(name = "dynmatch-bench", about = "Dynamic matching size estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write checkpoint rows or a summary.
    Run(RunArgs),
    /// Analyze the structure of a generated tight EDCS instance.
    #[command(name = "verify-lemma44")]
    VerifyLemma44(VerifyArgs),
    /// Generate an update stream in text form.
    GenStream(GenArgs),
    /// Replay a stream file and audit the maintained invariants.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    BipartiteOblivious,
    BipartiteAdaptive,
    TwoThirds,
    General,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::BipartiteOblivious => Algorithm::BipartiteOblivious,
            AlgorithmArg::BipartiteAdaptive => Algorithm::BipartiteAdaptive,
            AlgorithmArg::TwoThirds => Algorithm::TwoThirds,
            AlgorithmArg::General => Algorithm::General,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CombineArg {
    Mean,
    Median,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Args)]
struct StreamArgs {
    /// er_sliding_window, bipartite_random, tight_edcs_reveal, adaptive_matched_deleter or scripted.
    #[arg(long, default_value = "er_sliding_window")]
    generator: String,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    length: usize,
    #[arg(long, default_value_t = 300)]
    window: usize,
    /// Allow edges inside a side for the sliding-window generator.
    #[arg(long)]
    non_bipartite: bool,
    #[arg(long, default_value_t = 0.3)]
    delete_prob: f64,
    #[arg(long, default_value_t = 50)]
    k: usize,
    #[arg(long, default_value_t = 16)]
    beta: usize,
    /// Events such as "+0 1 / -0 1".
    #[arg(long)]
    script: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl StreamArgs {
    fn params(&self) -> GenParams {
        GenParams {
            n: self.n,
            length: self.length,
            window: self.window,
            bipartite: !self.non_bipartite,
            delete_prob: self.delete_prob,
            k: self.k,
            beta: self.beta,
            script: self.script.clone(),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    stream: StreamArgs,
    #[arg(long, value_enum, default_value = "bipartite-oblivious")]
    algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 100)]
    checkpoint_interval: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.01)]
    lazy_epsilon: f64,
    #[arg(long, default_value_t = 0.125)]
    edcs_epsilon: f64,
    #[arg(long, default_value_t = 0.02)]
    delta: f64,
    /// Per-update work budget for spread refreshes.
    #[arg(long)]
    spreading: Option<u64>,
    /// Amplified instances; 0 picks ceil(ln n).
    #[arg(long, default_value_t = 0)]
    amplify: usize,
    #[arg(long, value_enum, default_value = "mean")]
    combine: CombineArg,
    #[arg(long, requires = "sparsify_copies")]
    sparsify_target: Option<usize>,
    #[arg(long, requires = "sparsify_target")]
    sparsify_copies: Option<usize>,
    #[arg(long, default_value_t = 400)]
    exact_general_limit: usize,
    /// Never rematch after deletions.
    #[arg(long)]
    lazy_matching: bool,
    /// Read the whole configuration from a JSON file instead of flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 50)]
    k: usize,
    #[arg(long, default_value_t = 16)]
    beta: usize,
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Evaluate even when the slack parameters are outside the analyzed range.
    #[arg(long)]
    allow_out_of_range: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    stream: StreamArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Stream file in text form.
    #[arg(long)]
    input: PathBuf,
    /// Also maintain and audit an EDCS with this degree bound.
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long, default_value_t = 0.125)]
    edcs_epsilon: f64,
    /// Audit the EDCS every this many events.
    #[arg(long, default_value_t = 1)]
    every: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(a: RunArgs) -> Result<()> {
    let cfg = match &a.config {
        Some(p) => serde_json::from_reader(File::open(p)?)?,
        None => ExperimentConfig {
            generator: a.stream.generator.parse()?,
            params: a.stream.params(),
            algorithm: a.algorithm.into(),
            checkpoint_interval: a.checkpoint_interval,
            trials: a.trials,
            seed: a.stream.seed,
            epsilon: a.epsilon,
            lazy_epsilon: a.lazy_epsilon,
            beta: a.stream.beta,
            edcs_epsilon: a.edcs_epsilon,
            delta: a.delta,
            spreading: a.spreading,
            amplify: a.amplify,
            combine: match a.combine {
                CombineArg::Mean => Combine::Mean,
                CombineArg::Median => Combine::Median,
            },
            sparsify: a.sparsify_target.zip(a.sparsify_copies).map(|(target_size, copies)| SparsifyGrid { target_size, copies }),
            exact_general_limit: a.exact_general_limit,
            lazy_matching: a.lazy_matching,
        },
    };
    let summary = run_experiment(&cfg)?;
    let mut out = output(&a.out)?;
    match a.format {
        Format::Csv => write_rows_csv(&summary.rows, out)?,
        Format::Json => writeln!(out, "{}", summary_json(&summary)?)?,
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<()> {
    let r = verify_lemma44(a.k, a.beta, a.delta, a.allow_out_of_range)?;
    let mut out = output(&a.out)?;
    match a.format {
        TextFormat::Text => write!(out, "{}", format_tightness(&r))?,
        TextFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<()> {
    let kind: GeneratorKind = a.stream.generator.parse()?;
    let s = gen_stream(kind, &a.stream.params(), a.stream.seed)?;
    write!(output(&a.out)?, "{}", s.to_text())?;
    Ok(())
}

fn audit(a: AuditArgs) -> Result<bool> {
    let s = UpdateStream::parse(&std::fs::read_to_string(&a.input)?)?;
    let r = audit_stream(&s, a.beta.map(|b| (b, a.edcs_epsilon)), a.every)?;
    writeln!(output(&a.out)?, "{}", serde_json::to_string_pretty(&r)?)?;
    Ok(r.is_clean())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res: Result<bool> = match cli.command {
        Command::Run(a) => run(a).map(|_| true),
        Command::VerifyLemma44(a) => verify(a).map(|_| true),
        Command::GenStream(a) => gen(a).map(|_| true),
        Command::Audit(a) => audit(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                BenchError::InvalidArgument(_) | BenchError::Core(_) => 2,
                _ => 3,
            })
        }
    }
}
