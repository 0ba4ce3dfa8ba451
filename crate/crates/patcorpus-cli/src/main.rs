//! `patcorpus`: mine a Japanese-English parallel corpus from patent
//! office publications.
//!
//! The pipeline runs in stages (`parse`, `docalign`, `segment`, `align`,
//! `stats`), each restartable from the record store it leaves under the
//! corpus root; `run` chains them all. Logs go to stderr as `key=value`
//! lines, report tables to stdout. Exit codes: 0 success, 1 data errors
//! beyond `--max-warnings`, 2 usage or environment errors.

mod config;
mod stages;
mod store;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "patcorpus",
    version,
    about = "Mine a Japanese-English parallel corpus from patent publications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse office XML files into the corpus record store.
    Parse(ParseArgs),
    /// Pair JP and US documents through shared priority claims.
    Docalign(DocalignArgs),
    /// Split every paired document into parts, paragraphs, and sentences.
    Segment(SegmentArgs),
    /// Align Japanese and English sentences within each pair.
    Align(AlignArgs),
    /// Tabulate per-year corpus sizes and sentence extraction rates.
    Stats(StatsArgs),
    /// Generate a synthetic corpus with gold pairings and alignments.
    Fixture(FixtureArgs),
    /// Dump aligned sentence pairs matching part/IPC/year/route filters.
    Extract(ExtractArgs),
    /// Run parse, docalign, segment, align, and stats in sequence.
    Run(RunArgs),
}

#[derive(Args)]
struct ParseArgs {
    /// Directory of JPO gazette XML files.
    #[arg(long, value_name = "DIR")]
    jpo: PathBuf,
    /// Directory of USPTO application XML files.
    #[arg(long, value_name = "DIR")]
    uspto: PathBuf,
    /// Directory of DOCDB family exchange XML files.
    #[arg(long, value_name = "DIR")]
    docdb: PathBuf,
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Decode input files as Shift_JIS instead of UTF-8.
    #[arg(long)]
    shift_jis: bool,
    /// Tolerated data warnings before the stage fails.
    #[arg(long, value_name = "N", default_value_t = 0)]
    max_warnings: u64,
}

#[derive(Args)]
struct DocalignArgs {
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Tolerated data warnings before the stage fails.
    #[arg(long, value_name = "N", default_value_t = 0)]
    max_warnings: u64,
}

#[derive(Args)]
struct SegmentArgs {
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Worker threads (0 = one per core).
    #[arg(long, value_name = "N", default_value_t = 0)]
    threads: usize,
    /// Gzip the per-pair files.
    #[arg(long)]
    gzip: bool,
}

#[derive(Args)]
struct AlignArgs {
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Alignment method.
    #[arg(long, value_enum)]
    mode: Mode,
    /// Bilingual lexicon TSV, required by --mode dict.
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Sentence translation TSV, required by --mode mt.
    #[arg(long, value_name = "FILE")]
    translations: Option<PathBuf>,
    /// Drop links scoring below this value.
    #[arg(long, value_name = "X")]
    min_score: Option<f64>,
    /// Omit the score column from alignment files.
    #[arg(long)]
    paper_compat: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, value_name = "N", default_value_t = 0)]
    threads: usize,
    /// Gzip the per-pair files.
    #[arg(long)]
    gzip: bool,
    /// TOML file with aligner parameters.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Tolerated data warnings before the stage fails.
    #[arg(long, value_name = "N", default_value_t = 0)]
    max_warnings: u64,
}

#[derive(Args)]
struct StatsArgs {
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Tolerated data warnings before the stage fails.
    #[arg(long, value_name = "N", default_value_t = 0)]
    max_warnings: u64,
}

#[derive(Args)]
struct FixtureArgs {
    /// Directory to generate the fixture into.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Generation seed; overrides the config file.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// TOML fixture spec.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Write the sentence pairs here instead of stdout.
    #[arg(long, value_name = "FILE")]
    dest: Option<PathBuf>,
    /// Keep links from this part only (title, abstract, description, claim).
    #[arg(long, value_name = "PART")]
    part: Option<String>,
    /// Keep pairs with an IPC code starting with this prefix.
    #[arg(long, value_name = "PREFIX")]
    ipc_prefix: Option<String>,
    /// Keep pairs whose JP publication year is at least this.
    #[arg(long, value_name = "YEAR")]
    year_from: Option<i32>,
    /// Keep pairs whose JP publication year is at most this.
    #[arg(long, value_name = "YEAR")]
    year_to: Option<i32>,
    /// Keep pairs matched by this route (jp-us, jp-x-us, us-jp, pct).
    #[arg(long, value_name = "ROUTE")]
    route: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Directory of JPO gazette XML files.
    #[arg(long, value_name = "DIR")]
    jpo: PathBuf,
    /// Directory of USPTO application XML files.
    #[arg(long, value_name = "DIR")]
    uspto: PathBuf,
    /// Directory of DOCDB family exchange XML files.
    #[arg(long, value_name = "DIR")]
    docdb: PathBuf,
    /// Corpus root directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Alignment method.
    #[arg(long, value_enum)]
    mode: Mode,
    /// Bilingual lexicon TSV, required by --mode dict.
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Sentence translation TSV, required by --mode mt.
    #[arg(long, value_name = "FILE")]
    translations: Option<PathBuf>,
    /// Drop links scoring below this value.
    #[arg(long, value_name = "X")]
    min_score: Option<f64>,
    /// Omit the score column from alignment files.
    #[arg(long)]
    paper_compat: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, value_name = "N", default_value_t = 0)]
    threads: usize,
    /// Gzip the per-pair files.
    #[arg(long)]
    gzip: bool,
    /// Decode input files as Shift_JIS instead of UTF-8.
    #[arg(long)]
    shift_jis: bool,
    /// TOML file with aligner parameters.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Tolerated data warnings before a stage fails.
    #[arg(long, value_name = "N", default_value_t = 0)]
    max_warnings: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Lexicon-overlap dynamic program.
    Dict,
    /// Machine-translation BLEU anchors.
    Mt,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Dict => "dict",
            Mode::Mt => "mt",
        }
    }
}

/// Failed stage outcome, split by exit code: data problems exit 1,
/// usage and environment problems exit 2.
enum Failure {
    Data(anyhow::Error),
    Env(anyhow::Error),
}

impl Failure {
    fn data(err: impl Into<anyhow::Error>) -> Self {
        Failure::Data(err.into())
    }

    fn env(err: impl Into<anyhow::Error>) -> Self {
        Failure::Env(err.into())
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Parse(args) => stages::parse(&args),
        Command::Docalign(args) => stages::docalign(&args),
        Command::Segment(args) => stages::segment(&args),
        Command::Align(args) => stages::align(&args),
        Command::Stats(args) => stages::stats(&args),
        Command::Fixture(args) => stages::fixture(&args),
        Command::Extract(args) => stages::extract(&args),
        Command::Run(args) => stages::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, err) = match &failure {
                Failure::Data(e) => (1u8, e),
                Failure::Env(e) => (2u8, e),
            };
            // A reader closing our stdout (e.g. `patcorpus extract | head`)
            // is not a failure.
            if is_broken_pipe(err) {
                return ExitCode::SUCCESS;
            }
            eprintln!("event=error exit_code={code} error={:?}", render_chain(err));
            ExitCode::from(code)
        }
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause
            .downcast_ref::<std::io::Error>()
            .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

/// The cause chain as one `outer: inner` line, skipping causes an outer
/// message already spells out.
fn render_chain(err: &anyhow::Error) -> String {
    let mut parts: Vec<String> = Vec::new();
    for cause in err.chain() {
        let msg = cause.to_string();
        if !parts.iter().any(|prev| prev.contains(&msg)) {
            parts.push(msg);
        }
    }
    parts.join(": ")
}

/// `key=value` log lines on stderr, without timestamps so identical runs
/// produce identical streams.
fn init_logging() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format(|buf, record| {
            writeln!(buf, "level={} {}", record.level().as_str().to_lowercase(), record.args())
        })
        .init();
}
