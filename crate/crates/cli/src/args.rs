use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::CONFIG_ENV;

#[derive(Debug, Parser)]
#[command(
    name = "amrkit",
    version,
    about = "AMR corpus tools: codec, augmentation, repair, scoring and ensembling"
)]
pub struct Cli {
    /// TOML pipeline config.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,

    /// Seed for stochastic scoring. Required by scoring commands unless the
    /// config sets one.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Hill-climbing restarts per pair.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; stdin when omitted.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorpusArg {
    /// Corpus file (`# ::id`, `# ::snt`, Penman graph blocks).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GoldTest {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
}

#[derive(Debug, Args)]
pub struct Runs {
    /// Parser run as `name=path`, or a path whose file stem becomes the name.
    /// Order sets tie-breaking priority.
    #[arg(long = "run")]
    pub runs: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a corpus for parse errors and structural violations.
    Validate(Input),
    /// Print the triples of every graph.
    Triples(Input),
    /// Write the variable-free tree of every graph.
    Anonymize {
        #[command(flatten)]
        input: Input,
        /// One tree per line instead of indented blocks.
        #[arg(long)]
        per_line: bool,
    },
    /// Turn trees back into Penman graphs.
    Restore {
        #[command(flatten)]
        input: Input,
        /// Read one tree per line instead of blank-line separated blocks.
        #[arg(long)]
        per_line: bool,
    },
    /// Add a word-order copy of every document.
    Augment {
        #[command(flatten)]
        corpus: CorpusArg,
        /// One alignment line per document.
        #[arg(long)]
        alignments: Option<PathBuf>,
    },
    /// List the sibling orderings of each graph's tree.
    Orderings {
        #[command(flatten)]
        input: Input,
        /// Maximum orderings per graph.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Drop repeated relation-concept pairs from trees, one per line.
    Prune(Input),
    /// Fix malformed trees, one per line.
    Repair(Input),
    /// Add `:wiki` links from a frequency table.
    Wikify {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Count name-to-link pairs in a gold corpus.
    BuildWikiTable {
        #[arg(long)]
        gold: PathBuf,
    },
    /// Corpus Smatch.
    Smatch(GoldTest),
    /// Smatch plus the fine-grained categories.
    Evaluate(GoldTest),
    /// Smatch by cumulative sentence-length bucket.
    LengthReport {
        #[command(flatten)]
        pair: GoldTest,
        /// Comma-separated bucket edges in tokens.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Pick one graph per document from several parser runs.
    Ensemble {
        #[command(flatten)]
        runs: Runs,
        /// Per-document choice report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The best candidate per document given gold.
    Oracle {
        #[arg(long)]
        gold: PathBuf,
        #[command(flatten)]
        runs: Runs,
    },
    /// Which parser wins each document.
    Compare {
        #[arg(long)]
        gold: PathBuf,
        #[command(flatten)]
        runs: Runs,
    },
    /// Map lines of text to vocabulary ids.
    Encode {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vocab: PathBuf,
    },
    /// Build the super-character vocabulary of a corpus.
    BuildVocab {
        #[command(flatten)]
        corpus: CorpusArg,
        /// Tagger output whose tags join the vocabulary.
        #[arg(long)]
        pos: Option<PathBuf>,
    },
    /// Append POS super-characters to every sentence.
    PosAnnotate {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long)]
        pos: Option<PathBuf>,
    },
    /// Write the trainer settings file.
    EmitTrainerConfig {
        /// Settings file to start from.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Pin the vocabulary entry to this vocabulary's size.
        #[arg(long)]
        vocab: Option<PathBuf>,
    },
}
