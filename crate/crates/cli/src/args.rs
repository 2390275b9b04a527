use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emoculture::genprob::{Expectation, ScoreMode};
use emoculture::metrics::{CorrelationKind, DistanceKind, TTestVariant};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "emoculture", version, about = "Cross-lingual emotion analysis toolkit")]
pub struct Cli {
    /// TOML file with default settings; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance-based similarity between two embedding spaces.
    Similarity(SimilarityArgs),
    /// Project emotion embeddings onto the valence-arousal plane.
    Project(ProjectArgs),
    /// Compare summed feeling log-probabilities across languages.
    Logprob(LogprobArgs),
    /// Aggregate cultural-awareness annotations.
    Study(StudyArgs),
    /// Check input files against their formats without analysing them.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Emotion lexicon (JSON Lines).
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// Directory for output files; nothing is written without it.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Output formats, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "csv,json,svg")]
    pub format: Option<Vec<Format>>,
}

#[derive(Debug, Default, Args)]
pub struct SimilarityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Embedding file for the first space.
    #[arg(long, value_name = "PATH")]
    pub left: Option<PathBuf>,
    /// Embedding file for the second space.
    #[arg(long, value_name = "PATH")]
    pub right: Option<PathBuf>,
    /// euclidean or cosine
    #[arg(long)]
    pub distance: Option<DistanceKind>,
    /// pearson or spearman
    #[arg(long)]
    pub correlation: Option<CorrelationKind>,
    /// Earlier similarity report (JSON) to test this one against.
    #[arg(long, value_name = "REPORT")]
    pub ttest_against: Option<PathBuf>,
    /// welch or student
    #[arg(long)]
    pub ttest_variant: Option<TTestVariant>,
}

#[derive(Debug, Default, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// One embedding file per model and language.
    #[arg(long, num_args = 1.., value_name = "PATH")]
    pub embeddings: Vec<PathBuf>,
    /// Anchor lexicon (JSON); the built-in circumplex anchors by default.
    #[arg(long, value_name = "PATH")]
    pub anchors: Option<PathBuf>,
    /// Lemmas to project, comma separated; every lemma when omitted.
    #[arg(long, value_name = "L1,L2")]
    pub labels: Option<String>,
    /// Average the anchor points over all embedding files.
    #[arg(long)]
    pub merge_anchors: bool,
}

#[derive(Debug, Default, Args)]
pub struct LogprobArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Token log-probability records (JSON Lines).
    #[arg(long, value_name = "PATH")]
    pub records: Option<PathBuf>,
    /// Emotion word classes (JSON); the built-in pride/shame map by default.
    #[arg(long, value_name = "PATH")]
    pub word_classes: Option<PathBuf>,
    /// Expected language per class.
    #[arg(long, value_name = "pride=LANG,shame=LANG")]
    pub expect: Option<Expectation>,
    /// sum or mean
    #[arg(long)]
    pub score_mode: Option<ScoreMode>,
}

#[derive(Debug, Default, Args)]
pub struct StudyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Annotation CSV.
    #[arg(long, value_name = "PATH")]
    pub annotations: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Embedding files; each needs --lexicon.
    #[arg(long, num_args = 1.., value_name = "PATH")]
    pub embeddings: Vec<PathBuf>,
    /// Anchor lexicon (JSON).
    #[arg(long, value_name = "PATH")]
    pub anchors: Option<PathBuf>,
    /// Token log-probability records (JSON Lines).
    #[arg(long, value_name = "PATH")]
    pub records: Option<PathBuf>,
    /// Emotion word classes (JSON); records are checked against it.
    #[arg(long, value_name = "PATH")]
    pub word_classes: Option<PathBuf>,
    /// Annotation CSV.
    #[arg(long, value_name = "PATH")]
    pub annotations: Option<PathBuf>,
}
