//! Optional TOML configuration. Relative paths are resolved against the
//! directory containing the config file.

use std::path::{Path, PathBuf};

use emoculture::genprob::ScoreMode;
use emoculture::metrics::{CorrelationKind, DistanceKind, TTestVariant};
use serde::Deserialize;

use crate::args::Format;
use crate::error::{CliError, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lexicon: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<Vec<Format>>,
    #[serde(default)]
    pub similarity: SimilarityConfig,
    #[serde(default)]
    pub project: ProjectConfig,
    #[serde(default)]
    pub logprob: LogprobConfig,
    #[serde(default)]
    pub study: StudyConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityConfig {
    pub left: Option<PathBuf>,
    pub right: Option<PathBuf>,
    pub distance: Option<DistanceKind>,
    pub correlation: Option<CorrelationKind>,
    pub ttest_against: Option<PathBuf>,
    pub ttest_variant: Option<TTestVariant>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfig {
    pub embeddings: Option<Vec<PathBuf>>,
    pub anchors: Option<PathBuf>,
    pub labels: Option<Vec<String>>,
    pub merge_anchors: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogprobConfig {
    pub records: Option<PathBuf>,
    pub word_classes: Option<PathBuf>,
    /// `pride=LANG,shame=LANG`
    pub expect: Option<String>,
    pub score_mode: Option<ScoreMode>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub annotations: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut config: Self = toml::from_str(&text)
            .map_err(|e| CliError::validation(format!("invalid config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        config.resolve_paths(base);
        Ok(config)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(path) = p {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        };
        fix(&mut self.lexicon);
        fix(&mut self.out);
        fix(&mut self.similarity.left);
        fix(&mut self.similarity.right);
        fix(&mut self.similarity.ttest_against);
        fix(&mut self.project.anchors);
        if let Some(paths) = &mut self.project.embeddings {
            for path in paths.iter_mut().filter(|p| p.is_relative()) {
                *path = base.join(&*path);
            }
        }
        fix(&mut self.logprob.records);
        fix(&mut self.logprob.word_classes);
        fix(&mut self.study.annotations);
    }
}

/// Returns `path` when it names an existing file.
pub fn existing(path: Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    let path = path.ok_or_else(|| CliError::validation(format!("missing required --{flag}")))?;
    if !path.is_file() {
        return Err(CliError::validation(format!(
            "--{flag}: no such file {}",
            path.display()
        )));
    }
    Ok(path)
}

/// Like [`existing`] for optional inputs.
pub fn existing_opt(path: Option<PathBuf>, flag: &str) -> Result<Option<PathBuf>> {
    match path {
        Some(p) => existing(Some(p), flag).map(Some),
        None => Ok(None),
    }
}
