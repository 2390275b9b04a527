//! Summed token log-probabilities of `<context><feeling>` completions and the
//! cross-language pride/shame comparison built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum GenprobError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("scenario `{scenario}`, word `{word}`, language `{language}`: empty token list")]
    EmptyTokens {
        scenario: String,
        word: String,
        language: String,
    },
    #[error("scenario `{scenario}`, word `{word}`, language `{language}`: non-finite token log-probability")]
    NonFiniteLogProb {
        scenario: String,
        word: String,
        language: String,
    },
    #[error("emotion word `{0}` is not in the word-class map")]
    UnknownWord(String),
    #[error("emotion word `{word}` is a {expected} word but the record says {found}")]
    ClassMismatch {
        word: String,
        expected: EmotionClass,
        found: EmotionClass,
    },
    #[error("scenario `{scenario}`: duplicate cell (word `{word}`, language `{language}`)")]
    DuplicateCell {
        scenario: String,
        word: String,
        language: String,
    },
    #[error("scenario `{scenario}`: missing cell (word `{word}`, language `{language}`)")]
    MissingCell {
        scenario: String,
        word: String,
        language: String,
    },
    #[error("no records for scenario `{0}`")]
    NoRecords(String),
    #[error("scenario `{scenario}` has no records in expected language `{language}`")]
    ExpectationLanguageMissing { scenario: String, language: String },
    #[error("invalid word-class map: {0}")]
    WordClasses(String),
    #[error("invalid expectation `{0}`: expected pride=LANG,shame=LANG")]
    Expectation(String),
}

pub type Result<T, E = GenprobError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionClass {
    Pride,
    Shame,
}

impl fmt::Display for EmotionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmotionClass::Pride => "pride",
            EmotionClass::Shame => "shame",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordClassEntry {
    /// Cross-language key: records in every language use this gloss as
    /// their `emotion_word`.
    pub word: String,
    pub class: EmotionClass,
    /// Surface forms per language, for reference and prompt generation.
    #[serde(default)]
    pub translations: BTreeMap<String, String>,
}

/// Emotion words and their class. Entry order is the column order of
/// emitted tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordClassMap {
    pub words: Vec<WordClassEntry>,
}

impl Default for WordClassMap {
    fn default() -> Self {
        let entry = |word: &str, class, ja: &str| WordClassEntry {
            word: word.to_string(),
            class,
            translations: BTreeMap::from([("ja".to_string(), ja.to_string())]),
        };
        Self {
            words: vec![
                entry("proud", EmotionClass::Pride, "誇らしい"),
                entry("happy", EmotionClass::Pride, "嬉しい"),
                entry("ashamed", EmotionClass::Shame, "恥ずかしい"),
                entry("embarrassed", EmotionClass::Shame, "照れくさい"),
            ],
        }
    }
}

impl WordClassMap {
    pub fn from_json(text: &str) -> Result<Self> {
        let map: Self = serde_json::from_str(text).map_err(|e| GenprobError::WordClasses(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for entry in &map.words {
            if entry.word.is_empty() {
                return Err(GenprobError::WordClasses("empty word".into()));
            }
            if !seen.insert(entry.word.as_str()) {
                return Err(GenprobError::WordClasses(format!("duplicate word `{}`", entry.word)));
            }
        }
        Ok(map)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| GenprobError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn class_of(&self, word: &str) -> Option<EmotionClass> {
        self.words.iter().find(|e| e.word == word).map(|e| e.class)
    }

    /// Orders `words` by map order, unknown words last in sorted order.
    pub fn column_order<'a>(&self, words: impl IntoIterator<Item = &'a str>) -> Vec<String> {
        let present: BTreeSet<&str> = words.into_iter().collect();
        let mut ordered: Vec<String> = self
            .words
            .iter()
            .filter(|e| present.contains(e.word.as_str()))
            .map(|e| e.word.clone())
            .collect();
        for w in present {
            if self.class_of(w).is_none() {
                ordered.push(w.to_string());
            }
        }
        ordered
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct TokenLogProb<T> {
    pub token: String,
    pub logprob: T,
}

/// One `<context><feeling>` prompt with the log-probabilities of the tokens
/// of its feeling sentence only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct LogProbRecord<T> {
    pub scenario_id: String,
    pub language: String,
    pub model_id: String,
    pub context_text: String,
    pub feeling_text: String,
    pub emotion_word: String,
    pub emotion_class: EmotionClass,
    pub token_logprobs: Vec<TokenLogProb<T>>,
}

impl<T: Scalar> LogProbRecord<T> {
    fn check_tokens(&self) -> Result<()> {
        let ids = || {
            (
                self.scenario_id.clone(),
                self.emotion_word.clone(),
                self.language.clone(),
            )
        };
        if self.token_logprobs.is_empty() {
            let (scenario, word, language) = ids();
            return Err(GenprobError::EmptyTokens {
                scenario,
                word,
                language,
            });
        }
        if self.token_logprobs.iter().any(|t| !t.logprob.is_finite()) {
            let (scenario, word, language) = ids();
            return Err(GenprobError::NonFiniteLogProb {
                scenario,
                word,
                language,
            });
        }
        Ok(())
    }

    /// Checks tokens and that the record's class agrees with `classes`.
    pub fn validate(&self, classes: &WordClassMap) -> Result<()> {
        self.check_tokens()?;
        match classes.class_of(&self.emotion_word) {
            None => Err(GenprobError::UnknownWord(self.emotion_word.clone())),
            Some(expected) if expected != self.emotion_class => Err(GenprobError::ClassMismatch {
                word: self.emotion_word.clone(),
                expected,
                found: self.emotion_class,
            }),
            Some(_) => Ok(()),
        }
    }
}

pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<LogProbRecord<f64>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| GenprobError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_records(BufReader::new(file))
}

/// Parses JSON Lines records. Blank lines are skipped.
pub fn read_records(reader: impl BufRead) -> Result<Vec<LogProbRecord<f64>>> {
    let mut records = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| GenprobError::Parse {
            line: n + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: LogProbRecord<f64> = serde_json::from_str(&line).map_err(|e| GenprobError::Parse {
            line: n + 1,
            message: e.to_string(),
        })?;
        record.check_tokens()?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_records<T: Scalar>(records: &[LogProbRecord<T>], mut out: impl Write) -> std::io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// How token log-probabilities are combined into a feeling score.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    #[default]
    Sum,
    /// Per-token mean; removes the token-count confound across languages.
    Mean,
}

impl FromStr for ScoreMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sum" => Ok(ScoreMode::Sum),
            "mean" => Ok(ScoreMode::Mean),
            other => Err(format!("unknown score mode `{other}` (expected sum or mean)")),
        }
    }
}

/// Sum of the feeling sentence's token log-probabilities.
pub fn feeling_score<T: Scalar>(record: &LogProbRecord<T>) -> Result<T> {
    score(record, ScoreMode::Sum)
}

pub fn score<T: Scalar>(record: &LogProbRecord<T>, mode: ScoreMode) -> Result<T> {
    record.check_tokens()?;
    let sum = record.token_logprobs.iter().fold(T::zero(), |acc, t| acc + t.logprob);
    Ok(match mode {
        ScoreMode::Sum => sum,
        ScoreMode::Mean => sum / T::from_count(record.token_logprobs.len()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell<T> {
    pub score: T,
    pub token_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Language(String),
    /// Languages sharing the maximal score.
    Tie(Vec<String>),
}

impl Winner {
    pub fn is_language(&self, language: &str) -> bool {
        matches!(self, Winner::Language(l) if l == language)
    }

    pub fn includes(&self, language: &str) -> bool {
        match self {
            Winner::Language(l) => l == language,
            Winner::Tie(ls) => ls.iter().any(|l| l == language),
        }
    }
}

/// Scores of one scenario for every (emotion word, language) cell, with the
/// language that gives each word the highest score.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioComparison<T> {
    pub scenario_id: String,
    pub mode: ScoreMode,
    /// Context sentence per language.
    pub contexts: BTreeMap<String, String>,
    pub languages: Vec<String>,
    /// word -> language -> cell
    pub table: BTreeMap<String, BTreeMap<String, Cell<T>>>,
    pub winners: BTreeMap<String, Winner>,
}

impl<T: Scalar> ScenarioComparison<T> {
    pub fn cell(&self, word: &str, language: &str) -> Option<&Cell<T>> {
        self.table.get(word)?.get(language)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }
}

/// Builds the score table for `scenario_id`. Every emotion word must appear
/// exactly once in every language present in the scenario.
pub fn compare_scenario<T: Scalar>(
    records: &[LogProbRecord<T>],
    scenario_id: &str,
    mode: ScoreMode,
) -> Result<ScenarioComparison<T>> {
    let mut table: BTreeMap<String, BTreeMap<String, Cell<T>>> = BTreeMap::new();
    let mut languages = BTreeSet::new();
    let mut contexts = BTreeMap::new();
    for record in records.iter().filter(|r| r.scenario_id == scenario_id) {
        let cell = Cell {
            score: score(record, mode)?,
            token_count: record.token_logprobs.len(),
        };
        languages.insert(record.language.clone());
        contexts
            .entry(record.language.clone())
            .or_insert_with(|| record.context_text.clone());
        let row = table.entry(record.emotion_word.clone()).or_default();
        if row.insert(record.language.clone(), cell).is_some() {
            return Err(GenprobError::DuplicateCell {
                scenario: scenario_id.to_string(),
                word: record.emotion_word.clone(),
                language: record.language.clone(),
            });
        }
    }
    if table.is_empty() {
        return Err(GenprobError::NoRecords(scenario_id.to_string()));
    }
    let mut winners = BTreeMap::new();
    for (word, row) in &table {
        if let Some(language) = languages.iter().find(|l| !row.contains_key(*l)) {
            return Err(GenprobError::MissingCell {
                scenario: scenario_id.to_string(),
                word: word.clone(),
                language: language.clone(),
            });
        }
        let best = row.values().map(|c| c.score).fold(T::neg_infinity(), T::max);
        let top: Vec<String> = row
            .iter()
            .filter(|(_, c)| c.score == best)
            .map(|(l, _)| l.clone())
            .collect();
        let winner = if top.len() == 1 {
            Winner::Language(top.into_iter().next().expect("one winner"))
        } else {
            Winner::Tie(top)
        };
        winners.insert(word.clone(), winner);
    }
    Ok(ScenarioComparison {
        scenario_id: scenario_id.to_string(),
        mode,
        contexts,
        languages: languages.into_iter().collect(),
        table,
        winners,
    })
}

/// Scenario ids in order of first appearance.
pub fn scenario_ids<T>(records: &[LogProbRecord<T>]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    records
        .iter()
        .filter(|r| seen.insert(r.scenario_id.as_str()))
        .map(|r| r.scenario_id.clone())
        .collect()
}

/// Compares every scenario, in order of first appearance.
pub fn compare_all<T: Scalar>(records: &[LogProbRecord<T>], mode: ScoreMode) -> Result<Vec<ScenarioComparison<T>>> {
    scenario_ids(records)
        .iter()
        .map(|id| compare_scenario(records, id, mode))
        .collect()
}

/// Language where each emotion class is expected to be more likely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub pride: String,
    pub shame: String,
}

impl Default for Expectation {
    fn default() -> Self {
        Self {
            pride: "en".into(),
            shame: "ja".into(),
        }
    }
}

impl FromStr for Expectation {
    type Err = GenprobError;

    /// Parses `pride=en,shame=ja`.
    fn from_str(s: &str) -> Result<Self> {
        let mut pride = None;
        let mut shame = None;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| GenprobError::Expectation(s.to_string()))?;
            let value = value.trim();
            if value.is_empty() {
                return Err(GenprobError::Expectation(s.to_string()));
            }
            match key.trim() {
                "pride" => pride = Some(value.to_string()),
                "shame" => shame = Some(value.to_string()),
                _ => return Err(GenprobError::Expectation(s.to_string())),
            }
        }
        match (pride, shame) {
            (Some(pride), Some(shame)) => Ok(Self { pride, shame }),
            _ => Err(GenprobError::Expectation(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent evidence")]
    ConsistentEvidence,
    #[serde(rename = "no consistent evidence")]
    NoConsistentEvidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentEvidence => "consistent evidence",
            Verdict::NoConsistentEvidence => "no consistent evidence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioSupport {
    pub scenario_id: String,
    /// Every pride word wins in the pride-expected language.
    pub pride_supported: bool,
    /// Every shame word wins in the shame-expected language.
    pub shame_supported: bool,
    /// Words whose winner is not their expected language (ties included).
    pub contradicting_words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub expectation: Expectation,
    pub scenarios: Vec<ScenarioSupport>,
    pub n_scenarios: usize,
    pub pride_supported_count: usize,
    pub shame_supported_count: usize,
    pub verdict: Verdict,
}

/// Checks, per scenario, whether every pride word is most likely in the
/// pride language and every shame word in the shame language. The verdict
/// is "consistent evidence" only when both hold in every scenario. A class
/// with no words in a scenario counts as unsupported there.
pub fn evaluate_hypotheses<T: Scalar>(
    comparisons: &[ScenarioComparison<T>],
    expectation: &Expectation,
    classes: &WordClassMap,
) -> Result<HypothesisReport> {
    let mut scenarios = Vec::with_capacity(comparisons.len());
    for comparison in comparisons {
        for language in [&expectation.pride, &expectation.shame] {
            if !comparison.languages.contains(language) {
                return Err(GenprobError::ExpectationLanguageMissing {
                    scenario: comparison.scenario_id.clone(),
                    language: language.clone(),
                });
            }
        }
        let mut contradicting = Vec::new();
        let mut seen = [false, false];
        for word in classes.column_order(comparison.words()) {
            let class = classes
                .class_of(&word)
                .ok_or_else(|| GenprobError::UnknownWord(word.clone()))?;
            let expected = match class {
                EmotionClass::Pride => &expectation.pride,
                EmotionClass::Shame => &expectation.shame,
            };
            seen[class as usize] = true;
            if !comparison.winners[&word].is_language(expected) {
                contradicting.push(word);
            }
        }
        let supported = |class: EmotionClass| {
            seen[class as usize] && contradicting.iter().all(|w| classes.class_of(w) != Some(class))
        };
        scenarios.push(ScenarioSupport {
            scenario_id: comparison.scenario_id.clone(),
            pride_supported: supported(EmotionClass::Pride),
            shame_supported: supported(EmotionClass::Shame),
            contradicting_words: contradicting,
        });
    }
    let pride_supported_count = scenarios.iter().filter(|s| s.pride_supported).count();
    let shame_supported_count = scenarios.iter().filter(|s| s.shame_supported).count();
    let n = scenarios.len();
    let verdict = if n > 0 && pride_supported_count == n && shame_supported_count == n {
        Verdict::ConsistentEvidence
    } else {
        Verdict::NoConsistentEvidence
    };
    Ok(HypothesisReport {
        expectation: expectation.clone(),
        scenarios,
        n_scenarios: n,
        pride_supported_count,
        shame_supported_count,
        verdict,
    })
}

/// One row per (scenario, language): the scores of each emotion word in
/// class-map column order, and the words this language wins.
pub fn write_comparison_csv<T: Scalar>(
    comparisons: &[ScenarioComparison<T>],
    classes: &WordClassMap,
    out: impl Write,
) -> csv::Result<()> {
    let words = classes.column_order(comparisons.iter().flat_map(|c| c.words()));
    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec!["scenario_id".to_string(), "language".into(), "context".into()];
    header.extend(words.iter().cloned());
    header.push("wins".into());
    writer.write_record(&header)?;
    for comparison in comparisons {
        for language in &comparison.languages {
            let mut row = vec![
                comparison.scenario_id.clone(),
                language.clone(),
                comparison.contexts.get(language).cloned().unwrap_or_default(),
            ];
            let mut wins = Vec::new();
            for word in &words {
                row.push(
                    comparison
                        .cell(word, language)
                        .map(|c| c.score.to_string())
                        .unwrap_or_default(),
                );
                match comparison.winners.get(word) {
                    Some(Winner::Language(l)) if l == language => wins.push(word.clone()),
                    Some(Winner::Tie(ls)) if ls.contains(language) => wins.push(format!("{word}(tie)")),
                    _ => {}
                }
            }
            row.push(wins.join(";"));
            writer.write_record(&row)?;
        }
    }
    writer.flush()?;
    Ok(())
}
