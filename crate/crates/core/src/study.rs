//! Human cultural-awareness ratings of model completions: per-group means
//! and pairwise annotator agreement.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{pearson, MetricsError};
use crate::scalar::Scalar;

pub const MIN_SCORE: i64 = 1;
pub const MAX_SCORE: i64 = 7;

pub const HEADER: [&str; 7] = [
    "question_id",
    "language",
    "model_id",
    "context_mode",
    "annotator_id",
    "score",
    "completion_text",
];

/// Problem with a single annotation row. `line` is the 1-based line in the
/// file where the row starts (the header is line 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn join_rows(rows: &[RowError]) -> String {
    rows.iter().map(RowError::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad header: expected {expected}, found {found}")]
    Header { expected: String, found: String },
    #[error("{} invalid annotation row(s): {}", .0.len(), join_rows(.0))]
    InvalidRows(Vec<RowError>),
    #[error("no annotation records")]
    Empty,
    #[error("group {group}: expected exactly two annotators, found {found:?}")]
    AnnotatorCount { group: String, found: Vec<String> },
    #[error("group {group}: question `{question_id}` rated by `{rated_by}` but not by `{missing}`")]
    UnpairedQuestion {
        group: String,
        question_id: String,
        rated_by: String,
        missing: String,
    },
    #[error("group {group}: annotator `{annotator_id}` rated question `{question_id}` more than once")]
    DuplicateRating {
        group: String,
        question_id: String,
        annotator_id: String,
    },
}

pub type Result<T, E = StudyError> = std::result::Result<T, E>;

/// How cultural context reaches the model: an English prompt naming the
/// country, or a prompt translated into the target language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContextMode {
    English,
    Native,
}

impl ContextMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ContextMode::English => "english",
            ContextMode::Native => "native",
        }
    }
}

impl fmt::Display for ContextMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for ContextMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "english" => Ok(ContextMode::English),
            "native" => Ok(ContextMode::Native),
            other => Err(format!("unknown context_mode `{other}` (expected english or native)")),
        }
    }
}

/// One annotator's 1-7 rating of one model completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub question_id: String,
    pub language: String,
    pub model_id: String,
    pub context_mode: ContextMode,
    pub annotator_id: String,
    pub score: u8,
    pub completion_text: String,
}

fn parse_score(raw: &str) -> std::result::Result<u8, String> {
    let s = raw.trim();
    if s.is_empty() {
        return Err("missing score".into());
    }
    match s.parse::<i64>() {
        Ok(v) if (MIN_SCORE..=MAX_SCORE).contains(&v) => Ok(v as u8),
        Ok(v) => Err(format!("score {v} outside {MIN_SCORE}..={MAX_SCORE}")),
        Err(_) => match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v.fract() != 0.0 => Err(format!(
                "fractional score `{s}`; scores are integers {MIN_SCORE}..={MAX_SCORE}"
            )),
            Ok(v) if v.is_finite() => Err(format!("score `{s}` must be written as an integer")),
            _ => Err(format!("score `{s}` is not a number")),
        },
    }
}

pub fn load_annotations(path: impl AsRef<Path>) -> Result<Vec<AnnotationRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| StudyError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_annotations(file)
}

/// Parses the annotation CSV. Every invalid row is reported, not just the
/// first one.
pub fn read_annotations(reader: impl Read) -> Result<Vec<AnnotationRecord>> {
    let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = csv.headers()?.clone();
    if header.iter().map(str::trim).ne(HEADER.iter().copied()) {
        return Err(StudyError::Header {
            expected: HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for row in csv.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(i).unwrap_or("").trim();
        let mut fail = |message: String| errors.push(RowError { line, message });
        if row.len() != HEADER.len() {
            fail(format!("expected {} fields, found {}", HEADER.len(), row.len()));
            continue;
        }
        let mut ok = true;
        for (i, name) in HEADER.iter().enumerate().take(5) {
            if field(i).is_empty() {
                fail(format!("empty {name}"));
                ok = false;
            }
        }
        let context_mode = match field(3).parse::<ContextMode>() {
            Ok(m) => Some(m),
            Err(e) => {
                if !field(3).is_empty() {
                    fail(e);
                }
                None
            }
        };
        let score = match parse_score(field(5)) {
            Ok(s) => Some(s),
            Err(e) => {
                fail(e);
                None
            }
        };
        if let (true, Some(context_mode), Some(score)) = (ok, context_mode, score) {
            records.push(AnnotationRecord {
                question_id: field(0).to_string(),
                language: field(1).to_string(),
                model_id: field(2).to_string(),
                context_mode,
                annotator_id: field(4).to_string(),
                score,
                completion_text: row.get(6).unwrap_or("").to_string(),
            });
        }
    }
    if !errors.is_empty() {
        return Err(StudyError::InvalidRows(errors));
    }
    Ok(records)
}

pub fn write_annotations(records: &[AnnotationRecord], out: impl Write) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(HEADER)?;
    for r in records {
        writer.write_record([
            r.question_id.as_str(),
            &r.language,
            &r.model_id,
            r.context_mode.as_str(),
            &r.annotator_id,
            &r.score.to_string(),
            &r.completion_text,
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AwarenessEntry<T> {
    pub model_id: String,
    pub context_mode: ContextMode,
    pub language: String,
    pub mean: T,
    pub count: usize,
    pub min: u8,
    pub max: u8,
}

/// Mean rating per (model, context mode, language), sorted by that key.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AwarenessTable<T> {
    pub entries: Vec<AwarenessEntry<T>>,
}

impl<T: Scalar> AwarenessTable<T> {
    pub fn get(&self, model_id: &str, context_mode: ContextMode, language: &str) -> Option<&AwarenessEntry<T>> {
        self.entries
            .iter()
            .find(|e| e.model_id == model_id && e.context_mode == context_mode && e.language == language)
    }

    pub fn models(&self) -> Vec<&str> {
        let mut models: Vec<&str> = self.entries.iter().map(|e| e.model_id.as_str()).collect();
        models.dedup();
        models
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["model_id", "context_mode", "language", "mean", "count"])?;
        for e in &self.entries {
            writer.write_record([
                e.model_id.as_str(),
                e.context_mode.as_str(),
                &e.language,
                &e.mean.to_string(),
                &e.count.to_string(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Sum, count, min and max of the scores in one group.
type Tally = (u64, usize, u8, u8);

/// Arithmetic mean of all ratings in each (model, context mode, language)
/// group. Sums are exact integers, so the means do not depend on record order.
pub fn mean_awareness<T: Scalar>(records: &[AnnotationRecord]) -> Result<AwarenessTable<T>> {
    if records.is_empty() {
        return Err(StudyError::Empty);
    }
    let mut groups: BTreeMap<(&str, ContextMode, &str), Tally> = BTreeMap::new();
    for r in records {
        let g = groups
            .entry((r.model_id.as_str(), r.context_mode, r.language.as_str()))
            .or_insert((0, 0, u8::MAX, u8::MIN));
        g.0 += u64::from(r.score);
        g.1 += 1;
        g.2 = g.2.min(r.score);
        g.3 = g.3.max(r.score);
    }
    let entries = groups
        .into_iter()
        .map(|((model, mode, language), (sum, count, min, max))| AwarenessEntry {
            model_id: model.to_string(),
            context_mode: mode,
            language: language.to_string(),
            mean: T::from_u64(sum).expect("sum representable") / T::from_count(count),
            count,
            min,
            max,
        })
        .collect();
    Ok(AwarenessTable { entries })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementEntry<T> {
    pub language: String,
    pub model_id: String,
    pub context_mode: ContextMode,
    /// The two annotators, sorted.
    pub annotators: [String; 2],
    pub n_questions: usize,
    /// `None` when either annotator's score list is constant.
    pub r: Option<T>,
}

/// Pearson agreement per (language, model, context mode), sorted by that key.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementTable<T> {
    pub entries: Vec<AgreementEntry<T>>,
}

impl<T: Scalar> AgreementTable<T> {
    pub fn get(&self, language: &str, model_id: &str, context_mode: ContextMode) -> Option<&AgreementEntry<T>> {
        self.entries
            .iter()
            .find(|e| e.language == language && e.model_id == model_id && e.context_mode == context_mode)
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record([
            "language",
            "model_id",
            "context_mode",
            "annotator_a",
            "annotator_b",
            "n_questions",
            "r",
        ])?;
        for e in &self.entries {
            writer.write_record([
                e.language.as_str(),
                &e.model_id,
                e.context_mode.as_str(),
                &e.annotators[0],
                &e.annotators[1],
                &e.n_questions.to_string(),
                &e.r.map(|r| r.to_string()).unwrap_or_default(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Pearson correlation between the two annotators of each group, over
/// score pairs aligned by question id.
pub fn annotator_agreement<T: Scalar>(records: &[AnnotationRecord]) -> Result<AgreementTable<T>> {
    if records.is_empty() {
        return Err(StudyError::Empty);
    }
    // group -> annotator -> question -> score
    type Ratings<'a> = BTreeMap<&'a str, BTreeMap<&'a str, u8>>;
    let mut groups: BTreeMap<(&str, &str, ContextMode), Ratings> = BTreeMap::new();
    let label = |(l, m, c): (&str, &str, ContextMode)| format!("({l}, {m}, {c})");
    for r in records {
        let key = (r.language.as_str(), r.model_id.as_str(), r.context_mode);
        let scores = groups
            .entry(key)
            .or_default()
            .entry(r.annotator_id.as_str())
            .or_default();
        if scores.insert(r.question_id.as_str(), r.score).is_some() {
            return Err(StudyError::DuplicateRating {
                group: label(key),
                question_id: r.question_id.clone(),
                annotator_id: r.annotator_id.clone(),
            });
        }
    }
    let mut entries = Vec::with_capacity(groups.len());
    for (key, ratings) in groups {
        if ratings.len() != 2 {
            return Err(StudyError::AnnotatorCount {
                group: label(key),
                found: ratings.keys().map(|a| a.to_string()).collect(),
            });
        }
        let mut it = ratings.iter();
        let (a, sa) = it.next().expect("two annotators");
        let (b, sb) = it.next().expect("two annotators");
        for (rated_by, mine, missing, theirs) in [(a, sa, b, sb), (b, sb, a, sa)] {
            if let Some(q) = mine.keys().find(|q| !theirs.contains_key(*q)) {
                return Err(StudyError::UnpairedQuestion {
                    group: label(key),
                    question_id: q.to_string(),
                    rated_by: rated_by.to_string(),
                    missing: missing.to_string(),
                });
            }
        }
        let xs: Vec<T> = sa.values().map(|&s| T::from_u8(s).expect("small int")).collect();
        let ys: Vec<T> = sb.values().map(|&s| T::from_u8(s).expect("small int")).collect();
        let r = match pearson(&xs, &ys) {
            Ok(r) => r,
            Err(MetricsError::TooShort { .. }) => None,
            Err(e) => unreachable!("aligned integer scores: {e}"),
        };
        entries.push(AgreementEntry {
            language: key.0.to_string(),
            model_id: key.1.to_string(),
            context_mode: key.2,
            annotators: [a.to_string(), b.to_string()],
            n_questions: xs.len(),
            r,
        });
    }
    Ok(AgreementTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(q: &str, annotator: &str, score: u8) -> AnnotationRecord {
        AnnotationRecord {
            question_id: q.into(),
            language: "en".into(),
            model_id: "gpt-3.5".into(),
            context_mode: ContextMode::English,
            annotator_id: annotator.into(),
            score,
            completion_text: String::new(),
        }
    }

    fn csv_text(rows: &[&str]) -> String {
        let mut s = HEADER.join(",");
        for r in rows {
            s.push('\n');
            s.push_str(r);
        }
        s
    }

    #[test]
    fn means() {
        let t = mean_awareness::<f64>(&[rec("q1", "a", 7), rec("q2", "a", 7)]).unwrap();
        assert_eq!(t.entries[0].mean, 7.0);
        let t = mean_awareness::<f64>(&[rec("q1", "a", 3), rec("q1", "b", 4)]).unwrap();
        assert_eq!(t.entries[0].mean, 3.5);
        assert_eq!(t.entries[0].count, 2);
        let t = mean_awareness::<f64>(&[rec("q1", "a", 5)]).unwrap();
        assert_eq!((t.entries.len(), t.entries[0].mean), (1, 5.0));
        assert!(matches!(mean_awareness::<f64>(&[]), Err(StudyError::Empty)));
    }

    #[test]
    fn means_group_by_model_mode_language() {
        let mut other = rec("q1", "a", 1);
        other.context_mode = ContextMode::Native;
        let t = mean_awareness::<f64>(&[rec("q1", "a", 5), other]).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.get("gpt-3.5", ContextMode::Native, "en").unwrap().mean, 1.0);
        assert_eq!(t.get("gpt-3.5", ContextMode::English, "en").unwrap().mean, 5.0);
    }

    #[test]
    fn agreement_identical_and_anti() {
        let scores = [1, 3, 5, 7, 2];
        let same: Vec<_> = scores
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| [rec(&format!("q{i}"), "a", s), rec(&format!("q{i}"), "b", s)])
            .collect();
        let t = annotator_agreement::<f64>(&same).unwrap();
        assert!((t.entries[0].r.unwrap() - 1.0).abs() < 1e-12);
        let anti: Vec<_> = scores
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| [rec(&format!("q{i}"), "a", s), rec(&format!("q{i}"), "b", 8 - s)])
            .collect();
        let t = annotator_agreement::<f64>(&anti).unwrap();
        assert!((t.entries[0].r.unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(t.entries[0].annotators, ["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn agreement_constant_list_is_undefined() {
        let recs = [
            rec("q1", "a", 4),
            rec("q1", "b", 2),
            rec("q2", "a", 4),
            rec("q2", "b", 6),
        ];
        assert_eq!(annotator_agreement::<f64>(&recs).unwrap().entries[0].r, None);
    }

    #[test]
    fn agreement_errors() {
        let recs = [rec("q1", "a", 4), rec("q1", "b", 2), rec("q2", "a", 5)];
        match annotator_agreement::<f64>(&recs) {
            Err(StudyError::UnpairedQuestion {
                question_id, missing, ..
            }) => {
                assert_eq!((question_id.as_str(), missing.as_str()), ("q2", "b"))
            }
            other => panic!("expected UnpairedQuestion, got {other:?}"),
        }
        let recs = [rec("q1", "a", 4), rec("q1", "b", 2), rec("q1", "c", 5)];
        assert!(matches!(
            annotator_agreement::<f64>(&recs),
            Err(StudyError::AnnotatorCount { .. })
        ));
        let recs = [rec("q1", "a", 4), rec("q2", "a", 2)];
        assert!(matches!(
            annotator_agreement::<f64>(&recs),
            Err(StudyError::AnnotatorCount { .. })
        ));
        let recs = [rec("q1", "a", 4), rec("q1", "a", 2), rec("q1", "b", 3)];
        assert!(matches!(
            annotator_agreement::<f64>(&recs),
            Err(StudyError::DuplicateRating { .. })
        ));
    }

    #[test]
    fn csv_parses_quoted_completion() {
        let text = csv_text(&[
            "q1,en,gpt-4,english,a,6,\"A long answer, with a comma\nand a newline\"",
            "q1,en,gpt-4,english,b,5,short",
        ]);
        let recs = read_annotations(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].completion_text, "A long answer, with a comma\nand a newline");
        assert_eq!(recs[1].score, 5);
    }

    #[test]
    fn csv_rejects_bad_scores_with_lines() {
        let text = csv_text(&[
            "q1,en,gpt-4,english,a,6,ok",
            "q1,en,gpt-4,english,b,8,too high",
            "q2,en,gpt-4,english,a,4.5,fractional",
            "q2,en,gpt-4,english,b,0,too low",
            "q3,en,gpt-4,english,a,,empty",
            "q3,en,gpt-4,sideways,b,3,bad mode",
        ]);
        match read_annotations(text.as_bytes()) {
            Err(StudyError::InvalidRows(rows)) => {
                let lines: Vec<u64> = rows.iter().map(|r| r.line).collect();
                assert_eq!(lines, [3, 4, 5, 6, 7]);
                assert!(rows[0].message.contains("outside"));
                assert!(rows[1].message.contains("fractional"));
                assert!(rows[3].message.contains("missing score"));
                assert!(rows[4].message.contains("context_mode"));
            }
            other => panic!("expected InvalidRows, got {other:?}"),
        }
    }

    #[test]
    fn csv_rejects_bad_header() {
        let text = "question,language\nq1,en";
        assert!(matches!(
            read_annotations(text.as_bytes()),
            Err(StudyError::Header { .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let mut recs = vec![rec("q1", "a", 3), rec("q1", "b", 7)];
        recs[0].completion_text = "quoted \"text\", here".into();
        let mut buf = Vec::new();
        write_annotations(&recs, &mut buf).unwrap();
        assert_eq!(read_annotations(buf.as_slice()).unwrap(), recs);
    }
}
