//! Emotion lexica, embedding sets, and lemma-aligned pairing of two sets.
//!
//! Lexicon and embedding files are UTF-8 JSON Lines. The lexicon's line order
//! is the canonical lemma order used by every downstream vector construction.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::scalar::Scalar;

/// Smallest lemma intersection for which a per-lemma correlation exists.
pub const MIN_PAIRED_LEMMAS: usize = 3;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate lemma `{lemma}`")]
    DuplicateLemma { lemma: String, line: usize },
    #[error("line {line}: empty lemma id")]
    EmptyLemma { line: usize },
    #[error("lemma `{lemma}`: empty language code")]
    EmptyLanguage { lemma: String },
    #[error("lemma `{lemma}`: missing `{variant}` phrase for language `{language}`")]
    MissingPhrase {
        lemma: String,
        language: String,
        variant: &'static str,
    },
    #[error("lemma `{lemma}`: empty `{variant}` phrase for language `{language}`")]
    EmptyPhrase {
        lemma: String,
        language: String,
        variant: &'static str,
    },
    #[error("lexicon has no entries")]
    EmptyLexicon,
    #[error("embedding file has no header line")]
    MissingHeader,
    #[error("embedding dimension must be positive")]
    ZeroDimension,
    #[error("lemma `{lemma}`: vector has {found} components, expected {expected}")]
    DimensionMismatch {
        lemma: String,
        expected: usize,
        found: usize,
    },
    #[error("lemma `{lemma}`: component {index} is not finite")]
    NonFiniteVector { lemma: String, index: usize },
    #[error("lemma `{lemma}` is not in the lexicon")]
    UnknownLemma { lemma: String },
    #[error("language `{language}` is not declared by the lexicon")]
    UnknownLanguage { language: String },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("only {found} lemmas shared by both sets, need at least {MIN_PAIRED_LEMMAS}")]
    IntersectionTooSmall { found: usize },
}

pub type Result<T, E = CorpusError> = std::result::Result<T, E>;

/// The two contextualized phrasings of one emotion in one language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhrasePair {
    pub feel: String,
    pub am: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexiconEntry {
    pub lemma: String,
    pub phrases: BTreeMap<String, PhrasePair>,
}

/// Per-language contextualized emotion phrases keyed by English lemma.
#[derive(Clone, Debug)]
pub struct EmotionLexicon {
    entries: Vec<LexiconEntry>,
    languages: BTreeSet<String>,
    index: HashMap<String, usize>,
}

impl EmotionLexicon {
    /// Validates entries and fixes their order as the canonical order.
    ///
    /// The declared languages are the union over all entries; every entry must
    /// then carry both phrase variants for every declared language.
    pub fn from_entries(entries: Vec<LexiconEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(CorpusError::EmptyLexicon);
        }
        let mut index = HashMap::with_capacity(entries.len());
        let mut languages = BTreeSet::new();
        for (i, entry) in entries.iter().enumerate() {
            if entry.lemma.is_empty() {
                return Err(CorpusError::EmptyLemma { line: i + 1 });
            }
            if index.insert(entry.lemma.clone(), i).is_some() {
                return Err(CorpusError::DuplicateLemma {
                    lemma: entry.lemma.clone(),
                    line: i + 1,
                });
            }
            for (language, pair) in &entry.phrases {
                if language.is_empty() {
                    return Err(CorpusError::EmptyLanguage {
                        lemma: entry.lemma.clone(),
                    });
                }
                for (variant, text) in [("feel", &pair.feel), ("am", &pair.am)] {
                    if text.trim().is_empty() {
                        return Err(CorpusError::EmptyPhrase {
                            lemma: entry.lemma.clone(),
                            language: language.clone(),
                            variant,
                        });
                    }
                }
                languages.insert(language.clone());
            }
        }
        for entry in &entries {
            if let Some(language) = languages.iter().find(|l| !entry.phrases.contains_key(*l)) {
                return Err(CorpusError::MissingPhrase {
                    lemma: entry.lemma.clone(),
                    language: language.clone(),
                    variant: "feel",
                });
            }
        }
        Ok(Self {
            entries,
            languages,
            index,
        })
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn languages(&self) -> &BTreeSet<String> {
        &self.languages
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.index.contains_key(lemma)
    }

    /// Canonical position of a lemma.
    pub fn position(&self, lemma: &str) -> Option<usize> {
        self.index.get(lemma).copied()
    }

    /// Lemma ids in canonical order.
    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.lemma.as_str())
    }

    /// Number of distinct `feel` phrases for a language. Translation
    /// collisions make this smaller than [`len`](Self::len).
    pub fn unique_phrase_count(&self, language: &str) -> usize {
        self.entries
            .iter()
            .filter_map(|e| e.phrases.get(language))
            .map(|p| p.feel.as_str())
            .collect::<BTreeSet<_>>()
            .len()
    }
}

#[derive(Deserialize)]
struct RawPhrasePair {
    feel: Option<String>,
    am: Option<String>,
}

#[derive(Deserialize)]
struct RawLexiconLine {
    lemma: String,
    phrases: BTreeMap<String, RawPhrasePair>,
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<EmotionLexicon> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_lexicon(BufReader::new(file))
}

pub fn read_lexicon(reader: impl BufRead) -> Result<EmotionLexicon> {
    let mut entries = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawLexiconLine = serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if raw.lemma.is_empty() {
            return Err(CorpusError::EmptyLemma { line: line_no });
        }
        if seen.insert(raw.lemma.clone(), line_no).is_some() {
            return Err(CorpusError::DuplicateLemma {
                lemma: raw.lemma,
                line: line_no,
            });
        }
        let mut phrases = BTreeMap::new();
        for (language, pair) in raw.phrases {
            let missing = |variant| CorpusError::MissingPhrase {
                lemma: raw.lemma.clone(),
                language: language.clone(),
                variant,
            };
            let feel = pair.feel.ok_or_else(|| missing("feel"))?;
            let am = pair.am.ok_or_else(|| missing("am"))?;
            phrases.insert(language, PhrasePair { feel, am });
        }
        entries.push(LexiconEntry {
            lemma: raw.lemma,
            phrases,
        });
    }
    EmotionLexicon::from_entries(entries)
}

/// Header line of an embedding file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingHeader {
    pub model_id: String,
    pub language: String,
    pub dim: usize,
    #[serde(default)]
    pub provenance: Value,
}

/// One model's emotion vectors for one language.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSet<T> {
    model_id: String,
    language: String,
    dim: usize,
    vectors: IndexMap<String, Vec<T>>,
    provenance: Value,
}

impl<T: Scalar> EmbeddingSet<T> {
    /// Builds a set from `(lemma, vector)` rows, checking dimensions,
    /// finiteness, and lemma uniqueness. Row order is kept.
    pub fn new<I>(header: EmbeddingHeader, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Vec<T>)>,
    {
        if header.dim == 0 {
            return Err(CorpusError::ZeroDimension);
        }
        let mut vectors = IndexMap::new();
        for (i, (lemma, vector)) in rows.into_iter().enumerate() {
            if lemma.is_empty() {
                return Err(CorpusError::EmptyLemma { line: i + 2 });
            }
            check_vector(&lemma, &vector, header.dim)?;
            if vectors.contains_key(&lemma) {
                return Err(CorpusError::DuplicateLemma { lemma, line: i + 2 });
            }
            vectors.insert(lemma, vector);
        }
        Ok(Self {
            model_id: header.model_id,
            language: header.language,
            dim: header.dim,
            vectors,
            provenance: header.provenance,
        })
    }

    /// Checks that every lemma and the language are declared by `lexicon`.
    pub fn check_against(&self, lexicon: &EmotionLexicon) -> Result<()> {
        if !lexicon.languages().contains(&self.language) {
            return Err(CorpusError::UnknownLanguage {
                language: self.language.clone(),
            });
        }
        match self.vectors.keys().find(|l| !lexicon.contains(l)) {
            Some(lemma) => Err(CorpusError::UnknownLemma { lemma: lemma.clone() }),
            None => Ok(()),
        }
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &Value {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.vectors.contains_key(lemma)
    }

    pub fn get(&self, lemma: &str) -> Option<&[T]> {
        self.vectors.get(lemma).map(Vec::as_slice)
    }

    /// Lemmas in file order.
    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[T])> {
        self.vectors.iter().map(|(l, v)| (l.as_str(), v.as_slice()))
    }

    pub fn header(&self) -> EmbeddingHeader {
        EmbeddingHeader {
            model_id: self.model_id.clone(),
            language: self.language.clone(),
            dim: self.dim,
            provenance: self.provenance.clone(),
        }
    }

    /// Applies `f` to every vector, keeping lemma order and metadata.
    pub fn map_vectors<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&[T]) -> Vec<T>,
    {
        let rows: Vec<(String, Vec<T>)> = self.iter().map(|(l, v)| (l.to_string(), f(v))).collect();
        let mut header = self.header();
        header.dim = rows.first().map_or(self.dim, |(_, v)| v.len());
        Self::new(header, rows)
    }
}

fn check_vector<T: Scalar>(lemma: &str, vector: &[T], dim: usize) -> Result<()> {
    if vector.len() != dim {
        return Err(CorpusError::DimensionMismatch {
            lemma: lemma.to_string(),
            expected: dim,
            found: vector.len(),
        });
    }
    if let Some(index) = vector.iter().position(|x| !x.is_finite()) {
        return Err(CorpusError::NonFiniteVector {
            lemma: lemma.to_string(),
            index,
        });
    }
    Ok(())
}

/// A vector component as it may appear in files written by other tools:
/// a number, `null`, or a quoted `"NaN"`/`"Infinity"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawComponent {
    Number(f64),
    Text(String),
    Null(()),
}

#[derive(Deserialize)]
struct RawEmbeddingRow {
    lemma: String,
    vector: Vec<RawComponent>,
}

/// Quotes bare `NaN`, `Infinity` and `-Infinity` tokens (as emitted by
/// Python's `json` module) so the line parses as strict JSON.
fn quote_nonfinite_literals(line: &str) -> Cow<'_, str> {
    if !line.contains("NaN") && !line.contains("Infinity") {
        return Cow::Borrowed(line);
    }
    let mut out = String::with_capacity(line.len() + 8);
    let mut in_string = false;
    let mut escaped = false;
    let mut rest = line;
    while let Some(c) = rest.chars().next() {
        if in_string {
            out.push(c);
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_string = false;
            }
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '"' {
            in_string = true;
            out.push(c);
            rest = &rest[1..];
            continue;
        }
        if let Some(token) = ["-Infinity", "Infinity", "NaN"]
            .into_iter()
            .find(|t| rest.starts_with(t))
        {
            out.push('"');
            out.push_str(token);
            out.push('"');
            rest = &rest[token.len()..];
            continue;
        }
        out.push(c);
        rest = &rest[c.len_utf8()..];
    }
    Cow::Owned(out)
}

pub fn load_embeddings<T: Scalar>(path: impl AsRef<Path>, lexicon: &EmotionLexicon) -> Result<EmbeddingSet<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_embeddings(BufReader::new(file), lexicon)
}

/// Parses an embedding file and validates it against `lexicon`.
pub fn read_embeddings<T: Scalar>(reader: impl BufRead, lexicon: &EmotionLexicon) -> Result<EmbeddingSet<T>> {
    let mut header: Option<EmbeddingHeader> = None;
    let mut vectors: IndexMap<String, Vec<T>> = IndexMap::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |e: serde_json::Error| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        };
        let Some(head) = &header else {
            let parsed: EmbeddingHeader = serde_json::from_str(&line).map_err(parse_err)?;
            if parsed.dim == 0 {
                return Err(CorpusError::ZeroDimension);
            }
            header = Some(parsed);
            continue;
        };
        let row: RawEmbeddingRow = serde_json::from_str(&quote_nonfinite_literals(&line)).map_err(parse_err)?;
        if !lexicon.contains(&row.lemma) {
            return Err(CorpusError::UnknownLemma { lemma: row.lemma });
        }
        let mut vector = Vec::with_capacity(row.vector.len());
        for (index, component) in row.vector.into_iter().enumerate() {
            let value = match component {
                RawComponent::Number(x) => T::from_f64(x).filter(|v| v.is_finite()),
                RawComponent::Null(()) => None,
                RawComponent::Text(text) => match text.as_str() {
                    "NaN" | "nan" | "Infinity" | "-Infinity" | "inf" | "-inf" => None,
                    other => {
                        return Err(CorpusError::Parse {
                            line: line_no,
                            message: format!("vector component {index} is the string `{other}`"),
                        })
                    }
                },
            };
            match value {
                Some(v) => vector.push(v),
                None => {
                    return Err(CorpusError::NonFiniteVector {
                        lemma: row.lemma,
                        index,
                    })
                }
            }
        }
        check_vector(&row.lemma, &vector, head.dim)?;
        if vectors.contains_key(&row.lemma) {
            return Err(CorpusError::DuplicateLemma {
                lemma: row.lemma,
                line: line_no,
            });
        }
        vectors.insert(row.lemma, vector);
    }
    let header = header.ok_or(CorpusError::MissingHeader)?;
    let set = EmbeddingSet::new(header, vectors)?;
    set.check_against(lexicon)?;
    Ok(set)
}

#[derive(Serialize)]
struct EmbeddingRowOut<'a, T> {
    lemma: &'a str,
    vector: &'a [T],
}

/// Writes the header line followed by one line per lemma, in set order.
/// Floats use shortest round-trip formatting.
pub fn write_embeddings<T: Scalar>(set: &EmbeddingSet<T>, mut out: impl Write) -> std::io::Result<()> {
    serde_json::to_writer(&mut out, &set.header())?;
    out.write_all(b"\n")?;
    for (lemma, vector) in set.iter() {
        serde_json::to_writer(&mut out, &EmbeddingRowOut { lemma, vector })?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Component-wise mean of the "I feel ..." and "I am ..." phrase embeddings.
pub fn mean_contextual_embedding<T: Scalar>(feel: &[T], am: &[T]) -> Result<Vec<T>> {
    if feel.len() != am.len() {
        return Err(CorpusError::LengthMismatch {
            left: feel.len(),
            right: am.len(),
        });
    }
    let two = T::lit(2.0);
    Ok(feel.iter().zip(am).map(|(&a, &b)| (a + b) / two).collect())
}

/// Two embedding sets aligned on their shared lemmas in canonical order.
#[derive(Clone, Debug)]
pub struct PairedSet<'a, T> {
    lemmas: Vec<String>,
    left: &'a EmbeddingSet<T>,
    right: &'a EmbeddingSet<T>,
}

impl<'a, T: Scalar> PairedSet<'a, T> {
    pub fn lemmas(&self) -> &[String] {
        &self.lemmas
    }

    pub fn left(&self) -> &'a EmbeddingSet<T> {
        self.left
    }

    pub fn right(&self) -> &'a EmbeddingSet<T> {
        self.right
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }

    /// Vectors of the paired lemmas in order, for one side.
    pub fn left_vectors(&self) -> Vec<&'a [T]> {
        self.side_vectors(self.left)
    }

    pub fn right_vectors(&self) -> Vec<&'a [T]> {
        self.side_vectors(self.right)
    }

    /// The same pairing with sides exchanged.
    pub fn swapped(&self) -> PairedSet<'a, T> {
        PairedSet {
            lemmas: self.lemmas.clone(),
            left: self.right,
            right: self.left,
        }
    }

    fn side_vectors(&self, set: &'a EmbeddingSet<T>) -> Vec<&'a [T]> {
        self.lemmas
            .iter()
            .map(|l| set.get(l).expect("paired lemma present on both sides"))
            .collect()
    }
}

/// Pairs two sets over the lemmas both contain, in lexicon order. The two
/// sets may differ in dimension.
pub fn pair_sets<'a, T: Scalar>(
    left: &'a EmbeddingSet<T>,
    right: &'a EmbeddingSet<T>,
    lexicon: &EmotionLexicon,
) -> Result<PairedSet<'a, T>> {
    let lemmas: Vec<String> = lexicon
        .lemmas()
        .filter(|l| left.contains(l) && right.contains(l))
        .map(str::to_string)
        .collect();
    if lemmas.len() < MIN_PAIRED_LEMMAS {
        return Err(CorpusError::IntersectionTooSmall { found: lemmas.len() });
    }
    Ok(PairedSet { lemmas, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn lexicon_from(lines: &[Value]) -> Result<EmotionLexicon> {
        let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
        read_lexicon(text.as_bytes())
    }

    fn entry(lemma: &str, langs: &[(&str, &str, &str)]) -> Value {
        let phrases: serde_json::Map<String, Value> = langs
            .iter()
            .map(|(l, f, a)| (l.to_string(), json!({"feel": f, "am": a})))
            .collect();
        json!({"lemma": lemma, "phrases": phrases})
    }

    fn toy_lexicon() -> EmotionLexicon {
        lexicon_from(&[
            entry("joy", &[("en", "I feel joy", "I am joyful")]),
            entry("anger", &[("en", "I feel anger", "I am angry")]),
            entry("fear", &[("en", "I feel fear", "I am afraid")]),
        ])
        .unwrap()
    }

    #[test]
    fn minimal_lexicon() {
        let lex = lexicon_from(&[entry("joy", &[("en", "I feel joy", "I am joyful")])]).unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.languages().len(), 1);
    }

    #[test]
    fn colliding_translations_are_kept() {
        let lex = lexicon_from(&[
            entry(
                "joy",
                &[
                    ("en", "I feel joy", "I am joyful"),
                    ("es", "siento alegría", "soy alegre"),
                ],
            ),
            entry(
                "gladness",
                &[
                    ("en", "I feel gladness", "I am glad"),
                    ("es", "siento alegría", "soy alegre"),
                ],
            ),
        ])
        .unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.unique_phrase_count("es"), 1);
        assert_eq!(lex.unique_phrase_count("en"), 2);
    }

    #[test]
    fn repeated_lemma_rejected() {
        let err = lexicon_from(&[
            entry("joy", &[("en", "I feel joy", "I am joyful")]),
            entry("joy", &[("en", "I feel joy", "I am joyful")]),
        ])
        .unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateLemma { ref lemma, line: 2 } if lemma == "joy"));
    }

    #[test]
    fn missing_variant_and_language_rejected() {
        let err = read_lexicon(r#"{"lemma":"joy","phrases":{"en":{"feel":"I feel joy"}}}"#.as_bytes()).unwrap_err();
        assert!(matches!(err, CorpusError::MissingPhrase { variant: "am", .. }));

        let err = lexicon_from(&[
            entry(
                "joy",
                &[("en", "I feel joy", "I am joyful"), ("ja", "喜びを感じる", "嬉しい")],
            ),
            entry("anger", &[("en", "I feel anger", "I am angry")]),
        ])
        .unwrap_err();
        assert!(matches!(err, CorpusError::MissingPhrase { ref language, .. } if language == "ja"));
    }

    #[test]
    fn empty_phrase_rejected() {
        let err = lexicon_from(&[entry("joy", &[("en", "", "I am joyful")])]).unwrap_err();
        assert!(matches!(err, CorpusError::EmptyPhrase { variant: "feel", .. }));
    }

    #[test]
    fn malformed_json_reports_line() {
        let text = format!("{}\nnot json\n", entry("joy", &[("en", "a", "b")]));
        let err = read_lexicon(text.as_bytes()).unwrap_err();
        assert!(matches!(err, CorpusError::Parse { line: 2, .. }));
    }

    fn embedding_text(rows: &[&str]) -> String {
        let mut text =
            String::from(r#"{"model_id":"m","language":"en","dim":4,"provenance":{"pooling":"mean_tokens"}}"#);
        text.push('\n');
        for r in rows {
            text.push_str(r);
            text.push('\n');
        }
        text
    }

    #[test]
    fn loads_small_embedding_set() {
        let lex = toy_lexicon();
        let text = embedding_text(&[
            r#"{"lemma":"joy","vector":[1,2,3,4]}"#,
            r#"{"lemma":"anger","vector":[0.5,-2,3e-3,4]}"#,
            r#"{"lemma":"fear","vector":[0,0,0,0]}"#,
        ]);
        let set: EmbeddingSet<f64> = read_embeddings(text.as_bytes(), &lex).unwrap();
        assert_eq!(set.dim(), 4);
        assert_eq!(set.len(), 3);
        assert_eq!(set.get("anger").unwrap(), &[0.5, -2.0, 0.003, 4.0]);
        assert_eq!(set.provenance()["pooling"], "mean_tokens");
    }

    #[test]
    fn nan_component_rejected() {
        let lex = toy_lexicon();
        for row in [
            r#"{"lemma":"joy","vector":[1,NaN,3,4]}"#,
            r#"{"lemma":"joy","vector":[1,"NaN",3,4]}"#,
            r#"{"lemma":"joy","vector":[1,2,null,4]}"#,
            r#"{"lemma":"joy","vector":[1,2,3,-Infinity]}"#,
        ] {
            let err = read_embeddings::<f64>(embedding_text(&[row]).as_bytes(), &lex).unwrap_err();
            assert!(matches!(err, CorpusError::NonFiniteVector { .. }), "{row}: {err}");
        }
    }

    #[test]
    fn nonfinite_literals_inside_strings_untouched() {
        assert_eq!(
            quote_nonfinite_literals(r#"{"lemma":"NaN Infinity","vector":[NaN]}"#),
            r#"{"lemma":"NaN Infinity","vector":["NaN"]}"#
        );
    }

    #[test]
    fn unknown_lemma_rejected() {
        let lex = toy_lexicon();
        let text = embedding_text(&[r#"{"lemma":"zzz","vector":[1,2,3,4]}"#]);
        let err = read_embeddings::<f64>(text.as_bytes(), &lex).unwrap_err();
        assert!(matches!(err, CorpusError::UnknownLemma { ref lemma } if lemma == "zzz"));
    }

    #[test]
    fn ragged_rows_rejected() {
        let lex = toy_lexicon();
        let text = embedding_text(&[r#"{"lemma":"joy","vector":[1,2,3]}"#]);
        let err = read_embeddings::<f64>(text.as_bytes(), &lex).unwrap_err();
        assert!(matches!(
            err,
            CorpusError::DimensionMismatch {
                expected: 4,
                found: 3,
                ..
            }
        ));
    }

    #[test]
    fn header_required_and_language_checked() {
        let lex = toy_lexicon();
        assert!(matches!(
            read_embeddings::<f64>("".as_bytes(), &lex).unwrap_err(),
            CorpusError::MissingHeader
        ));
        let text = r#"{"model_id":"m","language":"fr","dim":2}"#;
        assert!(matches!(
            read_embeddings::<f64>(text.as_bytes(), &lex).unwrap_err(),
            CorpusError::UnknownLanguage { .. }
        ));
    }

    #[test]
    fn mean_contextual_examples() {
        assert_eq!(
            mean_contextual_embedding(&[1.0, 1.0], &[1.0, 1.0]).unwrap(),
            vec![1.0, 1.0]
        );
        assert_eq!(
            mean_contextual_embedding(&[0.0, 2.0], &[2.0, 0.0]).unwrap(),
            vec![1.0, 1.0]
        );
        assert_eq!(
            mean_contextual_embedding(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(),
            vec![2.0, 2.0, 2.0]
        );
        assert!(matches!(
            mean_contextual_embedding(&[1.0f64], &[1.0, 2.0]),
            Err(CorpusError::LengthMismatch { left: 1, right: 2 })
        ));
    }

    fn set(lemmas: &[&str], dim: usize) -> EmbeddingSet<f64> {
        let header = EmbeddingHeader {
            model_id: "m".into(),
            language: "en".into(),
            dim,
            provenance: Value::Null,
        };
        EmbeddingSet::new(
            header,
            lemmas
                .iter()
                .enumerate()
                .map(|(i, l)| (l.to_string(), vec![i as f64; dim])),
        )
        .unwrap()
    }

    #[test]
    fn pairing_follows_lexicon_order() {
        let lex = lexicon_from(&[
            entry("joy", &[("en", "a", "b")]),
            entry("anger", &[("en", "a", "b")]),
            entry("fear", &[("en", "a", "b")]),
            entry("sadness", &[("en", "a", "b")]),
            entry("surprise", &[("en", "a", "b")]),
        ])
        .unwrap();
        let a = set(&["surprise", "fear", "joy", "anger", "sadness"], 768);
        let b = set(&["joy", "anger", "fear", "sadness", "surprise"], 768);
        let pair = pair_sets(&a, &b, &lex).unwrap();
        assert_eq!(pair.lemmas(), ["joy", "anger", "fear", "sadness", "surprise"]);
        assert_eq!(pair_sets(&b, &a, &lex).unwrap().lemmas(), pair.lemmas());

        let c = set(&["joy", "anger"], 3);
        let err = pair_sets(&a, &c, &lex).unwrap_err();
        assert!(matches!(err, CorpusError::IntersectionTooSmall { found: 2 }));
    }

    #[test]
    fn pairing_allows_different_dimensions() {
        let lex = toy_lexicon();
        let a = set(&["joy", "anger", "fear"], 2);
        let b = set(&["joy", "anger", "fear"], 5);
        assert_eq!(pair_sets(&a, &b, &lex).unwrap().len(), 3);
    }
}
