use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CorrelationKind, DistanceKind, MetricsError, Result};
use crate::corpus::{EmbeddingSet, PairedSet, MIN_PAIRED_LEMMAS};
use crate::scalar::Scalar;

/// Distances from `lemma` to each of `others`, in the order given.
pub fn distance_vector<T: Scalar>(
    set: &EmbeddingSet<T>,
    lemma: &str,
    others: &[String],
    kind: DistanceKind,
) -> Result<Vec<T>> {
    let anchor = set
        .get(lemma)
        .ok_or_else(|| MetricsError::MissingLemma(lemma.to_string()))?;
    others
        .iter()
        .map(|other| {
            if other == lemma {
                return Err(MetricsError::SelfComparison(lemma.to_string()));
            }
            let v = set
                .get(other)
                .ok_or_else(|| MetricsError::MissingLemma(other.clone()))?;
            kind.distance(anchor, v)
        })
        .collect()
}

/// Full pairwise distance matrix over `vectors`, row-major.
pub fn distance_matrix<T: Scalar>(vectors: &[&[T]], kind: DistanceKind) -> Result<Vec<Vec<T>>> {
    vectors
        .par_iter()
        .map(|u| vectors.iter().map(|v| kind.distance(u, v)).collect())
        .collect()
}

/// Correlation between the distance vectors of `lemma` computed in each of
/// the paired spaces over the same ordered list of other lemmas.
///
/// `Ok(None)` means the correlation is undefined (a constant distance vector).
pub fn emotion_similarity<T: Scalar>(
    pair: &PairedSet<'_, T>,
    lemma: &str,
    kind: DistanceKind,
    corr: CorrelationKind,
) -> Result<Option<T>> {
    if pair.len() < MIN_PAIRED_LEMMAS {
        return Err(MetricsError::TooFewLemmas(pair.len()));
    }
    if !pair.lemmas().iter().any(|l| l == lemma) {
        return Err(MetricsError::MissingLemma(lemma.to_string()));
    }
    let others: Vec<String> = pair.lemmas().iter().filter(|l| *l != lemma).cloned().collect();
    let left = distance_vector(pair.left(), lemma, &others, kind)?;
    let right = distance_vector(pair.right(), lemma, &others, kind)?;
    corr.correlate(&left, &right)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideInfo {
    pub model_id: String,
    pub language: String,
}

impl SideInfo {
    fn of<T: Scalar>(set: &EmbeddingSet<T>) -> Self {
        Self {
            model_id: set.model_id().to_string(),
            language: set.language().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilaritySettings {
    pub distance: DistanceKind,
    pub correlation: CorrelationKind,
    pub left: SideInfo,
    pub right: SideInfo,
    /// Always `"population"`: `std_r` divides by the number of valid lemmas.
    pub std_convention: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct LemmaScore<T> {
    pub lemma: String,
    /// `None` when the correlation is undefined for this lemma.
    pub r: Option<T>,
}

/// Per-lemma similarities and their summary over two paired spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct SimilarityReport<T> {
    pub settings: SimilaritySettings,
    pub per_lemma: Vec<LemmaScore<T>>,
    pub mean_r: T,
    pub std_r: T,
    pub n_valid: usize,
}

impl<T: Scalar> SimilarityReport<T> {
    /// Defined per-lemma correlations in canonical order.
    pub fn valid_correlations(&self) -> Vec<T> {
        self.per_lemma.iter().filter_map(|s| s.r).collect()
    }

    pub fn n_undefined(&self) -> usize {
        self.per_lemma.len() - self.n_valid
    }

    /// CSV with columns `lemma,r`; undefined correlations are left empty.
    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["lemma", "r"])?;
        for score in &self.per_lemma {
            let r = score.r.map(|r| r.to_string()).unwrap_or_default();
            writer.write_record([score.lemma.as_str(), r.as_str()])?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Distance-based similarity for every paired lemma, with the mean and
/// population standard deviation over the defined correlations.
///
/// Per-lemma work runs in parallel; the reduction walks lemmas in canonical
/// order so results do not depend on scheduling.
pub fn aggregate_similarity<T: Scalar>(
    pair: &PairedSet<'_, T>,
    kind: DistanceKind,
    corr: CorrelationKind,
) -> Result<SimilarityReport<T>> {
    let n = pair.len();
    if n < MIN_PAIRED_LEMMAS {
        return Err(MetricsError::TooFewLemmas(n));
    }
    let left = distance_matrix(&pair.left_vectors(), kind)?;
    let right = distance_matrix(&pair.right_vectors(), kind)?;
    let scores: Vec<Option<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let off_diagonal = |row: &[T]| -> Vec<T> {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &d)| d)
                    .collect()
            };
            corr.correlate(&off_diagonal(&left[i]), &off_diagonal(&right[i]))
        })
        .collect::<Result<_>>()?;

    let valid: Vec<T> = scores.iter().flatten().copied().collect();
    if valid.is_empty() {
        return Err(MetricsError::NoValidCorrelations);
    }
    let count = T::from_count(valid.len());
    let mean = valid.iter().fold(T::zero(), |acc, &r| acc + r) / count;
    let var = valid.iter().fold(T::zero(), |acc, &r| acc + (r - mean) * (r - mean)) / count;

    Ok(SimilarityReport {
        settings: SimilaritySettings {
            distance: kind,
            correlation: corr,
            left: SideInfo::of(pair.left()),
            right: SideInfo::of(pair.right()),
            std_convention: "population".to_string(),
        },
        per_lemma: pair
            .lemmas()
            .iter()
            .zip(&scores)
            .map(|(lemma, &r)| LemmaScore {
                lemma: lemma.clone(),
                r,
            })
            .collect(),
        mean_r: mean,
        std_r: var.sqrt(),
        n_valid: valid.len(),
    })
}
