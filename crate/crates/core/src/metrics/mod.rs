//! Distance-based similarity between two embedding spaces.
//!
//! For one emotion, the distances from its vector to every other paired
//! emotion are computed separately inside each space, and the two distance
//! vectors are correlated. No alignment between the spaces is needed, so
//! the spaces may differ in dimension.

mod correlation;
mod distance;
mod similarity;
mod ttest;

use thiserror::Error;

pub use correlation::{fractional_ranks, pearson, spearman, CorrelationKind};
pub use distance::{cosine_distance, euclidean, DistanceKind};
pub use similarity::{
    aggregate_similarity, distance_matrix, distance_vector, emotion_similarity, LemmaScore, SideInfo, SimilarityReport,
    SimilaritySettings,
};
pub use ttest::{independent_t_test, TTestResult, TTestVariant};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least {min} values, got {len}")]
    TooShort { len: usize, min: usize },
    #[error("cosine distance is undefined for a zero-norm vector")]
    ZeroNorm,
    #[error("input contains a non-finite value")]
    NonFinite,
    #[error("lemma `{0}` is missing from the embedding set")]
    MissingLemma(String),
    #[error("lemma `{0}` must not appear among the lemmas it is compared against")]
    SelfComparison(String),
    #[error("need at least 3 paired lemmas, got {0}")]
    TooFewLemmas(usize),
    #[error("no lemma produced a defined correlation")]
    NoValidCorrelations,
    #[error("unknown {kind} `{value}`")]
    UnknownSetting { kind: &'static str, value: String },
}

pub type Result<T, E = MetricsError> = std::result::Result<T, E>;

fn check_lengths<T>(u: &[T], v: &[T], min: usize) -> Result<()> {
    if u.len() != v.len() {
        return Err(MetricsError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.len() < min {
        return Err(MetricsError::TooShort { len: u.len(), min });
    }
    Ok(())
}
