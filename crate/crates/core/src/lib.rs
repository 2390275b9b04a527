//! Toolkit for measuring how multilingual language models represent emotion
//! across languages.
//!
//! * [`corpus`]: emotion lexica, embedding files, lemma pairing
//! * [`metrics`]: distance-based similarity between embedding spaces and the
//!   significance test used to compare similarity distributions
//! * [`circumplex`]: valence/arousal axis anchors and projection onto the plane
//! * [`genprob`]: summed token log-probabilities of emotion completions
//! * [`study`]: human cultural-awareness ratings and annotator agreement
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what the file loaders and the CLI
//! use.

pub mod circumplex;
pub mod corpus;
pub mod genprob;
pub mod metrics;
pub mod scalar;
pub mod special;
pub mod study;

pub use scalar::Scalar;

pub type EmbeddingSetF64 = corpus::EmbeddingSet<f64>;
pub type EmbeddingSetF32 = corpus::EmbeddingSet<f32>;
pub type SimilarityReportF64 = metrics::SimilarityReport<f64>;
pub type TTestResultF64 = metrics::TTestResult<f64>;
pub type AxisAnchorsF64 = circumplex::AxisAnchors<f64>;
pub type PlanePointF64 = circumplex::PlanePoint<f64>;
pub type ProjectorF64 = circumplex::Projector<f64>;
pub type LogProbRecordF64 = genprob::LogProbRecord<f64>;
pub type ScenarioComparisonF64 = genprob::ScenarioComparison<f64>;
pub type AwarenessTableF64 = study::AwarenessTable<f64>;
pub type AgreementTableF64 = study::AgreementTable<f64>;
