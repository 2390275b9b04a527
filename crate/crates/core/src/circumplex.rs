//! Valence/arousal axis anchors and projection of emotion embeddings onto the
//! valence-arousal plane.
//!
//! Projection of `x` given anchors `v_pos, v_neg, a_high, a_low`:
//!
//! 1. `V = v_pos - v_neg`, `A = a_high - a_low`, both normalized to unit
//!    length; origins are the axis midpoints `v_mid`, `a_mid`.
//! 2. Each axis is scaled so its positive anchor lands on `1`: the raw
//!    component `(x - v_mid) . V` is divided by `(v_pos - v_mid) . V`, and
//!    likewise for arousal.
//! 3. `cos = V . A`.
//! 4. `x_v`, `x_a` are the scaled components of `x`.
//! 5. The axes are decorrelated with `(x_v - x_a cos, x_a - x_v cos)`.
//!
//! Scaling happens before the decorrelation in step 5, so when `cos != 0` a
//! projected anchor is not exactly at `(1, 0)` or `(0, 1)`.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::EmbeddingSet;
use crate::scalar::{dot, mean_of, norm, sub, Scalar};

/// Axes closer to parallel than this (`1 - |cos| < PARALLEL_TOLERANCE`)
/// make the decorrelation step numerically meaningless.
pub const PARALLEL_TOLERANCE: f64 = 1e-9;

/// Minimum Euclidean length of `v_pos - v_neg` and `a_high - a_low`.
pub const DEGENERATE_AXIS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CircumplexError {
    #[error("anchor group `{group}` has no lemmas")]
    EmptyAnchorGroup { group: &'static str },
    #[error("anchor lemma `{lemma}` ({group}) is missing from the embedding set")]
    MissingAnchorLemma { lemma: String, group: &'static str },
    #[error("{axis} axis has zero length: its two anchors coincide")]
    DegenerateAxis { axis: &'static str },
    #[error("valence and arousal axes are nearly parallel (cos theta = {cos})")]
    DegeneratePlane { cos: f64 },
    #[error("vector lengths differ: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("anchor vectors must be finite")]
    NonFinite,
    #[error("no anchor sets to merge")]
    NothingToMerge,
    #[error("cannot read anchor lexicon {path}: {message}")]
    AnchorFile { path: String, message: String },
}

pub type Result<T, E = CircumplexError> = std::result::Result<T, E>;

/// Lemma lists whose averaged embeddings define the four axis points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorLexicon {
    pub positive_valence: Vec<String>,
    pub negative_valence: Vec<String>,
    pub high_arousal: Vec<String>,
    pub low_arousal: Vec<String>,
}

fn strings(words: &[&str]) -> Vec<String> {
    words.iter().map(|w| w.to_string()).collect()
}

impl Default for AnchorLexicon {
    /// Five circumplex emotions nearest each axis point.
    fn default() -> Self {
        Self {
            positive_valence: strings(&["happy", "pleased", "delighted", "excited", "satisfied"]),
            negative_valence: strings(&["miserable", "frustrated", "sad", "depressed", "afraid"]),
            high_arousal: strings(&["astonished", "alarmed", "angry", "afraid", "excited"]),
            low_arousal: strings(&["tired", "sleepy", "calm", "satisfied", "depressed"]),
        }
    }
}

impl AnchorLexicon {
    pub fn groups(&self) -> [(&'static str, &[String]); 4] {
        [
            ("positive_valence", &self.positive_valence),
            ("negative_valence", &self.negative_valence),
            ("high_arousal", &self.high_arousal),
            ("low_arousal", &self.low_arousal),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        match self.groups().into_iter().find(|(_, lemmas)| lemmas.is_empty()) {
            Some((group, _)) => Err(CircumplexError::EmptyAnchorGroup { group }),
            None => Ok(()),
        }
    }

    /// Parses the anchor lexicon JSON object; unknown keys such as a
    /// `version` field are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let lexicon: Self = serde_json::from_str(text).map_err(|e| CircumplexError::AnchorFile {
            path: "<inline>".into(),
            message: e.to_string(),
        })?;
        lexicon.validate()?;
        Ok(lexicon)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| CircumplexError::AnchorFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CircumplexError::AnchorFile { message, .. } => CircumplexError::AnchorFile {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }
}

/// Where a set of anchors came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorSource {
    pub languages: Vec<String>,
    pub model_ids: Vec<String>,
    pub lemmas: Option<AnchorLexicon>,
}

/// The four axis-defining points in embedding space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisAnchors<T> {
    pub v_pos: Vec<T>,
    pub v_neg: Vec<T>,
    pub a_high: Vec<T>,
    pub a_low: Vec<T>,
    pub source: AnchorSource,
}

impl<T: Scalar> AxisAnchors<T> {
    pub fn new(v_pos: Vec<T>, v_neg: Vec<T>, a_high: Vec<T>, a_low: Vec<T>, source: AnchorSource) -> Result<Self> {
        let dim = v_pos.len();
        for v in [&v_neg, &a_high, &a_low] {
            if v.len() != dim {
                return Err(CircumplexError::LengthMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        if [&v_pos, &v_neg, &a_high, &a_low]
            .iter()
            .any(|v| v.iter().any(|x| !x.is_finite()))
        {
            return Err(CircumplexError::NonFinite);
        }
        let tol = T::lit(DEGENERATE_AXIS_TOLERANCE);
        if norm(&sub(&v_pos, &v_neg)) <= tol {
            return Err(CircumplexError::DegenerateAxis { axis: "valence" });
        }
        if norm(&sub(&a_high, &a_low)) <= tol {
            return Err(CircumplexError::DegenerateAxis { axis: "arousal" });
        }
        Ok(Self {
            v_pos,
            v_neg,
            a_high,
            a_low,
            source,
        })
    }

    pub fn dim(&self) -> usize {
        self.v_pos.len()
    }

    pub fn valence_axis(&self) -> Vec<T> {
        sub(&self.v_pos, &self.v_neg)
    }

    pub fn arousal_axis(&self) -> Vec<T> {
        sub(&self.a_high, &self.a_low)
    }
}

/// Averages each anchor group's embeddings into the four axis points.
pub fn build_anchors<T: Scalar>(set: &EmbeddingSet<T>, anchors: &AnchorLexicon) -> Result<AxisAnchors<T>> {
    anchors.validate()?;
    let mut points = Vec::with_capacity(4);
    for (group, lemmas) in anchors.groups() {
        let vectors = lemmas
            .iter()
            .map(|lemma| {
                set.get(lemma).ok_or_else(|| CircumplexError::MissingAnchorLemma {
                    lemma: lemma.clone(),
                    group,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(mean_of(&vectors));
    }
    let [v_pos, v_neg, a_high, a_low]: [Vec<T>; 4] = points.try_into().expect("four anchor groups");
    AxisAnchors::new(
        v_pos,
        v_neg,
        a_high,
        a_low,
        AnchorSource {
            languages: vec![set.language().to_string()],
            model_ids: vec![set.model_id().to_string()],
            lemmas: Some(anchors.clone()),
        },
    )
}

/// Averages each of the four anchor points across several anchor sets,
/// giving axes shared by all of their languages.
pub fn merge_anchors<T: Scalar>(list: &[AxisAnchors<T>]) -> Result<AxisAnchors<T>> {
    let first = list.first().ok_or(CircumplexError::NothingToMerge)?;
    if let Some(bad) = list.iter().find(|a| a.dim() != first.dim()) {
        return Err(CircumplexError::LengthMismatch {
            expected: first.dim(),
            found: bad.dim(),
        });
    }
    let merge = |pick: fn(&AxisAnchors<T>) -> &[T]| -> Vec<T> {
        let vectors: Vec<&[T]> = list.iter().map(pick).collect();
        mean_of(&vectors)
    };
    let mut source = AnchorSource::default();
    for anchors in list {
        for language in &anchors.source.languages {
            if !source.languages.contains(language) {
                source.languages.push(language.clone());
            }
        }
        for model in &anchors.source.model_ids {
            if !source.model_ids.contains(model) {
                source.model_ids.push(model.clone());
            }
        }
    }
    source.lemmas = first.source.lemmas.clone();
    AxisAnchors::new(
        merge(|a| &a.v_pos),
        merge(|a| &a.v_neg),
        merge(|a| &a.a_high),
        merge(|a| &a.a_low),
        source,
    )
}

/// Cosine of the angle between the valence and arousal axes.
pub fn axis_cosine<T: Scalar>(anchors: &AxisAnchors<T>) -> Result<T> {
    let v = anchors.valence_axis();
    let a = anchors.arousal_axis();
    let (nv, na) = (norm(&v), norm(&a));
    if nv == T::zero() {
        return Err(CircumplexError::DegenerateAxis { axis: "valence" });
    }
    if na == T::zero() {
        return Err(CircumplexError::DegenerateAxis { axis: "arousal" });
    }
    Ok((dot(&v, &a) / (nv * na)).max(-T::one()).min(T::one()))
}

/// A point on the valence-arousal plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint<T> {
    pub valence: T,
    pub arousal: T,
}

/// Precomputed projection onto the plane defined by a set of anchors.
#[derive(Clone, Debug)]
pub struct Projector<T> {
    v_mid: Vec<T>,
    a_mid: Vec<T>,
    v_unit: Vec<T>,
    a_unit: Vec<T>,
    v_scale: T,
    a_scale: T,
    cos: T,
}

impl<T: Scalar> Projector<T> {
    pub fn new(anchors: &AxisAnchors<T>) -> Result<Self> {
        let half = T::lit(0.5);
        let unit = |axis: Vec<T>| {
            let n = norm(&axis);
            axis.into_iter().map(|x| x / n).collect::<Vec<T>>()
        };
        let v_unit = unit(anchors.valence_axis());
        let a_unit = unit(anchors.arousal_axis());
        let midpoint = |p: &[T], q: &[T]| p.iter().zip(q).map(|(&a, &b)| (a + b) * half).collect::<Vec<T>>();
        let v_mid = midpoint(&anchors.v_pos, &anchors.v_neg);
        let a_mid = midpoint(&anchors.a_high, &anchors.a_low);
        let v_scale = dot(&sub(&anchors.v_pos, &v_mid), &v_unit);
        let a_scale = dot(&sub(&anchors.a_high, &a_mid), &a_unit);
        let cos = axis_cosine(anchors)?;
        if T::one() - cos.abs() < T::lit(PARALLEL_TOLERANCE) {
            return Err(CircumplexError::DegeneratePlane {
                cos: cos.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            v_mid,
            a_mid,
            v_unit,
            a_unit,
            v_scale,
            a_scale,
            cos,
        })
    }

    pub fn cos_theta(&self) -> T {
        self.cos
    }

    pub fn dim(&self) -> usize {
        self.v_mid.len()
    }

    /// Scaled axis components before decorrelation.
    pub fn components(&self, x: &[T]) -> Result<(T, T)> {
        if x.len() != self.dim() {
            return Err(CircumplexError::LengthMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let xv = dot(&sub(x, &self.v_mid), &self.v_unit) / self.v_scale;
        let xa = dot(&sub(x, &self.a_mid), &self.a_unit) / self.a_scale;
        Ok((xv, xa))
    }

    pub fn project(&self, x: &[T]) -> Result<PlanePoint<T>> {
        let (xv, xa) = self.components(x)?;
        Ok(self.decorrelate(xv, xa))
    }

    /// Removes the axis correlation from already scaled components.
    pub fn decorrelate(&self, xv: T, xa: T) -> PlanePoint<T> {
        PlanePoint {
            valence: xv - xa * self.cos,
            arousal: xa - xv * self.cos,
        }
    }
}

pub fn project<T: Scalar>(anchors: &AxisAnchors<T>, x: &[T]) -> Result<PlanePoint<T>> {
    Projector::new(anchors)?.project(x)
}

/// Projects labeled vectors, preserving input order.
pub fn project_batch<T, L, V>(anchors: &AxisAnchors<T>, items: &[(L, V)]) -> Result<Vec<(L, PlanePoint<T>)>>
where
    T: Scalar,
    L: Clone + Send + Sync,
    V: AsRef<[T]> + Sync,
{
    let projector = Projector::new(anchors)?;
    items
        .par_iter()
        .map(|(label, x)| Ok((label.clone(), projector.project(x.as_ref())?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::EmbeddingHeader;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn anchors(v_pos: &[f64], v_neg: &[f64], a_high: &[f64], a_low: &[f64]) -> AxisAnchors<f64> {
        AxisAnchors::new(
            v_pos.to_vec(),
            v_neg.to_vec(),
            a_high.to_vec(),
            a_low.to_vec(),
            AnchorSource::default(),
        )
        .unwrap()
    }

    fn orthogonal_3d() -> AxisAnchors<f64> {
        anchors(&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, -1.0, 0.0])
    }

    fn set(rows: &[(&str, Vec<f64>)]) -> EmbeddingSet<f64> {
        let header = EmbeddingHeader {
            model_id: "toy".into(),
            language: "en".into(),
            dim: rows[0].1.len(),
            provenance: serde_json::Value::Null,
        };
        EmbeddingSet::new(header, rows.iter().map(|(l, v)| (l.to_string(), v.clone()))).unwrap()
    }

    fn single(word: &str) -> Vec<String> {
        vec![word.to_string()]
    }

    #[test]
    fn default_anchor_lexicon() {
        let lex = AnchorLexicon::default();
        assert!(lex.groups().iter().all(|(_, l)| l.len() == 5));
        assert_eq!(lex.positive_valence[0], "happy");
        assert_eq!(lex.low_arousal[4], "depressed");
    }

    #[test]
    fn anchor_lexicon_json() {
        let lex = AnchorLexicon::from_json(
            r#"{"version": 1, "positive_valence":["a"],"negative_valence":["b"],"high_arousal":["c"],"low_arousal":["d"]}"#,
        )
        .unwrap();
        assert_eq!(lex.high_arousal, ["c"]);
        let err = AnchorLexicon::from_json(
            r#"{"positive_valence":[],"negative_valence":["b"],"high_arousal":["c"],"low_arousal":["d"]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            CircumplexError::EmptyAnchorGroup {
                group: "positive_valence"
            }
        ));
    }

    #[test]
    fn single_lemma_anchors_equal_embeddings() {
        let s = set(&[
            ("p", vec![1.0, 2.0]),
            ("n", vec![-1.0, 0.5]),
            ("h", vec![0.0, 3.0]),
            ("l", vec![0.2, -3.0]),
        ]);
        let lex = AnchorLexicon {
            positive_valence: single("p"),
            negative_valence: single("n"),
            high_arousal: single("h"),
            low_arousal: single("l"),
        };
        let a = build_anchors(&s, &lex).unwrap();
        assert_eq!(a.v_pos, [1.0, 2.0]);
        assert_eq!(a.v_neg, [-1.0, 0.5]);
        assert_eq!(a.a_high, [0.0, 3.0]);
        assert_eq!(a.a_low, [0.2, -3.0]);
        assert_eq!(a.source.languages, ["en"]);
    }

    #[test]
    fn anchor_means() {
        let s = set(&[
            ("p1", vec![1.0, 0.0]),
            ("p2", vec![0.0, 1.0]),
            ("q1", vec![0.3, 0.7]),
            ("q2", vec![0.3, 0.7]),
            ("n", vec![-1.0, -1.0]),
            ("h", vec![0.0, 3.0]),
            ("l", vec![0.0, -3.0]),
        ]);
        let mut lex = AnchorLexicon {
            positive_valence: vec!["p1".into(), "p2".into()],
            negative_valence: single("n"),
            high_arousal: single("h"),
            low_arousal: single("l"),
        };
        assert_eq!(build_anchors(&s, &lex).unwrap().v_pos, [0.5, 0.5]);
        lex.positive_valence = vec!["q1".into(), "q2".into()];
        assert_eq!(build_anchors(&s, &lex).unwrap().v_pos, [0.3, 0.7]);
        lex.positive_valence = single("missing");
        assert!(matches!(
            build_anchors(&s, &lex),
            Err(CircumplexError::MissingAnchorLemma {
                group: "positive_valence",
                ..
            })
        ));
    }

    #[test]
    fn coincident_anchors_are_degenerate() {
        let err = AxisAnchors::new(
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            AnchorSource::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CircumplexError::DegenerateAxis { axis: "valence" }));
    }

    #[test]
    fn merge_examples() {
        let x = orthogonal_3d();
        assert_eq!(merge_anchors(std::slice::from_ref(&x)).unwrap().v_pos, x.v_pos);
        let xx = merge_anchors(&[x.clone(), x.clone()]).unwrap();
        assert_eq!((xx.v_pos.clone(), xx.a_low.clone()), (x.v_pos.clone(), x.a_low.clone()));

        let en = anchors(&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]);
        let ja = anchors(&[0.0, 1.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]);
        assert_eq!(merge_anchors(&[en, ja]).unwrap().v_pos, [0.5, 0.5]);
        assert!(matches!(
            merge_anchors::<f64>(&[]),
            Err(CircumplexError::NothingToMerge)
        ));
        let short = anchors(&[1.0], &[-1.0], &[2.0], &[-2.0]);
        assert!(matches!(
            merge_anchors(&[x, short]),
            Err(CircumplexError::LengthMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn axis_cosine_examples() {
        assert_eq!(axis_cosine(&orthogonal_3d()).unwrap(), 0.0);
        let parallel = anchors(&[1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &[0.0, 0.0]);
        assert_eq!(axis_cosine(&parallel).unwrap(), 1.0);
        let tilted = anchors(&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 0.0]);
        assert!((axis_cosine(&tilted).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_projection() {
        let a = orthogonal_3d();
        let p = project(&a, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!((p.valence, p.arousal), (1.0, 0.0));
        let p = project(&a, &[0.0, -1.0, 0.0]).unwrap();
        assert_eq!((p.valence, p.arousal), (0.0, -1.0));
        let p = project(&a, &[0.0, 0.0, 5.0]).unwrap();
        assert_eq!((p.valence, p.arousal), (0.0, 0.0));
    }

    #[test]
    fn non_orthogonal_worked_case() {
        // unit axes [1,0] and [s,s] with s = 1/sqrt(2); anchors at +-axis so
        // the midpoints are the origin and both scales are 1
        let s = FRAC_1_SQRT_2;
        let a = anchors(&[1.0, 0.0], &[-1.0, 0.0], &[s, s], &[-s, -s]);
        let projector = Projector::new(&a).unwrap();
        assert!((projector.cos_theta() - s).abs() < 1e-15);
        // pre-correction components (1, 1)
        let x = [1.0, 2.0f64.sqrt() - 1.0];
        let (xv, xa) = projector.components(&x).unwrap();
        assert!((xv - 1.0).abs() < 1e-12 && (xa - 1.0).abs() < 1e-12);
        let p = projector.project(&x).unwrap();
        assert!((p.valence - (1.0 - s)).abs() < 1e-12);
        assert!((p.arousal - (1.0 - s)).abs() < 1e-12);
    }

    #[test]
    fn parallel_axes_rejected() {
        let a = anchors(&[1.0, 0.0], &[0.0, 0.0], &[2.0, 0.0], &[0.0, 0.0]);
        match project(&a, &[0.0, 0.0]) {
            Err(CircumplexError::DegeneratePlane { cos }) => assert_eq!(cos, 1.0),
            other => panic!("expected DegeneratePlane, got {other:?}"),
        }
    }

    #[test]
    fn batch_preserves_order() {
        let a = orthogonal_3d();
        let empty: Vec<(String, Vec<f64>)> = Vec::new();
        assert!(project_batch(&a, &empty).unwrap().is_empty());
        let items = vec![
            ("x".to_string(), vec![0.5, 0.25, 1.0]),
            ("y".to_string(), vec![-0.5, 0.75, 0.0]),
        ];
        let out = project_batch(&a, &items).unwrap();
        assert_eq!(out[0].0, "x");
        assert_eq!(out[1].1, project(&a, &items[1].1).unwrap());
        assert!(matches!(
            project(&a, &[1.0]),
            Err(CircumplexError::LengthMismatch { expected: 3, found: 1 })
        ));
    }
}
