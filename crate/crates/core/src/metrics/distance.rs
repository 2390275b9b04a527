use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_lengths, MetricsError, Result};
use crate::scalar::{dot, Scalar};

/// Pairwise distance used to build per-emotion distance vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    #[default]
    Euclidean,
    /// `1 - cos(u, v)`, so that correlated vectors remain distances.
    Cosine,
}

impl DistanceKind {
    pub fn distance<T: Scalar>(self, u: &[T], v: &[T]) -> Result<T> {
        match self {
            DistanceKind::Euclidean => euclidean(u, v),
            DistanceKind::Cosine => cosine_distance(u, v),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DistanceKind::Euclidean => "euclidean",
            DistanceKind::Cosine => "cosine",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistanceKind {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(DistanceKind::Euclidean),
            "cosine" => Ok(DistanceKind::Cosine),
            _ => Err(MetricsError::UnknownSetting {
                kind: "distance",
                value: s.to_string(),
            }),
        }
    }
}

/// L2 norm of `u - v`.
pub fn euclidean<T: Scalar>(u: &[T], v: &[T]) -> Result<T> {
    check_lengths(u, v, 1)?;
    let sq = u.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| {
        let d = a - b;
        acc + d * d
    });
    Ok(sq.sqrt())
}

/// `1 - (u . v) / (|u| |v|)`, clamped to `[0, 2]`.
pub fn cosine_distance<T: Scalar>(u: &[T], v: &[T]) -> Result<T> {
    check_lengths(u, v, 1)?;
    let nu = dot(u, u);
    let nv = dot(v, v);
    if nu == T::zero() || nv == T::zero() {
        return Err(MetricsError::ZeroNorm);
    }
    let cos = dot(u, v) / (nu.sqrt() * nv.sqrt());
    let d = T::one() - cos;
    Ok(d.max(T::zero()).min(T::lit(2.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_examples() {
        let v = [0.3, -1.2, 7.0];
        assert_eq!(euclidean(&v, &v).unwrap(), 0.0);
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclidean(&[1.0, 2.0, 3.0], &[4.0, 6.0, 3.0]).unwrap(), 5.0);
    }

    #[test]
    fn euclidean_length_errors() {
        assert_eq!(
            euclidean(&[1.0], &[1.0, 2.0]),
            Err(MetricsError::LengthMismatch { left: 1, right: 2 })
        );
        assert_eq!(
            euclidean::<f64>(&[], &[]),
            Err(MetricsError::TooShort { len: 0, min: 1 })
        );
    }

    #[test]
    fn cosine_examples() {
        let v: [f64; 3] = [0.3, -1.2, 7.0];
        assert!(cosine_distance(&v, &v).unwrap().abs() < 1e-15);
        assert_eq!(cosine_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(cosine_distance(&[1.0, 0.0], &[-2.0, 0.0]).unwrap(), 2.0);
        assert_eq!(cosine_distance(&[0.0, 0.0], &[1.0, 0.0]), Err(MetricsError::ZeroNorm));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Cosine".parse::<DistanceKind>().unwrap(), DistanceKind::Cosine);
        assert!("manhattan".parse::<DistanceKind>().is_err());
        assert_eq!(DistanceKind::default(), DistanceKind::Euclidean);
    }
}
