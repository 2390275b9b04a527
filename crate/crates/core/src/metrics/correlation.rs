use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_lengths, MetricsError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    #[default]
    Pearson,
    Spearman,
}

impl CorrelationKind {
    /// Correlation of `x` and `y`; `Ok(None)` when either list is constant.
    pub fn correlate<T: Scalar>(self, x: &[T], y: &[T]) -> Result<Option<T>> {
        match self {
            CorrelationKind::Pearson => pearson(x, y),
            CorrelationKind::Spearman => spearman(x, y),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationKind::Pearson => "pearson",
            CorrelationKind::Spearman => "spearman",
        }
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorrelationKind {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pearson" => Ok(CorrelationKind::Pearson),
            "spearman" => Ok(CorrelationKind::Spearman),
            _ => Err(MetricsError::UnknownSetting {
                kind: "correlation",
                value: s.to_string(),
            }),
        }
    }
}

fn is_constant<T: Scalar>(x: &[T]) -> bool {
    x.iter().all(|&v| v == x[0])
}

/// Sample Pearson correlation coefficient.
///
/// Returns `Ok(None)` when either input is constant, since the coefficient is
/// undefined there.
pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> Result<Option<T>> {
    check_lengths(x, y, 2)?;
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(MetricsError::NonFinite);
    }
    if is_constant(x) || is_constant(y) {
        return Ok(None);
    }
    let n = T::from_count(x.len());
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    let denom = (sxx * syy).sqrt();
    if denom == T::zero() {
        return Ok(None);
    }
    let r = sxy / denom;
    Ok(Some(r.max(-T::one()).min(T::one())))
}

/// Spearman rank correlation: Pearson correlation of fractional ranks,
/// with tied values sharing their average rank.
pub fn spearman<T: Scalar>(x: &[T], y: &[T]) -> Result<Option<T>> {
    check_lengths(x, y, 2)?;
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(MetricsError::NonFinite);
    }
    pearson(&fractional_ranks(x), &fractional_ranks(y))
}

/// 1-based ranks; ties receive the mean of the ranks they span.
pub fn fractional_ranks<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![T::zero(); x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let rank = T::from_count(start + 1 + end) / T::lit(2.0);
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_examples() {
        let x: [f64; 4] = [1.0, 4.0, 2.5, -3.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &x).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &neg).unwrap().unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pearson_constant_is_undefined() {
        assert_eq!(pearson(&[0.1, 0.1, 0.1], &[1.0, 2.0, 3.0]), Ok(None));
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]), Ok(None));
    }

    #[test]
    fn pearson_errors() {
        assert_eq!(pearson(&[1.0], &[1.0]), Err(MetricsError::TooShort { len: 1, min: 2 }));
        assert_eq!(
            pearson(&[1.0, 2.0], &[1.0]),
            Err(MetricsError::LengthMismatch { left: 2, right: 1 })
        );
        assert_eq!(pearson(&[1.0, f64::NAN], &[1.0, 2.0]), Err(MetricsError::NonFinite));
    }

    #[test]
    fn spearman_examples() {
        let x = [0.3, -1.0, 2.2, 0.9, 5.0];
        let ex: Vec<f64> = x.iter().map(|v: &f64| v.exp()).collect();
        assert!((spearman(&x, &ex).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((spearman::<f64>(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap().unwrap() + 1.0).abs() < 1e-15);
        let tied: [f64; 4] = [1.0, 2.0, 2.0, 3.0];
        assert!((spearman(&tied, &tied).unwrap().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(fractional_ranks(&[10.0, 20.0, 20.0, 5.0]), vec![2.0, 3.5, 3.5, 1.0]);
        assert_eq!(fractional_ranks(&[7.0, 7.0, 7.0]), vec![2.0, 2.0, 2.0]);
    }
}
