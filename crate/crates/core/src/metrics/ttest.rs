use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MetricsError, Result};
use crate::scalar::Scalar;
use crate::special::student_t_two_sided_p;

/// Which independent two-sample t-test to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TTestVariant {
    /// Unequal variances, Welch-Satterthwaite degrees of freedom.
    #[default]
    Welch,
    /// Pooled variance, `n_a + n_b - 2` degrees of freedom.
    Student,
}

impl TTestVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            TTestVariant::Welch => "welch",
            TTestVariant::Student => "student",
        }
    }
}

impl fmt::Display for TTestVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TTestVariant {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "welch" => Ok(TTestVariant::Welch),
            "student" | "pooled" => Ok(TTestVariant::Student),
            _ => Err(MetricsError::UnknownSetting {
                kind: "t-test variant",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTestResult<T> {
    pub variant: TTestVariant,
    pub t_statistic: T,
    /// Two-sided.
    pub p_value: T,
    pub dof: T,
    pub significant_05: bool,
}

fn mean_and_sample_variance<T: Scalar>(x: &[T]) -> (T, T) {
    let n = T::from_count(x.len());
    let mean = x.iter().copied().sum::<T>() / n;
    let ss = x.iter().fold(T::zero(), |acc, &v| acc + (v - mean) * (v - mean));
    (mean, ss / (n - T::one()))
}

/// Independent two-sample t-test of `mean(a) == mean(b)`.
///
/// The statistic is `(mean(a) - mean(b)) / se`, so swapping the samples
/// negates `t` and leaves `p` unchanged. When both samples have zero variance
/// and equal means the result is `t = 0, p = 1`.
pub fn independent_t_test<T: Scalar>(a: &[T], b: &[T], variant: TTestVariant) -> Result<TTestResult<T>> {
    for sample in [a, b] {
        if sample.len() < 2 {
            return Err(MetricsError::TooShort {
                len: sample.len(),
                min: 2,
            });
        }
        if sample.iter().any(|v| !v.is_finite()) {
            return Err(MetricsError::NonFinite);
        }
    }
    let one = T::one();
    let (na, nb) = (T::from_count(a.len()), T::from_count(b.len()));
    let (ma, va) = mean_and_sample_variance(a);
    let (mb, vb) = mean_and_sample_variance(b);
    let pooled_dof = na + nb - T::lit(2.0);

    let (se, dof) = match variant {
        TTestVariant::Welch => {
            let qa = va / na;
            let qb = vb / nb;
            let se2 = qa + qb;
            let denom = qa * qa / (na - one) + qb * qb / (nb - one);
            let dof = if denom > T::zero() {
                se2 * se2 / denom
            } else {
                pooled_dof
            };
            (se2.sqrt(), dof)
        }
        TTestVariant::Student => {
            let sp2 = ((na - one) * va + (nb - one) * vb) / pooled_dof;
            ((sp2 * (one / na + one / nb)).sqrt(), pooled_dof)
        }
    };

    let diff = ma - mb;
    let (t, p) = if se == T::zero() {
        if diff == T::zero() {
            (T::zero(), T::one())
        } else {
            (diff.signum() * T::infinity(), T::zero())
        }
    } else {
        let t = diff / se;
        (t, student_t_two_sided_p(t, dof))
    };
    Ok(TTestResult {
        variant,
        t_statistic: t,
        p_value: p,
        dof,
        significant_05: p < T::lit(0.05),
    })
}
