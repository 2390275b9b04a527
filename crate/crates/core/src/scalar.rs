use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::Serialize;

/// Floating point scalar used throughout the toolkit: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Serialize + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 constant representable in scalar type")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub(crate) fn dot<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

pub(crate) fn norm<T: Scalar>(u: &[T]) -> T {
    dot(u, u).sqrt()
}

pub(crate) fn sub<T: Scalar>(u: &[T], v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(&a, &b)| a - b).collect()
}

/// Component-wise arithmetic mean of equal-length vectors. Callers check lengths.
///
/// Addends are summed in sorted order, so the result does not depend on the
/// order of `vectors`.
pub(crate) fn mean_of<T: Scalar>(vectors: &[&[T]]) -> Vec<T> {
    let dim = vectors[0].len();
    let n = T::from_count(vectors.len());
    let mut column = Vec::with_capacity(vectors.len());
    (0..dim)
        .map(|i| {
            column.clear();
            column.extend(vectors.iter().map(|v| v[i]));
            column.sort_by(|a, b| a.partial_cmp(b).expect("finite components"));
            column.iter().fold(T::zero(), |acc, &x| acc + x) / n
        })
        .collect()
}
