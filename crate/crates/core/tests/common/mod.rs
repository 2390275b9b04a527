//! Independent brute-force reference implementations and seeded data
//! generators shared by integration and acceptance tests. Nothing here calls
//! into the library's numerical code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use emoculture::corpus::{EmbeddingHeader, EmbeddingSet, EmotionLexicon, LexiconEntry, PhrasePair};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn oracle_euclidean(u: &[f64], v: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 0..u.len() {
        total += (u[i] - v[i]).powi(2);
    }
    total.sqrt()
}

pub fn oracle_cosine(u: &[f64], v: &[f64]) -> f64 {
    let (mut uv, mut uu, mut vv) = (0.0, 0.0, 0.0);
    for i in 0..u.len() {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    1.0 - uv / (uu.sqrt() * vv.sqrt())
}

/// Pearson r as the mean product of z-scores (sample standard deviations).
pub fn oracle_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mean = |s: &[f64]| s.iter().sum::<f64>() / n;
    let (mx, my) = (mean(x), mean(y));
    let sd = |s: &[f64], m: f64| (s.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0)).sqrt();
    let (sx, sy) = (sd(x, mx), sd(y, my));
    if sx == 0.0 || sy == 0.0 {
        return None;
    }
    let mut acc = 0.0;
    for i in 0..x.len() {
        acc += ((x[i] - mx) / sx) * ((y[i] - my) / sy);
    }
    Some(acc / (n - 1.0))
}

/// Rank by counting: 1 + number strictly below + half the other ties.
pub fn oracle_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let below = x.iter().filter(|&&w| w < v).count() as f64;
            let equal = x.iter().filter(|&&w| w == v).count() as f64;
            1.0 + below + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn oracle_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    oracle_pearson(&oracle_ranks(x), &oracle_ranks(y))
}

fn decimal(text: &str) -> BigRational {
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let numer: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let denom = BigInt::from(10).pow(frac.len() as u32);
    let value = BigRational::new(numer, denom);
    if negative {
        -value
    } else {
        value
    }
}

/// Pearson r of decimal literals computed exactly in rationals; only the
/// final square root is taken in floating point.
pub fn exact_pearson(x: &[&str], y: &[&str]) -> f64 {
    use num_traits::{Signed, ToPrimitive, Zero};
    let xs: Vec<BigRational> = x.iter().map(|v| decimal(v)).collect();
    let ys: Vec<BigRational> = y.iter().map(|v| decimal(v)).collect();
    let n = BigRational::from_integer(BigInt::from(x.len()));
    let sum = |s: &[BigRational]| s.iter().fold(BigRational::zero(), |a, b| a + b);
    let (mx, my) = (sum(&xs) / &n, sum(&ys) / &n);
    let (mut sxy, mut sxx, mut syy) = (BigRational::zero(), BigRational::zero(), BigRational::zero());
    for (a, b) in xs.iter().zip(&ys) {
        let dx = a - &mx;
        let dy = b - &my;
        sxy += &dx * &dy;
        sxx += &dx * &dx;
        syy += &dy * &dy;
    }
    let r2 = (&sxy * &sxy) / (sxx * syy);
    let magnitude = r2.to_f64().expect("representable").sqrt();
    if sxy.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

pub enum OracleDistance {
    Euclidean,
    Cosine,
}

pub enum OracleCorrelation {
    Pearson,
    Spearman,
}

pub struct OracleSimilarity {
    pub per_lemma: Vec<Option<f64>>,
    pub mean: f64,
    pub std: f64,
}

/// Per-lemma distance-vector correlation recomputed from scratch with
/// nested loops over `vectors` in the given order.
pub fn oracle_similarity(
    left: &[Vec<f64>],
    right: &[Vec<f64>],
    distance: OracleDistance,
    correlation: OracleCorrelation,
) -> OracleSimilarity {
    let d = |u: &[f64], v: &[f64]| match distance {
        OracleDistance::Euclidean => oracle_euclidean(u, v),
        OracleDistance::Cosine => oracle_cosine(u, v).clamp(0.0, 2.0),
    };
    let mut per_lemma = Vec::new();
    for i in 0..left.len() {
        let mut dl = Vec::new();
        let mut dr = Vec::new();
        for j in 0..left.len() {
            if j != i {
                dl.push(d(&left[i], &left[j]));
                dr.push(d(&right[i], &right[j]));
            }
        }
        per_lemma.push(match correlation {
            OracleCorrelation::Pearson => oracle_pearson(&dl, &dr),
            OracleCorrelation::Spearman => oracle_spearman(&dl, &dr),
        });
    }
    let valid: Vec<f64> = per_lemma.iter().flatten().copied().collect();
    let mean = valid.iter().sum::<f64>() / valid.len() as f64;
    let std = (valid.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / valid.len() as f64).sqrt();
    OracleSimilarity { per_lemma, mean, std }
}

/// Welch statistic and degrees of freedom from textbook formulas.
pub fn oracle_welch(a: &[f64], b: &[f64]) -> (f64, f64) {
    let var = |s: &[f64]| {
        let m = s.iter().sum::<f64>() / s.len() as f64;
        s.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (s.len() as f64 - 1.0)
    };
    let (ma, mb) = (
        a.iter().sum::<f64>() / a.len() as f64,
        b.iter().sum::<f64>() / b.len() as f64,
    );
    let (qa, qb) = (var(a) / a.len() as f64, var(b) / b.len() as f64);
    let t = (ma - mb) / (qa + qb).sqrt();
    let dof = (qa + qb).powi(2) / (qa * qa / (a.len() as f64 - 1.0) + qb * qb / (b.len() as f64 - 1.0));
    (t, dof)
}

/// Two-sided p from the Student t distribution of `statrs`.
pub fn oracle_two_sided_p(t: f64, dof: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, StudentsT};
    let dist = StudentsT::new(0.0, 1.0, dof).unwrap();
    2.0 * dist.cdf(-t.abs())
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn lemma_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("emotion{i:03}")).collect()
}

/// Lexicon with one placeholder phrase pair per lemma in each language.
pub fn lexicon_for(lemmas: &[String], languages: &[&str]) -> EmotionLexicon {
    let entries = lemmas
        .iter()
        .map(|lemma| LexiconEntry {
            lemma: lemma.clone(),
            phrases: languages
                .iter()
                .map(|l| {
                    (
                        l.to_string(),
                        PhrasePair {
                            feel: format!("I feel {lemma}"),
                            am: format!("I am {lemma}"),
                        },
                    )
                })
                .collect::<BTreeMap<_, _>>(),
        })
        .collect();
    EmotionLexicon::from_entries(entries).unwrap()
}

pub fn embedding_set(model: &str, language: &str, lemmas: &[String], vectors: &[Vec<f64>]) -> EmbeddingSet<f64> {
    let header = EmbeddingHeader {
        model_id: model.into(),
        language: language.into(),
        dim: vectors[0].len(),
        provenance: serde_json::Value::Null,
    };
    EmbeddingSet::new(header, lemmas.iter().cloned().zip(vectors.iter().cloned())).unwrap()
}

/// Haar-ish random orthogonal matrix via Gram-Schmidt on Gaussian columns,
/// returned as rows.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = gaussian_vec(rng, dim);
        for b in &basis {
            let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= p * y;
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    basis
}

pub fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `scale * Q v + shift`.
pub fn similarity_transform(q: &[Vec<f64>], scale: f64, shift: &[f64], v: &[f64]) -> Vec<f64> {
    mat_vec(q, v).iter().zip(shift).map(|(x, s)| scale * x + s).collect()
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}
