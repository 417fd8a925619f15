//! Category vector training: Rocchio and Widrow-Hoff, each starting from an
//! optional initial vector.
//!
//! Widrow-Hoff uses the least-mean-squares step
//! `w <- w - 2·eta·(x·w - y)·x`, which moves the prediction toward the
//! target. The same rule is sometimes printed with `+` in front of the
//! correction; that form walks away from the target and diverges.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vsm::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Rocchio,
    WidrowHoff,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Rocchio => "rocchio",
            Algorithm::WidrowHoff => "widrow-hoff",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rocchio" => Ok(Algorithm::Rocchio),
            "widrow-hoff" => Ok(Algorithm::WidrowHoff),
            other => Err(format!("unknown algorithm {other:?} (expected rocchio or widrow-hoff)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Widrow-Hoff learning rate; `None` means `1 / (4·X²)` with `X` the
    /// largest training document norm.
    pub eta: Option<f64>,
}

impl Default for TrainingParams {
    fn default() -> Self {
        Self {
            alpha: 20.0,
            beta: 16.0,
            gamma: 4.0,
            eta: None,
        }
    }
}

impl TrainingParams {
    pub fn eta_for(&self, max_norm: f64) -> Result<f64, TrainError> {
        match self.eta {
            Some(eta) => Ok(eta),
            None if max_norm > 0.0 => Ok(1.0 / (4.0 * max_norm * max_norm)),
            None => Err(TrainError::NoDocumentNorm),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TrainError {
    #[error("Widrow-Hoff diverged at training document {step} (category {category:?}); learning rate too large")]
    Diverged { category: String, step: usize },
    #[error("cannot derive a learning rate: every training document vector is empty")]
    NoDocumentNorm,
    #[error("invalid training parameter: {0}")]
    InvalidParams(String),
}

/// A trained category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryProfile {
    pub category: String,
    pub vector: SparseVector,
    /// Positive training documents.
    pub n_k: usize,
}

fn dimension<'a>(vectors: impl IntoIterator<Item = &'a SparseVector>) -> usize {
    vectors
        .into_iter()
        .flat_map(|v| v.terms())
        .map(|t| t.index() + 1)
        .max()
        .unwrap_or(0)
}

fn mean_dense(docs: &[&SparseVector], dim: usize) -> Vec<f64> {
    let mut acc = vec![0.0; dim];
    if docs.is_empty() {
        return acc;
    }
    for d in docs {
        for &(t, w) in d.entries() {
            acc[t.index()] += w;
        }
    }
    let n = docs.len() as f64;
    for w in &mut acc {
        *w /= n;
    }
    acc
}

/// `alpha·initial + beta·mean(positives) − gamma·mean(negatives)`, negative
/// components set to zero. An empty mean counts as the zero vector.
pub fn rocchio(
    initial: &SparseVector,
    positives: &[&SparseVector],
    negatives: &[&SparseVector],
    params: &TrainingParams,
) -> SparseVector {
    let dim = dimension(positives.iter().chain(negatives).copied().chain([initial]));
    let pos = mean_dense(positives, dim);
    let neg = mean_dense(negatives, dim);
    let mut w = vec![0.0; dim];
    for &(t, x) in initial.entries() {
        w[t.index()] = x;
    }
    for i in 0..dim {
        let x = params.alpha * w[i] + params.beta * pos[i] - params.gamma * neg[i];
        w[i] = if x < 0.0 { 0.0 } else { x };
    }
    SparseVector::from_dense(&w)
}

/// One sequential pass over `sequence` (document, target) starting from
/// `initial`. The result is not clipped.
pub fn widrow_hoff(
    initial: &SparseVector,
    sequence: &[(&SparseVector, bool)],
    eta: f64,
) -> Result<SparseVector, usize> {
    let dim = dimension(sequence.iter().map(|&(d, _)| d).chain([initial]));
    let mut w = vec![0.0; dim];
    for &(t, x) in initial.entries() {
        w[t.index()] = x;
    }
    for (step, &(doc, member)) in sequence.iter().enumerate() {
        let y = if member { 1.0 } else { 0.0 };
        let coeff = 2.0 * eta * (doc.dot_dense(&w) - y);
        if coeff == 0.0 {
            continue;
        }
        for &(t, x) in doc.entries() {
            let updated = w[t.index()] - coeff * x;
            if !updated.is_finite() {
                return Err(step);
            }
            w[t.index()] = updated;
        }
    }
    Ok(SparseVector::from_dense(&w))
}

/// Training documents in corpus order, each with its category labels.
#[derive(Debug, Clone, Copy)]
pub struct TrainingDoc<'a> {
    pub vector: &'a SparseVector,
    pub topics: &'a [String],
}

/// Trains one profile per category in `categories`, in that order.
///
/// Categories without an entry in `initials` start from the zero vector.
/// `max_norm` is the largest training document norm, used for the default
/// learning rate.
pub fn train_all(
    categories: &[String],
    docs: &[TrainingDoc<'_>],
    initials: &BTreeMap<String, SparseVector>,
    algorithm: Algorithm,
    params: &TrainingParams,
    max_norm: f64,
) -> Result<Vec<CategoryProfile>, TrainError> {
    for (name, v) in [("alpha", params.alpha), ("beta", params.beta), ("gamma", params.gamma)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(TrainError::InvalidParams(format!(
                "{name} must be a non-negative number, got {v}"
            )));
        }
    }
    let eta = match algorithm {
        // With every document vector empty no step changes anything, so
        // the rate is irrelevant and need not be derived.
        Algorithm::WidrowHoff if !docs.is_empty() && (params.eta.is_some() || max_norm > 0.0) => {
            let eta = params.eta_for(max_norm)?;
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(TrainError::InvalidParams(format!("eta must be positive, got {eta}")));
            }
            eta
        }
        _ => 0.0,
    };
    let zero = SparseVector::new();
    categories
        .par_iter()
        .map(|cat| {
            let initial = initials.get(cat).unwrap_or(&zero);
            let member: Vec<bool> = docs.iter().map(|d| d.topics.iter().any(|t| t == cat)).collect();
            let n_k = member.iter().filter(|&&m| m).count();
            let vector = match algorithm {
                Algorithm::Rocchio => {
                    let (pos, neg): (Vec<_>, Vec<_>) = docs.iter().zip(&member).partition(|(_, &m)| m);
                    let pos: Vec<&SparseVector> = pos.into_iter().map(|(d, _)| d.vector).collect();
                    let neg: Vec<&SparseVector> = neg.into_iter().map(|(d, _)| d.vector).collect();
                    rocchio(initial, &pos, &neg, params)
                }
                Algorithm::WidrowHoff => {
                    let seq: Vec<(&SparseVector, bool)> =
                        docs.iter().zip(&member).map(|(d, &m)| (d.vector, m)).collect();
                    widrow_hoff(initial, &seq, eta).map_err(|step| TrainError::Diverged {
                        category: cat.clone(),
                        step,
                    })?
                }
            };
            Ok(CategoryProfile {
                category: cat.clone(),
                vector,
                n_k,
            })
        })
        .collect()
}
