//! Per-category document rankings and 11-point interpolated precision.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::training::CategoryProfile;
use crate::vsm::{cosine, SparseVector};

/// Recall levels 0.0, 0.1, ..., 1.0.
pub const RECALL_LEVELS: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("category has no relevant test documents")]
    NoRelevant,
    #[error("cannot average an empty set of curves")]
    NoCurves,
}

/// Test documents ordered by descending similarity, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedList {
    pub category: String,
    pub items: Vec<(u32, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionCurve {
    pub precision: [f64; 11],
    pub average: f64,
}

impl PrecisionCurve {
    pub fn new(precision: [f64; 11]) -> Self {
        let average = precision.iter().sum::<f64>() / 11.0;
        Self { precision, average }
    }
}

pub fn rank_documents(profile: &CategoryProfile, test_vectors: &[(u32, SparseVector)]) -> RankedList {
    let mut items: Vec<(u32, f64)> = test_vectors
        .iter()
        .map(|(id, v)| (*id, cosine(v, &profile.vector)))
        .collect();
    items.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    RankedList {
        category: profile.category.clone(),
        items,
    }
}

/// Interpolated precision at each recall level: the best precision at any
/// cutoff whose recall reaches the level.
pub fn interpolated_precision(ranked: &RankedList, relevant: &BTreeSet<u32>) -> Result<PrecisionCurve, EvalError> {
    if relevant.is_empty() {
        return Err(EvalError::NoRelevant);
    }
    let total = relevant.len();
    // (relevant retrieved, retrieved) at each cutoff that adds a relevant
    // document; other cutoffs never hold the maximum.
    let mut hits = Vec::with_capacity(total);
    let mut found = 0usize;
    for (rank, (id, _)) in ranked.items.iter().enumerate() {
        if relevant.contains(id) {
            found += 1;
            hits.push((found, rank + 1));
        }
    }
    let mut precision = [0.0; 11];
    let mut best = 0.0f64;
    let mut next = hits.len();
    for level in (0..=10usize).rev() {
        // include every hit whose recall found/total >= level/10
        while next > 0 && hits[next - 1].0 * 10 >= level * total {
            let (f, r) = hits[next - 1];
            best = best.max(f as f64 / r as f64);
            next -= 1;
        }
        precision[level] = best;
    }
    Ok(PrecisionCurve::new(precision))
}

/// Per-level arithmetic mean; every curve weighs the same.
pub fn macro_average(curves: &[PrecisionCurve]) -> Result<PrecisionCurve, EvalError> {
    if curves.is_empty() {
        return Err(EvalError::NoCurves);
    }
    let mut precision = [0.0; 11];
    for (level, p) in precision.iter_mut().enumerate() {
        *p = curves.iter().map(|c| c.precision[level]).sum::<f64>() / curves.len() as f64;
    }
    Ok(PrecisionCurve::new(precision))
}

/// Macro averages for rare categories, frequent categories, and all.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakdown {
    pub threshold: usize,
    pub low: Option<PrecisionCurve>,
    pub high: Option<PrecisionCurve>,
    pub total: Option<PrecisionCurve>,
    pub low_count: usize,
    pub high_count: usize,
}

/// Splits `curves` by the training frequency of their category: fewer than
/// `threshold` positive training documents goes to `low`. An empty group
/// has no curve.
pub fn frequency_breakdown(
    profiles: &[CategoryProfile],
    curves: &BTreeMap<String, PrecisionCurve>,
    threshold: usize,
) -> Breakdown {
    let n_k: BTreeMap<&str, usize> = profiles.iter().map(|p| (p.category.as_str(), p.n_k)).collect();
    let (mut low, mut high) = (Vec::new(), Vec::new());
    for (cat, curve) in curves {
        let n = n_k.get(cat.as_str()).copied().unwrap_or(0);
        if n < threshold {
            low.push(*curve);
        } else {
            high.push(*curve);
        }
    }
    let all: Vec<PrecisionCurve> = curves.values().copied().collect();
    Breakdown {
        threshold,
        low: macro_average(&low).ok(),
        high: macro_average(&high).ok(),
        total: macro_average(&all).ok(),
        low_count: low.len(),
        high_count: high.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textpipe::TermId;

    fn ranked(ids: &[u32]) -> RankedList {
        RankedList {
            category: "c".into(),
            items: ids
                .iter()
                .enumerate()
                .map(|(i, &id)| (id, 1.0 - i as f64 * 0.01))
                .collect(),
        }
    }

    fn set(ids: &[u32]) -> BTreeSet<u32> {
        ids.iter().copied().collect()
    }

    #[test]
    fn alternating_ranking() {
        let c = interpolated_precision(&ranked(&[1, 2, 3, 4]), &set(&[1, 3])).unwrap();
        for level in 0..=5 {
            assert_eq!(c.precision[level], 1.0);
        }
        for level in 6..=10 {
            assert_eq!(c.precision[level], 2.0 / 3.0);
        }
        assert!((c.average - (6.0 + 5.0 * 2.0 / 3.0) / 11.0).abs() < 1e-12);
        assert!((c.average - 0.8485).abs() < 1e-4);
    }

    #[test]
    fn perfect_and_worst() {
        let c = interpolated_precision(&ranked(&[7, 8, 1, 2]), &set(&[7, 8])).unwrap();
        assert_eq!(c.precision, [1.0; 11]);
        assert_eq!(c.average, 1.0);

        let c = interpolated_precision(&ranked(&[1, 2, 3, 4, 5]), &set(&[5])).unwrap();
        assert_eq!(c.precision, [0.2; 11]);
    }

    #[test]
    fn empty_relevant_set_is_rejected() {
        assert_eq!(
            interpolated_precision(&ranked(&[1]), &set(&[])),
            Err(EvalError::NoRelevant)
        );
    }

    #[test]
    fn ranking_order_and_ties() {
        let profile = CategoryProfile {
            category: "c".into(),
            vector: SparseVector::from_pairs([(TermId(0), 1.0)]),
            n_k: 1,
        };
        let docs = vec![
            (30, SparseVector::from_pairs([(TermId(1), 1.0)])),
            (10, SparseVector::from_pairs([(TermId(0), 1.0), (TermId(1), 1.0)])),
            (20, SparseVector::from_pairs([(TermId(0), 1.0)])),
            (5, SparseVector::new()),
        ];
        let r = rank_documents(&profile, &docs);
        assert_eq!(r.items.iter().map(|x| x.0).collect::<Vec<_>>(), [20, 10, 5, 30]);

        let zero = CategoryProfile {
            vector: SparseVector::new(),
            ..profile
        };
        let r = rank_documents(&zero, &docs);
        assert_eq!(r.items.iter().map(|x| x.0).collect::<Vec<_>>(), [5, 10, 20, 30]);
        assert!(r.items.iter().all(|x| x.1 == 0.0));
    }

    #[test]
    fn macro_average_cases() {
        let one = PrecisionCurve::new([1.0; 11]);
        let zero = PrecisionCurve::new([0.0; 11]);
        assert_eq!(macro_average(&[one, one]).unwrap(), one);
        assert_eq!(macro_average(&[one, zero]).unwrap().precision, [0.5; 11]);
        assert_eq!(macro_average(&[]), Err(EvalError::NoCurves));
    }

    fn profile(cat: &str, n_k: usize) -> CategoryProfile {
        CategoryProfile {
            category: cat.into(),
            vector: SparseVector::new(),
            n_k,
        }
    }

    #[test]
    fn breakdown_groups() {
        let profiles = [profile("a", 0), profile("b", 9), profile("c", 10), profile("d", 400)];
        let curves: BTreeMap<String, PrecisionCurve> = [
            ("a".to_string(), PrecisionCurve::new([0.2; 11])),
            ("b".to_string(), PrecisionCurve::new([0.4; 11])),
            ("c".to_string(), PrecisionCurve::new([0.6; 11])),
            ("d".to_string(), PrecisionCurve::new([1.0; 11])),
        ]
        .into();
        let b = frequency_breakdown(&profiles, &curves, 10);
        assert_eq!((b.low_count, b.high_count), (2, 2));
        assert!((b.low.unwrap().average - 0.3).abs() < 1e-12);
        assert!((b.high.unwrap().average - 0.8).abs() < 1e-12);
        assert!((b.total.unwrap().average - 0.55).abs() < 1e-12);

        let b = frequency_breakdown(&profiles, &curves, 0);
        assert!(b.low.is_none());
        assert_eq!(b.high, b.total);
    }
}
