//! Sparse term-weight vectors and the collection weighting used for both
//! documents and categories.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textpipe::{TermId, Vocabulary};

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("term occurs in no training document (tf = 0)")]
    ZeroFrequency,
    #[error("document frequency {tf} exceeds collection size {p}")]
    FrequencyAboveCollection { tf: u32, p: u32 },
}

/// `(term, weight)` pairs, strictly ascending by term, no stored zeros.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    entries: Vec<(TermId, f64)>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sums duplicate terms and drops zero results.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (TermId, f64)>) -> Self {
        let mut acc: BTreeMap<TermId, f64> = BTreeMap::new();
        for (t, w) in pairs {
            *acc.entry(t).or_insert(0.0) += w;
        }
        Self {
            entries: acc.into_iter().filter(|&(_, w)| w != 0.0).collect(),
        }
    }

    /// Builds from a dense array indexed by term id.
    pub fn from_dense(dense: &[f64]) -> Self {
        Self {
            entries: dense
                .iter()
                .enumerate()
                .filter(|&(_, &w)| w != 0.0)
                .map(|(i, &w)| (TermId(i as u32), w))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(TermId, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, term: TermId) -> f64 {
        self.entries
            .binary_search_by_key(&term, |&(t, _)| t)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut sum = 0.0;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    /// Dot product against a dense array indexed by term id.
    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|&(t, w)| w * dense[t.index()]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> SparseVector {
        Self {
            entries: self
                .entries
                .iter()
                .map(|&(t, w)| (t, w * factor))
                .filter(|&(_, w)| w != 0.0)
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = TermId> + '_ {
        self.entries.iter().map(|&(t, _)| t)
    }

    /// Checks ordering, duplicates, zeros and finiteness.
    pub fn is_well_formed(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 < w[1].0) && self.entries.iter().all(|&(_, w)| w != 0.0 && w.is_finite())
    }

    /// `term_id<TAB>term<TAB>weight` lines.
    pub fn dump(&self, vocab: &Vocabulary) -> String {
        let mut out = String::new();
        for &(t, w) in &self.entries {
            out.push_str(&format!("{t}\t{}\t{w}\n", vocab.term(t)));
        }
        out
    }
}

/// `log2(P / tf)` for a term found in `tf` of `p` training documents.
pub fn term_weight(tf: u32, p: u32) -> Result<f64, WeightError> {
    if tf == 0 {
        return Err(WeightError::ZeroFrequency);
    }
    if tf > p {
        return Err(WeightError::FrequencyAboveCollection { tf, p });
    }
    Ok((p as f64 / tf as f64).log2())
}

/// Per-term collection weights, estimated on the training documents and
/// reused unchanged for test documents and lexical initial vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionWeights {
    tw: Vec<f64>,
    n_docs: u32,
}

impl CollectionWeights {
    pub fn from_vocabulary(vocab: &Vocabulary) -> Self {
        let p = vocab.n_docs();
        let tw = vocab
            .ids()
            .map(|id| term_weight(vocab.doc_freq(id), p).expect("vocabulary frequencies lie in 1..=P"))
            .collect();
        Self { tw, n_docs: p }
    }

    pub fn weight(&self, term: TermId) -> Option<f64> {
        self.tw.get(term.index()).copied()
    }

    pub fn n_docs(&self) -> u32 {
        self.n_docs
    }

    pub fn len(&self) -> usize {
        self.tw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tw.is_empty()
    }
}

/// Raw occurrence count times collection weight, for each selected term
/// present in the document. Terms outside the vocabulary are ignored.
pub fn doc_vector<'a>(
    stem_counts: impl IntoIterator<Item = (&'a String, &'a u32)>,
    selected: &BTreeSet<TermId>,
    vocab: &Vocabulary,
    weights: &CollectionWeights,
) -> SparseVector {
    SparseVector::from_pairs(stem_counts.into_iter().filter_map(|(stem, &count)| {
        let id = vocab.id(stem)?;
        if !selected.contains(&id) {
            return None;
        }
        Some((id, count as f64 * weights.weight(id)?))
    }))
}

/// Cosine of the angle between two vectors; 0 when either is empty.
pub fn cosine(d: &SparseVector, c: &SparseVector) -> f64 {
    let denom = d.norm() * c.norm();
    if denom == 0.0 {
        return 0.0;
    }
    d.dot(c) / denom
}

/// Largest Euclidean norm among the training document vectors.
pub fn max_doc_norm<'a>(vectors: impl IntoIterator<Item = &'a SparseVector>) -> f64 {
    vectors.into_iter().map(SparseVector::norm).fold(0.0, f64::max)
}
