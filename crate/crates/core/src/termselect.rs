//! Term selection by expected mutual information between term presence and
//! category membership.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::textpipe::{TermId, Vocabulary};

/// Training-set document counts for one (term, category) pair.
///
/// The first index is term presence, the second category membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContingencyCell {
    pub n11: u64,
    pub n10: u64,
    pub n01: u64,
    pub n00: u64,
}

impl ContingencyCell {
    /// Cell counts from the term's document frequency, the category size,
    /// their overlap, and the collection size.
    pub fn from_margins(df: u64, n_k: u64, both: u64, p: u64) -> Self {
        Self {
            n11: both,
            n10: df - both,
            n01: n_k - both,
            n00: p + both - df - n_k,
        }
    }

    /// The score is unchanged by flipping either indicator or exchanging
    /// the roles of term and category. Scoring one fixed representative of
    /// those eight cells makes mathematically equal scores bitwise equal,
    /// so ties really do fall back to term id.
    fn canonical(self) -> Self {
        let Self { n11, n10, n01, n00 } = self;
        [
            [n11, n10, n01, n00],
            [n01, n00, n11, n10],
            [n10, n11, n00, n01],
            [n00, n01, n10, n11],
            [n11, n01, n10, n00],
            [n10, n00, n11, n01],
            [n01, n11, n00, n10],
            [n00, n10, n01, n11],
        ]
        .into_iter()
        .min()
        .map(|[n11, n10, n01, n00]| Self { n11, n10, n01, n00 })
        .unwrap_or(self)
    }

    pub fn total(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }
}

/// Expected mutual information in bits, with `0 · log 0 = 0`.
pub fn emi_score(cell: ContingencyCell) -> f64 {
    let cell = cell.canonical();
    let p = cell.total();
    if p == 0 {
        return 0.0;
    }
    let pf = p as f64;
    let term_yes = cell.n11 + cell.n10;
    let term_no = cell.n01 + cell.n00;
    let cat_yes = cell.n11 + cell.n01;
    let cat_no = cell.n10 + cell.n00;
    let part = |n: u64, row: u64, col: u64| {
        if n == 0 {
            0.0
        } else {
            let n = n as f64;
            (n / pf) * ((n * pf) / (row as f64 * col as f64)).log2()
        }
    };
    let score = part(cell.n11, term_yes, cat_yes)
        + part(cell.n10, term_yes, cat_no)
        + part(cell.n01, term_no, cat_yes)
        + part(cell.n00, term_no, cat_no);
    // Rounding can leave a hair below zero for independent margins.
    score.max(0.0)
}

/// Per-category top-k terms and their union.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Selection {
    pub per_category: BTreeMap<String, Vec<(TermId, f64)>>,
    pub terms: BTreeSet<TermId>,
}

impl Selection {
    /// CSV `category,term,score`, one line per selected pair.
    pub fn to_csv(&self, vocab: &Vocabulary) -> String {
        let mut out = String::from("category,term,score\n");
        for (cat, terms) in &self.per_category {
            for &(t, s) in terms {
                out.push_str(&format!("{cat},{},{s}\n", vocab.term(t)));
            }
        }
        out
    }
}

/// Picks the `k` best terms for each category and returns their union.
///
/// `doc_terms[l]` is the set of distinct terms of training document `l`;
/// `memberships` maps each category to the indices of its positive
/// training documents. Ties go to the lower term id. Categories without
/// positive documents contribute nothing.
pub fn select_terms(
    vocab: &Vocabulary,
    doc_terms: &[BTreeSet<TermId>],
    memberships: &BTreeMap<String, Vec<usize>>,
    k: usize,
) -> Selection {
    let p = doc_terms.len() as u64;
    let per_category: BTreeMap<String, Vec<(TermId, f64)>> = memberships
        .par_iter()
        .filter(|(_, positives)| !positives.is_empty())
        .map(|(cat, positives)| {
            let mut overlap = vec![0u64; vocab.len()];
            for &l in positives {
                for t in &doc_terms[l] {
                    overlap[t.index()] += 1;
                }
            }
            let n_k = positives.len() as u64;
            let mut scored: Vec<(TermId, f64)> = vocab
                .ids()
                .map(|t| {
                    let cell = ContingencyCell::from_margins(vocab.doc_freq(t) as u64, n_k, overlap[t.index()], p);
                    (t, emi_score(cell))
                })
                .collect();
            scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            scored.truncate(k);
            (cat.clone(), scored)
        })
        .collect();
    let terms = per_category.values().flat_map(|v| v.iter().map(|&(t, _)| t)).collect();
    Selection { per_category, terms }
}
