//! Category expansion from a lexical database.
//!
//! Synset selection is done offline by hand; its result is a TSV file
//! listing, for each category, the expression that names it and the
//! synonyms chosen for the whole expression or for one of its words. This
//! module turns that file into term/category closeness values and then into
//! initial category vectors for each trainer.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textpipe::{analyze, Stoplist, TermId, Vocabulary};
use crate::vsm::{CollectionWeights, SparseVector};

#[derive(Debug, Error)]
pub enum LexError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error("no collection weight for term {0}")]
    MissingWeight(TermId),
    #[error("initial weights need a positive maximum document norm, got {0}")]
    NonPositiveNorm(f64),
}

/// One synonym recorded for a category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionEntry {
    pub category: String,
    pub category_phrase: String,
    /// 0 when `synonym_term` is a synonym of the whole phrase, otherwise the
    /// 1-based position of the phrase word it is a synonym of.
    pub source_word_index: usize,
    pub synonym_term: String,
}

impl ExpansionEntry {
    pub fn phrase_words(&self) -> usize {
        self.category_phrase.split_whitespace().count()
    }
}

/// A closeness value between a category and a stemmed term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosenessEntry {
    pub category: String,
    pub term: TermId,
    pub closeness: f64,
}

/// Parses `category<TAB>phrase<TAB>index<TAB>synonym` lines. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_expansion(text: &str) -> Result<Vec<ExpansionEntry>, LexError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| LexError::Format { line, message };
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        if let Some(pos) = fields.iter().position(|f| f.is_empty()) {
            return Err(err(format!("field {} is empty", pos + 1)));
        }
        let source_word_index: usize = fields[2]
            .parse()
            .map_err(|_| err(format!("word index {:?} is not a non-negative integer", fields[2])))?;
        let entry = ExpansionEntry {
            category: fields[0].to_lowercase(),
            category_phrase: fields[1].to_string(),
            source_word_index,
            synonym_term: fields[3].to_string(),
        };
        if source_word_index > entry.phrase_words() {
            return Err(err(format!(
                "word index {source_word_index} exceeds the {} words of {:?}",
                entry.phrase_words(),
                entry.category_phrase
            )));
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_expansion_file(path: &Path) -> Result<Vec<ExpansionEntry>, LexError> {
    let text = std::fs::read_to_string(path).map_err(|source| LexError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_expansion(&text)
}

/// 1 for a synonym of the whole expression, `1/nc` for a synonym of one
/// word of an `nc`-word expression.
pub fn closeness(entry: &ExpansionEntry) -> f64 {
    if entry.source_word_index == 0 {
        1.0
    } else {
        1.0 / entry.phrase_words() as f64
    }
}

/// Splits synonyms into words, removes stopwords, stems, drops stems that
/// never occur in training, and keeps the largest closeness for each
/// (category, stem). Output is sorted by category, then term.
pub fn build_closeness_table(
    entries: &[ExpansionEntry],
    stoplist: &Stoplist,
    vocab: &Vocabulary,
) -> Vec<ClosenessEntry> {
    let mut best: BTreeMap<(String, TermId), f64> = BTreeMap::new();
    for e in entries {
        let value = closeness(e);
        for stem in analyze(&e.synonym_term, stoplist) {
            let Some(term) = vocab.id(&stem) else { continue };
            let slot = best.entry((e.category.clone(), term)).or_insert(value);
            if value > *slot {
                *slot = value;
            }
        }
    }
    best.into_iter()
        .map(|((category, term), closeness)| ClosenessEntry {
            category,
            term,
            closeness,
        })
        .collect()
}

/// CSV `category,term,closeness`.
pub fn closeness_csv(table: &[ClosenessEntry], vocab: &Vocabulary) -> String {
    let mut out = String::from("category,term,closeness\n");
    for e in table {
        out.push_str(&format!("{},{},{}\n", e.category, vocab.term(e.term), e.closeness));
    }
    out
}

/// Closeness taken as an occurrence count: weight = closeness · tw.
pub fn initial_vectors_rocchio(
    table: &[ClosenessEntry],
    weights: &CollectionWeights,
) -> Result<BTreeMap<String, SparseVector>, LexError> {
    let mut pairs: BTreeMap<String, Vec<(TermId, f64)>> = BTreeMap::new();
    for e in table {
        let tw = weights.weight(e.term).ok_or(LexError::MissingWeight(e.term))?;
        pairs
            .entry(e.category.clone())
            .or_default()
            .push((e.term, e.closeness * tw));
    }
    Ok(pairs
        .into_iter()
        .map(|(cat, p)| (cat, SparseVector::from_pairs(p)))
        .collect())
}

/// Rocchio initials divided by the largest training document norm.
pub fn initial_vectors_widrow_hoff(
    rocchio_initials: &BTreeMap<String, SparseVector>,
    max_norm: f64,
) -> Result<BTreeMap<String, SparseVector>, LexError> {
    if max_norm.is_nan() || max_norm <= 0.0 {
        return Err(LexError::NonPositiveNorm(max_norm));
    }
    Ok(rocchio_initials
        .iter()
        .map(|(cat, v)| (cat.clone(), v.scaled(1.0 / max_norm)))
        .collect())
}
