//! Tokenization, stopword removal, stemming, and the training vocabulary.

mod porter;

pub use porter::stem;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::RawDocument;

const SMART_STOPLIST: &str = include_str!("../../data/smart_stoplist.txt");

/// Dense identifier of a stemmed term in a [`Vocabulary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TermId(pub u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Split text into lowercase runs of alphabetic characters.
///
/// Everything that is not a letter separates tokens; single-letter tokens
/// are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| t.chars().nth(1).is_some())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stoplist {
    words: HashSet<String>,
}

impl Stoplist {
    /// The 570 distinct words of the SMART stoplist.
    pub fn smart() -> Self {
        Self::parse(SMART_STOPLIST)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_lowercase)
            .collect();
        Self { words }
    }

    pub fn from_file(path: impl AsRef<Path>) -> io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self {
            words: iter.into_iter().map(Into::into).collect(),
        }
    }
}

/// Order-preserving removal of stoplist members.
pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

/// Full term pipeline for one piece of text: tokenize, drop stopwords, stem.
///
/// Stems that themselves collide with a stopword are dropped too, so no
/// index term is ever a stoplist member.
pub fn analyze(text: &str, stoplist: &Stoplist) -> Vec<String> {
    remove_stopwords(tokenize(text), stoplist)
        .iter()
        .map(|t| stem(t))
        .filter(|s| !stoplist.contains(s))
        .collect()
}

/// Title and body joined by a single space.
pub fn document_text(doc: &RawDocument) -> String {
    let mut text = String::with_capacity(doc.title.len() + doc.body.len() + 1);
    text.push_str(&doc.title);
    text.push(' ');
    text.push_str(&doc.body);
    text
}

/// Stem occurrence counts for a document.
pub fn document_stems(doc: &RawDocument, stoplist: &Stoplist) -> BTreeMap<String, u32> {
    let mut counts = BTreeMap::new();
    for s in analyze(&document_text(doc), stoplist) {
        *counts.entry(s).or_insert(0) += 1;
    }
    counts
}

/// Stemmed terms seen in the training documents, with the number of
/// training documents containing each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    term_to_id: HashMap<String, TermId>,
    id_to_term: Vec<String>,
    doc_freq: Vec<u32>,
    n_docs: u32,
}

impl Vocabulary {
    /// Builds from already-analyzed documents. Ids follow the lexicographic
    /// order of the terms, so the result does not depend on document order.
    pub fn from_term_sets<'a, I, S>(docs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = &'a String>,
    {
        let mut freq: BTreeMap<&'a String, u32> = BTreeMap::new();
        let mut n_docs = 0u32;
        for doc in docs {
            n_docs += 1;
            let distinct: BTreeSet<&String> = doc.into_iter().collect();
            for term in distinct {
                *freq.entry(term).or_insert(0) += 1;
            }
        }
        let mut vocab = Vocabulary {
            n_docs,
            ..Default::default()
        };
        for (i, (term, df)) in freq.into_iter().enumerate() {
            vocab.term_to_id.insert(term.clone(), TermId(i as u32));
            vocab.id_to_term.push(term.clone());
            vocab.doc_freq.push(df);
        }
        vocab
    }

    pub fn id(&self, term: &str) -> Option<TermId> {
        self.term_to_id.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &str {
        &self.id_to_term[id.index()]
    }

    pub fn doc_freq(&self, id: TermId) -> u32 {
        self.doc_freq[id.index()]
    }

    /// Number of training documents the vocabulary was built from.
    pub fn n_docs(&self) -> u32 {
        self.n_docs
    }

    pub fn len(&self) -> usize {
        self.id_to_term.len()
    }

    pub fn is_empty(&self) -> bool {
        self.id_to_term.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = TermId> + '_ {
        (0..self.len() as u32).map(TermId)
    }

    pub fn terms(&self) -> impl Iterator<Item = (TermId, &str)> + '_ {
        self.id_to_term
            .iter()
            .enumerate()
            .map(|(i, t)| (TermId(i as u32), t.as_str()))
    }

    /// `term<TAB>id<TAB>doc_freq` lines.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, term) in self.terms() {
            out.push_str(&format!("{term}\t{id}\t{}\n", self.doc_freq(id)));
        }
        out
    }

    /// SHA-256 over the dump, hex encoded.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.n_docs.to_le_bytes());
        h.update(self.dump().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Vocabulary over the title and body of every training document.
pub fn build_vocabulary(training_docs: &[RawDocument], stoplist: &Stoplist) -> Vocabulary {
    let analyzed: Vec<Vec<String>> = training_docs
        .iter()
        .map(|d| analyze(&document_text(d), stoplist))
        .collect();
    Vocabulary::from_term_sets(analyzed.iter())
}
