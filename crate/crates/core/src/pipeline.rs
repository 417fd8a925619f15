//! End-to-end experiment: parse, split, index, select terms, optionally
//! seed from the lexical expansion, train, rank and evaluate.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{self, CorpusError, CorpusSplit, CorpusStats, RawDocument};
use crate::eval::{self, Breakdown, EvalError, PrecisionCurve};
use crate::lexdb::{self, ClosenessEntry, ExpansionEntry, LexError};
use crate::model::Model;
use crate::termselect::{self, Selection};
use crate::textpipe::{self, Stoplist, TermId, Vocabulary};
use crate::training::{self, Algorithm, CategoryProfile, TrainError, TrainingDoc, TrainingParams};
use crate::vsm::{self, CollectionWeights, SparseVector};

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration: {0}")]
    Config(String),
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("stoplist {path}: {source}")]
    Stoplist { path: PathBuf, source: std::io::Error },
    #[error("expansion: {0}")]
    Lex(#[from] LexError),
    #[error("training: {0}")]
    Train(#[from] TrainError),
    #[error("evaluation: {0}")]
    Eval(#[from] EvalError),
    #[error("model file, line {line}: {message}")]
    Model { line: usize, message: String },
    #[error("model was trained on a different vocabulary (model {model}, corpus {corpus})")]
    VocabularyMismatch { model: String, corpus: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Usage,
            Error::Train(TrainError::InvalidParams(_)) => ErrorKind::Usage,
            Error::Eval(_) | Error::Lex(LexError::MissingWeight(_)) => ErrorKind::Internal,
            _ => ErrorKind::Data,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub corpus_dir: PathBuf,
    pub stoplist_path: Option<PathBuf>,
    pub expansion_path: Option<PathBuf>,
    pub algorithm: Algorithm,
    pub use_lexdb: bool,
    pub k_terms: usize,
    pub params: TrainingParams,
    pub threshold: usize,
}

impl RunConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus_dir: corpus_dir.into(),
            stoplist_path: None,
            expansion_path: None,
            algorithm: Algorithm::Rocchio,
            use_lexdb: false,
            k_terms: 50,
            params: TrainingParams::default(),
            threshold: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_terms == 0 {
            return Err(Error::Config("k_terms must be at least 1".into()));
        }
        if self.use_lexdb && self.expansion_path.is_none() {
            return Err(Error::Config("use_lexdb requires an expansion file".into()));
        }
        for (name, v) in [
            ("alpha", self.params.alpha),
            ("beta", self.params.beta),
            ("gamma", self.params.gamma),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be a non-negative number")));
            }
        }
        if let Some(eta) = self.params.eta {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(Error::Config("eta must be positive".into()));
            }
        }
        Ok(())
    }

    /// Column label used in comparison tables.
    pub fn label(&self) -> String {
        let algo = match self.algorithm {
            Algorithm::Rocchio => "Rocchio",
            Algorithm::WidrowHoff => "Widrow-Hoff",
        };
        if self.use_lexdb {
            format!("{algo} + LexDB")
        } else {
            algo.to_string()
        }
    }
}

pub fn load_stoplist(path: Option<&Path>) -> Result<Stoplist> {
    match path {
        None => Ok(Stoplist::smart()),
        Some(p) => Stoplist::from_file(p).map_err(|source| Error::Stoplist {
            path: p.to_path_buf(),
            source,
        }),
    }
}

/// The split corpus with its vocabulary and collection weights.
#[derive(Debug, Clone)]
pub struct Collection {
    pub split: CorpusSplit,
    pub stoplist: Stoplist,
    pub vocab: Vocabulary,
    pub weights: CollectionWeights,
    /// The full category set, sorted.
    pub categories: Vec<String>,
    train_stems: Vec<BTreeMap<String, u32>>,
    test_stems: Vec<BTreeMap<String, u32>>,
}

impl Collection {
    /// Reads the `.sgm` files of `dir`. The category set comes from the
    /// distribution's topic list when present, otherwise from the labels
    /// seen in the documents.
    pub fn load(dir: &Path, stoplist: Stoplist) -> Result<Self> {
        let docs = corpus::load_corpus_dir(dir)?;
        let categories = corpus::load_topic_list(dir)?;
        Ok(Self::from_documents(docs, categories, stoplist))
    }

    pub fn from_documents(docs: Vec<RawDocument>, categories: Option<Vec<String>>, stoplist: Stoplist) -> Self {
        let categories = categories.unwrap_or_else(|| {
            let seen: BTreeSet<&String> = docs.iter().flat_map(|d| &d.topics).collect();
            seen.into_iter().cloned().collect()
        });
        let split = corpus::split_lewis(docs);
        let stems = |docs: &[RawDocument]| -> Vec<BTreeMap<String, u32>> {
            docs.par_iter()
                .map(|d| textpipe::document_stems(d, &stoplist))
                .collect()
        };
        let train_stems = stems(&split.training);
        let test_stems = stems(&split.test);
        let vocab = Vocabulary::from_term_sets(train_stems.iter().map(|m| m.keys()));
        let weights = CollectionWeights::from_vocabulary(&vocab);
        Self {
            split,
            stoplist,
            vocab,
            weights,
            categories,
            train_stems,
            test_stems,
        }
    }

    pub fn stats(&self) -> CorpusStats {
        corpus::compute_stats(&self.split, &textpipe::tokenize)
    }

    /// Training document indices of each category, for every category in
    /// the category set.
    pub fn memberships(&self) -> BTreeMap<String, Vec<usize>> {
        let mut m: BTreeMap<String, Vec<usize>> = self.categories.iter().map(|c| (c.clone(), Vec::new())).collect();
        for (i, d) in self.split.training.iter().enumerate() {
            for t in &d.topics {
                if let Some(v) = m.get_mut(t) {
                    v.push(i);
                }
            }
        }
        m
    }

    pub fn select_terms(&self, k: usize) -> Selection {
        let doc_terms: Vec<BTreeSet<TermId>> = self
            .train_stems
            .iter()
            .map(|m| m.keys().filter_map(|s| self.vocab.id(s)).collect())
            .collect();
        termselect::select_terms(&self.vocab, &doc_terms, &self.memberships(), k)
    }

    pub fn closeness_table(&self, entries: &[ExpansionEntry]) -> Vec<ClosenessEntry> {
        lexdb::build_closeness_table(entries, &self.stoplist, &self.vocab)
    }

    pub fn training_vectors(&self, terms: &BTreeSet<TermId>) -> Vec<SparseVector> {
        self.train_stems
            .par_iter()
            .map(|m| vsm::doc_vector(m, terms, &self.vocab, &self.weights))
            .collect()
    }

    pub fn test_vectors(&self, terms: &BTreeSet<TermId>) -> Vec<(u32, SparseVector)> {
        self.split
            .test
            .par_iter()
            .zip(&self.test_stems)
            .map(|(d, m)| (d.new_id, vsm::doc_vector(m, terms, &self.vocab, &self.weights)))
            .collect()
    }

    /// Training and test document counts for every category with at least
    /// one test document, sorted by category.
    pub fn census(&self) -> Vec<(String, usize, usize)> {
        let members = self.memberships();
        self.test_relevance()
            .into_iter()
            .map(|(c, rel)| {
                let n_k = members.get(&c).map_or(0, Vec::len);
                (c, n_k, rel.len())
            })
            .collect()
    }

    /// Test document ids of each category that has at least one.
    pub fn test_relevance(&self) -> BTreeMap<String, BTreeSet<u32>> {
        let known: BTreeSet<&String> = self.categories.iter().collect();
        let mut rel: BTreeMap<String, BTreeSet<u32>> = BTreeMap::new();
        for d in &self.split.test {
            for t in d.topics.iter().filter(|t| known.contains(t)) {
                rel.entry(t.clone()).or_default().insert(d.new_id);
            }
        }
        rel
    }
}

/// Trains every category of `collection` under `config`.
///
/// `expansion` is only consulted when `config.use_lexdb` is set.
pub fn train(collection: &Collection, config: &RunConfig, expansion: Option<&[ExpansionEntry]>) -> Result<Model> {
    config.validate()?;
    let selection = collection.select_terms(config.k_terms);
    let mut terms = selection.terms.clone();
    let table = match (config.use_lexdb, expansion) {
        (true, Some(entries)) => {
            let table = collection.closeness_table(entries);
            terms.extend(table.iter().map(|e| e.term));
            Some(table)
        }
        (true, None) => return Err(Error::Config("use_lexdb requires an expansion file".into())),
        (false, _) => None,
    };

    let vectors = collection.training_vectors(&terms);
    let max_norm = vsm::max_doc_norm(&vectors);
    let initials = match &table {
        None => BTreeMap::new(),
        Some(table) => {
            let rocchio = lexdb::initial_vectors_rocchio(table, &collection.weights)?;
            match config.algorithm {
                Algorithm::Rocchio => rocchio,
                Algorithm::WidrowHoff => lexdb::initial_vectors_widrow_hoff(&rocchio, max_norm)?,
            }
        }
    };
    let docs: Vec<TrainingDoc<'_>> = vectors
        .iter()
        .zip(&collection.split.training)
        .map(|(v, d)| TrainingDoc {
            vector: v,
            topics: &d.topics,
        })
        .collect();
    let profiles = training::train_all(
        &collection.categories,
        &docs,
        &initials,
        config.algorithm,
        &config.params,
        max_norm,
    )?;
    let mut params = config.params;
    if config.algorithm == Algorithm::WidrowHoff && !docs.is_empty() && (params.eta.is_some() || max_norm > 0.0) {
        params.eta = Some(config.params.eta_for(max_norm)?);
    }
    Ok(Model {
        algorithm: config.algorithm,
        use_lexdb: config.use_lexdb,
        k_terms: config.k_terms,
        params,
        max_norm,
        vocab_fingerprint: collection.vocab.fingerprint(),
        terms,
        profiles,
    })
}

/// Per-category curves and their aggregates for one trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub curves: BTreeMap<String, PrecisionCurve>,
    pub n_k: BTreeMap<String, usize>,
    pub n_test: BTreeMap<String, usize>,
    pub macro_curve: Option<PrecisionCurve>,
    pub breakdown: Breakdown,
}

impl Evaluation {
    /// The same aggregates over a subset of the evaluated categories.
    pub fn restricted_to(&self, keep: &BTreeSet<String>, threshold: usize) -> Evaluation {
        let curves: BTreeMap<String, PrecisionCurve> = self
            .curves
            .iter()
            .filter(|(c, _)| keep.contains(*c))
            .map(|(c, p)| (c.clone(), *p))
            .collect();
        let profiles: Vec<CategoryProfile> = curves
            .keys()
            .map(|c| CategoryProfile {
                category: c.clone(),
                vector: SparseVector::new(),
                n_k: self.n_k[c],
            })
            .collect();
        let n_k = curves.keys().map(|c| (c.clone(), self.n_k[c])).collect();
        let n_test = curves.keys().map(|c| (c.clone(), self.n_test[c])).collect();
        let all: Vec<PrecisionCurve> = curves.values().copied().collect();
        Evaluation {
            macro_curve: eval::macro_average(&all).ok(),
            breakdown: eval::frequency_breakdown(&profiles, &curves, threshold),
            curves,
            n_k,
            n_test,
        }
    }
}

pub fn evaluate(collection: &Collection, model: &Model, threshold: usize) -> Result<Evaluation> {
    let fingerprint = collection.vocab.fingerprint();
    if fingerprint != model.vocab_fingerprint {
        return Err(Error::VocabularyMismatch {
            model: model.vocab_fingerprint.clone(),
            corpus: fingerprint,
        });
    }
    let test_vectors = collection.test_vectors(&model.terms);
    let relevance = collection.test_relevance();
    let scored: Vec<(String, PrecisionCurve)> = model
        .profiles
        .par_iter()
        .filter_map(|p| relevance.get(&p.category).map(|rel| (p, rel)))
        .map(|(p, rel)| {
            let ranked = eval::rank_documents(p, &test_vectors);
            Ok((p.category.clone(), eval::interpolated_precision(&ranked, rel)?))
        })
        .collect::<Result<_>>()?;
    let curves: BTreeMap<String, PrecisionCurve> = scored.into_iter().collect();
    let all: Vec<PrecisionCurve> = curves.values().copied().collect();
    Ok(Evaluation {
        n_k: curves
            .keys()
            .map(|c| (c.clone(), model.profile(c).map_or(0, |p| p.n_k)))
            .collect(),
        n_test: curves.keys().map(|c| (c.clone(), relevance[c].len())).collect(),
        macro_curve: eval::macro_average(&all).ok(),
        breakdown: eval::frequency_breakdown(&model.profiles, &curves, threshold),
        curves,
    })
}

/// Everything one configuration produced.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub label: String,
    pub config: RunConfig,
    pub model: Model,
    pub evaluation: Evaluation,
}

/// Loads the expansion file named by `config` when the run needs it.
pub fn load_expansion(config: &RunConfig) -> Result<Option<Vec<ExpansionEntry>>> {
    match (&config.expansion_path, config.use_lexdb) {
        (Some(path), true) => Ok(Some(lexdb::load_expansion_file(path)?)),
        _ => Ok(None),
    }
}

/// Train and evaluate one configuration on an already loaded collection.
pub fn run_on(collection: &Collection, config: &RunConfig, expansion: Option<&[ExpansionEntry]>) -> Result<RunResult> {
    let model = train(collection, config, expansion)?;
    let evaluation = evaluate(collection, &model, config.threshold)?;
    Ok(RunResult {
        label: config.label(),
        config: config.clone(),
        model,
        evaluation,
    })
}

/// The whole pipeline for one configuration.
pub fn run_experiment(config: &RunConfig) -> Result<(CorpusStats, RunResult)> {
    config.validate()?;
    let expansion = load_expansion(config)?;
    let stoplist = load_stoplist(config.stoplist_path.as_deref())?;
    let collection = Collection::load(&config.corpus_dir, stoplist)?;
    let result = run_on(&collection, config, expansion.as_deref())?;
    Ok((collection.stats(), result))
}

/// The four arms: each algorithm with and without lexical initials, sharing
/// one parsed collection.
pub fn run_arms(base: &RunConfig) -> Result<(CorpusStats, Vec<RunResult>)> {
    let mut lex = base.clone();
    lex.use_lexdb = true;
    lex.validate()?;
    let stoplist = load_stoplist(base.stoplist_path.as_deref())?;
    let expansion = load_expansion(&lex)?;
    let collection = Collection::load(&base.corpus_dir, stoplist)?;
    let mut results = Vec::with_capacity(4);
    for use_lexdb in [false, true] {
        for algorithm in [Algorithm::Rocchio, Algorithm::WidrowHoff] {
            let config = RunConfig {
                algorithm,
                use_lexdb,
                ..base.clone()
            };
            results.push(run_on(&collection, &config, expansion.as_deref())?);
        }
    }
    Ok((collection.stats(), results))
}
