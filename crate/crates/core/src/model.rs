//! Trained model and its text file format.
//!
//! ```text
//! textcat-model<TAB>1
//! algorithm<TAB>rocchio
//! use_lexdb<TAB>false
//! k_terms<TAB>50
//! alpha<TAB>20
//! beta<TAB>16
//! gamma<TAB>4
//! eta<TAB>none
//! max_norm<TAB>41.3
//! vocab<TAB><sha-256 of the vocabulary dump>
//! terms<TAB><count>
//! <term id><TAB><term>                  one line per representation term
//! category<TAB><name><TAB><n_k><TAB><count>
//! <term id><TAB><term><TAB><weight>     one line per non-zero weight
//! ```
//!
//! Weights use Rust's shortest round-trip float formatting, so a model
//! read back is bit-identical to the one written.

use std::collections::BTreeSet;

use crate::pipeline::Error;
use crate::textpipe::{TermId, Vocabulary};
use crate::training::{Algorithm, CategoryProfile, TrainingParams};
use crate::vsm::SparseVector;

const MAGIC: &str = "textcat-model";
const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub algorithm: Algorithm,
    pub use_lexdb: bool,
    pub k_terms: usize,
    /// Parameters as used; for Widrow-Hoff `eta` holds the resolved rate.
    pub params: TrainingParams,
    pub max_norm: f64,
    pub vocab_fingerprint: String,
    /// Representation terms: EMI selections plus any expansion terms.
    pub terms: BTreeSet<TermId>,
    pub profiles: Vec<CategoryProfile>,
}

impl Model {
    pub fn profile(&self, category: &str) -> Option<&CategoryProfile> {
        self.profiles.iter().find(|p| p.category == category)
    }

    pub fn to_text(&self, vocab: &Vocabulary) -> String {
        let mut out = format!("{MAGIC}\t{VERSION}\n");
        out.push_str(&format!("algorithm\t{}\n", self.algorithm));
        out.push_str(&format!("use_lexdb\t{}\n", self.use_lexdb));
        out.push_str(&format!("k_terms\t{}\n", self.k_terms));
        out.push_str(&format!("alpha\t{}\n", self.params.alpha));
        out.push_str(&format!("beta\t{}\n", self.params.beta));
        out.push_str(&format!("gamma\t{}\n", self.params.gamma));
        match self.params.eta {
            Some(eta) => out.push_str(&format!("eta\t{eta}\n")),
            None => out.push_str("eta\tnone\n"),
        }
        out.push_str(&format!("max_norm\t{}\n", self.max_norm));
        out.push_str(&format!("vocab\t{}\n", self.vocab_fingerprint));
        out.push_str(&format!("terms\t{}\n", self.terms.len()));
        for &t in &self.terms {
            out.push_str(&format!("{t}\t{}\n", vocab.term(t)));
        }
        for p in &self.profiles {
            out.push_str(&format!("category\t{}\t{}\t{}\n", p.category, p.n_k, p.vector.len()));
            for &(t, w) in p.vector.entries() {
                out.push_str(&format!("{t}\t{}\t{w}\n", vocab.term(t)));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut last = 0;
        let mut next = |what: &str| -> Result<(usize, Vec<&str>), Error> {
            match lines.next() {
                Some((n, l)) => {
                    last = n;
                    Ok((n, l.split('\t').collect()))
                }
                None => Err(Error::Model {
                    line: last + 1,
                    message: format!("unexpected end of file, expected {what}"),
                }),
            }
        };
        let bad = |line: usize, message: String| Error::Model { line, message };

        let mut header = |key: &str| -> Result<(usize, String), Error> {
            let (n, f) = next(key)?;
            if f.len() != 2 || f[0] != key {
                return Err(bad(n, format!("expected `{key}<TAB>value`")));
            }
            Ok((n, f[1].to_string()))
        };
        let (n, version) = header(MAGIC)?;
        if version != VERSION {
            return Err(bad(n, format!("unsupported model version {version}")));
        }
        let (n, algorithm) = header("algorithm")?;
        let algorithm: Algorithm = algorithm.parse().map_err(|e| bad(n, e))?;
        let (n, use_lexdb) = header("use_lexdb")?;
        let use_lexdb = use_lexdb
            .parse()
            .map_err(|_| bad(n, "use_lexdb must be true or false".into()))?;
        let (n, k) = header("k_terms")?;
        let k_terms = k.parse().map_err(|_| bad(n, "k_terms must be an integer".into()))?;
        let mut float = |key: &str| -> Result<f64, Error> {
            let (n, v) = header(key)?;
            v.parse().map_err(|_| bad(n, format!("{key} must be a number")))
        };
        let alpha = float("alpha")?;
        let beta = float("beta")?;
        let gamma = float("gamma")?;
        let (n, eta) = header("eta")?;
        let eta = match eta.as_str() {
            "none" => None,
            v => Some(v.parse().map_err(|_| bad(n, "eta must be a number or none".into()))?),
        };
        let (n, max_norm) = header("max_norm")?;
        let max_norm = max_norm
            .parse()
            .map_err(|_| bad(n, "max_norm must be a number".into()))?;
        let (_, vocab_fingerprint) = header("vocab")?;
        let (n, count) = header("terms")?;
        let count: usize = count
            .parse()
            .map_err(|_| bad(n, "term count must be an integer".into()))?;

        let parse_id = |n: usize, s: &str| -> Result<TermId, Error> {
            s.parse().map(TermId).map_err(|_| bad(n, format!("bad term id {s:?}")))
        };
        let mut terms = BTreeSet::new();
        for _ in 0..count {
            let (n, f) = next("a term line")?;
            if f.len() != 2 {
                return Err(bad(n, "expected `id<TAB>term`".into()));
            }
            terms.insert(parse_id(n, f[0])?);
        }

        let mut profiles = Vec::new();
        while let Ok((n, f)) = next("category") {
            if f.len() != 4 || f[0] != "category" {
                return Err(bad(n, "expected `category<TAB>name<TAB>n_k<TAB>count`".into()));
            }
            let n_k = f[2].parse().map_err(|_| bad(n, "n_k must be an integer".into()))?;
            let len: usize = f[3]
                .parse()
                .map_err(|_| bad(n, "entry count must be an integer".into()))?;
            let mut entries = Vec::with_capacity(len);
            for _ in 0..len {
                let (n, e) = next("a weight line")?;
                if e.len() != 3 {
                    return Err(bad(n, "expected `id<TAB>term<TAB>weight`".into()));
                }
                let w: f64 = e[2].parse().map_err(|_| bad(n, format!("bad weight {:?}", e[2])))?;
                entries.push((parse_id(n, e[0])?, w));
            }
            let vector = SparseVector::from_pairs(entries);
            if vector.len() != len || !vector.is_well_formed() {
                return Err(bad(
                    n,
                    format!("category {} has repeated, zero or non-finite weights", f[1]),
                ));
            }
            profiles.push(CategoryProfile {
                category: f[1].to_string(),
                vector,
                n_k,
            });
        }
        Ok(Model {
            algorithm,
            use_lexdb,
            k_terms,
            params: TrainingParams {
                alpha,
                beta,
                gamma,
                eta,
            },
            max_norm,
            vocab_fingerprint,
            terms,
            profiles,
        })
    }
}
