//! Text categorization with category term-weight vectors.
//!
//! Documents and categories are sparse vectors over a set of stemmed terms
//! chosen by expected mutual information. Category vectors are trained with
//! Rocchio or Widrow-Hoff, optionally starting from initial weights derived
//! from lexical-database synonyms of the category names, and evaluated by
//! ranking the test documents for each category and measuring 11-point
//! interpolated precision.
//!
//! The modules follow the pipeline order:
//!
//! - [`corpus`]: Reuters-21578 SGML parsing, LEWISSPLIT, collection statistics
//! - [`textpipe`]: tokenizer, stoplist, Porter stemmer, vocabulary
//! - [`termselect`]: expected mutual information term selection
//! - [`vsm`]: sparse vectors, term weights, cosine similarity
//! - [`training`]: Rocchio and Widrow-Hoff
//! - [`lexdb`]: synonym expansion file, closeness values, initial vectors
//! - [`eval`]: rankings, interpolated precision, macro averages
//! - [`pipeline`], [`model`], [`report`]: orchestration and output

pub mod corpus;
pub mod eval;
pub mod lexdb;
pub mod model;
pub mod pipeline;
pub mod report;
pub mod termselect;
pub mod textpipe;
pub mod training;
pub mod vsm;

pub use pipeline::{Error, ErrorKind, RunConfig};
