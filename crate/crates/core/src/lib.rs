//! Graph-of-words keyphrase extraction and terminology-weighted document
//! embedding.
//!
//! The pipeline: normalize text into sentences ([`textprep`]), build an
//! undirected weighted co-occurrence graph per document ([`graph`]), compute
//! its core decomposition ([`kcore`]), extract two-term keyphrases and score
//! sentences by the keyphrases they contain ([`scoring`]), embed documents as
//! score-weighted averages of sentence embeddings ([`embed`]), search by
//! cosine similarity ([`index`]) and evaluate rankings with NDCG ([`eval`]).
//!
//! The crate is `no_std` + `alloc`; all IO and file formats live in the
//! companion `corephrase` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod embed;
pub mod eval;
pub mod graph;
pub mod index;
pub mod kcore;
pub mod scoring;
pub mod textprep;

pub use embed::{DocumentEmbedding, IdfStats, SentenceEmbedding, SentenceVectorStore, WordVectorStore};
pub use graph::GraphOfWords;
pub use index::VectorIndex;
pub use kcore::CoreDecomposition;
pub use scoring::{Keyphrase, ScoringMode, SentenceScore};
pub use textprep::{Sentence, StopwordList};
