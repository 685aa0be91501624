//! Sentence and document embeddings.
//!
//! Documents are embedded as the score-weighted average of their sentence
//! embeddings. Two sentence embedders are supported: a tf-idf weighted
//! average of pretrained word vectors, and externally precomputed sentence
//! vectors. The whole-document tf-idf weighted word average is kept as a
//! baseline.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::textprep::Sentence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedError {
    /// Idf statistics require at least one document.
    EmptyCorpus,
    /// No precomputed vector stored for this (document, sentence) key.
    MissingSentenceVector { doc_id: String, sentence_index: usize },
    /// Every sentence of the document was excluded (all out-of-vocabulary).
    NoEmbeddableSentences,
    /// No token of the document is in the word-vector store.
    AllOovDocument,
    /// A vector's length differs from the store dimension.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::EmptyCorpus => write!(f, "idf statistics need a non-empty corpus"),
            EmbedError::MissingSentenceVector { doc_id, sentence_index } => {
                write!(f, "no sentence vector for ({doc_id}, {sentence_index})")
            }
            EmbedError::NoEmbeddableSentences => {
                write!(f, "every sentence of the document is out of vocabulary")
            }
            EmbedError::AllOovDocument => {
                write!(f, "no token of the document is in the word-vector store")
            }
            EmbedError::DimensionMismatch { expected, got } => {
                write!(f, "expected vector dimension {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for EmbedError {}

/// Pretrained word vectors, token -> dense vector of uniform dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct WordVectorStore {
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl WordVectorStore {
    pub fn new(dim: usize) -> Self {
        Self { dim, vectors: BTreeMap::new() }
    }

    /// Stores a vector; a duplicate token keeps the first occurrence.
    pub fn insert(&mut self, token: String, vector: Vec<f64>) -> Result<(), EmbedError> {
        if vector.len() != self.dim {
            return Err(EmbedError::DimensionMismatch { expected: self.dim, got: vector.len() });
        }
        self.vectors.entry(token).or_insert(vector);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.vectors.get(token).map(Vec::as_slice)
    }
}

/// Corpus-level document-frequency statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdfStats {
    n_docs: usize,
    df: BTreeMap<String, usize>,
}

impl IdfStats {
    /// Counts document frequencies over tokenized documents. Each document is
    /// the multiset of its tokens; a token counts once per document.
    pub fn build<'a, I, D>(docs: I) -> Result<Self, EmbedError>
    where
        I: IntoIterator<Item = D>,
        D: IntoIterator<Item = &'a str>,
    {
        let mut n_docs = 0;
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in docs {
            n_docs += 1;
            let distinct: BTreeSet<&str> = doc.into_iter().collect();
            for token in distinct {
                *df.entry(String::from(token)).or_insert(0) += 1;
            }
        }
        if n_docs == 0 {
            return Err(EmbedError::EmptyCorpus);
        }
        Ok(Self { n_docs, df })
    }

    /// Rebuilds from persisted counts.
    pub fn from_counts(n_docs: usize, df: BTreeMap<String, usize>) -> Result<Self, EmbedError> {
        if n_docs == 0 {
            return Err(EmbedError::EmptyCorpus);
        }
        Ok(Self { n_docs, df })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn df(&self, token: &str) -> usize {
        self.df.get(token).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.df.iter().map(|(t, &c)| (t.as_str(), c))
    }

    /// Smoothed inverse document frequency `ln((1+N)/(1+df)) + 1`.
    pub fn idf(&self, token: &str) -> f64 {
        let n = self.n_docs as f64;
        let df = self.df(token) as f64;
        libm::log((1.0 + n) / (1.0 + df)) + 1.0
    }
}

/// Precomputed sentence vectors keyed by (document id, sentence index).
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceVectorStore {
    dim: usize,
    vectors: BTreeMap<(String, usize), Vec<f64>>,
}

impl SentenceVectorStore {
    pub fn new(dim: usize) -> Self {
        Self { dim, vectors: BTreeMap::new() }
    }

    pub fn insert(
        &mut self,
        doc_id: String,
        sentence_index: usize,
        vector: Vec<f64>,
    ) -> Result<(), EmbedError> {
        if vector.len() != self.dim {
            return Err(EmbedError::DimensionMismatch { expected: self.dim, got: vector.len() });
        }
        self.vectors.insert((doc_id, sentence_index), vector);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Returns the stored vector verbatim.
    pub fn get(&self, doc_id: &str, sentence_index: usize) -> Result<&[f64], EmbedError> {
        self.vectors
            .get(&(String::from(doc_id), sentence_index))
            .map(Vec::as_slice)
            .ok_or_else(|| EmbedError::MissingSentenceVector {
                doc_id: String::from(doc_id),
                sentence_index,
            })
    }
}

/// A sentence embedding plus a flag marking the all-out-of-vocabulary
/// fallback (zero vector, excluded from document averaging).
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceEmbedding {
    pub vector: Vec<f64>,
    pub oov: bool,
}

/// A document embedding; `uniform_fallback` marks the unweighted-mean
/// fallback taken when every sentence score was zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentEmbedding {
    pub vector: Vec<f64>,
    pub uniform_fallback: bool,
}

/// Tf-idf weighted average of the word vectors of a sentence's in-vocabulary
/// tokens. An all-OOV sentence yields a flagged zero vector.
pub fn embed_sentence_iw(
    sentence: &Sentence,
    store: &WordVectorStore,
    idf: &IdfStats,
) -> SentenceEmbedding {
    tf_idf_average(sentence.tokens.iter().map(String::as_str), store, idf)
        .map(|vector| SentenceEmbedding { vector, oov: false })
        .unwrap_or_else(|| SentenceEmbedding { vector: vec![0.0; store.dim()], oov: true })
}

/// Looks up the precomputed external vector for a sentence.
pub fn embed_sentence_external(
    doc_id: &str,
    sentence_index: usize,
    store: &SentenceVectorStore,
) -> Result<SentenceEmbedding, EmbedError> {
    store.get(doc_id, sentence_index).map(|v| SentenceEmbedding {
        vector: v.to_vec(),
        oov: false,
    })
}

/// Score-weighted average of sentence embeddings.
///
/// Flagged OOV sentences are excluded from both sums. When all remaining
/// scores are zero the unweighted mean is returned with `uniform_fallback`
/// set.
pub fn embed_document_tde(
    embeddings: &[SentenceEmbedding],
    scores: &[f64],
) -> Result<DocumentEmbedding, EmbedError> {
    assert_eq!(embeddings.len(), scores.len(), "scores must align with sentences");
    let included: Vec<(&SentenceEmbedding, f64)> = embeddings
        .iter()
        .zip(scores.iter().copied())
        .filter(|(e, _)| !e.oov)
        .collect();
    if included.is_empty() {
        return Err(EmbedError::NoEmbeddableSentences);
    }
    let dim = included[0].0.vector.len();
    let total: f64 = included.iter().map(|&(_, w)| w).sum();
    let (weights_of, uniform_fallback): (fn(f64) -> f64, bool) = if total > 0.0 {
        (|w| w, false)
    } else {
        (|_| 1.0, true)
    };
    let mut vector = vec![0.0; dim];
    let mut weight_sum = 0.0;
    for (embedding, score) in included {
        let w = weights_of(score);
        weight_sum += w;
        for (acc, &x) in vector.iter_mut().zip(&embedding.vector) {
            *acc += w * x;
        }
    }
    for x in &mut vector {
        *x /= weight_sum;
    }
    Ok(DocumentEmbedding { vector, uniform_fallback })
}

/// Baseline: tf-idf weighted average of word vectors over the whole
/// document's tokens.
pub fn embed_document_twa(
    tokens: &[String],
    store: &WordVectorStore,
    idf: &IdfStats,
) -> Result<Vec<f64>, EmbedError> {
    tf_idf_average(tokens.iter().map(String::as_str), store, idf)
        .ok_or(EmbedError::AllOovDocument)
}

/// `sum_w tf(w)*idf(w)*v_w / sum_w tf(w)*idf(w)` over in-vocabulary tokens;
/// `None` when no token is in vocabulary.
fn tf_idf_average<'a, I>(tokens: I, store: &WordVectorStore, idf: &IdfStats) -> Option<Vec<f64>>
where
    I: Iterator<Item = &'a str>,
{
    let mut tf: BTreeMap<&str, usize> = BTreeMap::new();
    for token in tokens {
        *tf.entry(token).or_insert(0) += 1;
    }
    let mut vector = vec![0.0; store.dim()];
    let mut weight_sum = 0.0;
    for (token, count) in tf {
        let Some(word_vec) = store.get(token) else { continue };
        let w = count as f64 * idf.idf(token);
        weight_sum += w;
        for (acc, &x) in vector.iter_mut().zip(word_vec) {
            *acc += w * x;
        }
    }
    if weight_sum == 0.0 {
        return None;
    }
    for x in &mut vector {
        *x /= weight_sum;
    }
    Some(vector)
}
