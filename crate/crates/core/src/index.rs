//! Exact cosine-similarity search over stored document vectors.
//!
//! Vectors are stored as 32-bit floats (the on-disk format is bit-exact);
//! similarity arithmetic is done in f64. Search is a full scan, which is
//! exact and deterministic at the corpus sizes this targets.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexError {
    /// Cosine similarity is undefined for zero-norm vectors.
    ZeroVector,
    DimensionMismatch { expected: usize, got: usize },
    DuplicateId { id: String },
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexError::ZeroVector => write!(f, "zero-norm vector"),
            IndexError::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            IndexError::DuplicateId { id } => write!(f, "duplicate document id {id:?}"),
        }
    }
}

impl core::error::Error for IndexError {}

/// Cosine similarity `u.v / (|u||v|)` of two equal-dimension vectors.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, IndexError> {
    if u.len() != v.len() {
        return Err(IndexError::DimensionMismatch { expected: u.len(), got: v.len() });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (&x, &y) in u.iter().zip(v) {
        dot += x * y;
        nu += x * x;
        nv += y * y;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(IndexError::ZeroVector);
    }
    Ok(dot / (libm::sqrt(nu) * libm::sqrt(nv)))
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    vector: Vec<f32>,
    norm: f64,
}

/// Document id -> vector map with exact top-k cosine search.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorIndex {
    dim: usize,
    entries: BTreeMap<String, Entry>,
}

impl VectorIndex {
    pub fn new(dim: usize) -> Self {
        Self { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entries.contains_key(id)
    }

    pub fn get(&self, id: &str) -> Option<&[f32]> {
        self.entries.get(id).map(|e| e.vector.as_slice())
    }

    /// Ids with their vectors, in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.entries.iter().map(|(id, e)| (id.as_str(), e.vector.as_slice()))
    }

    /// Stores a vector under a fresh id. Zero-norm vectors are rejected.
    pub fn insert(&mut self, id: String, vector: Vec<f32>) -> Result<(), IndexError> {
        if vector.len() != self.dim {
            return Err(IndexError::DimensionMismatch { expected: self.dim, got: vector.len() });
        }
        if self.entries.contains_key(&id) {
            return Err(IndexError::DuplicateId { id });
        }
        let norm = libm::sqrt(vector.iter().map(|&x| f64::from(x) * f64::from(x)).sum());
        if norm == 0.0 {
            return Err(IndexError::ZeroVector);
        }
        self.entries.insert(id, Entry { vector, norm });
        Ok(())
    }

    /// Exact k highest-cosine entries for `query`, optionally excluding one
    /// id. Ties break by id ascending; fewer than `k` entries returns all.
    pub fn top_k(
        &self,
        query: &[f64],
        k: usize,
        exclude: Option<&str>,
    ) -> Result<Vec<(String, f64)>, IndexError> {
        if query.len() != self.dim {
            return Err(IndexError::DimensionMismatch { expected: self.dim, got: query.len() });
        }
        let query_norm = libm::sqrt(query.iter().map(|&x| x * x).sum());
        if query_norm == 0.0 {
            return Err(IndexError::ZeroVector);
        }
        let mut scored: Vec<(String, f64)> = self
            .entries
            .iter()
            .filter(|(id, _)| exclude != Some(id.as_str()))
            .map(|(id, entry)| {
                let dot: f64 = entry
                    .vector
                    .iter()
                    .zip(query)
                    .map(|(&x, &y)| f64::from(x) * y)
                    .sum();
                (id.clone(), dot / (entry.norm * query_norm))
            })
            .collect();
        scored.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(core::cmp::Ordering::Equal)
                .then_with(|| a.0.cmp(&b.0))
        });
        scored.truncate(k);
        Ok(scored)
    }
}
