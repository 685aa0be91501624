//! Undirected weighted graph-of-words.
//!
//! Nodes are a document's tokens; an edge connects two distinct tokens that
//! co-occur within a fixed-size sliding window, weighted by the number of
//! such co-occurrences. Windows never cross sentence boundaries.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use crate::textprep::Sentence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The sliding window must span at least two tokens.
    WindowTooSmall { window: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::WindowTooSmall { window } => {
                write!(f, "sliding window must be >= 2, got {window}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Undirected weighted term co-occurrence graph.
///
/// Edge keys are lexicographically ordered pairs, so `(a, b)` and `(b, a)`
/// address the same edge. Self-loops are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfWords {
    window: usize,
    edges: BTreeMap<(String, String), u32>,
    adjacency: BTreeMap<String, BTreeSet<String>>,
}

impl GraphOfWords {
    /// Builds the graph-of-words of one document.
    ///
    /// Every pair of distinct tokens at positions `i < j` with `j - i < window`
    /// inside the same sentence increments the pair's edge weight by one.
    pub fn build(sentences: &[Sentence], window: usize) -> Result<Self, GraphError> {
        if window < 2 {
            return Err(GraphError::WindowTooSmall { window });
        }
        let mut graph = GraphOfWords {
            window,
            edges: BTreeMap::new(),
            adjacency: BTreeMap::new(),
        };
        for sentence in sentences {
            let tokens = &sentence.tokens;
            for i in 0..tokens.len() {
                for j in (i + 1)..tokens.len().min(i + window) {
                    if tokens[i] != tokens[j] {
                        graph.add_cooccurrence(&tokens[i], &tokens[j]);
                    }
                }
            }
        }
        Ok(graph)
    }

    fn add_cooccurrence(&mut self, a: &str, b: &str) {
        let key = ordered_pair(a, b);
        self.adjacency
            .entry(key.0.clone())
            .or_default()
            .insert(key.1.clone());
        self.adjacency
            .entry(key.1.clone())
            .or_default()
            .insert(key.0.clone());
        *self.edges.entry(key).or_insert(0) += 1;
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Co-occurrence weight of the `(t, t')` edge, 0 when absent.
    pub fn edge_weight(&self, t: &str, t_prime: &str) -> u32 {
        self.edges.get(&ordered_pair(t, t_prime)).copied().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.adjacency.keys().map(String::as_str)
    }

    /// Edges as lexicographically ordered pairs with their weights, in sorted
    /// order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        self.edges
            .iter()
            .map(|((a, b), &w)| (a.as_str(), b.as_str(), w))
    }

    /// Distinct neighbors of `node`.
    pub fn neighbors(&self, node: &str) -> impl Iterator<Item = &str> {
        self.adjacency
            .get(node)
            .into_iter()
            .flat_map(|s| s.iter().map(String::as_str))
    }

    /// Unweighted degree: the number of distinct neighbors.
    pub fn degree(&self, node: &str) -> usize {
        self.adjacency.get(node).map_or(0, BTreeSet::len)
    }

    /// Debug export: `token1<TAB>token2<TAB>weight` lines, lexicographically
    /// sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b, w) in self.edges() {
            out.push_str(&alloc::format!("{a}\t{b}\t{w}\n"));
        }
        out
    }
}

fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (String::from(a), String::from(b))
    } else {
        (String::from(b), String::from(a))
    }
}
