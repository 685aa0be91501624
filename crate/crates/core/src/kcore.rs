//! Core decomposition of a graph-of-words.
//!
//! Coreness is computed on the unweighted degree (number of distinct
//! neighbors) with the linear-time bucket-peeling algorithm: repeatedly remove
//! a node of minimum remaining degree, assigning it the running core number.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::GraphOfWords;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KcoreError {
    /// The graph has no edges, so there is no main core.
    EmptyGraph,
}

impl fmt::Display for KcoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KcoreError::EmptyGraph => write!(f, "graph has no nodes, no main core exists"),
        }
    }
}

impl core::error::Error for KcoreError {}

/// Core number per node plus the maximal order `k` (the main core's order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    coreness: BTreeMap<String, u32>,
    max_order: u32,
}

impl CoreDecomposition {
    /// Computes the k-core decomposition via bucket peeling.
    ///
    /// An empty graph yields an empty decomposition with `max_order` 0.
    pub fn compute(graph: &GraphOfWords) -> Self {
        let nodes: Vec<&str> = graph.nodes().collect();
        let n = nodes.len();
        if n == 0 {
            return CoreDecomposition {
                coreness: BTreeMap::new(),
                max_order: 0,
            };
        }
        let id_of: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let neighbors: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&t| graph.neighbors(t).map(|u| id_of[u]).collect())
            .collect();
        let mut degree: Vec<usize> = neighbors.iter().map(Vec::len).collect();

        let max_deg = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
        for (v, &d) in degree.iter().enumerate() {
            buckets[d].push(v);
        }

        let mut core = vec![0u32; n];
        let mut removed = vec![false; n];
        let mut current = 0usize;
        for _ in 0..n {
            // Removing a degree-d node never leaves a neighbor below degree d,
            // so the minimum remaining degree is monotone in `current`.
            while buckets[current].is_empty() {
                current += 1;
            }
            let v = loop {
                match buckets[current].pop() {
                    Some(v) if !removed[v] && degree[v] == current => break v,
                    Some(_) => continue, // stale bucket entry
                    None => {
                        current += 1;
                        while buckets[current].is_empty() {
                            current += 1;
                        }
                    }
                }
            };
            removed[v] = true;
            core[v] = current as u32;
            for &u in &neighbors[v] {
                if !removed[u] && degree[u] > current {
                    degree[u] -= 1;
                    buckets[degree[u]].push(u);
                }
            }
        }

        let max_order = core.iter().copied().max().unwrap_or(0);
        let coreness = nodes
            .iter()
            .zip(&core)
            .map(|(&t, &c)| (String::from(t), c))
            .collect();
        CoreDecomposition { coreness, max_order }
    }

    /// The main core's order `k`; 0 for an empty graph.
    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// Core number of `node`, if it is in the graph.
    pub fn coreness(&self, node: &str) -> Option<u32> {
        self.coreness.get(node).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.coreness.iter().map(|(t, &c)| (t.as_str(), c))
    }

    pub fn is_empty(&self) -> bool {
        self.coreness.is_empty()
    }

    /// Nodes of the core of maximum order.
    pub fn main_core(&self) -> Result<BTreeSet<&str>, KcoreError> {
        if self.max_order == 0 {
            return Err(KcoreError::EmptyGraph);
        }
        Ok(self
            .coreness
            .iter()
            .filter(|&(_, &c)| c == self.max_order)
            .map(|(t, _)| t.as_str())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textprep::Sentence;
    use alloc::string::ToString;

    fn graph_from_edges(edges: &[(&str, &str)]) -> GraphOfWords {
        // One two-token sentence per edge gives each edge weight 1.
        let sentences: Vec<Sentence> = edges
            .iter()
            .enumerate()
            .map(|(i, (a, b))| Sentence {
                index: i,
                tokens: vec![a.to_string(), b.to_string()],
                raw: String::new(),
            })
            .collect();
        GraphOfWords::build(&sentences, 2).unwrap()
    }

    #[test]
    fn triangle_plus_pendant() {
        let g = graph_from_edges(&[("a", "b"), ("b", "c"), ("a", "c"), ("a", "d")]);
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.max_order(), 2);
        assert_eq!(d.coreness("a"), Some(2));
        assert_eq!(d.coreness("b"), Some(2));
        assert_eq!(d.coreness("c"), Some(2));
        assert_eq!(d.coreness("d"), Some(1));
        let main: Vec<&str> = d.main_core().unwrap().into_iter().collect();
        assert_eq!(main, vec!["a", "b", "c"]);
    }

    #[test]
    fn complete_graph_k4() {
        let g = graph_from_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]);
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.max_order(), 3);
        for node in ["a", "b", "c", "d"] {
            assert_eq!(d.coreness(node), Some(3));
        }
        assert_eq!(d.main_core().unwrap().len(), 4);
    }

    #[test]
    fn single_edge() {
        let g = graph_from_edges(&[("a", "b")]);
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.max_order(), 1);
        assert_eq!(d.coreness("a"), Some(1));
        assert_eq!(d.coreness("b"), Some(1));
        assert_eq!(d.main_core().unwrap().len(), 2);
    }

    #[test]
    fn empty_graph() {
        let g = graph_from_edges(&[]);
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.max_order(), 0);
        assert!(d.is_empty());
        assert_eq!(d.main_core().unwrap_err(), KcoreError::EmptyGraph);
    }
}
