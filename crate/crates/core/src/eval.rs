//! NDCG over graded relevance judgments.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// The query has no judged document with a positive grade.
    NoJudgments { query_id: String },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NoJudgments { query_id } => {
                write!(f, "no positive judgments for query {query_id:?}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Gain applied to a relevance grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gain {
    /// `2^r - 1`, the standard choice for graded judgments.
    #[default]
    Exponential,
    /// The grade itself.
    Linear,
}

impl Gain {
    fn apply(self, grade: u32) -> f64 {
        match self {
            Gain::Exponential => ((1u64 << grade) - 1) as f64,
            Gain::Linear => f64::from(grade),
        }
    }
}

/// Discounted cumulative gain over the first `k` positions:
/// `sum_i g(rel_i) / log2(i + 1)` with 1-based `i`.
pub fn dcg_at_k(grades: &[u32], k: usize, gain: Gain) -> f64 {
    grades
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, &g)| gain.apply(g) / libm::log2((i + 2) as f64))
        .sum()
}

/// NDCG@k of a ranking against this query's judgments.
///
/// Unjudged documents count as grade 0. The ideal DCG is computed over all
/// judged grades for the query, sorted descending.
pub fn ndcg_at_k(
    ranking: &[&str],
    judgments: &BTreeMap<String, u32>,
    k: usize,
    gain: Gain,
) -> Result<f64, EvalError> {
    let mut ideal: Vec<u32> = judgments.values().copied().collect();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let idcg = dcg_at_k(&ideal, k, gain);
    if idcg == 0.0 {
        return Err(EvalError::NoJudgments { query_id: String::new() });
    }
    let grades: Vec<u32> = ranking
        .iter()
        .map(|doc| judgments.get(*doc).copied().unwrap_or(0))
        .collect();
    Ok(dcg_at_k(&grades, k, gain) / idcg)
}

/// Mean of per-query values; 0 for an empty slice.
pub fn macro_average(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn judgments(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
        pairs.iter().map(|&(d, g)| (d.to_string(), g)).collect()
    }

    #[test]
    fn dcg_single_linear() {
        assert_eq!(dcg_at_k(&[3], 1, Gain::Linear), 3.0);
    }

    #[test]
    fn dcg_three_exponential() {
        // 1 + 3/log2(3) + 7/2
        let expected = 1.0 + 3.0 / libm::log2(3.0) + 3.5;
        assert!((dcg_at_k(&[1, 2, 3], 3, Gain::Exponential) - expected).abs() < 1e-12);
        assert!((expected - 6.3927).abs() < 1e-4);
    }

    #[test]
    fn dcg_empty_ranking() {
        assert_eq!(dcg_at_k(&[], 5, Gain::Exponential), 0.0);
    }

    #[test]
    fn dcg_truncates_at_k() {
        assert_eq!(dcg_at_k(&[3, 3, 3], 1, Gain::Linear), 3.0);
    }

    #[test]
    fn ndcg_ideal_is_one() {
        let j = judgments(&[("A", 3), ("B", 2), ("C", 1)]);
        let v = ndcg_at_k(&["A", "B", "C"], &j, 3, Gain::Exponential).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ndcg_reversed_grades() {
        let j = judgments(&[("A", 3), ("B", 2), ("C", 1)]);
        let v = ndcg_at_k(&["C", "B", "A"], &j, 3, Gain::Exponential).unwrap();
        // DCG = 1/1 + 3/log2(3) + 7/2, IDCG = 7/1 + 3/log2(3) + 1/2
        assert!((v - 0.6806).abs() < 1e-4);
    }

    #[test]
    fn ndcg_top_doc_max_grade_at_one() {
        let j = judgments(&[("A", 5), ("B", 3)]);
        let v = ndcg_at_k(&["A", "B"], &j, 1, Gain::Exponential).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ndcg_no_positive_judgments() {
        let j = judgments(&[("A", 0)]);
        assert!(ndcg_at_k(&["A"], &j, 1, Gain::Exponential).is_err());
        let empty = BTreeMap::new();
        assert!(ndcg_at_k(&["A"], &empty, 1, Gain::Exponential).is_err());
    }

    #[test]
    fn ndcg_unjudged_counts_as_zero() {
        let j = judgments(&[("A", 3)]);
        let v = ndcg_at_k(&["X", "A"], &j, 2, Gain::Exponential).unwrap();
        let expected = (7.0 / libm::log2(3.0)) / 7.0;
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn gains_agree_on_binary_grades() {
        let j = judgments(&[("A", 1), ("B", 0), ("C", 1)]);
        let ranking = ["B", "A", "C"];
        let exp = ndcg_at_k(&ranking, &j, 3, Gain::Exponential).unwrap();
        let lin = ndcg_at_k(&ranking, &j, 3, Gain::Linear).unwrap();
        assert!((exp - lin).abs() < 1e-12);
    }

    #[test]
    fn macro_average_mean() {
        assert_eq!(macro_average(&[1.0, 0.0]), 0.5);
        assert_eq!(macro_average(&[]), 0.0);
        let v = vec![0.2, 0.4, 0.9];
        assert!((macro_average(&v) - 0.5).abs() < 1e-12);
    }
}
