//! Two-term keyphrase extraction and sentence scoring.
//!
//! Every graph edge is a candidate keyphrase. Its core number is the minimum
//! coreness of its endpoints, its score is the edge weight times a core
//! weight that gives the main core weight 1 and the lowest core weight `1/k`.
//! A sentence's score sums the scores of the keyphrases occurring in it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::GraphOfWords;
use crate::kcore::CoreDecomposition;
use crate::textprep::Sentence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoringError {
    /// Core number outside `1..=max_order`.
    InvalidCore { core: u32, max_order: u32 },
}

impl fmt::Display for ScoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringError::InvalidCore { core, max_order } => {
                write!(f, "core number {core} outside 1..={max_order}")
            }
        }
    }
}

impl core::error::Error for ScoringError {}

/// How a keyphrase's core weight enters a sentence score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoringMode {
    /// Each keyphrase counted once, weighted by its own core number.
    #[default]
    Unique,
    /// Nested-core reading: a keyphrase of core `c` is counted in every core
    /// `1..=c`, so its multiplier is the sum of those core weights.
    CumulativeCores,
}

/// An ordered-normalized term pair with its edge weight, core number and
/// score.
#[derive(Debug, Clone, PartialEq)]
pub struct Keyphrase {
    /// Lexicographically ordered pair of distinct terms.
    pub terms: (String, String),
    /// Co-occurrence weight of the underlying edge.
    pub deg: u32,
    /// Minimum coreness of the two endpoints.
    pub core: u32,
    /// `deg * core_weight(core, k)`.
    pub score: f64,
}

/// Score of one sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceScore {
    pub sentence_index: usize,
    pub gamma: f64,
}

/// Core weight `1/(k - c + 1)`: 1 for the main core, `1/k` for the lowest.
pub fn core_weight(core: u32, max_order: u32) -> Result<f64, ScoringError> {
    if core < 1 || core > max_order {
        return Err(ScoringError::InvalidCore { core, max_order });
    }
    Ok(1.0 / f64::from(max_order - core + 1))
}

/// Sum of core weights over cores `1..=core`, the nested-core multiplier.
pub fn cumulative_core_weight(core: u32, max_order: u32) -> Result<f64, ScoringError> {
    if core < 1 || core > max_order {
        return Err(ScoringError::InvalidCore { core, max_order });
    }
    Ok((1..=core).map(|c| 1.0 / f64::from(max_order - c + 1)).sum())
}

/// Extracts one keyphrase per graph edge, sorted by score descending then
/// terms ascending. Empty graph yields an empty list.
pub fn extract_keyphrases(graph: &GraphOfWords, decomposition: &CoreDecomposition) -> Vec<Keyphrase> {
    let k = decomposition.max_order();
    let mut phrases: Vec<Keyphrase> = graph
        .edges()
        .map(|(a, b, deg)| {
            // Edge endpoints always have degree >= 1, hence coreness >= 1.
            let core = decomposition
                .coreness(a)
                .unwrap_or(0)
                .min(decomposition.coreness(b).unwrap_or(0));
            let score = f64::from(deg) * core_weight(core, k).unwrap_or(0.0);
            Keyphrase {
                terms: (String::from(a), String::from(b)),
                deg,
                core,
                score,
            }
        })
        .collect();
    phrases.sort_by(|x, y| {
        y.score
            .partial_cmp(&x.score)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| x.terms.cmp(&y.terms))
    });
    phrases
}

/// True iff both terms occur in the sentence at positions `i != j` with
/// `|i - j| < window`.
pub fn keyphrase_in_sentence(keyphrase: &Keyphrase, sentence: &Sentence, window: usize) -> bool {
    let (t, t_prime) = (&keyphrase.terms.0, &keyphrase.terms.1);
    let tokens = &sentence.tokens;
    tokens.iter().enumerate().any(|(i, a)| {
        a == t
            && tokens
                .iter()
                .enumerate()
                .any(|(j, b)| i != j && b == t_prime && i.abs_diff(j) < window)
    })
}

/// Scores every sentence: the sum over distinct contained keyphrases of the
/// keyphrase score (mode [`ScoringMode::Unique`]) or of the nested-core sum
/// `deg * cumulative_core_weight` ([`ScoringMode::CumulativeCores`]).
pub fn score_sentences(
    sentences: &[Sentence],
    keyphrases: &[Keyphrase],
    window: usize,
    max_order: u32,
    mode: ScoringMode,
) -> Vec<SentenceScore> {
    sentences
        .iter()
        .map(|sentence| {
            let gamma = keyphrases
                .iter()
                .filter(|kp| keyphrase_in_sentence(kp, sentence, window))
                .map(|kp| match mode {
                    ScoringMode::Unique => kp.score,
                    ScoringMode::CumulativeCores => {
                        f64::from(kp.deg)
                            * cumulative_core_weight(kp.core, max_order).unwrap_or(0.0)
                    }
                })
                .sum::<f64>();
            SentenceScore {
                sentence_index: sentence.index,
                // empty sums produce -0.0, normalize for display
                gamma: if gamma == 0.0 { 0.0 } else { gamma },
            }
        })
        .collect()
}

/// TSV export `term1<TAB>term2<TAB>deg<TAB>core<TAB>phi`, in list order.
pub fn keyphrases_to_tsv(keyphrases: &[Keyphrase]) -> String {
    let mut out = String::new();
    for kp in keyphrases {
        out.push_str(&alloc::format!(
            "{}\t{}\t{}\t{}\t{}\n",
            kp.terms.0,
            kp.terms.1,
            kp.deg,
            kp.core,
            kp.score
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn sent(index: usize, tokens: &[&str]) -> Sentence {
        Sentence {
            index,
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            raw: tokens.join(" "),
        }
    }

    fn triangle_pendant() -> (GraphOfWords, CoreDecomposition) {
        let sentences = vec![
            sent(0, &["a", "b"]),
            sent(1, &["b", "c"]),
            sent(2, &["c", "a"]),
            sent(3, &["a", "d"]),
        ];
        let g = GraphOfWords::build(&sentences, 2).unwrap();
        let d = CoreDecomposition::compute(&g);
        (g, d)
    }

    #[test]
    fn core_weight_values() {
        assert_eq!(core_weight(3, 3).unwrap(), 1.0);
        assert_eq!(core_weight(1, 3).unwrap(), 1.0 / 3.0);
        assert_eq!(core_weight(1, 1).unwrap(), 1.0);
        assert!(core_weight(0, 3).is_err());
        assert!(core_weight(4, 3).is_err());
    }

    #[test]
    fn core_weight_strictly_increasing_in_core() {
        for k in 1..10u32 {
            for c in 1..k {
                assert!(core_weight(c, k).unwrap() < core_weight(c + 1, k).unwrap());
            }
        }
    }

    #[test]
    fn triangle_pendant_keyphrases() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        assert_eq!(kps.len(), 4);
        // k = 2: triangle edges score 1, pendant edge scores 0.5
        let scores: Vec<(&str, &str, u32, f64)> = kps
            .iter()
            .map(|kp| (kp.terms.0.as_str(), kp.terms.1.as_str(), kp.core, kp.score))
            .collect();
        assert_eq!(
            scores,
            vec![
                ("a", "b", 2, 1.0),
                ("a", "c", 2, 1.0),
                ("b", "c", 2, 1.0),
                ("a", "d", 1, 0.5),
            ]
        );
    }

    #[test]
    fn empty_graph_yields_no_keyphrases() {
        let g = GraphOfWords::build(&[], 2).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert!(extract_keyphrases(&g, &d).is_empty());
    }

    #[test]
    fn single_edge_weight_three() {
        let sentences = vec![
            sent(0, &["a", "b"]),
            sent(1, &["a", "b"]),
            sent(2, &["a", "b"]),
        ];
        let g = GraphOfWords::build(&sentences, 2).unwrap();
        let d = CoreDecomposition::compute(&g);
        let kps = extract_keyphrases(&g, &d);
        assert_eq!(kps.len(), 1);
        assert_eq!(kps[0].deg, 3);
        assert_eq!(kps[0].core, 1);
        assert_eq!(kps[0].score, 3.0);
    }

    #[test]
    fn keyphrase_window_membership() {
        let kp = |a: &str, b: &str| Keyphrase {
            terms: (a.to_string(), b.to_string()),
            deg: 1,
            core: 1,
            score: 1.0,
        };
        let s = sent(0, &["advanced", "artificial", "intelligence", "techniques"]);
        assert!(keyphrase_in_sentence(&kp("artificial", "intelligence"), &s, 5));
        let s2 = sent(0, &["a", "b", "c"]);
        assert!(!keyphrase_in_sentence(&kp("a", "z"), &s2, 5));
        let s3 = sent(0, &["a", "b", "c", "d", "e"]);
        assert!(!keyphrase_in_sentence(&kp("a", "e"), &s3, 3));
        assert!(keyphrase_in_sentence(&kp("a", "e"), &s3, 5));
    }

    #[test]
    fn sentence_scores_unique_mode() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        let sentences = vec![sent(0, &["a", "b"]), sent(1, &["a", "d"]), sent(2, &["x", "y"])];
        let scores = score_sentences(&sentences, &kps, g.window(), d.max_order(), ScoringMode::Unique);
        assert_eq!(scores[0].gamma, 1.0);
        assert_eq!(scores[1].gamma, 0.5);
        assert_eq!(scores[2].gamma, 0.0);
    }

    #[test]
    fn sentence_containing_two_keyphrases_sums() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        // contains (a,b) with score 1.0 and (a,d) with score 0.5; b,d not adjacent in graph
        let sentences = vec![sent(0, &["b", "a", "d"])];
        let scores = score_sentences(&sentences, &kps, g.window(), d.max_order(), ScoringMode::Unique);
        assert_eq!(scores[0].gamma, 1.5);
    }

    #[test]
    fn cumulative_mode_nested_sum() {
        // single keyphrase deg 1, core 2, k 2 -> 1/2 + 1 = 1.5
        assert_eq!(cumulative_core_weight(2, 2).unwrap(), 1.5);
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        let sentences = vec![sent(0, &["a", "b"])];
        let scores = score_sentences(
            &sentences,
            &kps,
            g.window(),
            d.max_order(),
            ScoringMode::CumulativeCores,
        );
        assert_eq!(scores[0].gamma, 1.5);
    }

    #[test]
    fn cumulative_dominates_unique() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        let sentences = vec![
            sent(0, &["a", "b", "c"]),
            sent(1, &["a", "d"]),
            sent(2, &["b", "c", "a", "d"]),
        ];
        let unique = score_sentences(&sentences, &kps, g.window(), d.max_order(), ScoringMode::Unique);
        let cumulative = score_sentences(
            &sentences,
            &kps,
            g.window(),
            d.max_order(),
            ScoringMode::CumulativeCores,
        );
        for (u, c) in unique.iter().zip(&cumulative) {
            assert!(c.gamma >= u.gamma);
        }
    }

    #[test]
    fn phi_positive_and_bounded_by_deg() {
        let (g, d) = triangle_pendant();
        for kp in extract_keyphrases(&g, &d) {
            assert!(kp.score > 0.0);
            assert!(kp.score <= f64::from(kp.deg));
        }
    }

    #[test]
    fn duplicate_occurrence_counts_once() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        let sentences = vec![sent(0, &["a", "b", "a", "b"])];
        let scores = score_sentences(&sentences, &kps, g.window(), d.max_order(), ScoringMode::Unique);
        assert_eq!(scores[0].gamma, 1.0);
    }

    #[test]
    fn tsv_format() {
        let (g, d) = triangle_pendant();
        let kps = extract_keyphrases(&g, &d);
        let tsv = keyphrases_to_tsv(&kps);
        assert_eq!(
            tsv,
            "a\tb\t1\t2\t1\na\tc\t1\t2\t1\nb\tc\t1\t2\t1\na\td\t1\t1\t0.5\n"
        );
    }
}
