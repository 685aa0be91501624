//! Sentence segmentation and token normalization.
//!
//! Segmentation is rule based: a sentence ends at `.`, `!` or `?` followed by
//! whitespace and an uppercase letter, unless the period closes a known
//! abbreviation. Tokens are lowercased, split on non-alphanumeric characters
//! and filtered against a stopword list.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::collections::BTreeSet;

/// Abbreviations whose trailing period never ends a sentence.
const ABBREVIATIONS: &[&str] = &[
    "dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "vs", "etc", "e.g",
    "i.e", "fig", "al", "inc", "ltd", "co", "corp", "no", "dept", "est",
    "approx", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
    "oct", "nov", "dec",
];

/// Lowercase words removed during tokenization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl StopwordList {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a list from arbitrary words; entries are lowercased and
    /// deduplicated.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = words
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        Self { words }
    }

    /// Parses the one-word-per-line stopword format. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_text(text: &str) -> Self {
        Self::from_words(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// A normalized sentence: its ordinal within the document, the stopword-free
/// token list and the raw text span it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Vec<String>,
    pub raw: String,
}

/// Splits `text` into raw sentence spans.
///
/// Spans are trimmed, non-overlapping and in document order; their
/// concatenation reproduces the input modulo inter-sentence whitespace.
/// Empty input yields an empty list.
pub fn segment_sentences(text: &str) -> Vec<&str> {
    let mut spans = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = text.char_indices().collect();

    for (pos, &(byte_idx, ch)) in chars.iter().enumerate() {
        if ch != '.' && ch != '!' && ch != '?' {
            continue;
        }
        if ch == '.' && ends_abbreviation(text, byte_idx) {
            continue;
        }
        // Boundary only when followed by whitespace then an uppercase letter.
        let mut rest = chars[pos + 1..].iter();
        match rest.next() {
            None => {} // terminal punctuation at end of text; handled below
            Some(&(_, next)) if next.is_whitespace() => {
                let upper_follows = chars[pos + 1..]
                    .iter()
                    .find(|&&(_, c)| !c.is_whitespace())
                    .is_some_and(|&(_, c)| c.is_uppercase());
                if !upper_follows {
                    continue;
                }
            }
            Some(_) => continue,
        }
        let end = byte_idx + ch.len_utf8();
        let span = text[start..end].trim();
        if !span.is_empty() {
            spans.push(span);
        }
        start = end;
    }

    let tail = text[start..].trim();
    if !tail.is_empty() {
        spans.push(tail);
    }
    spans
}

/// True when the token preceding the period at `dot_idx` is a known
/// abbreviation.
fn ends_abbreviation(text: &str, dot_idx: usize) -> bool {
    let before = &text[..dot_idx];
    let token_start = before
        .rfind(|c: char| c.is_whitespace())
        .map(|i| i + 1)
        .unwrap_or(0);
    let token = before[token_start..].trim_matches(|c: char| !c.is_alphanumeric() && c != '.');
    if token.is_empty() {
        return false;
    }
    let lower = token.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
        // "e.g." / "i.e." match on their dotted prefix as well
        || ABBREVIATIONS.contains(&lower.trim_end_matches('.'))
}

/// Lowercases, splits on non-alphanumeric characters and removes stopwords.
/// Token order is preserved.
pub fn tokenize_normalize(sentence: &str, stopwords: &StopwordList) -> Vec<String> {
    sentence
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty() && !stopwords.contains(t))
        .map(ToOwned::to_owned)
        .collect()
}

/// Segments and tokenizes a whole document. Sentences whose token list ends
/// up empty are kept (with empty tokens) so indices stay aligned with the raw
/// segmentation.
pub fn prepare_document(text: &str, stopwords: &StopwordList) -> Vec<Sentence> {
    segment_sentences(text)
        .into_iter()
        .enumerate()
        .map(|(index, raw)| Sentence {
            index,
            tokens: tokenize_normalize(raw, stopwords),
            raw: raw.to_owned(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_terminal_periods() {
        assert_eq!(segment_sentences("A b. C d."), vec!["A b.", "C d."]);
    }

    #[test]
    fn empty_input() {
        assert!(segment_sentences("").is_empty());
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(
            segment_sentences("Dr. Smith arrived. He left."),
            vec!["Dr. Smith arrived.", "He left."]
        );
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(
            segment_sentences("It cost 3.50 euros. Cheap."),
            vec!["It cost 3.50 euros.", "Cheap."]
        );
    }

    #[test]
    fn question_and_exclamation() {
        assert_eq!(
            segment_sentences("Really? Yes! Fine."),
            vec!["Really?", "Yes!", "Fine."]
        );
    }

    #[test]
    fn paper_example_sentence() {
        let stop = StopwordList::from_words(["our", "is", "based"]);
        assert_eq!(
            tokenize_normalize(
                "our platform is based advanced artificial intelligence techniques",
                &stop
            ),
            vec!["platform", "advanced", "artificial", "intelligence", "techniques"]
        );
    }

    #[test]
    fn case_and_punctuation_normalized() {
        assert_eq!(
            tokenize_normalize("Hello, HELLO!", &StopwordList::empty()),
            vec!["hello", "hello"]
        );
    }

    #[test]
    fn all_stopwords_removed() {
        let stop = StopwordList::from_words(["the", "of", "and"]);
        assert!(tokenize_normalize("the of and", &stop).is_empty());
    }

    #[test]
    fn stopword_file_parsing() {
        let list = StopwordList::from_text("# comment\nthe\n\nAnd\nthe\n");
        assert_eq!(list.len(), 2);
        assert!(list.contains("the"));
        assert!(list.contains("and"));
        assert!(!list.contains("# comment"));
    }

    #[test]
    fn tokenize_idempotent_on_normalized_output() {
        let stop = StopwordList::from_words(["is", "a"]);
        let once = tokenize_normalize("This is a Test-Case, truly!", &stop);
        let rejoined = once.join(" ");
        assert_eq!(tokenize_normalize(&rejoined, &stop), once);
    }

    #[test]
    fn segmentation_reconstructs_text() {
        let text = "Dr. Smith arrived. He left! Did he? Yes.";
        let joined = segment_sentences(text).join(" ");
        let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(norm(&joined), norm(text));
    }

    #[test]
    fn prepare_document_indices_are_sequential() {
        let doc = prepare_document("One two. Three four. Five.", &StopwordList::empty());
        let indices: Vec<usize> = doc.iter().map(|s| s.index).collect();
        assert_eq!(indices, vec![0, 1, 2]);
        assert_eq!(doc[0].tokens, vec!["one", "two"]);
    }
}
