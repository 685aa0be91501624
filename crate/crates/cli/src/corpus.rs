//! Corpus ingestion: raw documents in (JSONL or a directory of `.txt`
//! files), normalized documents out (JSONL, one per line).

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use corephrase_core::textprep::{self, Sentence, StopwordList};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {source}")]
    Json { path: String, line: usize, source: serde_json::Error },
    #[error("duplicate document id {id:?}")]
    DuplicateId { id: String },
    #[error("document {id:?} has an empty id")]
    EmptyId { id: String },
    #[error("unknown document id {id:?}")]
    UnknownDoc { id: String },
}

/// A raw input document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
}

/// A normalized document: tokenized sentences, stopwords removed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IngestedDocument {
    pub id: String,
    pub sentences: Vec<Vec<String>>,
}

impl IngestedDocument {
    pub fn from_raw(raw: &RawDocument, stopwords: &StopwordList) -> Self {
        let sentences = textprep::prepare_document(&raw.text, stopwords)
            .into_iter()
            .map(|s| s.tokens)
            .collect();
        IngestedDocument { id: raw.id.clone(), sentences }
    }

    /// Sentences as core types, indices matching their position.
    pub fn sentences(&self) -> Vec<Sentence> {
        self.sentences
            .iter()
            .enumerate()
            .map(|(index, tokens)| Sentence {
                index,
                tokens: tokens.clone(),
                raw: tokens.join(" "),
            })
            .collect()
    }

    /// All tokens of the document in order.
    pub fn all_tokens(&self) -> Vec<String> {
        self.sentences.iter().flatten().cloned().collect()
    }
}

/// Reads raw documents from a JSONL file (`{"id":…, "text":…}` per line) or
/// a directory of `<id>.txt` files. Ids must be unique and non-empty.
pub fn read_raw_corpus(path: &Path) -> Result<Vec<RawDocument>, CorpusError> {
    let docs = if path.is_dir() {
        let mut docs = Vec::new();
        let mut paths: Vec<_> = std::fs::read_dir(path)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|e| e == "txt"))
            .collect();
        paths.sort();
        for file in paths {
            let id = file.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&file)?;
            docs.push(RawDocument { id, text });
        }
        docs
    } else {
        let reader = BufReader::new(File::open(path)?);
        let mut docs = Vec::new();
        for (line_no, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let doc: RawDocument = serde_json::from_str(&line).map_err(|source| {
                CorpusError::Json { path: path.display().to_string(), line: line_no + 1, source }
            })?;
            docs.push(doc);
        }
        docs
    };
    check_ids(docs.iter().map(|d| d.id.as_str()))?;
    Ok(docs)
}

/// Reads an ingested corpus (JSONL of [`IngestedDocument`]).
pub fn read_ingested_corpus(path: &Path) -> Result<Vec<IngestedDocument>, CorpusError> {
    let reader = BufReader::new(File::open(path)?);
    let mut docs = Vec::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: IngestedDocument = serde_json::from_str(&line).map_err(|source| {
            CorpusError::Json { path: path.display().to_string(), line: line_no + 1, source }
        })?;
        docs.push(doc);
    }
    check_ids(docs.iter().map(|d| d.id.as_str()))?;
    Ok(docs)
}

pub fn write_ingested_corpus<W: Write>(
    docs: &[IngestedDocument],
    mut out: W,
) -> Result<(), CorpusError> {
    for doc in docs {
        serde_json::to_writer(&mut out, doc)
            .map_err(|source| CorpusError::Json { path: "<output>".into(), line: 0, source })?;
        writeln!(out)?;
    }
    Ok(())
}

fn check_ids<'a>(ids: impl Iterator<Item = &'a str>) -> Result<(), CorpusError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if id.is_empty() {
            return Err(CorpusError::EmptyId { id: id.to_string() });
        }
        if !seen.insert(id.to_string()) {
            return Err(CorpusError::DuplicateId { id: id.to_string() });
        }
    }
    Ok(())
}
