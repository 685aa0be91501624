//! On-disk formats: word vectors, sentence vectors, stopwords, idf stats,
//! the binary vector index and the evaluation run/judgment files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use corephrase_core::embed::{IdfStats, SentenceVectorStore, WordVectorStore};
use corephrase_core::textprep::StopwordList;
use corephrase_core::VectorIndex;
use serde::Serialize;
use thiserror::Error;

/// Magic bytes opening the binary index format.
pub const INDEX_MAGIC: &[u8; 7] = b"TDEIDX1";

/// Default English stopword list shipped with the binary.
pub const DEFAULT_STOPWORDS: &str = include_str!("../assets/stopwords.txt");

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}:{line}: expected {expected} vector components, got {got}")]
    DimensionMismatch { path: String, line: usize, expected: usize, got: usize },
    #[error("corrupt index file: {0}")]
    CorruptIndex(String),
    #[error(transparent)]
    Embed(#[from] corephrase_core::embed::EmbedError),
    #[error(transparent)]
    Index(#[from] corephrase_core::index::IndexError),
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Loads word vectors from the whitespace-separated text format:
/// an optional `<count> <dim>` header line, then `word v1 .. v_dim` lines.
/// Duplicate words keep the first occurrence.
pub fn load_word_vectors(path: &Path) -> Result<WordVectorStore, FormatError> {
    let reader = BufReader::new(File::open(path)?);
    let mut store: Option<WordVectorStore> = None;
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if store.is_none() && fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok())
        {
            // header line: vocabulary size and dimension
            let dim = fields[1].parse().unwrap();
            store = Some(WordVectorStore::new(dim));
            continue;
        }
        if fields.len() < 2 {
            return Err(parse_err(path, line_no + 1, "expected `word v1 .. v_dim`"));
        }
        let word = fields[0].to_lowercase();
        let values = fields[1..]
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| parse_err(path, line_no + 1, format!("non-numeric component {f:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let store = store.get_or_insert_with(|| WordVectorStore::new(values.len()));
        store.insert(word, values).map_err(|e| match e {
            corephrase_core::embed::EmbedError::DimensionMismatch { expected, got } => {
                FormatError::DimensionMismatch {
                    path: path.display().to_string(),
                    line: line_no + 1,
                    expected,
                    got,
                }
            }
            other => FormatError::Embed(other),
        })?;
    }
    Ok(store.unwrap_or_else(|| WordVectorStore::new(0)))
}

/// Loads sentence vectors from TSV `doc_id<TAB>sentence_index<TAB>v1 .. v_dim`.
pub fn load_sentence_vectors(path: &Path) -> Result<SentenceVectorStore, FormatError> {
    let reader = BufReader::new(File::open(path)?);
    let mut store: Option<SentenceVectorStore> = None;
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.splitn(3, '\t');
        let (Some(doc_id), Some(index), Some(values)) =
            (fields.next(), fields.next(), fields.next())
        else {
            return Err(parse_err(
                path,
                line_no + 1,
                "expected `doc_id<TAB>sentence_index<TAB>v1 .. v_dim`",
            ));
        };
        let index: usize = index
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, format!("bad sentence index {index:?}")))?;
        let values = values
            .split_whitespace()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| parse_err(path, line_no + 1, format!("non-numeric component {f:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let store = store.get_or_insert_with(|| SentenceVectorStore::new(values.len()));
        store.insert(doc_id.to_string(), index, values).map_err(|e| match e {
            corephrase_core::embed::EmbedError::DimensionMismatch { expected, got } => {
                FormatError::DimensionMismatch {
                    path: path.display().to_string(),
                    line: line_no + 1,
                    expected,
                    got,
                }
            }
            other => FormatError::Embed(other),
        })?;
    }
    Ok(store.unwrap_or_else(|| SentenceVectorStore::new(0)))
}

/// Loads a one-word-per-line stopword file (`#` comments ignored).
pub fn load_stopwords(path: &Path) -> Result<StopwordList, FormatError> {
    let text = std::fs::read_to_string(path)?;
    Ok(StopwordList::from_text(&text))
}

pub fn default_stopwords() -> StopwordList {
    StopwordList::from_text(DEFAULT_STOPWORDS)
}

/// Persists idf statistics as `#N=<n_docs>` then `token<TAB>df` lines.
pub fn save_idf(idf: &IdfStats, path: &Path) -> Result<(), FormatError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "#N={}", idf.n_docs())?;
    for (token, df) in idf.iter() {
        writeln!(out, "{token}\t{df}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn load_idf(path: &Path) -> Result<IdfStats, FormatError> {
    let reader = BufReader::new(File::open(path)?);
    let mut n_docs: Option<usize> = None;
    let mut df = BTreeMap::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(n) = line.strip_prefix("#N=") {
            n_docs = Some(
                n.trim()
                    .parse()
                    .map_err(|_| parse_err(path, line_no + 1, format!("bad document count {n:?}")))?,
            );
            continue;
        }
        let (token, count) = line
            .split_once('\t')
            .ok_or_else(|| parse_err(path, line_no + 1, "expected `token<TAB>df`"))?;
        let count: usize = count
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, format!("bad df {count:?}")))?;
        df.insert(token.to_string(), count);
    }
    let n_docs = n_docs.ok_or_else(|| parse_err(path, 0, "missing #N= header"))?;
    Ok(IdfStats::from_counts(n_docs, df)?)
}

/// Writes the binary index: magic, dim (u32 LE), count (u64 LE), then per
/// entry id length (u32 LE), id bytes, `dim` f32 LE components; the file ends
/// with a CRC32 (u32 LE) of everything before it.
pub fn save_index(index: &VectorIndex, path: &Path) -> Result<(), FormatError> {
    let mut body = Vec::new();
    body.extend_from_slice(INDEX_MAGIC);
    body.extend_from_slice(&(index.dim() as u32).to_le_bytes());
    body.extend_from_slice(&(index.len() as u64).to_le_bytes());
    for (id, vector) in index.iter() {
        body.extend_from_slice(&(id.len() as u32).to_le_bytes());
        body.extend_from_slice(id.as_bytes());
        for &x in vector {
            body.extend_from_slice(&x.to_le_bytes());
        }
    }
    let checksum = crc32fast::hash(&body);
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(&body)?;
    out.write_all(&checksum.to_le_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn load_index(path: &Path) -> Result<VectorIndex, FormatError> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < INDEX_MAGIC.len() + 4 + 8 + 4 {
        return Err(FormatError::CorruptIndex("file too short".into()));
    }
    let (body, checksum_bytes) = bytes.split_at(bytes.len() - 4);
    let stored = u32::from_le_bytes(checksum_bytes.try_into().unwrap());
    if crc32fast::hash(body) != stored {
        return Err(FormatError::CorruptIndex("checksum mismatch".into()));
    }
    let mut cursor = body;
    let magic = take(&mut cursor, INDEX_MAGIC.len())?;
    if magic != INDEX_MAGIC {
        return Err(FormatError::CorruptIndex("bad magic bytes".into()));
    }
    let dim = u32::from_le_bytes(take(&mut cursor, 4)?.try_into().unwrap()) as usize;
    let count = u64::from_le_bytes(take(&mut cursor, 8)?.try_into().unwrap());
    let mut index = VectorIndex::new(dim);
    for _ in 0..count {
        let id_len = u32::from_le_bytes(take(&mut cursor, 4)?.try_into().unwrap()) as usize;
        let id = String::from_utf8(take(&mut cursor, id_len)?.to_vec())
            .map_err(|_| FormatError::CorruptIndex("id is not valid UTF-8".into()))?;
        let mut vector = Vec::with_capacity(dim);
        for _ in 0..dim {
            vector.push(f32::from_le_bytes(take(&mut cursor, 4)?.try_into().unwrap()));
        }
        index.insert(id, vector)?;
    }
    if !cursor.is_empty() {
        return Err(FormatError::CorruptIndex("trailing bytes".into()));
    }
    Ok(index)
}

fn take<'a>(cursor: &mut &'a [u8], n: usize) -> Result<&'a [u8], FormatError> {
    if cursor.len() < n {
        return Err(FormatError::CorruptIndex("truncated file".into()));
    }
    let (head, tail) = cursor.split_at(n);
    *cursor = tail;
    Ok(head)
}

#[derive(Serialize)]
struct JsonlEntry<'a> {
    id: &'a str,
    vector: &'a [f32],
}

/// Debug/interop export: one `{"id":…, "vector":[…]}` object per line.
pub fn export_index_jsonl<W: Write>(index: &VectorIndex, mut out: W) -> Result<(), FormatError> {
    for (id, vector) in index.iter() {
        serde_json::to_writer(&mut out, &JsonlEntry { id, vector })
            .map_err(|e| FormatError::CorruptIndex(e.to_string()))?;
        writeln!(out)?;
    }
    Ok(())
}

/// A parsed run file: per query, doc ids in rank order.
pub type RunFile = BTreeMap<String, Vec<String>>;
/// Parsed judgments: query -> doc -> grade.
pub type JudgmentsFile = BTreeMap<String, BTreeMap<String, u32>>;

/// Parses TSV `query_id<TAB>rank<TAB>doc_id<TAB>similarity`; rows are sorted
/// by the rank column within each query.
pub fn load_run(path: &Path) -> Result<RunFile, FormatError> {
    let reader = BufReader::new(File::open(path)?);
    let mut rows: BTreeMap<String, Vec<(u32, String)>> = BTreeMap::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(parse_err(
                path,
                line_no + 1,
                "expected `query_id<TAB>rank<TAB>doc_id<TAB>similarity`",
            ));
        }
        let rank: u32 = fields[1]
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, format!("bad rank {:?}", fields[1])))?;
        rows.entry(fields[0].to_string())
            .or_default()
            .push((rank, fields[2].to_string()));
    }
    Ok(rows
        .into_iter()
        .map(|(query, mut docs)| {
            docs.sort_by_key(|(rank, _)| *rank);
            (query, docs.into_iter().map(|(_, doc)| doc).collect())
        })
        .collect())
}

/// Parses TSV `query_id<TAB>doc_id<TAB>grade` with grades in 1..=5.
pub fn load_judgments(path: &Path) -> Result<JudgmentsFile, FormatError> {
    let reader = BufReader::new(File::open(path)?);
    let mut judgments: JudgmentsFile = BTreeMap::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(parse_err(
                path,
                line_no + 1,
                "expected `query_id<TAB>doc_id<TAB>grade`",
            ));
        }
        let grade: u32 = fields[2]
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, format!("bad grade {:?}", fields[2])))?;
        if !(1..=5).contains(&grade) {
            return Err(parse_err(path, line_no + 1, format!("grade {grade} outside 1..=5")));
        }
        judgments
            .entry(fields[0].to_string())
            .or_default()
            .insert(fields[1].to_string(), grade);
    }
    Ok(judgments)
}
