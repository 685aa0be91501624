//! Command-line front end: `ingest`, `keyphrases`, `embed-index`, `query`,
//! `eval`. All payload output goes to stdout, diagnostics to stderr, and any
//! error exits nonzero.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use corephrase_core::embed::{self, SentenceEmbedding};
use corephrase_core::eval::{macro_average, ndcg_at_k, Gain};
use corephrase_core::graph::GraphOfWords;
use corephrase_core::kcore::CoreDecomposition;
use corephrase_core::scoring::{self, ScoringMode};
use corephrase_core::textprep::StopwordList;
use corephrase_core::VectorIndex;

use crate::config::{Config, Embedder};
use crate::corpus::{self, IngestedDocument};
use crate::formats;

#[derive(Parser)]
#[command(name = "corephrase", version, about = "Keyphrase-weighted document embedding and retrieval")]
struct Cli {
    /// Optional key=value configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonOpts {
    /// Sliding-window size for the co-occurrence graph (>= 2).
    #[arg(long)]
    window: Option<usize>,
    /// Document embedder.
    #[arg(long)]
    embedder: Option<Embedder>,
    /// Count each keyphrase in every nested core instead of once.
    #[arg(long)]
    cumulative_cores: bool,
    /// NDCG gain function.
    #[arg(long, value_parser = parse_gain)]
    gain: Option<Gain>,
    /// Stopword file (one lowercase word per line).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Pretrained word-vector text file.
    #[arg(long)]
    word_vectors: Option<PathBuf>,
    /// Precomputed sentence-vector TSV file.
    #[arg(long)]
    sentence_vectors: Option<PathBuf>,
    /// Binary vector index path.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Idf statistics TSV path.
    #[arg(long)]
    idf: Option<PathBuf>,
    /// Number of results to retrieve.
    #[arg(long)]
    k: Option<usize>,
}

fn parse_gain(value: &str) -> Result<Gain, String> {
    match value {
        "exp" => Ok(Gain::Exponential),
        "linear" => Ok(Gain::Linear),
        _ => Err(format!("expected `exp` or `linear`, got {value:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a raw corpus (JSONL or directory of .txt) to tokenized JSONL.
    Ingest {
        /// JSONL file of {"id","text"} records, or a directory of <id>.txt.
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print a document's keyphrases and per-sentence scores as TSV.
    Keyphrases {
        /// Ingested corpus (output of `ingest`).
        corpus: PathBuf,
        /// Document id to inspect.
        doc_id: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Embed every document of an ingested corpus and write the index.
    EmbedIndex {
        /// Ingested corpus (output of `ingest`).
        corpus: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Rank the documents most similar to a document or a free-text query.
    Query {
        /// Query by a document id already in the index (self-excluded).
        #[arg(long, conflicts_with = "text")]
        doc: Option<String>,
        /// Free-text query, embedded with the configured embedder.
        #[arg(long)]
        text: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compute NDCG for a run file against graded judgments.
    Eval {
        /// TSV run file: query_id, rank, doc_id, similarity.
        run: PathBuf,
        /// TSV judgments: query_id, doc_id, grade in 1..=5.
        judgments: PathBuf,
        /// Cutoffs to report, comma separated.
        #[arg(long, default_value = "1,5", value_delimiter = ',')]
        k_list: Vec<usize>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let base = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Ingest { input, opts } => {
            let config = merge(base, &opts)?;
            cmd_ingest(&input, &config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Keyphrases { corpus, doc_id, opts } => {
            let config = merge(base, &opts)?;
            cmd_keyphrases(&corpus, &doc_id, &config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EmbedIndex { corpus, opts } => {
            let config = merge(base, &opts)?;
            cmd_embed_index(&corpus, &config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { doc, text, opts } => {
            let config = merge(base, &opts)?;
            cmd_query(doc.as_deref(), text.as_deref(), &config)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { run, judgments, k_list, opts } => {
            let config = merge(base, &opts)?;
            cmd_eval(&run, &judgments, &k_list, &config)
        }
    }
}

fn merge(mut config: Config, opts: &CommonOpts) -> Result<Config> {
    if let Some(window) = opts.window {
        config.window = window;
    }
    if let Some(embedder) = opts.embedder {
        config.embedder = embedder;
    }
    if opts.cumulative_cores {
        config.cumulative_cores = true;
    }
    if let Some(gain) = opts.gain {
        config.gain = gain;
    }
    for (flag, slot) in [
        (&opts.stopwords, &mut config.stopwords),
        (&opts.word_vectors, &mut config.word_vectors),
        (&opts.sentence_vectors, &mut config.sentence_vectors),
        (&opts.index, &mut config.index),
        (&opts.idf, &mut config.idf),
    ] {
        if let Some(path) = flag {
            *slot = Some(path.clone());
        }
    }
    if let Some(k) = opts.k {
        config.k = k;
    }
    Ok(config.finalize()?)
}

fn load_stopwords(config: &Config) -> Result<StopwordList> {
    match &config.stopwords {
        Some(path) => Ok(formats::load_stopwords(path)
            .with_context(|| format!("reading stopwords from {}", path.display()))?),
        None => Ok(formats::default_stopwords()),
    }
}

fn scoring_mode(config: &Config) -> ScoringMode {
    if config.cumulative_cores {
        ScoringMode::CumulativeCores
    } else {
        ScoringMode::Unique
    }
}

fn cmd_ingest(input: &Path, config: &Config) -> Result<()> {
    let stopwords = load_stopwords(config)?;
    let raw = corpus::read_raw_corpus(input)?;
    let ingested: Vec<IngestedDocument> = raw
        .iter()
        .map(|doc| IngestedDocument::from_raw(doc, &stopwords))
        .collect();
    corpus::write_ingested_corpus(&ingested, std::io::stdout().lock())?;
    Ok(())
}

fn cmd_keyphrases(corpus_path: &Path, doc_id: &str, config: &Config) -> Result<()> {
    let docs = corpus::read_ingested_corpus(corpus_path)?;
    let doc = docs
        .iter()
        .find(|d| d.id == doc_id)
        .ok_or_else(|| anyhow!("unknown document id {doc_id:?}"))?;
    let sentences = doc.sentences();
    let graph = GraphOfWords::build(&sentences, config.window)?;
    let decomposition = CoreDecomposition::compute(&graph);
    let keyphrases = scoring::extract_keyphrases(&graph, &decomposition);
    let scores = scoring::score_sentences(
        &sentences,
        &keyphrases,
        config.window,
        decomposition.max_order(),
        scoring_mode(config),
    );
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "#keyphrases\tterm1\tterm2\tdeg\tcore\tphi")?;
    write!(out, "{}", scoring::keyphrases_to_tsv(&keyphrases))?;
    writeln!(out, "#sentences\tindex\tgamma")?;
    for score in &scores {
        writeln!(out, "{}\t{}", score.sentence_index, score.gamma)?;
    }
    Ok(())
}

/// Everything needed to embed one document; loaded once per invocation.
struct EmbedContext {
    word_vectors: Option<embed::WordVectorStore>,
    sentence_vectors: Option<embed::SentenceVectorStore>,
    idf: embed::IdfStats,
}

impl EmbedContext {
    fn load(config: &Config, docs: &[IngestedDocument]) -> Result<Self> {
        let word_vectors = match config.embedder {
            Embedder::TdeIw | Embedder::Twa => {
                let path = config
                    .word_vectors
                    .as_ref()
                    .ok_or_else(|| anyhow!("--word-vectors is required for this embedder"))?;
                Some(formats::load_word_vectors(path)
                    .with_context(|| format!("reading word vectors from {}", path.display()))?)
            }
            Embedder::TdeS2v => None,
        };
        let sentence_vectors = match config.embedder {
            Embedder::TdeS2v => {
                let path = config
                    .sentence_vectors
                    .as_ref()
                    .ok_or_else(|| anyhow!("--sentence-vectors is required for tde-s2v"))?;
                Some(formats::load_sentence_vectors(path)
                    .with_context(|| format!("reading sentence vectors from {}", path.display()))?)
            }
            _ => None,
        };
        let idf = match &config.idf {
            Some(path) if path.exists() => formats::load_idf(path)?,
            _ => embed::IdfStats::build(
                docs.iter()
                    .map(|d| d.sentences.iter().flatten().map(String::as_str)),
            )?,
        };
        Ok(EmbedContext { word_vectors, sentence_vectors, idf })
    }

    /// Embeds one document per the configured embedder.
    fn embed_document(&self, doc: &IngestedDocument, config: &Config) -> Result<Vec<f64>> {
        match config.embedder {
            Embedder::Twa => {
                let store = self.word_vectors.as_ref().unwrap();
                Ok(embed::embed_document_twa(&doc.all_tokens(), store, &self.idf)?)
            }
            Embedder::TdeIw | Embedder::TdeS2v => {
                let sentences = doc.sentences();
                let graph = GraphOfWords::build(&sentences, config.window)?;
                let decomposition = CoreDecomposition::compute(&graph);
                let keyphrases = scoring::extract_keyphrases(&graph, &decomposition);
                let scores = scoring::score_sentences(
                    &sentences,
                    &keyphrases,
                    config.window,
                    decomposition.max_order(),
                    scoring_mode(config),
                );
                let embeddings: Vec<SentenceEmbedding> = match config.embedder {
                    Embedder::TdeIw => {
                        let store = self.word_vectors.as_ref().unwrap();
                        sentences
                            .iter()
                            .map(|s| embed::embed_sentence_iw(s, store, &self.idf))
                            .collect()
                    }
                    Embedder::TdeS2v => {
                        let store = self.sentence_vectors.as_ref().unwrap();
                        sentences
                            .iter()
                            .map(|s| embed::embed_sentence_external(&doc.id, s.index, store))
                            .collect::<Result<_, _>>()?
                    }
                    Embedder::Twa => unreachable!(),
                };
                let gammas: Vec<f64> = scores.iter().map(|s| s.gamma).collect();
                let document = embed::embed_document_tde(&embeddings, &gammas)?;
                if document.uniform_fallback {
                    eprintln!("note: {}: no scored sentence, using unweighted mean", doc.id);
                }
                Ok(document.vector)
            }
        }
    }
}

fn cmd_embed_index(corpus_path: &Path, config: &Config) -> Result<()> {
    let index_path = config
        .index
        .as_ref()
        .ok_or_else(|| anyhow!("--index is required"))?;
    let docs = corpus::read_ingested_corpus(corpus_path)?;
    let context = EmbedContext::load(config, &docs)?;

    let mut index: Option<VectorIndex> = None;
    let mut skipped = 0usize;
    for doc in &docs {
        let vector = match context.embed_document(doc, config) {
            Ok(v) => v,
            Err(err) => {
                eprintln!("skip {}: {err:#}", doc.id);
                skipped += 1;
                continue;
            }
        };
        let index = index.get_or_insert_with(|| VectorIndex::new(vector.len()));
        let as_f32: Vec<f32> = vector.iter().map(|&x| x as f32).collect();
        if let Err(err) = index.insert(doc.id.clone(), as_f32) {
            eprintln!("skip {}: {err}", doc.id);
            skipped += 1;
        }
    }
    let index = index.ok_or_else(|| anyhow!("no document could be embedded"))?;
    formats::save_index(&index, index_path)?;
    let idf_path = config
        .idf
        .clone()
        .unwrap_or_else(|| idf_sidecar_path(index_path));
    formats::save_idf(&context.idf, &idf_path)?;
    eprintln!(
        "indexed {} documents ({} skipped) -> {}",
        index.len(),
        skipped,
        index_path.display()
    );
    Ok(())
}

/// Default idf location next to the index file.
pub fn idf_sidecar_path(index_path: &Path) -> PathBuf {
    let mut os = index_path.as_os_str().to_owned();
    os.push(".idf.tsv");
    PathBuf::from(os)
}

fn cmd_query(doc: Option<&str>, text: Option<&str>, config: &Config) -> Result<()> {
    let index_path = config
        .index
        .as_ref()
        .ok_or_else(|| anyhow!("--index is required"))?;
    let index = formats::load_index(index_path)?;
    let (query, exclude): (Vec<f64>, Option<&str>) = match (doc, text) {
        (Some(id), None) => {
            let vector = index
                .get(id)
                .ok_or_else(|| anyhow!("unknown document id {id:?}"))?;
            (vector.iter().map(|&x| f64::from(x)).collect(), Some(id))
        }
        (None, Some(text)) => (embed_free_text(text, config, index_path)?, None),
        _ => bail!("exactly one of --doc or --text is required"),
    };
    let hits = index.top_k(&query, config.k, exclude)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (rank, (id, similarity)) in hits.iter().enumerate() {
        writeln!(out, "{}\t{id}\t{similarity:.6}", rank + 1)?;
    }
    Ok(())
}

fn embed_free_text(text: &str, config: &Config, index_path: &Path) -> Result<Vec<f64>> {
    if config.embedder == Embedder::TdeS2v {
        bail!("free-text queries need a word-vector embedder (tde-iw or twa)");
    }
    let stopwords = load_stopwords(config)?;
    let raw = corpus::RawDocument { id: "<query>".into(), text: text.into() };
    let doc = IngestedDocument::from_raw(&raw, &stopwords);
    let word_vectors_path = config
        .word_vectors
        .as_ref()
        .ok_or_else(|| anyhow!("--word-vectors is required for free-text queries"))?;
    let word_vectors = formats::load_word_vectors(word_vectors_path)?;
    let idf_path = config
        .idf
        .clone()
        .unwrap_or_else(|| idf_sidecar_path(index_path));
    let idf = formats::load_idf(&idf_path)
        .with_context(|| format!("reading idf stats from {}", idf_path.display()))?;
    let context = EmbedContext {
        word_vectors: Some(word_vectors),
        sentence_vectors: None,
        idf,
    };
    context.embed_document(&doc, config)
}

fn cmd_eval(run_path: &Path, judgments_path: &Path, k_list: &[usize], config: &Config) -> Result<ExitCode> {
    let run = formats::load_run(run_path)?;
    let judgments = formats::load_judgments(judgments_path)?;
    let mut per_query: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    let mut skipped: Vec<String> = Vec::new();
    for (query, ranking) in &run {
        let Some(query_judgments) = judgments.get(query) else {
            eprintln!("skip query {query:?}: no judgments");
            skipped.push(query.clone());
            continue;
        };
        let ranking: Vec<&str> = ranking.iter().map(String::as_str).collect();
        let mut values = BTreeMap::new();
        let mut failed = false;
        for &k in k_list {
            match ndcg_at_k(&ranking, query_judgments, k, config.gain) {
                Ok(v) => {
                    values.insert(format!("ndcg@{k}"), v);
                }
                Err(err) => {
                    eprintln!("skip query {query:?}: {err}");
                    skipped.push(query.clone());
                    failed = true;
                    break;
                }
            }
        }
        if !failed {
            per_query.insert(query.clone(), values);
        }
    }
    let mut macro_values = BTreeMap::new();
    for &k in k_list {
        let key = format!("ndcg@{k}");
        let values: Vec<f64> = per_query.values().filter_map(|v| v.get(&key)).copied().collect();
        macro_values.insert(key, macro_average(&values));
    }
    let report = serde_json::json!({
        "per_query": per_query,
        "macro": macro_values,
        "skipped_queries": skipped,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if skipped.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
