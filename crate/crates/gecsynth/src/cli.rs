//! The `gecsynth` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;

use clap::{Args, Parser, Subcommand};
use gecsynth_core::candidates::CandidateConfig;
use gecsynth_core::corpus::Document;
use gecsynth_core::gecscore::{postprocess_tweets, score};
use gecsynth_core::morphology::{AnalyzabilityOracle, DEFAULT_SUFFIX_RULES};
use gecsynth_core::text::SentenceSplitter;
use gecsynth_core::{ExpansionContext, ScoreMode, Scores, SpellingDictionary};

use crate::annotate::{self, AnnotationJob, HttpBackend, PromptTemplate};
use crate::config::{require_existing, PipelineConfig};
use crate::error::{Error, Result};
use crate::formats::{self, format_lines, read_text, write_text};
use crate::m2::{document_from_pair, format_m2, read_m2, M2File};
use crate::pipeline;

#[derive(Debug, Parser)]
#[command(name = "gecsynth", version, about = "Build synthetic grammatical error correction corpora and score corrections")]
struct Cli {
    /// Pipeline configuration file (TOML); flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for parallel stages [default: number of cores].
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the word index of a corpus.
    Index(IndexArgs),
    /// Grow a seed spelling dictionary to its fixpoint over a corpus.
    Expand(ExpandArgs),
    /// Apply a spelling dictionary to sentences, producing a parallel corpus.
    Insert(InsertArgs),
    /// Correct sentences through a chat-completion endpoint.
    Annotate(AnnotateArgs),
    /// Convert a parallel TSV into M2 annotations.
    M2(M2Args),
    /// Score hypothesis M2 against gold M2.
    Score(ScoreArgs),
    /// Capitalize gold sentences and strip punctuation from hypotheses.
    PostprocessTweets(TweetArgs),
    /// Summaries of a corpus, index or dictionary.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct IndexArgs {
    /// Corpus: one document per line, or JSON lines with a "text" field (.jsonl).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Output index TSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Prebuilt index of the corpus; built on the fly when absent.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Seed dictionary TSV.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Lexicon, one word per line.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Suffix rule table; the bundled rules are used when absent.
    #[arg(long)]
    suffix_rules: Option<PathBuf>,
    /// Abbreviations that never end a sentence, one per line.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    deasciify_cap: Option<usize>,
    /// Receives dictionary.tsv, report.tsv and sentences.txt.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InsertArgs {
    /// Sentences, one per line.
    #[arg(long)]
    sentences: PathBuf,
    #[arg(long)]
    dictionary: Option<PathBuf>,
    /// Output `source<TAB>corrected` TSV.
    #[arg(long)]
    out: PathBuf,
    /// Optional M2 file with the substitution edits.
    #[arg(long)]
    m2: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnnotateArgs {
    /// Sentences, one per line, or `id<TAB>sentence` lines.
    #[arg(long)]
    input: PathBuf,
    /// Output `source<TAB>corrected` TSV of successful records.
    #[arg(long)]
    out: PathBuf,
    /// Output `id<TAB>status` list of the other records [default: OUT.rejects].
    #[arg(long)]
    rejects: Option<PathBuf>,
    /// Checkpoint journal [default: OUT.journal].
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    base_url: Option<String>,
    #[arg(long)]
    model: Option<String>,
    /// Environment variable holding the API key.
    #[arg(long)]
    credential_env: Option<String>,
    /// Maximum requests in flight.
    #[arg(long)]
    concurrency: Option<usize>,
    #[arg(long)]
    max_attempts: Option<u32>,
    /// Prompt template containing `{sentence}` once.
    #[arg(long)]
    prompt_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct M2Args {
    /// `source<TAB>corrected` TSV.
    #[arg(long)]
    parallel: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    hyp: PathBuf,
    /// span-correction, span-detection or token-detection.
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Debug, Args)]
struct TweetArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    hyp: PathBuf,
    #[arg(long)]
    out_gold: PathBuf,
    #[arg(long)]
    out_hyp: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    dictionary: Option<PathBuf>,
    /// Also write the figures as `metric<TAB>value` lines.
    #[arg(long)]
    tsv: Option<PathBuf>,
}

struct Context {
    config: PipelineConfig,
    workers: usize,
}

impl Context {
    fn pool(&self) -> Result<rayon::ThreadPool> {
        pipeline::thread_pool(self.workers)
    }
}

fn pick(flag: Option<PathBuf>, configured: &Option<PathBuf>, name: &str) -> Result<PathBuf> {
    flag.or_else(|| configured.clone())
        .ok_or_else(|| Error::Usage(format!("--{name} is required (or set it in the config file)")))
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                0
            } else {
                let _ = write!(err, "{text}");
                1
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    let workers = cli.workers.unwrap_or(config.run.workers);
    let ctx = Context { config, workers };
    let mut report = String::new();
    match cli.command {
        Command::Index(a) => cmd_index(&ctx, a, &mut report)?,
        Command::Expand(a) => cmd_expand(&ctx, a, &mut report)?,
        Command::Insert(a) => cmd_insert(&ctx, a, &mut report)?,
        Command::Annotate(a) => cmd_annotate(&ctx, a, &mut report)?,
        Command::M2(a) => cmd_m2(&ctx, a, &mut report)?,
        Command::Score(a) => cmd_score(&ctx, a, &mut report)?,
        Command::PostprocessTweets(a) => cmd_tweets(a, &mut report)?,
        Command::Stats(a) => cmd_stats(&ctx, a, &mut report)?,
    }
    out.write_all(report.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

fn cmd_index(ctx: &Context, a: IndexArgs, report: &mut String) -> Result<()> {
    let corpus = pick(a.corpus, &ctx.config.paths.corpus, "corpus")?;
    let docs = formats::read_corpus(&corpus)?;
    let index = pipeline::build_index(&docs, &ctx.pool()?);
    write_text(&a.out, &formats::format_index(&index))?;
    let _ = writeln!(report, "indexed {} documents, {} distinct words", docs.len(), index.len());
    Ok(())
}

fn load_oracle(ctx: &Context, lexicon: &Path, rules: Option<&Path>) -> Result<AnalyzabilityOracle> {
    let words = formats::load_lexicon(lexicon)?;
    let rules = match rules {
        Some(p) => formats::load_suffix_rules(p)?,
        None => gecsynth_core::morphology::parse_suffix_rules(DEFAULT_SUFFIX_RULES)
            .map_err(|e| Error::Data(e.to_string()))?,
    };
    Ok(AnalyzabilityOracle::new(words, rules).with_max_depth(ctx.config.expansion.max_suffix_depth))
}

fn splitter(path: Option<&Path>) -> Result<SentenceSplitter> {
    Ok(match path {
        Some(p) => SentenceSplitter::new(formats::read_abbreviations(p)?),
        None => SentenceSplitter::default(),
    })
}

fn cmd_expand(ctx: &Context, a: ExpandArgs, report: &mut String) -> Result<()> {
    let paths = &ctx.config.paths;
    let corpus = pick(a.corpus, &paths.corpus, "corpus")?;
    let seed = pick(a.seed, &paths.seed_dictionary, "seed")?;
    let lexicon = pick(a.lexicon, &paths.lexicon, "lexicon")?;
    let out_dir = pick(a.out_dir, &paths.output_dir, "out-dir")?;
    let index_path = a.index.or_else(|| paths.index.clone());
    let rules = a.suffix_rules.or_else(|| paths.suffix_rules.clone());
    let abbreviations = a.abbreviations.or_else(|| paths.abbreviations.clone());
    let max_iterations = a.max_iterations.unwrap_or(ctx.config.expansion.max_iterations);
    let cap = a.deasciify_cap.unwrap_or(ctx.config.expansion.deasciify_cap);
    if max_iterations == 0 || cap == 0 {
        return Err(Error::Usage("--max-iterations and --deasciify-cap must be positive".into()));
    }
    let mut inputs = vec![("corpus", corpus.as_path()), ("seed dictionary", seed.as_path()), ("lexicon", lexicon.as_path())];
    inputs.extend(index_path.as_deref().map(|p| ("index", p)));
    inputs.extend(rules.as_deref().map(|p| ("suffix rules", p)));
    inputs.extend(abbreviations.as_deref().map(|p| ("abbreviations", p)));
    require_existing(inputs)?;

    let pool = ctx.pool()?;
    let docs = formats::read_corpus(&corpus)?;
    let index = match &index_path {
        Some(p) => {
            let index = formats::read_index(p)?;
            if let Some((w, _)) = index.iter().find(|(_, ids)| ids.last().is_some_and(|&id| id >= docs.len())) {
                return Err(Error::Data(format!("{}: {w:?} points past the corpus end", p.display())));
            }
            index
        }
        None => pipeline::build_index(&docs, &pool),
    };
    let seed_load = formats::load_dictionary(&seed)?;
    let oracle = load_oracle(ctx, &lexicon, rules.as_deref())?;
    let config = CandidateConfig { deasciify_cap: cap, ..CandidateConfig::default() };
    let ectx = ExpansionContext { index: &index, corpus: &docs, oracle: &oracle, config: &config };
    let run = pipeline::expand(&seed_load.dictionary, ectx, max_iterations, &pool)
        .map_err(|e| Error::Data(format!("{}: {e}", seed.display())))?;

    let sentences = pipeline::sentences_of(&docs, &run.extracted_ids, &splitter(abbreviations.as_deref())?);
    formats::save_dictionary(&run.final_dictionary, &out_dir.join("dictionary.tsv"))?;
    write_text(&out_dir.join("report.tsv"), &formats::format_report(&run.reports))?;
    write_text(&out_dir.join("sentences.txt"), &format_lines(&sentences))?;

    report.push_str(&formats::format_report(&run.reports));
    if !seed_load.conflicts.is_empty() {
        let _ = writeln!(report, "seed conflicts ignored: {}", seed_load.conflicts.len());
    }
    if run.cap_skips > 0 {
        let _ = writeln!(report, "words skipped by the deasciifier cap: {}", run.cap_skips);
    }
    let _ = writeln!(
        report,
        "{} after {} iterations: {} entries, {} extracted documents, {} sentences",
        if run.converged { "converged" } else { "NOT converged" },
        run.reports.len(),
        run.final_dictionary.len(),
        run.extracted_ids.len(),
        sentences.len()
    );
    Ok(())
}

fn read_sentences(path: &Path) -> Result<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(gecsynth_core::text::normalize)
        .filter(|s| !s.is_empty())
        .collect())
}

fn cmd_insert(ctx: &Context, a: InsertArgs, report: &mut String) -> Result<()> {
    let dictionary = pick(a.dictionary, &ctx.config.paths.dictionary, "dictionary")?;
    let sentences = read_sentences(&a.sentences)?;
    let dict = formats::load_dictionary(&dictionary)?.dictionary;
    let pairs = pipeline::insert(&sentences, &dict, &ctx.pool()?);
    write_text(&a.out, &formats::format_parallel(pairs.iter().map(|p| (&p.source, &p.corrected))))?;
    if let Some(m2) = &a.m2 {
        let docs: Vec<_> = pairs.iter().map(document_from_pair).collect();
        write_text(m2, &format_m2(&docs))?;
    }
    let changed = pairs.iter().filter(|p| !p.edits.is_empty()).count();
    let edits: usize = pairs.iter().map(|p| p.edits.len()).sum();
    let _ = writeln!(report, "{} pairs, {changed} with substitutions, {edits} edits", pairs.len());
    Ok(())
}

fn cmd_annotate(ctx: &Context, a: AnnotateArgs, report: &mut String) -> Result<()> {
    let mut settings = ctx.config.annotate.clone();
    if let Some(v) = a.base_url {
        settings.base_url = v;
    }
    if let Some(v) = a.model {
        settings.model = v;
    }
    if let Some(v) = a.credential_env {
        settings.credential_env = v;
    }
    if let Some(v) = a.concurrency {
        settings.concurrency = v;
    }
    if let Some(v) = a.max_attempts {
        settings.max_attempts = v;
    }
    let endpoint = settings.endpoint();
    let credential = endpoint.credential()?;
    let template = match a.prompt_file.or(settings.prompt_file.clone()) {
        Some(p) => PromptTemplate::new(&read_text(&p)?)?,
        None => PromptTemplate::default(),
    };
    let with_suffix = |suffix: &str| {
        let mut s = a.out.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    let checkpoint = a.checkpoint.or(settings.checkpoint.clone()).unwrap_or_else(|| with_suffix(".journal"));
    let rejects = a.rejects.unwrap_or_else(|| with_suffix(".rejects"));
    let job = AnnotationJob {
        inputs: annotate::read_inputs(&a.input)?,
        template,
        endpoint: endpoint.clone(),
        checkpoint,
        concurrency: settings.concurrency,
    };
    let backend = HttpBackend::new(&endpoint.base_url, &endpoint.model, credential, endpoint.timeout);
    let outcome = annotate::annotate_batch(&job, &backend, &AtomicBool::new(false))?;
    annotate::write_export(&outcome.records, &a.out, &rejects)?;
    let ok = outcome.records.iter().filter(|r| r.status == annotate::Status::Ok).count();
    let _ = writeln!(
        report,
        "{} records ({ok} ok, {} rejected), {} requests this run",
        outcome.records.len(),
        outcome.records.len() - ok,
        outcome.requests
    );
    Ok(())
}

fn cmd_m2(ctx: &Context, a: M2Args, report: &mut String) -> Result<()> {
    let pairs = formats::read_parallel(&a.parallel)?;
    let docs = pipeline::annotate(&pairs, &ctx.pool()?);
    write_text(&a.out, &format_m2(&docs))?;
    let edits: usize = docs.iter().map(|d| d.edits.len()).sum();
    let _ = writeln!(report, "{} documents, {edits} edits", docs.len());
    Ok(())
}

fn checked_m2(path: &Path) -> Result<M2File> {
    let file = read_m2(path)?;
    if let Some(r) = file.rejected.first() {
        return Err(Error::Data(format!(
            "{}:{}: {} document(s) rejected, first: {}",
            path.display(),
            r.line,
            file.rejected.len(),
            r.error
        )));
    }
    Ok(file)
}

/// `TP FP FN Precision Recall F0.5` header and one row of values.
pub fn format_scores(s: &Scores) -> String {
    format!(
        "TP\tFP\tFN\tPrecision\tRecall\tF0.5\n{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\n",
        s.tp, s.fp, s.fn_, s.precision, s.recall, s.f_half
    )
}

fn cmd_score(ctx: &Context, a: ScoreArgs, report: &mut String) -> Result<()> {
    let mode: ScoreMode = match a.mode {
        Some(m) => m.parse().map_err(Error::Usage)?,
        None => ctx.config.score_mode()?,
    };
    let gold = checked_m2(&a.gold)?;
    let hyp = checked_m2(&a.hyp)?;
    let scores = score(&gold.documents, &hyp.documents, mode).map_err(|e| Error::Data(e.to_string()))?;
    report.push_str(&format_scores(&scores));
    Ok(())
}

fn cmd_tweets(a: TweetArgs, report: &mut String) -> Result<()> {
    let gold: Vec<String> = read_text(&a.gold)?.lines().map(String::from).collect();
    let hyp: Vec<String> = read_text(&a.hyp)?.lines().map(String::from).collect();
    if gold.len() != hyp.len() {
        return Err(Error::Data(format!("{} gold lines but {} hypothesis lines", gold.len(), hyp.len())));
    }
    let (g, h) = postprocess_tweets(&gold, &hyp);
    write_text(&a.out_gold, &format_lines(&g))?;
    write_text(&a.out_hyp, &format_lines(&h))?;
    let _ = writeln!(report, "{} sentence pairs", g.len());
    Ok(())
}

fn corpus_stats(docs: &[Document], stats: &mut Vec<(String, String)>) {
    let tokens: usize = docs.iter().map(|d| gecsynth_core::text::tokenize_words(&d.text).len()).sum();
    stats.push(("documents".into(), docs.len().to_string()));
    stats.push(("tokens".into(), tokens.to_string()));
}

fn dictionary_stats(dict: &SpellingDictionary, stats: &mut Vec<(String, String)>) {
    let mut by_provenance: BTreeMap<&str, usize> = BTreeMap::new();
    let mut by_iteration: BTreeMap<u32, usize> = BTreeMap::new();
    for e in dict.entries() {
        *by_provenance.entry(e.provenance.as_str()).or_default() += 1;
        *by_iteration.entry(e.iteration).or_default() += 1;
    }
    stats.push(("dictionary_entries".into(), dict.len().to_string()));
    let phrases = dict.entries().filter(|e| e.incorrect.len() > 1).count();
    stats.push(("phrase_keys".into(), phrases.to_string()));
    for (p, n) in by_provenance {
        stats.push((format!("provenance_{p}"), n.to_string()));
    }
    for (i, n) in by_iteration {
        stats.push((format!("iteration_{i}"), n.to_string()));
    }
}

fn cmd_stats(ctx: &Context, a: StatsArgs, report: &mut String) -> Result<()> {
    let corpus = a.corpus.or_else(|| ctx.config.paths.corpus.clone());
    let index = a.index.or_else(|| ctx.config.paths.index.clone());
    let dictionary = a.dictionary.or_else(|| ctx.config.paths.dictionary.clone());
    if corpus.is_none() && index.is_none() && dictionary.is_none() {
        return Err(Error::Usage("stats needs --corpus, --index or --dictionary".into()));
    }
    let mut stats: Vec<(String, String)> = Vec::new();
    if let Some(p) = corpus {
        corpus_stats(&formats::read_corpus(&p)?, &mut stats);
    }
    if let Some(p) = index {
        let index = formats::read_index(&p)?;
        let postings: usize = index.iter().map(|(_, ids)| ids.len()).sum();
        stats.push(("index_words".into(), index.len().to_string()));
        stats.push(("index_postings".into(), postings.to_string()));
    }
    if let Some(p) = dictionary {
        dictionary_stats(&formats::load_dictionary(&p)?.dictionary, &mut stats);
    }
    let width = stats.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &stats {
        let _ = writeln!(report, "{k:<width$}  {v:>10}");
    }
    if let Some(tsv) = &a.tsv {
        let mut text = String::from("metric\tvalue\n");
        text.push_str(&formats::format_parallel(stats.iter().map(|(k, v)| (k, v))));
        write_text(tsv, &text)?;
    }
    Ok(())
}
