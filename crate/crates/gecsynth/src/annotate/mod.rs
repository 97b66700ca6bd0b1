//! Batch correction of sentences through a chat-completion endpoint, with a
//! resumable checkpoint journal.

mod http;
mod journal;
pub mod stub;

pub use http::HttpBackend;
pub use journal::{read_journal, JournalEntry, JournalWriter};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Mutex};
use std::thread;
use std::time::Duration;

use gecsynth_core::text::normalize;

use crate::error::{Error, Result};
use crate::formats::{format_parallel, read_text, write_text};

pub const SENTENCE_SLOT: &str = "{sentence}";

pub const DEFAULT_PROMPT: &str = "Fix the spelling and grammar errors in the Turkish sentence below and change nothing else. \
Leave hashtags, @mentions and links exactly as written, and keep the capitalization of proper nouns. \
Answer with the corrected sentence alone.\n\n{sentence}";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate(String);

impl PromptTemplate {
    pub fn new(template: &str) -> Result<Self> {
        match template.matches(SENTENCE_SLOT).count() {
            1 => Ok(Self(template.to_string())),
            n => Err(Error::Config(format!("prompt template must contain {SENTENCE_SLOT} exactly once, found {n}"))),
        }
    }

    pub fn render(&self, sentence: &str) -> String {
        self.0.replace(SENTENCE_SLOT, sentence)
    }
}

impl Default for PromptTemplate {
    fn default() -> Self {
        Self(DEFAULT_PROMPT.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryPolicy {
    /// Total tries per sentence, including the first.
    pub max_attempts: u32,
    pub initial_backoff: Duration,
    pub max_backoff: Duration,
    pub multiplier: f64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_attempts: 5,
            initial_backoff: Duration::from_millis(500),
            max_backoff: Duration::from_secs(30),
            multiplier: 2.0,
        }
    }
}

impl RetryPolicy {
    /// Wait before try `attempt + 1`, after `attempt` failures.
    pub fn backoff(&self, attempt: u32) -> Duration {
        let factor = self.multiplier.powi(attempt.saturating_sub(1) as i32);
        self.initial_backoff.mul_f64(factor).min(self.max_backoff)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndpointConfig {
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable holding the API key.
    pub credential_env: String,
    pub timeout: Duration,
    pub retry: RetryPolicy,
}

impl EndpointConfig {
    /// Reads the credential; a missing or empty variable is fatal.
    pub fn credential(&self) -> Result<String> {
        match std::env::var(&self.credential_env) {
            Ok(v) if !v.is_empty() => Ok(v),
            _ => Err(Error::MissingCredential(self.credential_env.clone())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    Refused,
    TransportError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refused => "refused",
            Status::TransportError => "transport_error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ok" => Ok(Status::Ok),
            "refused" => Ok(Status::Refused),
            "transport_error" => Ok(Status::TransportError),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub id: String,
    pub source: String,
    /// Empty unless `status` is `Ok`.
    pub corrected: String,
    pub status: Status,
    /// Requests made in this run; 0 for records replayed from the journal.
    pub attempts: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationJob {
    /// (id, sentence) in input order.
    pub inputs: Vec<(String, String)>,
    pub template: PromptTemplate,
    pub endpoint: EndpointConfig,
    pub checkpoint: PathBuf,
    /// Maximum requests in flight.
    pub concurrency: usize,
}

impl AnnotationJob {
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        if let Some((id, _)) = self.inputs.iter().find(|(id, _)| !seen.insert(id.as_str())) {
            return Err(Error::Data(format!("duplicate input id {id:?}")));
        }
        if let Some((id, _)) = self.inputs.iter().find(|(id, _)| id.contains(['\t', '\n'])) {
            return Err(Error::Data(format!("input id {id:?} contains a tab or newline")));
        }
        if self.concurrency == 0 {
            return Err(Error::Config("concurrency must be at least 1".into()));
        }
        if self.endpoint.retry.max_attempts == 0 {
            return Err(Error::Config("max_attempts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Text(String),
    Refused,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendError {
    /// Worth retrying: timeouts, connection failures, 429 and 5xx.
    Transient(String),
    Permanent(String),
}

pub trait CompletionBackend: Sync {
    fn complete(&self, prompt: &str) -> Result<Completion, BackendError>;
}

/// Result of [`annotate_batch`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchOutcome {
    /// Records in input order; ids left unfinished by a cancellation are absent.
    pub records: Vec<AnnotationRecord>,
    /// Requests issued in this run.
    pub requests: usize,
    pub cancelled: bool,
}

fn run_one(backend: &dyn CompletionBackend, prompt: &str, retry: &RetryPolicy, cancel: &AtomicBool) -> (Status, String, u32) {
    let mut attempt = 0;
    loop {
        attempt += 1;
        match backend.complete(prompt) {
            Ok(Completion::Text(text)) => {
                let text = normalize(&text);
                return if text.is_empty() { (Status::Refused, text, attempt) } else { (Status::Ok, text, attempt) };
            }
            Ok(Completion::Refused) => return (Status::Refused, String::new(), attempt),
            Err(BackendError::Permanent(e)) => {
                log::warn!("request failed: {e}");
                return (Status::TransportError, String::new(), attempt);
            }
            Err(BackendError::Transient(e)) => {
                if attempt >= retry.max_attempts || cancel.load(Ordering::SeqCst) {
                    log::warn!("giving up after {attempt} attempts: {e}");
                    return (Status::TransportError, String::new(), attempt);
                }
                log::debug!("attempt {attempt} failed: {e}");
                thread::sleep(retry.backoff(attempt));
            }
        }
    }
}

/// Annotates every input id not already in the checkpoint journal. Each
/// finished record is appended to the journal before the next is written, so
/// an interrupted run resumes without repeating or losing work. Setting
/// `cancel` stops workers from taking new sentences.
pub fn annotate_batch(job: &AnnotationJob, backend: &dyn CompletionBackend, cancel: &AtomicBool) -> Result<BatchOutcome> {
    job.validate()?;
    let (done, intact) = read_journal(&job.checkpoint)?;
    let mut journal = JournalWriter::open(&job.checkpoint, intact)?;
    let queue: Mutex<VecDeque<&(String, String)>> =
        Mutex::new(job.inputs.iter().filter(|(id, _)| !done.contains_key(id)).collect());
    let mut fresh: HashMap<String, (Status, String, u32)> = HashMap::new();
    let mut write_error = None;

    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for _ in 0..job.concurrency {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                if cancel.load(Ordering::SeqCst) {
                    break;
                }
                let Some((id, sentence)) = queue.lock().unwrap().pop_front() else { break };
                let result = run_one(backend, &job.template.render(sentence), &job.endpoint.retry, cancel);
                if tx.send((id.clone(), result)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for (id, (status, corrected, attempts)) in rx {
            if write_error.is_none() {
                if let Err(e) = journal.append(&id, status, &corrected) {
                    write_error = Some(e);
                    cancel.store(true, Ordering::SeqCst);
                }
            }
            fresh.insert(id, (status, corrected, attempts));
        }
    });
    if let Some(e) = write_error {
        return Err(e);
    }

    let requests = fresh.values().map(|(_, _, a)| *a as usize).sum();
    let mut records = Vec::new();
    for (id, source) in &job.inputs {
        let record = if let Some(e) = done.get(id) {
            AnnotationRecord { id: id.clone(), source: source.clone(), corrected: e.corrected.clone(), status: e.status, attempts: 0 }
        } else if let Some((status, corrected, attempts)) = fresh.remove(id) {
            AnnotationRecord { id: id.clone(), source: source.clone(), corrected, status, attempts }
        } else {
            continue;
        };
        records.push(record);
    }
    let cancelled = records.len() < job.inputs.len();
    Ok(BatchOutcome { records, requests, cancelled })
}

/// Input sentences with ids: `id<TAB>sentence` when every line has a tab,
/// otherwise one sentence per line numbered from 1. Blank lines are skipped.
pub fn read_inputs(path: &Path) -> Result<Vec<(String, String)>> {
    let text = read_text(path)?;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    let tabbed = !lines.is_empty() && lines.iter().all(|(_, l)| l.contains('\t'));
    Ok(lines
        .into_iter()
        .map(|(i, l)| match l.split_once('\t').filter(|_| tabbed) {
            Some((id, s)) => (id.to_string(), normalize(s)),
            None => ((i + 1).to_string(), normalize(l)),
        })
        .collect())
}

/// `ok` records as `source<TAB>corrected` in record order, and the ids of
/// the rest as `id<TAB>status`.
pub fn export_pairs(records: &[AnnotationRecord]) -> (String, String) {
    let ok = records.iter().filter(|r| r.status == Status::Ok).map(|r| (r.source.as_str(), r.corrected.as_str()));
    let rejects = records
        .iter()
        .filter(|r| r.status != Status::Ok)
        .map(|r| (r.id.as_str(), r.status.as_str()));
    (format_parallel(ok), format_parallel(rejects))
}

pub fn write_export(records: &[AnnotationRecord], pairs: &Path, rejects: &Path) -> Result<()> {
    let (p, r) = export_pairs(records);
    write_text(pairs, &p)?;
    write_text(rejects, &r)
}
