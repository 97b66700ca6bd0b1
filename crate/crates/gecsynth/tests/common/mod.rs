//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Duration;

use gecsynth::annotate::{
    AnnotationJob, BackendError, Completion, CompletionBackend, EndpointConfig, HttpBackend, PromptTemplate, RetryPolicy,
};

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli<S: AsRef<str>>(args: &[S]) -> CliRun {
    let mut argv = vec!["gecsynth".to_string()];
    argv.extend(args.iter().map(|a| a.as_ref().to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = gecsynth::cli::run(argv, &mut out, &mut err);
    CliRun { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn p(path: &Path) -> String {
    path.to_str().unwrap().to_string()
}

pub fn endpoint(base_url: &str, max_attempts: u32) -> EndpointConfig {
    EndpointConfig {
        base_url: base_url.into(),
        model: "stub".into(),
        credential_env: "UNUSED".into(),
        timeout: Duration::from_secs(10),
        retry: RetryPolicy {
            max_attempts,
            initial_backoff: Duration::from_millis(1),
            max_backoff: Duration::from_millis(5),
            multiplier: 2.0,
        },
    }
}

pub fn job(sentences: &[&str], base_url: &str, checkpoint: &Path, concurrency: usize, max_attempts: u32) -> AnnotationJob {
    AnnotationJob {
        inputs: sentences.iter().enumerate().map(|(i, s)| ((i + 1).to_string(), s.to_string())).collect(),
        template: PromptTemplate::default(),
        endpoint: endpoint(base_url, max_attempts),
        checkpoint: checkpoint.to_path_buf(),
        concurrency,
    }
}

pub fn http(base_url: &str) -> HttpBackend {
    HttpBackend::new(base_url, "stub", "test-key".into(), Duration::from_secs(10))
}

/// Raises `cancel` once `after` completions have returned, like a process
/// killed part way through a batch.
pub struct CancelAfter<'a> {
    pub inner: HttpBackend,
    pub after: usize,
    pub cancel: &'a AtomicBool,
    pub done: AtomicUsize,
}

impl CompletionBackend for CancelAfter<'_> {
    fn complete(&self, prompt: &str) -> Result<Completion, BackendError> {
        let r = self.inner.complete(prompt);
        if self.done.fetch_add(1, Ordering::SeqCst) + 1 >= self.after {
            self.cancel.store(true, Ordering::SeqCst);
        }
        r
    }
}
