//! Pipeline configuration file (TOML). Relative paths are resolved against
//! the directory holding the file; command-line flags take precedence.

use std::path::{Path, PathBuf};
use std::time::Duration;

use gecsynth_core::candidates::DEFAULT_DEASCIIFY_CAP;
use gecsynth_core::expansion::DEFAULT_MAX_ITERATIONS;
use gecsynth_core::morphology::DEFAULT_MAX_DEPTH;
use gecsynth_core::ScoreMode;
use serde::Deserialize;

use crate::annotate::{EndpointConfig, RetryPolicy};
use crate::error::{Error, Result};
use crate::formats::read_text;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Paths {
    pub corpus: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub seed_dictionary: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub suffix_rules: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Expansion {
    pub max_iterations: usize,
    pub deasciify_cap: usize,
    pub max_suffix_depth: usize,
}

impl Default for Expansion {
    fn default() -> Self {
        Self {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            deasciify_cap: DEFAULT_DEASCIIFY_CAP,
            max_suffix_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Score {
    pub mode: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Annotate {
    pub base_url: String,
    pub model: String,
    pub credential_env: String,
    pub timeout_secs: u64,
    pub max_attempts: u32,
    pub initial_backoff_ms: u64,
    pub max_backoff_ms: u64,
    pub backoff_multiplier: f64,
    pub concurrency: usize,
    pub prompt_file: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
}

impl Default for Annotate {
    fn default() -> Self {
        let retry = RetryPolicy::default();
        Self {
            base_url: "https://api.openai.com/v1".into(),
            model: "gpt-3.5-turbo".into(),
            credential_env: "OPENAI_API_KEY".into(),
            timeout_secs: 60,
            max_attempts: retry.max_attempts,
            initial_backoff_ms: retry.initial_backoff.as_millis() as u64,
            max_backoff_ms: retry.max_backoff.as_millis() as u64,
            backoff_multiplier: retry.multiplier,
            concurrency: 4,
            prompt_file: None,
            checkpoint: None,
        }
    }
}

impl Annotate {
    pub fn endpoint(&self) -> EndpointConfig {
        EndpointConfig {
            base_url: self.base_url.clone(),
            model: self.model.clone(),
            credential_env: self.credential_env.clone(),
            timeout: Duration::from_secs(self.timeout_secs),
            retry: RetryPolicy {
                max_attempts: self.max_attempts,
                initial_backoff: Duration::from_millis(self.initial_backoff_ms),
                max_backoff: Duration::from_millis(self.max_backoff_ms),
                multiplier: self.backoff_multiplier,
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Run {
    /// 0 means one worker per core.
    pub workers: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub paths: Paths,
    pub expansion: Expansion,
    pub score: Score,
    pub annotate: Annotate,
    pub run: Run,
}

fn rebase(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(path) = p.as_mut() {
        if path.is_relative() {
            *path = base.join(&*path);
        }
    }
}

impl PipelineConfig {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let p = &mut cfg.paths;
        for field in [
            &mut p.corpus,
            &mut p.index,
            &mut p.seed_dictionary,
            &mut p.dictionary,
            &mut p.lexicon,
            &mut p.suffix_rules,
            &mut p.abbreviations,
            &mut p.output_dir,
        ] {
            rebase(base_dir, field);
        }
        rebase(base_dir, &mut cfg.annotate.prompt_file);
        rebase(base_dir, &mut cfg.annotate.checkpoint);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&read_text(path)?, base).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Caps and limits are positive and the scoring mode is known.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("expansion.max_iterations", self.expansion.max_iterations),
            ("expansion.deasciify_cap", self.expansion.deasciify_cap),
            ("annotate.concurrency", self.annotate.concurrency),
            ("annotate.max_attempts", self.annotate.max_attempts as usize),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{name} must be positive")));
        }
        if self.annotate.backoff_multiplier.is_nan() || self.annotate.backoff_multiplier < 1.0 {
            return Err(Error::Config("annotate.backoff_multiplier must be at least 1".into()));
        }
        self.score_mode()?;
        Ok(())
    }

    pub fn score_mode(&self) -> Result<ScoreMode> {
        self.score.mode.as_deref().map_or(Ok(ScoreMode::default()), |m| m.parse().map_err(Error::Config))
    }
}

/// Checks that each named input path exists.
pub fn require_existing<'a>(paths: impl IntoIterator<Item = (&'a str, &'a Path)>) -> Result<()> {
    for (name, path) in paths {
        if !path.exists() {
            return Err(Error::Config(format!("{name} {} does not exist", path.display())));
        }
    }
    Ok(())
}
