//! Evaluation of correction systems over M2-style edit annotations.
//!
//! Parallel sentences are tokenized, aligned with a weighted token-level
//! Damerau alignment, and non-match runs become edits. Edits carry a coarse
//! error type and are compared span by span (or token by token) to produce
//! precision, recall and F0.5.

mod align;
mod classify;
mod score;
mod tweets;

pub use align::{align, alignment_cost, AlignOp};
pub use classify::{classify, char_distance, ErrorType};
pub use score::{counts_per_document, document_counts, f_beta, score, Counts, ScoreError, ScoreMode, Scores};
pub use tweets::{postprocess_tweets, strip_punctuation};

use alloc::string::String;
use alloc::vec::Vec;

use crate::inserter::TokenEdit;
use crate::text::tokenize_words;

/// Error type written on noop lines.
pub const NOOP_TYPE: &str = "noop";

/// A token-span edit as it appears on an M2 `A` line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EditSpan {
    pub start: usize,
    pub end: usize,
    pub replacement: Vec<String>,
    /// Free-form so full taxonomy codes pass through unchanged.
    pub error_type: String,
    pub annotator: u32,
}

impl EditSpan {
    pub fn token_edit(&self) -> TokenEdit {
        TokenEdit { start: self.start, end: self.end, replacement: self.replacement.clone() }
    }

    fn overlaps(&self, other: &EditSpan) -> bool {
        match (self.start == self.end, other.start == other.end) {
            (true, true) => self.start == other.start,
            (true, false) => other.start < self.start && self.start < other.end,
            (false, true) => self.start < other.start && other.start < self.end,
            (false, false) => self.start < other.end && other.start < self.end,
        }
    }
}

/// One annotated sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct M2Document {
    pub source_tokens: Vec<String>,
    pub edits: Vec<EditSpan>,
    /// Annotators that explicitly marked the sentence as needing no change
    /// while other annotators have edits. A document with no edits at all is
    /// written with an annotator-0 noop line and needs no entry here.
    pub noop_annotators: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("edit {start}..{end} is outside the {len} source tokens")]
    OutOfRange { start: usize, end: usize, len: usize },
    #[error("edit {start}..{end} has start after end")]
    Reversed { start: usize, end: usize },
    #[error("edit at {start}..{end} is an empty no-op without the noop type")]
    EmptyEdit { start: usize, end: usize },
    #[error("edits are not sorted by (start, end)")]
    Unsorted,
    #[error("edits {0}..{1} overlap for one annotator")]
    Overlap(usize, usize),
}

impl M2Document {
    pub fn new(source_tokens: Vec<String>) -> Self {
        Self { source_tokens, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        let len = self.source_tokens.len();
        for e in &self.edits {
            if e.start > e.end {
                return Err(DocumentError::Reversed { start: e.start, end: e.end });
            }
            if e.end > len {
                return Err(DocumentError::OutOfRange { start: e.start, end: e.end, len });
            }
            if e.start == e.end && e.replacement.is_empty() {
                return Err(DocumentError::EmptyEdit { start: e.start, end: e.end });
            }
        }
        if self.edits.windows(2).any(|w| (w[0].start, w[0].end) > (w[1].start, w[1].end)) {
            return Err(DocumentError::Unsorted);
        }
        for (i, a) in self.edits.iter().enumerate() {
            for b in &self.edits[i + 1..] {
                if a.annotator == b.annotator && a.overlaps(b) {
                    return Err(DocumentError::Overlap(b.start, b.end));
                }
            }
        }
        Ok(())
    }

    /// Edits of one annotator, in order.
    pub fn edits_by(&self, annotator: u32) -> impl Iterator<Item = &EditSpan> {
        self.edits.iter().filter(move |e| e.annotator == annotator)
    }
}

/// Merges maximal runs of non-match operations into edits. A run's
/// replacement is the target tokens it consumed.
pub fn extract_edits<S: AsRef<str>>(ops: &[AlignOp], src: &[S], tgt: &[S]) -> Vec<EditSpan> {
    let mut edits = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut run: Option<(usize, usize)> = None;
    let close = |run: &mut Option<(usize, usize)>, i: usize, j: usize, edits: &mut Vec<EditSpan>| {
        if let Some((si, sj)) = run.take() {
            let mut edit = EditSpan {
                start: si,
                end: i,
                replacement: tgt[sj..j].iter().map(|t| String::from(t.as_ref())).collect(),
                error_type: String::new(),
                annotator: 0,
            };
            edit.error_type = String::from(classify(&edit, src).as_str());
            edits.push(edit);
        }
    };
    for &op in ops {
        if op == AlignOp::Match {
            close(&mut run, i, j, &mut edits);
        } else if run.is_none() {
            run = Some((i, j));
        }
        let (di, dj) = op.consumes();
        i += di;
        j += dj;
    }
    close(&mut run, i, j, &mut edits);
    edits
}

/// Tokenizes a (source, target) sentence pair and annotates it.
pub fn annotate_pair(source: &str, target: &str) -> M2Document {
    let src = tokenize_words(source);
    let tgt = tokenize_words(target);
    let ops = align(&src, &tgt);
    let edits = extract_edits(&ops, &src, &tgt);
    M2Document {
        source_tokens: src.into_iter().map(String::from).collect(),
        edits,
        noop_annotators: Vec::new(),
    }
}
