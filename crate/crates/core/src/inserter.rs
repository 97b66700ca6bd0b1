//! Clean insertions: dictionary-driven substitution that turns organic text
//! into (source, corrected) pairs.

use alloc::string::String;
use alloc::vec::Vec;

use crate::lexicon::SpellingDictionary;
use crate::text::{is_word_char, token_spans};

/// Replacement of source tokens `start..end` by `replacement`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TokenEdit {
    pub start: usize,
    pub end: usize,
    pub replacement: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelPair {
    pub source: String,
    pub corrected: String,
    /// Sorted, non-overlapping.
    pub edits: Vec<TokenEdit>,
}

/// Applies sorted, non-overlapping edits to a token sequence.
pub fn apply_edits<S: AsRef<str>>(tokens: &[S], edits: &[TokenEdit]) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut pos = 0;
    for edit in edits {
        out.extend(tokens[pos..edit.start].iter().map(|t| String::from(t.as_ref())));
        out.extend(edit.replacement.iter().cloned());
        pos = edit.end;
    }
    out.extend(tokens[pos..].iter().map(|t| String::from(t.as_ref())));
    out
}

fn glues(c: char) -> bool {
    is_word_char(c) || c == '\'' || c == '\u{2019}'
}

/// Appends `piece`, separating it from the text before with a space when the
/// two would otherwise merge into one token.
fn push_separated(out: &mut String, piece: &str) {
    let last = out.chars().next_back();
    let first = piece.chars().next();
    if let (Some(a), Some(b)) = (last, first) {
        if glues(a) && glues(b) {
            out.push(' ');
        }
    }
    out.push_str(piece);
}

/// One left-to-right pass of longest-match substitution. Inserted text is
/// never scanned again. Untouched regions keep their original spacing.
pub fn clean_insert(sentence: &str, dict: &SpellingDictionary) -> ParallelPair {
    let spans = token_spans(sentence);
    let tokens: Vec<&str> = spans.iter().map(|&(_, t)| t).collect();
    let mut edits = Vec::new();
    let mut corrected = String::with_capacity(sentence.len() + 8);
    let mut copied_to = 0;
    let mut i = 0;
    while i < tokens.len() {
        let Some(hit) = dict.lookup_longest(&tokens, i) else {
            i += 1;
            continue;
        };
        let replacement = hit.replacement();
        let (byte_start, _) = spans[i];
        let (last_start, last_tok) = spans[i + hit.len - 1];
        corrected.push_str(&sentence[copied_to..byte_start]);
        push_separated(&mut corrected, &replacement.join(" "));
        copied_to = last_start + last_tok.len();
        if let Some(next) = sentence[copied_to..].chars().next() {
            if corrected.chars().next_back().is_some_and(glues) && glues(next) {
                corrected.push(' ');
            }
        }
        edits.push(TokenEdit { start: i, end: i + hit.len, replacement });
        i += hit.len;
    }
    corrected.push_str(&sentence[copied_to..]);
    ParallelPair { source: sentence.into(), corrected, edits }
}

/// One pair per sentence, in order; sentences without hits are kept as
/// identity pairs.
pub fn build_parallel_corpus<I, S>(sentences: I, dict: &SpellingDictionary) -> Vec<ParallelPair>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    sentences.into_iter().map(|s| clean_insert(s.as_ref(), dict)).collect()
}
