//! Iterative spelling-dictionary expansion over an indexed corpus.
//!
//! One iteration: find documents that contain a dictionary key and were not
//! extracted before, harvest their distinct broken words, resolve each with
//! the candidate generators, and merge the unique corrections. The run stops
//! when an iteration adds nothing.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::candidates::{resolve, CandidateConfig, Resolution};
use crate::corpus::{index_keys, DocId, Document, WordIndex};
use crate::lexicon::{SpellingDictionary, SpellingEntry};
use crate::morphology::Analyzer;
use crate::text::fold;

/// Default iteration cap for [`expand_to_fixpoint`].
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

/// One row of the expansion report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationReport {
    /// 1-based.
    pub iteration: usize,
    /// Entries at the start of the iteration.
    pub dict_size: usize,
    /// Newly extracted documents.
    pub extracted_texts: usize,
    /// Unique non-analyzable words of those documents that are not keys yet.
    pub distinct_words: usize,
    pub dict_delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRun {
    pub reports: Vec<IterationReport>,
    pub final_dictionary: SpellingDictionary,
    /// Every document extracted over the run.
    pub extracted_ids: BTreeSet<DocId>,
    /// False when the iteration cap stopped a still-growing run.
    pub converged: bool,
    /// Words skipped because of the deasciifier's combinatorial cap.
    pub cap_skips: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("nothing to expand: the spelling dictionary is empty")]
    EmptyDictionary,
    #[error("max_iterations must be at least 1")]
    ZeroIterations,
}

/// Everything an iteration needs besides the dictionary.
pub struct ExpansionContext<'a, A> {
    pub index: &'a WordIndex,
    /// Documents addressed by id; `corpus[i].id == i`.
    pub corpus: &'a [Document],
    pub oracle: &'a A,
    pub config: &'a CandidateConfig,
}

// Manual impls: `A` itself need not be Clone.
impl<A> Clone for ExpansionContext<'_, A> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<A> Copy for ExpansionContext<'_, A> {}

/// Result of one [`expand_once`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationOutcome {
    pub dictionary: SpellingDictionary,
    pub report: IterationReport,
    pub extracted: BTreeSet<DocId>,
    pub cap_skips: usize,
}

fn doc_contains_phrase(doc: &Document, folded_key: &[String]) -> bool {
    let tokens: Vec<String> = crate::text::tokenize_words(&doc.text).into_iter().map(fold).collect();
    tokens.windows(folded_key.len()).any(|w| w == folded_key)
}

/// Ids of documents containing at least one dictionary key, matched
/// case-insensitively. Phrase keys are verified by scanning the postings of
/// their first token.
pub fn extract_documents<A>(dict: &SpellingDictionary, ctx: ExpansionContext<'_, A>) -> BTreeSet<DocId> {
    let mut ids = BTreeSet::new();
    for entry in dict.entries() {
        let key: Vec<String> = entry.incorrect.iter().map(|t| fold(t)).collect();
        let postings = ctx.index.postings(&key[0]);
        if key.len() == 1 {
            ids.extend(postings.iter().copied());
        } else {
            ids.extend(
                postings
                    .iter()
                    .copied()
                    .filter(|&id| ctx.corpus.get(id).is_some_and(|d| doc_contains_phrase(d, &key))),
            );
        }
    }
    ids
}

/// Sorted unique folded words of `docs` that the oracle rejects and the
/// dictionary does not already hold.
pub fn harvest_words<A: Analyzer>(
    dict: &SpellingDictionary,
    docs: impl IntoIterator<Item = DocId>,
    ctx: ExpansionContext<'_, A>,
) -> Vec<String> {
    let mut words = BTreeSet::new();
    for id in docs {
        if let Some(doc) = ctx.corpus.get(id) {
            words.extend(index_keys(&doc.text));
        }
    }
    words
        .into_iter()
        .filter(|w| !dict.contains_key(w) && !ctx.oracle.is_analyzable(w))
        .collect()
}

/// One iteration, resolving words with `resolve_all`, which must return one
/// [`Resolution`] per input word in input order. This is the hook for
/// parallel resolution.
pub fn expand_once_with<A, F>(
    dict: &SpellingDictionary,
    ctx: ExpansionContext<'_, A>,
    already_extracted: &BTreeSet<DocId>,
    iteration: usize,
    resolve_all: F,
) -> Result<IterationOutcome, ExpansionError>
where
    A: Analyzer,
    F: FnOnce(&[String]) -> Vec<Resolution>,
{
    if dict.is_empty() {
        return Err(ExpansionError::EmptyDictionary);
    }
    let extracted: BTreeSet<DocId> = extract_documents(dict, ctx)
        .difference(already_extracted)
        .copied()
        .collect();
    let words = harvest_words(dict, extracted.iter().copied(), ctx);
    let resolutions = resolve_all(&words);
    debug_assert_eq!(resolutions.len(), words.len());
    let stamp = u32::try_from(iteration).unwrap_or(u32::MAX);
    let mut cap_skips = 0;
    let mut pairs: Vec<SpellingEntry> = Vec::new();
    for (word, res) in words.iter().zip(resolutions) {
        match res {
            Resolution::Unique { correct, generator } => pairs.push(SpellingEntry {
                incorrect: alloc::vec![word.clone()],
                correct: alloc::vec![correct],
                provenance: generator.provenance(),
                iteration: stamp,
            }),
            Resolution::CapExceeded(_) => cap_skips += 1,
            _ => {}
        }
    }
    let (dictionary, merged) = dict.merge(pairs);
    let report = IterationReport {
        iteration,
        dict_size: dict.len(),
        extracted_texts: extracted.len(),
        distinct_words: words.len(),
        dict_delta: merged.added,
    };
    Ok(IterationOutcome { dictionary, report, extracted, cap_skips })
}

/// One sequential iteration.
pub fn expand_once<A: Analyzer>(
    dict: &SpellingDictionary,
    ctx: ExpansionContext<'_, A>,
    already_extracted: &BTreeSet<DocId>,
    iteration: usize,
) -> Result<IterationOutcome, ExpansionError> {
    expand_once_with(dict, ctx, already_extracted, iteration, |words| {
        words.iter().map(|w| resolve(w, ctx.oracle, ctx.config)).collect()
    })
}

/// Iterates until an iteration adds no entry or `max_iterations` is reached.
pub fn expand_to_fixpoint_with<A, F>(
    seed: &SpellingDictionary,
    ctx: ExpansionContext<'_, A>,
    max_iterations: usize,
    mut resolve_all: F,
) -> Result<ExpansionRun, ExpansionError>
where
    A: Analyzer,
    F: FnMut(&[String]) -> Vec<Resolution>,
{
    if max_iterations == 0 {
        return Err(ExpansionError::ZeroIterations);
    }
    let mut dict = seed.clone();
    let mut extracted_ids = BTreeSet::new();
    let mut reports = Vec::new();
    let mut cap_skips = 0;
    let mut converged = false;
    for iteration in 1..=max_iterations {
        let outcome = expand_once_with(&dict, ctx, &extracted_ids, iteration, &mut resolve_all)?;
        extracted_ids.extend(outcome.extracted);
        cap_skips += outcome.cap_skips;
        reports.push(outcome.report);
        dict = outcome.dictionary;
        if outcome.report.dict_delta == 0 {
            converged = true;
            break;
        }
    }
    Ok(ExpansionRun { reports, final_dictionary: dict, extracted_ids, converged, cap_skips })
}

pub fn expand_to_fixpoint<A: Analyzer>(
    seed: &SpellingDictionary,
    ctx: ExpansionContext<'_, A>,
    max_iterations: usize,
) -> Result<ExpansionRun, ExpansionError> {
    expand_to_fixpoint_with(seed, ctx, max_iterations, |words| {
        words.iter().map(|w| resolve(w, ctx.oracle, ctx.config)).collect()
    })
}
