//! Parallel drivers over the core stages. Every driver returns exactly what
//! its sequential counterpart returns, whatever the worker count.

use std::collections::BTreeSet;

use gecsynth_core::candidates::resolve;
use gecsynth_core::corpus::{DocId, Document, WordIndex};
use gecsynth_core::expansion::{expand_to_fixpoint_with, ExpansionError};
use gecsynth_core::gecscore::annotate_pair;
use gecsynth_core::inserter::clean_insert;
use gecsynth_core::text::{dedup, SentenceSplitter};
use gecsynth_core::{Analyzer, ExpansionContext, ExpansionRun, M2Document, ParallelPair, SpellingDictionary};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Pool with `workers` threads; 0 means one per available core.
pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))
}

pub fn build_index(docs: &[Document], pool: &rayon::ThreadPool) -> WordIndex {
    let shard = docs.len().div_ceil(pool.current_num_threads().max(1) * 4).max(256);
    pool.install(|| {
        let shards: Vec<WordIndex> = docs.par_chunks(shard).map(WordIndex::build).collect();
        WordIndex::merge(shards)
    })
}

/// Fixpoint expansion with word resolution spread over the pool.
pub fn expand<A: Analyzer + Sync>(
    seed: &SpellingDictionary,
    ctx: ExpansionContext<'_, A>,
    max_iterations: usize,
    pool: &rayon::ThreadPool,
) -> Result<ExpansionRun, ExpansionError> {
    expand_to_fixpoint_with(seed, ctx, max_iterations, |words| {
        pool.install(|| words.par_iter().map(|w| resolve(w, ctx.oracle, ctx.config)).collect())
    })
}

pub fn insert<S: AsRef<str> + Sync>(sentences: &[S], dict: &SpellingDictionary, pool: &rayon::ThreadPool) -> Vec<ParallelPair> {
    pool.install(|| sentences.par_iter().map(|s| clean_insert(s.as_ref(), dict)).collect())
}

pub fn annotate<S: AsRef<str> + Sync, T: AsRef<str> + Sync>(pairs: &[(S, T)], pool: &rayon::ThreadPool) -> Vec<M2Document> {
    pool.install(|| pairs.par_iter().map(|(s, t)| annotate_pair(s.as_ref(), t.as_ref())).collect())
}

/// Sentences of the given documents, split and deduplicated, in id order.
pub fn sentences_of(docs: &[Document], ids: &BTreeSet<DocId>, splitter: &SentenceSplitter) -> Vec<String> {
    let split = ids
        .iter()
        .filter_map(|&id| docs.get(id))
        .flat_map(|d| splitter.split(&d.text));
    dedup(split)
}
