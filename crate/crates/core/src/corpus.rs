//! Corpus documents and the word → document-id index.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::text::{fold, has_letter, normalize, tokenize_words};

/// Ordinal position of a document in its corpus.
pub type DocId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: DocId,
    pub text: String,
}

impl Document {
    /// Normalizes `raw`; `None` when nothing remains.
    pub fn new(id: DocId, raw: &str) -> Option<Self> {
        let text = normalize(raw);
        (!text.is_empty()).then_some(Self { id, text })
    }
}

/// Builds a corpus from raw text units, skipping units that are empty after
/// normalization. Ids are assigned consecutively over the kept units.
pub fn corpus_from_texts<I, S>(texts: I) -> Vec<Document>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut docs = Vec::new();
    for raw in texts {
        if let Some(doc) = Document::new(docs.len(), raw.as_ref()) {
            docs.push(doc);
        }
    }
    docs
}

/// Folded, letter-bearing tokens of `text`; these are the index keys.
pub fn index_keys(text: &str) -> impl Iterator<Item = String> + '_ {
    tokenize_words(text).into_iter().filter(|t| has_letter(t)).map(fold)
}

/// Map from folded word to the ascending ids of documents containing it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordIndex {
    entries: BTreeMap<String, Vec<DocId>>,
}

impl WordIndex {
    pub fn build<'a, I>(docs: I) -> Self
    where
        I: IntoIterator<Item = &'a Document>,
    {
        let mut entries: BTreeMap<String, Vec<DocId>> = BTreeMap::new();
        let mut sorted = true;
        for doc in docs {
            for key in index_keys(&doc.text) {
                let ids = entries.entry(key).or_default();
                match ids.last() {
                    Some(&last) if last == doc.id => {}
                    Some(&last) => {
                        sorted &= last < doc.id;
                        ids.push(doc.id);
                    }
                    None => ids.push(doc.id),
                }
            }
        }
        let mut index = Self { entries };
        if !sorted {
            index.canonicalize();
        }
        index
    }

    /// Combines per-shard indexes. The result equals building over the
    /// concatenated shards.
    pub fn merge<I>(shards: I) -> Self
    where
        I: IntoIterator<Item = WordIndex>,
    {
        let mut entries: BTreeMap<String, Vec<DocId>> = BTreeMap::new();
        for shard in shards {
            for (word, ids) in shard.entries {
                entries.entry(word).or_default().extend(ids);
            }
        }
        let mut index = Self { entries };
        index.canonicalize();
        index
    }

    /// Builds from already sorted `(word, ids)` rows, e.g. a persisted index.
    /// Returns the offending word if a list is empty or not strictly increasing.
    pub fn from_entries<I>(rows: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (String, Vec<DocId>)>,
    {
        let mut entries = BTreeMap::new();
        for (word, ids) in rows {
            if ids.is_empty() || ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(word);
            }
            entries.insert(word, ids);
        }
        Ok(Self { entries })
    }

    fn canonicalize(&mut self) {
        for ids in self.entries.values_mut() {
            ids.sort_unstable();
            ids.dedup();
        }
    }

    /// Postings of an already folded word.
    pub fn postings(&self, word: &str) -> &[DocId] {
        self.entries.get(word).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending word order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[DocId])> {
        self.entries.iter().map(|(w, ids)| (w.as_str(), ids.as_slice()))
    }
}
