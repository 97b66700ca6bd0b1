//! Spelling dictionary of incorrect → correct word and phrase pairs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::text::{capitalize_first, fold, starts_uppercase, tokenize_words};

/// Longest incorrect side, in tokens, that the dictionary accepts.
pub const MAX_KEY_TOKENS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Manual,
    Deasciifier,
    SpellChecker,
    Llm,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Manual => "manual",
            Provenance::Deasciifier => "deasciifier",
            Provenance::SpellChecker => "spellchecker",
            Provenance::Llm => "llm",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown provenance `{0}`")]
pub struct UnknownProvenance(pub String);

impl FromStr for Provenance {
    type Err = UnknownProvenance;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "manual" => Ok(Provenance::Manual),
            "deasciifier" => Ok(Provenance::Deasciifier),
            "spellchecker" => Ok(Provenance::SpellChecker),
            "llm" => Ok(Provenance::Llm),
            other => Err(UnknownProvenance(other.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntryError {
    #[error("incorrect side is empty")]
    EmptyIncorrect,
    #[error("correct side is empty")]
    EmptyCorrect,
    #[error("correct side equals incorrect side")]
    Identical,
    #[error("incorrect side has {0} tokens, at most {MAX_KEY_TOKENS} allowed")]
    KeyTooLong(usize),
    #[error("`{0}` is not a single word token")]
    NotAToken(String),
}

/// One incorrect → correct pair.
///
/// Both sides are token sequences; each token must be exactly one token under
/// [`tokenize_words`] so that substitutions re-tokenize to the same sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpellingEntry {
    pub incorrect: Vec<String>,
    pub correct: Vec<String>,
    pub provenance: Provenance,
    pub iteration: u32,
}

fn split_phrase(phrase: &str) -> Vec<String> {
    phrase.split_whitespace().map(String::from).collect()
}

impl SpellingEntry {
    /// Builds and validates an entry from whitespace-separated phrases.
    pub fn from_phrases(
        incorrect: &str,
        correct: &str,
        provenance: Provenance,
        iteration: u32,
    ) -> Result<Self, EntryError> {
        let entry = Self {
            incorrect: split_phrase(incorrect),
            correct: split_phrase(correct),
            provenance,
            iteration,
        };
        entry.validate()?;
        Ok(entry)
    }

    pub fn validate(&self) -> Result<(), EntryError> {
        if self.incorrect.is_empty() {
            return Err(EntryError::EmptyIncorrect);
        }
        if self.correct.is_empty() {
            return Err(EntryError::EmptyCorrect);
        }
        if self.incorrect.len() > MAX_KEY_TOKENS {
            return Err(EntryError::KeyTooLong(self.incorrect.len()));
        }
        if self.incorrect == self.correct {
            return Err(EntryError::Identical);
        }
        for token in self.incorrect.iter().chain(&self.correct) {
            if tokenize_words(token) != [token.as_str()] {
                return Err(EntryError::NotAToken(token.clone()));
            }
        }
        Ok(())
    }

    /// Incorrect side joined with single spaces; the dictionary key.
    pub fn key(&self) -> String {
        self.incorrect.join(" ")
    }

    pub fn correct_phrase(&self) -> String {
        self.correct.join(" ")
    }
}

/// A dictionary hit at some position of a token sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match<'a> {
    pub entry: &'a SpellingEntry,
    /// Number of source tokens covered.
    pub len: usize,
    /// The hit came from the case-folded fallback, not an exact key.
    pub folded: bool,
    capitalize: bool,
}

impl Match<'_> {
    /// Replacement tokens. A folded hit on a capitalized source token carries
    /// the initial capital over to the correction.
    pub fn replacement(&self) -> Vec<String> {
        let mut tokens = self.entry.correct.clone();
        if self.capitalize {
            if let Some(first) = tokens.first_mut() {
                *first = capitalize_first(first);
            }
        }
        tokens
    }
}

/// Counts reported by [`SpellingDictionary::merge`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MergeReport {
    pub added: usize,
    /// Key already present with a different correction.
    pub conflicts: usize,
    /// Key already present with the same correction.
    pub duplicates: usize,
    /// Entry failed validation.
    pub rejected: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    Added,
    Duplicate,
    Conflict,
}

/// Incorrect-key → entry map. The first entry seen for a key is kept forever.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpellingDictionary {
    entries: BTreeMap<String, SpellingEntry>,
    folded: BTreeMap<String, String>,
    max_key_len: usize,
}

impl SpellingDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical (lexicographic key) order.
    pub fn entries(&self) -> impl Iterator<Item = &SpellingEntry> {
        self.entries.values()
    }

    pub fn get(&self, key: &str) -> Option<&SpellingEntry> {
        self.entries.get(key)
    }

    /// Exact or case-folded key membership.
    pub fn contains_key(&self, key: &str) -> bool {
        self.entries.contains_key(key) || self.folded.contains_key(&fold(key))
    }

    /// Inserts a validated entry without overwriting.
    pub fn insert(&mut self, entry: SpellingEntry) -> Result<InsertOutcome, EntryError> {
        entry.validate()?;
        let key = entry.key();
        if let Some(existing) = self.entries.get(&key) {
            return Ok(if existing.correct == entry.correct {
                InsertOutcome::Duplicate
            } else {
                InsertOutcome::Conflict
            });
        }
        self.folded.entry(fold(&key)).or_insert_with(|| key.clone());
        self.max_key_len = self.max_key_len.max(entry.incorrect.len());
        self.entries.insert(key, entry);
        Ok(InsertOutcome::Added)
    }

    /// Adds every new key in `pairs`; existing keys are never touched.
    pub fn merge_in_place<I>(&mut self, pairs: I) -> MergeReport
    where
        I: IntoIterator<Item = SpellingEntry>,
    {
        let mut report = MergeReport::default();
        for entry in pairs {
            match self.insert(entry) {
                Ok(InsertOutcome::Added) => report.added += 1,
                Ok(InsertOutcome::Duplicate) => report.duplicates += 1,
                Ok(InsertOutcome::Conflict) => report.conflicts += 1,
                Err(_) => report.rejected += 1,
            }
        }
        report
    }

    /// Copy-on-write merge: `self` stays untouched.
    pub fn merge<I>(&self, pairs: I) -> (Self, MergeReport)
    where
        I: IntoIterator<Item = SpellingEntry>,
    {
        let mut next = self.clone();
        let report = next.merge_in_place(pairs);
        (next, report)
    }

    /// Longest key matching `tokens[start..]`. For each length, from the
    /// longest down, an exact key wins over a case-folded one.
    pub fn lookup_longest<S: AsRef<str>>(&self, tokens: &[S], start: usize) -> Option<Match<'_>> {
        if start >= tokens.len() {
            return None;
        }
        let longest = self.max_key_len.min(tokens.len() - start);
        let mut key = String::new();
        for len in (1..=longest).rev() {
            key.clear();
            for (i, t) in tokens[start..start + len].iter().enumerate() {
                if i > 0 {
                    key.push(' ');
                }
                key.push_str(t.as_ref());
            }
            if let Some(entry) = self.entries.get(&key) {
                return Some(Match { entry, len, folded: false, capitalize: false });
            }
            if let Some(entry) = self.folded.get(&fold(&key)).and_then(|k| self.entries.get(k)) {
                let source_first = tokens[start].as_ref();
                let capitalize = starts_uppercase(source_first)
                    && !entry.incorrect[0].chars().next().is_some_and(char::is_uppercase);
                return Some(Match { entry, len, folded: true, capitalize });
            }
        }
        None
    }
}

impl fmt::Display for SpellingEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.key(), self.correct_phrase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn entry(a: &str, b: &str) -> SpellingEntry {
        SpellingEntry::from_phrases(a, b, Provenance::Manual, 0).unwrap()
    }

    fn dict(pairs: &[(&str, &str)]) -> SpellingDictionary {
        let mut d = SpellingDictionary::new();
        for (a, b) in pairs {
            d.insert(entry(a, b)).unwrap();
        }
        d
    }

    #[test]
    fn entry_invariants() {
        assert_eq!(
            SpellingEntry::from_phrases("a", "a", Provenance::Manual, 0),
            Err(EntryError::Identical)
        );
        assert_eq!(
            SpellingEntry::from_phrases("", "a", Provenance::Manual, 0),
            Err(EntryError::EmptyIncorrect)
        );
        assert_eq!(
            SpellingEntry::from_phrases("a", " ", Provenance::Manual, 0),
            Err(EntryError::EmptyCorrect)
        );
        assert_eq!(
            SpellingEntry::from_phrases("a b c d e f", "x", Provenance::Manual, 0),
            Err(EntryError::KeyTooLong(6))
        );
        assert_eq!(
            SpellingEntry::from_phrases("a", "b.", Provenance::Manual, 0),
            Err(EntryError::NotAToken("b.".into()))
        );
        assert!(SpellingEntry::from_phrases("Matrixten", "Matrix'ten", Provenance::Manual, 0).is_ok());
    }

    #[test]
    fn merge_examples() {
        let (d, r) = SpellingDictionary::new().merge([entry("a", "b")]);
        assert_eq!((d.len(), r.added), (1, 1));
        let (d2, r2) = d.merge([entry("a", "c")]);
        assert_eq!((d2.len(), r2.added, r2.conflicts), (1, 0, 1));
        assert_eq!(d2.get("a").unwrap().correct, vec!["b"]);
        let bad = SpellingEntry {
            incorrect: vec![],
            correct: vec!["x".into()],
            provenance: Provenance::Llm,
            iteration: 1,
        };
        let (d3, r3) = d.merge([bad, entry("b", "c"), entry("b", "c")]);
        assert_eq!((d3.len(), r3.added, r3.rejected, r3.duplicates), (2, 1, 1, 1));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn lookup_examples() {
        let d = dict(&[("herşey", "her şey")]);
        let m = d.lookup_longest(&["herşey", "iyi"], 0).unwrap();
        assert_eq!(m.len, 1);
        assert_eq!(m.replacement(), vec!["her", "şey"]);

        let d = dict(&[("yapa", "x"), ("yapa bilirim", "yapabilirim")]);
        let m = d.lookup_longest(&["yapa", "bilirim"], 0).unwrap();
        assert_eq!((m.len, m.entry.key().as_str()), (2, "yapa bilirim"));

        assert!(d.lookup_longest(&["yapa", "bilirim"], 1).is_none());
        assert!(d.lookup_longest(&["yapa"], 3).is_none());
    }

    #[test]
    fn folded_fallback_transfers_capital() {
        let d = dict(&[("yuzune", "yüzüne"), ("ısık", "ışık")]);
        let m = d.lookup_longest(&["Yuzune", "baktı"], 0).unwrap();
        assert!(m.folded);
        assert_eq!(m.replacement(), vec!["Yüzüne"]);
        let m = d.lookup_longest(&["IŞIK"], 0);
        assert!(m.is_none());
        let m = d.lookup_longest(&["Isık"], 0).unwrap();
        assert_eq!(m.replacement(), vec!["Işık"]);
        assert!(d.contains_key("YUZUNE"));
    }

    #[test]
    fn exact_beats_folded_at_same_length() {
        let d = dict(&[("ankara", "x"), ("Ankara", "y")]);
        let m = d.lookup_longest(&["Ankara"], 0).unwrap();
        assert!(!m.folded);
        assert_eq!(m.replacement(), vec!["y"]);
    }

    #[test]
    fn provenance_round_trip() {
        for p in [Provenance::Manual, Provenance::Deasciifier, Provenance::SpellChecker, Provenance::Llm] {
            assert_eq!(p.as_str().parse::<Provenance>().unwrap(), p);
        }
        assert!("gpt".parse::<Provenance>().is_err());
    }
}
