//! Word-level correctors: a deasciifier and an edit-distance-one spell checker.
//!
//! Both enumerate raw candidates, keep those the [`Analyzer`] accepts, and a
//! correction is only produced when the applicable generator leaves exactly
//! one candidate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lexicon::{Provenance, SpellingEntry};
use crate::morphology::Analyzer;
use crate::text::fold;

/// Default limit on ambiguous positions before a word is skipped.
pub const DEFAULT_DEASCIIFY_CAP: usize = 12;

/// The 29-letter Turkish alphabet.
pub const TURKISH_ALPHABET: &str = "abcçdefgğhıijklmnoöprsştuüvyz";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Deasciifier,
    SpellChecker,
}

impl Generator {
    pub fn provenance(self) -> Provenance {
        match self {
            Generator::Deasciifier => Provenance::Deasciifier,
            Generator::SpellChecker => Provenance::SpellChecker,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.provenance().as_str())
    }
}

/// Characters an ASCII writer collapses onto one key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguousPairTable {
    groups: Vec<Vec<char>>,
}

impl Default for AmbiguousPairTable {
    fn default() -> Self {
        let groups = [
            ['c', 'ç'],
            ['g', 'ğ'],
            ['i', 'ı'],
            ['o', 'ö'],
            ['s', 'ş'],
            ['u', 'ü'],
            ['C', 'Ç'],
            ['G', 'Ğ'],
            ['I', 'İ'],
            ['O', 'Ö'],
            ['S', 'Ş'],
            ['U', 'Ü'],
        ];
        Self { groups: groups.iter().map(|g| g.to_vec()).collect() }
    }
}

impl AmbiguousPairTable {
    /// `None` if the groups overlap or one has fewer than two members.
    pub fn new(groups: Vec<Vec<char>>) -> Option<Self> {
        let mut seen = BTreeSet::new();
        for g in &groups {
            if g.len() < 2 || !g.iter().all(|c| seen.insert(*c)) {
                return None;
            }
        }
        Some(Self { groups })
    }

    pub fn groups(&self) -> &[Vec<char>] {
        &self.groups
    }

    pub fn group_of(&self, c: char) -> Option<&[char]> {
        self.groups.iter().find(|g| g.contains(&c)).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateConfig {
    pub table: AmbiguousPairTable,
    pub deasciify_cap: usize,
    /// Letters tried by substitution and insertion.
    pub alphabet: Vec<char>,
}

impl Default for CandidateConfig {
    fn default() -> Self {
        let mut alphabet: Vec<char> = TURKISH_ALPHABET.chars().collect();
        alphabet.push('\'');
        Self { table: AmbiguousPairTable::default(), deasciify_cap: DEFAULT_DEASCIIFY_CAP, alphabet }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub source: String,
    /// Distinct, sorted, analyzable and never equal to `source`.
    pub candidates: Vec<String>,
    pub generator: Generator,
}

/// The word has more ambiguous positions than the configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinatorialCap {
    pub positions: usize,
    pub cap: usize,
}

fn accept<A: Analyzer>(raw: BTreeSet<String>, source: &str, oracle: &A) -> Vec<String> {
    raw.into_iter()
        .filter(|w| w != source && oracle.is_analyzable(&fold(w)))
        .collect()
}

/// Every variant of `word` obtained by swapping characters within their
/// ambiguous group, filtered by the oracle.
pub fn deasciify_candidates<A: Analyzer>(
    word: &str,
    oracle: &A,
    config: &CandidateConfig,
) -> Result<CandidateSet, CombinatorialCap> {
    let chars: Vec<char> = word.chars().collect();
    let slots: Vec<(usize, &[char])> = chars
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| config.table.group_of(c).map(|g| (i, g)))
        .collect();
    if slots.len() > config.deasciify_cap {
        return Err(CombinatorialCap { positions: slots.len(), cap: config.deasciify_cap });
    }
    let mut raw = BTreeSet::new();
    let mut choice = alloc::vec![0usize; slots.len()];
    let mut buf = chars.clone();
    'outer: loop {
        for (&(pos, group), &k) in slots.iter().zip(&choice) {
            buf[pos] = group[k];
        }
        raw.insert(buf.iter().collect::<String>());
        for (digit, &(_, group)) in choice.iter_mut().zip(&slots) {
            *digit += 1;
            if *digit < group.len() {
                continue 'outer;
            }
            *digit = 0;
        }
        break;
    }
    Ok(CandidateSet {
        source: word.into(),
        candidates: accept(raw, word, oracle),
        generator: Generator::Deasciifier,
    })
}

/// Strings one edit away from `word`: deletion, adjacent transposition,
/// substitution or insertion over `alphabet`. Unfiltered and may contain `word`.
pub fn edits1(word: &str, alphabet: &[char]) -> BTreeSet<String> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let mut out = BTreeSet::new();
    let collect = |v: &[char]| v.iter().collect::<String>();
    for i in 0..n {
        let mut v = chars.clone();
        v.remove(i);
        out.insert(collect(&v));
    }
    for i in 0..n.saturating_sub(1) {
        let mut v = chars.clone();
        v.swap(i, i + 1);
        out.insert(collect(&v));
    }
    for i in 0..n {
        for &c in alphabet {
            if c != chars[i] {
                let mut v = chars.clone();
                v[i] = c;
                out.insert(collect(&v));
            }
        }
    }
    for i in 0..=n {
        for &c in alphabet {
            let mut v = chars.clone();
            v.insert(i, c);
            out.insert(collect(&v));
        }
    }
    out
}

/// Analyzable words at Damerau-Levenshtein distance one from `word`.
pub fn spell_candidates<A: Analyzer>(word: &str, oracle: &A, config: &CandidateConfig) -> CandidateSet {
    CandidateSet {
        source: word.into(),
        candidates: accept(edits1(word, &config.alphabet), word, oracle),
        generator: Generator::SpellChecker,
    }
}

/// Outcome of trying to correct one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// The word is already well-formed.
    Analyzable,
    Unique { correct: String, generator: Generator },
    Ambiguous { generator: Generator, count: usize },
    NoCandidates,
    CapExceeded(CombinatorialCap),
}

/// Deasciifier first; the spell checker only runs when the deasciifier finds
/// nothing. A single surviving candidate is the correction.
pub fn resolve<A: Analyzer>(word: &str, oracle: &A, config: &CandidateConfig) -> Resolution {
    if oracle.is_analyzable(&fold(word)) {
        return Resolution::Analyzable;
    }
    let deasciified = match deasciify_candidates(word, oracle, config) {
        Ok(set) => set,
        Err(cap) => return Resolution::CapExceeded(cap),
    };
    let set = if deasciified.candidates.is_empty() {
        spell_candidates(word, oracle, config)
    } else {
        deasciified
    };
    match set.candidates.len() {
        0 => Resolution::NoCandidates,
        1 => Resolution::Unique {
            correct: set.candidates.into_iter().next().unwrap_or_default(),
            generator: set.generator,
        },
        count => Resolution::Ambiguous { generator: set.generator, count },
    }
}

/// [`resolve`] reduced to the dictionary entry it yields, if any.
pub fn resolve_unique<A: Analyzer>(
    word: &str,
    oracle: &A,
    config: &CandidateConfig,
    iteration: u32,
) -> Option<SpellingEntry> {
    match resolve(word, oracle, config) {
        Resolution::Unique { correct, generator } => Some(SpellingEntry {
            incorrect: alloc::vec![word.into()],
            correct: alloc::vec![correct],
            provenance: generator.provenance(),
            iteration,
        })
        .filter(|e| e.validate().is_ok()),
        _ => None,
    }
}
