//! Analyzability oracle: a surface-form lexicon plus suffix rules.
//!
//! A word is analyzable when it is a lexicon entry, or when it can be peeled
//! into `stem + suffix` where the suffix rule accepts the stem's ending and the
//! stem is itself analyzable, down to a configurable chain depth. This stands
//! in for a full morphological analyzer behind the [`Analyzer`] trait.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// Default maximum number of suffixes peeled off a word.
pub const DEFAULT_MAX_DEPTH: usize = 4;

/// Suffix rules bundled with the crate: plural and common case endings with
/// vowel-harmony and voicing predicates.
pub const DEFAULT_SUFFIX_RULES: &str = include_str!("../data/suffix_rules.tsv");

/// Anything that can decide whether a folded word is well-formed.
pub trait Analyzer {
    fn is_analyzable(&self, word: &str) -> bool;
}

impl<A: Analyzer + ?Sized> Analyzer for &A {
    fn is_analyzable(&self, word: &str) -> bool {
        (**self).is_analyzable(word)
    }
}

const FRONT_VOWELS: &[char] = &['e', 'i', 'ö', 'ü'];
const BACK_VOWELS: &[char] = &['a', 'ı', 'o', 'u'];
const VOICELESS: &[char] = &['ç', 'f', 'h', 'k', 'p', 's', 'ş', 't'];

fn is_vowel(c: char) -> bool {
    FRONT_VOWELS.contains(&c) || BACK_VOWELS.contains(&c)
}

/// Test on the end of a stem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StemCondition {
    Any,
    VowelFinal,
    ConsonantFinal,
    FrontVowel,
    BackVowel,
    FrontUnrounded,
    FrontRounded,
    BackUnrounded,
    BackRounded,
    VoicelessFinal,
    VoicedFinal,
}

impl StemCondition {
    const ALL: [StemCondition; 11] = [
        StemCondition::Any,
        StemCondition::VowelFinal,
        StemCondition::ConsonantFinal,
        StemCondition::FrontVowel,
        StemCondition::BackVowel,
        StemCondition::FrontUnrounded,
        StemCondition::FrontRounded,
        StemCondition::BackUnrounded,
        StemCondition::BackRounded,
        StemCondition::VoicelessFinal,
        StemCondition::VoicedFinal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StemCondition::Any => "any",
            StemCondition::VowelFinal => "vowel-final",
            StemCondition::ConsonantFinal => "consonant-final",
            StemCondition::FrontVowel => "front-vowel",
            StemCondition::BackVowel => "back-vowel",
            StemCondition::FrontUnrounded => "front-unrounded",
            StemCondition::FrontRounded => "front-rounded",
            StemCondition::BackUnrounded => "back-unrounded",
            StemCondition::BackRounded => "back-rounded",
            StemCondition::VoicelessFinal => "voiceless-final",
            StemCondition::VoicedFinal => "voiced-final",
        }
    }

    pub fn holds(self, stem: &str) -> bool {
        let last = stem.chars().next_back();
        let last_vowel = stem.chars().rev().find(|&c| is_vowel(c));
        match self {
            StemCondition::Any => true,
            StemCondition::VowelFinal => last.is_some_and(is_vowel),
            StemCondition::ConsonantFinal => last.is_some_and(|c| c.is_alphabetic() && !is_vowel(c)),
            StemCondition::FrontVowel => last_vowel.is_some_and(|v| FRONT_VOWELS.contains(&v)),
            StemCondition::BackVowel => last_vowel.is_some_and(|v| BACK_VOWELS.contains(&v)),
            StemCondition::FrontUnrounded => last_vowel.is_some_and(|v| matches!(v, 'e' | 'i')),
            StemCondition::FrontRounded => last_vowel.is_some_and(|v| matches!(v, 'ö' | 'ü')),
            StemCondition::BackUnrounded => last_vowel.is_some_and(|v| matches!(v, 'a' | 'ı')),
            StemCondition::BackRounded => last_vowel.is_some_and(|v| matches!(v, 'o' | 'u')),
            StemCondition::VoicelessFinal => last.is_some_and(|c| VOICELESS.contains(&c)),
            StemCondition::VoicedFinal => last.is_some_and(|c| !VOICELESS.contains(&c)),
        }
    }
}

impl fmt::Display for StemCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StemCondition {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RuleError::UnknownPredicate(s.into()))
    }
}

/// Conjunction of stem conditions, written `a+b` in rule files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemPredicate(pub Vec<StemCondition>);

impl StemPredicate {
    pub fn holds(&self, stem: &str) -> bool {
        self.0.iter().all(|c| c.holds(stem))
    }
}

impl FromStr for StemPredicate {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split('+').map(|p| p.trim().parse()).collect::<Result<_, _>>().map(StemPredicate)
    }
}

impl fmt::Display for StemPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str(c.name())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub predicate: StemPredicate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("unknown stem predicate `{0}`")]
    UnknownPredicate(String),
    #[error("line {line}: expected `suffix<TAB>predicate`")]
    Malformed { line: usize },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: alloc::boxed::Box<RuleError>,
    },
}

/// Parses `suffix<TAB>predicate` rows. Blank lines and `#` comments are skipped.
pub fn parse_suffix_rules(table: &str) -> Result<Vec<SuffixRule>, RuleError> {
    let mut rules = Vec::new();
    for (i, raw) in table.lines().enumerate() {
        let line = i + 1;
        let row = raw.trim_end_matches('\r');
        if row.trim().is_empty() || row.starts_with('#') {
            continue;
        }
        let mut fields = row.split('\t');
        let (Some(suffix), Some(pred), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(RuleError::Malformed { line });
        };
        let suffix = suffix.trim();
        if suffix.is_empty() {
            return Err(RuleError::Malformed { line });
        }
        let predicate = pred
            .parse()
            .map_err(|e| RuleError::AtLine { line, source: alloc::boxed::Box::new(e) })?;
        rules.push(SuffixRule { suffix: suffix.into(), predicate });
    }
    Ok(rules)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzabilityOracle {
    lexicon: BTreeSet<String>,
    rules: Vec<SuffixRule>,
    max_depth: usize,
}

impl AnalyzabilityOracle {
    pub fn new<I, S>(words: I, rules: Vec<SuffixRule>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            lexicon: words.into_iter().map(Into::into).collect(),
            rules,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }

    /// Lexicon with the bundled suffix rules.
    pub fn with_default_rules<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let rules = parse_suffix_rules(DEFAULT_SUFFIX_RULES).expect("bundled suffix rules parse");
        Self::new(words, rules)
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn lexicon(&self) -> impl Iterator<Item = &str> {
        self.lexicon.iter().map(String::as_str)
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    pub fn rules(&self) -> &[SuffixRule] {
        &self.rules
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    fn analyze(&self, word: &str, depth: usize) -> bool {
        if self.lexicon.contains(word) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        self.rules.iter().any(|rule| {
            word.strip_suffix(rule.suffix.as_str()).is_some_and(|stem| {
                !stem.is_empty() && rule.predicate.holds(stem) && self.analyze(stem, depth - 1)
            })
        })
    }
}

impl Analyzer for AnalyzabilityOracle {
    fn is_analyzable(&self, word: &str) -> bool {
        !word.is_empty() && self.analyze(word, self.max_depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn rule(suffix: &str, pred: &str) -> SuffixRule {
        SuffixRule { suffix: suffix.into(), predicate: pred.parse().unwrap() }
    }

    #[test]
    fn direct_membership() {
        let o = AnalyzabilityOracle::with_default_rules(["yüzüne"]);
        assert!(o.is_analyzable("yüzüne"));
        let empty = AnalyzabilityOracle::new(Vec::<String>::new(), vec![]);
        assert!(!empty.is_analyzable("qqq"));
        assert!(!empty.is_analyzable(""));
    }

    #[test]
    fn suffix_chain() {
        let o = AnalyzabilityOracle::new(["ev"], vec![rule("ler", "any"), rule("den", "any")]);
        assert!(o.is_analyzable("evlerden"));
        assert!(o.is_analyzable("evden"));
        assert!(!o.is_analyzable("evdenx"));
        assert!(!o.is_analyzable("ler"));
    }

    #[test]
    fn depth_limit() {
        let o = AnalyzabilityOracle::new(["a"], vec![rule("b", "any")]);
        assert!(o.is_analyzable("abbbb"));
        assert!(!o.is_analyzable("abbbbb"));
        assert!(o.clone().with_max_depth(5).is_analyzable("abbbbb"));
        assert!(!o.with_max_depth(0).is_analyzable("ab"));
    }

    #[test]
    fn harmony_predicates() {
        let o = AnalyzabilityOracle::with_default_rules(["ev", "kitap", "masa"]);
        assert!(o.is_analyzable("evler"));
        assert!(!o.is_analyzable("evlar"));
        assert!(o.is_analyzable("kitaplar"));
        assert!(o.is_analyzable("kitapta"));
        assert!(!o.is_analyzable("kitapda"));
        assert!(o.is_analyzable("masada"));
        assert!(o.is_analyzable("masaya"));
        assert!(o.is_analyzable("evlerden"));
    }

    #[test]
    fn predicate_parsing() {
        let p: StemPredicate = "front-vowel+voiced-final".parse().unwrap();
        assert_eq!(p.0, vec![StemCondition::FrontVowel, StemCondition::VoicedFinal]);
        assert_eq!(p.to_string(), "front-vowel+voiced-final");
        assert_eq!(
            "bogus".parse::<StemPredicate>(),
            Err(RuleError::UnknownPredicate("bogus".into()))
        );
        assert_eq!(parse_suffix_rules("ler"), Err(RuleError::Malformed { line: 1 }));
        assert!(matches!(parse_suffix_rules("# c\n\nler\tnope"), Err(RuleError::AtLine { line: 3, .. })));
        assert!(!parse_suffix_rules(DEFAULT_SUFFIX_RULES).unwrap().is_empty());
    }
}
