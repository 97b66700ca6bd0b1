//! Text normalization, word tokenization, sentence splitting and Turkish casing.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use unicode_normalization::UnicodeNormalization;
use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

/// Canonical form used for every stored string: control characters other than
/// whitespace dropped, NFC applied, whitespace runs collapsed to a single space
/// and trimmed.
pub fn normalize(text: &str) -> String {
    let filtered = text.chars().filter(|c| !c.is_control() || c.is_whitespace());
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in filtered.nfc() {
        if c.is_whitespace() {
            pending_space = !out.is_empty();
        } else {
            if pending_space {
                out.push(' ');
                pending_space = false;
            }
            out.push(c);
        }
    }
    out
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Characters that form word tokens. Combining marks are kept so that text
/// which failed to compose under NFC still tokenizes as a single word.
pub fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c.general_category_group() == GeneralCategoryGroup::Mark
}

/// Unicode punctuation (general category P*).
pub fn is_punctuation(c: char) -> bool {
    c.general_category_group() == GeneralCategoryGroup::Punctuation
}

/// True when every character of `token` is punctuation.
pub fn is_punctuation_token(token: &str) -> bool {
    !token.is_empty() && token.chars().all(is_punctuation)
}

/// True when `token` carries at least one letter.
pub fn has_letter(token: &str) -> bool {
    token.chars().any(char::is_alphabetic)
}

/// Splits text into word tokens with their byte offsets.
///
/// Words are maximal runs of letters and digits; an apostrophe stays inside
/// the word when it sits between two word characters (`Matrix'ten`). Every
/// other non-whitespace character becomes a one-character token.
pub fn token_spans(text: &str) -> Vec<(usize, &str)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !is_word_char(c) {
            let end = chars.get(i + 1).map_or(text.len(), |&(o, _)| o);
            spans.push((start, &text[start..end]));
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() {
            let cj = chars[j].1;
            if is_word_char(cj) {
                j += 1;
            } else if is_apostrophe(cj) && chars.get(j + 1).is_some_and(|&(_, n)| is_word_char(n)) {
                j += 2;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(o, _)| o);
        spans.push((start, &text[start..end]));
        i = j;
    }
    spans
}

/// Word tokens of `text`, see [`token_spans`].
pub fn tokenize_words(text: &str) -> Vec<&str> {
    token_spans(text).into_iter().map(|(_, t)| t).collect()
}

/// Lowercases with Turkish dotted/dotless i rules (`I`→`ı`, `İ`→`i`).
pub fn turkish_lowercase(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            'I' => out.push('ı'),
            'İ' => out.push('i'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    out
}

/// Case folding used for index keys and case-insensitive comparisons.
pub fn fold(text: &str) -> String {
    turkish_lowercase(text)
}

fn push_turkish_upper(out: &mut String, c: char) {
    match c {
        'i' => out.push('İ'),
        'ı' => out.push('I'),
        _ => out.extend(c.to_uppercase()),
    }
}

/// Upper-cases the first character using Turkish rules; the rest is untouched.
pub fn capitalize_first(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(first) => {
            let mut out = String::with_capacity(text.len() + 1);
            push_turkish_upper(&mut out, first);
            out.push_str(chars.as_str());
            out
        }
        None => String::new(),
    }
}

/// True when the first character is an uppercase letter.
pub fn starts_uppercase(text: &str) -> bool {
    text.chars().next().is_some_and(char::is_uppercase)
}

/// Abbreviations bundled with the sentence splitter.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "Alb", "Apt", "Av", "Bkz", "bkz", "Bşk", "Cad", "Dr", "Doç", "Gn", "Gör", "Hz", "Kur", "Ltd",
    "Mah", "Müh", "No", "Op", "Opr", "Öğr", "Prof", "Sn", "Sok", "St", "Şti", "Tğm", "Uzm", "vb",
    "vd", "vs", "Yrd", "Yzb", "örn", "yy",
];

/// Rule-based sentence splitter with an abbreviation stop-list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSplitter {
    abbreviations: BTreeSet<String>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        Self::new(DEFAULT_ABBREVIATIONS.iter().copied())
    }
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '»' | '\u{201D}' | '\u{2019}')
}

impl SentenceSplitter {
    /// Builds a splitter from abbreviations given without their final period.
    pub fn new<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let abbreviations = abbreviations
            .into_iter()
            .map(|a| a.as_ref().trim().trim_end_matches('.').into())
            .filter(|a: &String| !a.is_empty())
            .collect();
        Self { abbreviations }
    }

    pub fn abbreviations(&self) -> impl Iterator<Item = &str> {
        self.abbreviations.iter().map(String::as_str)
    }

    /// Splits normalized text at a terminator (optionally followed by closing
    /// quotes or brackets) that is followed by whitespace and then an
    /// uppercase letter or digit. A period ending a stop-listed abbreviation
    /// never splits.
    pub fn split<'a>(&self, text: &'a str) -> Vec<&'a str> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut sentences = Vec::new();
        let mut start = 0;
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if !is_terminator(c) {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < chars.len() && (is_terminator(chars[j].1) || is_closer(chars[j].1)) {
                j += 1;
            }
            let mut k = j;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            let splits = k > j
                && k < chars.len()
                && (chars[k].1.is_uppercase() || chars[k].1.is_numeric())
                && !(c == '.' && j == i + 1 && self.is_abbreviation(&text[..pos]));
            if splits {
                let end = chars[j].0;
                let sentence = text[start..end].trim();
                if !sentence.is_empty() {
                    sentences.push(sentence);
                }
                start = chars[k].0;
            }
            i = j.max(i + 1);
        }
        let tail = text[start..].trim();
        if !tail.is_empty() {
            sentences.push(tail);
        }
        sentences
    }

    fn is_abbreviation(&self, before: &str) -> bool {
        let word_start = before
            .char_indices()
            .rev()
            .find(|&(_, c)| !is_word_char(c))
            .map_or(0, |(o, c)| o + c.len_utf8());
        let word = &before[word_start..];
        !word.is_empty() && self.abbreviations.contains(word)
    }
}

/// Splits with the bundled abbreviation list.
pub fn split_sentences(text: &str) -> Vec<&str> {
    SentenceSplitter::default().split(text)
}

/// Normalizes every string and drops later exact duplicates, keeping the
/// first occurrence order.
pub fn dedup<I, S>(sentences: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in sentences {
        let n = normalize(s.as_ref());
        if seen.insert(n.clone()) {
            out.push(n);
        }
    }
    out
}
