use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::EditSpan;
use crate::candidates::AmbiguousPairTable;
use crate::text::{fold, is_punctuation_token};

/// Coarse error types assigned to extracted edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorType {
    Punct,
    Orth,
    Wo,
    Spell,
    Other,
}

impl ErrorType {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorType::Punct => "PUNCT",
            ErrorType::Orth => "ORTH",
            ErrorType::Wo => "WO",
            ErrorType::Spell => "SPELL",
            ErrorType::Other => "OTHER",
        }
    }
}

impl fmt::Display for ErrorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Largest character distance still classified as a misspelling.
pub const SPELL_MAX_DISTANCE: usize = 3;

/// Optimal-string-alignment distance over characters.
pub fn char_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let width = b.len() + 1;
    let mut d = alloc::vec![0usize; (a.len() + 1) * width];
    for i in 0..=a.len() {
        d[i * width] = i;
    }
    for (j, cell) in d.iter_mut().enumerate().take(width) {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut v = (d[(i - 1) * width + j] + 1)
                .min(d[i * width + j - 1] + 1)
                .min(d[(i - 1) * width + j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                v = v.min(d[(i - 2) * width + j - 2] + 1);
            }
            d[i * width + j] = v;
        }
    }
    d[a.len() * width + b.len()]
}

fn differs_only_in_ambiguous_groups(a: &str, b: &str) -> bool {
    let table = AmbiguousPairTable::default();
    let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
    a.len() == b.len()
        && a.iter().zip(&b).all(|(&x, &y)| x == y || table.group_of(x).is_some_and(|g| g.contains(&y)))
}

fn sorted(tokens: &[String]) -> Vec<&str> {
    let mut v: Vec<&str> = tokens.iter().map(String::as_str).collect();
    v.sort_unstable();
    v
}

/// Rule cascade: punctuation, then case/whitespace, word order, misspelling
/// by distance or deasciification, otherwise OTHER.
pub fn classify<S: AsRef<str>>(edit: &EditSpan, src: &[S]) -> ErrorType {
    let original: Vec<String> = src[edit.start..edit.end].iter().map(|t| String::from(t.as_ref())).collect();
    let corrected = &edit.replacement;
    let changed = original.iter().chain(corrected);
    if changed.clone().next().is_some() && changed.clone().all(|t| is_punctuation_token(t)) {
        return ErrorType::Punct;
    }
    let joined_o: String = original.concat();
    let joined_c: String = corrected.concat();
    if !joined_o.is_empty() && fold(&joined_o) == fold(&joined_c) {
        return ErrorType::Orth;
    }
    if original.len() >= 2 && original != *corrected && sorted(&original) == sorted(corrected) {
        return ErrorType::Wo;
    }
    if original.len() == 1 && corrected.len() == 1 {
        let (o, c) = (fold(&original[0]), fold(&corrected[0]));
        if char_distance(&o, &c) <= SPELL_MAX_DISTANCE || differs_only_in_ambiguous_groups(&o, &c) {
            return ErrorType::Spell;
        }
    }
    ErrorType::Other
}
