//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;

/// Letters used for fuzzed words: ASCII plus every Turkish-specific letter.
pub const LETTERS: &[char] = &[
    'a', 'b', 'c', 'ç', 'd', 'e', 'g', 'ğ', 'ı', 'i', 'k', 'l', 'm', 'n', 'o', 'ö', 'r', 's', 'ş', 't', 'u', 'ü', 'y', 'z',
];

pub fn word<R: Rng>(rng: &mut R, min: usize, max: usize) -> String {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| *LETTERS.choose(rng).unwrap()).collect()
}

/// Word over a caller-chosen alphabet.
pub fn word_from<R: Rng>(rng: &mut R, alphabet: &[char], min: usize, max: usize) -> String {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

pub fn vocabulary<R: Rng>(rng: &mut R, size: usize) -> Vec<String> {
    let mut v: Vec<String> = (0..size * 2).map(|_| word(rng, 2, 7)).collect();
    v.sort();
    v.dedup();
    v.truncate(size);
    v
}

/// Sentence of words drawn from `vocab`, with occasional punctuation,
/// capitalization and apostrophe suffixes.
pub fn sentence<R: Rng>(rng: &mut R, vocab: &[String], max_words: usize) -> String {
    let n = rng.gen_range(1..=max_words);
    let mut parts: Vec<String> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut w = vocab.choose(rng).unwrap().clone();
        match rng.gen_range(0..10) {
            0 => {
                let mut cs = w.chars();
                if let Some(c) = cs.next() {
                    let upper: String = match c {
                        'i' => "İ".into(),
                        'ı' => "I".into(),
                        c => c.to_uppercase().collect(),
                    };
                    w = upper + cs.as_str();
                }
            }
            1 => w.push_str("'de"),
            2 => w.push(*[',', '.', '!', '?'].choose(rng).unwrap()),
            _ => {}
        }
        parts.push(w);
    }
    parts.join(" ")
}

pub fn corpus<R: Rng>(rng: &mut R, vocab: &[String], docs: usize, max_words: usize) -> Vec<String> {
    (0..docs).map(|_| sentence(rng, vocab, max_words)).collect()
}

/// (incorrect, correct) single-token pairs with distinct incorrect sides
/// that differ from their corrections.
pub fn word_pairs<R: Rng>(rng: &mut R, vocab: &[String], count: usize) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for _ in 0..count * 3 {
        if out.len() == count {
            break;
        }
        let a = vocab.choose(rng).unwrap().clone();
        let b = vocab.choose(rng).unwrap().clone();
        if a != b && out.iter().all(|(k, _)| *k != a) {
            out.push((a, b));
        }
    }
    out
}

/// Token sequence for alignment fuzzing: small vocabulary so matches,
/// swaps and case variants are frequent.
pub fn token_sequence<R: Rng>(rng: &mut R, max_len: usize) -> Vec<String> {
    const POOL: &[&str] = &["ev", "Ev", "bir", "Bir", "gel", "git", ",", ".", "ışık", "Işık", "su"];
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| POOL.choose(rng).unwrap().to_string()).collect()
}

/// Mutates `tokens` with random deletions, insertions, substitutions and swaps.
pub fn perturb<R: Rng>(rng: &mut R, tokens: &[String], vocab: &[String], edits: usize) -> Vec<String> {
    let mut out = tokens.to_vec();
    for _ in 0..edits {
        let op = rng.gen_range(0..4);
        if out.is_empty() || op == 0 {
            let at = rng.gen_range(0..=out.len());
            out.insert(at, vocab.choose(rng).unwrap().clone());
            continue;
        }
        let at = rng.gen_range(0..out.len());
        match op {
            1 => {
                out.remove(at);
            }
            2 => out[at] = vocab.choose(rng).unwrap().clone(),
            _ if at + 1 < out.len() => out.swap(at, at + 1),
            _ => {}
        }
    }
    out
}

/// Valid M2 document: sorted, non-overlapping edits for up to two
/// annotators, occasionally an explicit noop or an edit-free document.
pub fn m2_document<R: Rng>(rng: &mut R) -> gecsynth_core::M2Document {
    use gecsynth_core::{EditSpan, M2Document};
    const TYPES: &[&str] = &["SPELL", "ORTH", "PUNCT", "WO", "OTHER", "R:VERB:TENSE"];
    let vocab: Vec<String> = ["ev", "Işık", "gel", ",", "şey", "'", "ğ"].iter().map(|s| s.to_string()).collect();
    let n = rng.gen_range(0..10);
    let mut doc = M2Document::new((0..n).map(|_| vocab.choose(rng).unwrap().clone()).collect());
    if rng.gen_bool(0.2) {
        return doc;
    }
    let annotators = rng.gen_range(1..=2u32);
    for annotator in 0..annotators {
        let mut pos = 0;
        let mut last_insertion_at = None;
        while pos <= n && rng.gen_bool(0.6) {
            let start = rng.gen_range(pos..=n);
            let end = rng.gen_range(start..=n.min(start + 3));
            let k = if start == end { rng.gen_range(1..3) } else { rng.gen_range(0..3) };
            if start == end && last_insertion_at == Some(start) {
                break;
            }
            let replacement = (0..k).map(|_| vocab.choose(rng).unwrap().clone()).collect();
            doc.edits.push(EditSpan {
                start,
                end,
                replacement,
                error_type: TYPES.choose(rng).unwrap().to_string(),
                annotator,
            });
            last_insertion_at = (start == end).then_some(start);
            pos = if start == end { start } else { end };
        }
    }
    doc.edits.sort_by_key(|e| (e.start, e.end));
    if rng.gen_bool(0.2) && annotators == 2 {
        doc.noop_annotators.push(2);
    }
    doc
}
