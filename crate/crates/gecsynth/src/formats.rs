//! Plain-text file formats: corpora, word index, spelling dictionary,
//! lexicon, suffix rules, expansion report and parallel TSV.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use gecsynth_core::corpus::{corpus_from_texts, DocId, Document, WordIndex};
use gecsynth_core::expansion::IterationReport;
use gecsynth_core::lexicon::{InsertOutcome, Provenance, SpellingDictionary, SpellingEntry};
use gecsynth_core::morphology::{parse_suffix_rules, SuffixRule};
use gecsynth_core::text::{fold, normalize};
use serde::Deserialize;

use crate::error::{Error, Result};

pub const REPORT_HEADER: &str = "iteration\tdict_size\textracted_texts\tdistinct_words\tdict_delta";

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Deserialize)]
struct JsonDoc {
    text: String,
}

fn is_jsonl(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("jsonl" | "ndjson"))
}

/// Raw text units: one per line, or the `text` field of each JSON line for
/// `.jsonl` files.
pub fn read_corpus_units(path: &Path) -> Result<Vec<String>> {
    let text = read_text(path)?;
    if !is_jsonl(path) {
        return Ok(text.lines().map(String::from).collect());
    }
    let mut units = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let doc: JsonDoc = serde_json::from_str(line).map_err(|e| Error::format(path, i + 1, e.to_string()))?;
        units.push(doc.text);
    }
    Ok(units)
}

/// Normalized corpus; units empty after normalization are dropped.
pub fn read_corpus(path: &Path) -> Result<Vec<Document>> {
    Ok(corpus_from_texts(read_corpus_units(path)?))
}

/// One abbreviation per line; blank lines and `#` comments ignored.
pub fn read_abbreviations(path: &Path) -> Result<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

pub fn format_index(index: &WordIndex) -> String {
    let mut out = String::new();
    for (word, ids) in index.iter() {
        out.push_str(word);
        out.push('\t');
        for (i, id) in ids.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{id}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_index(text: &str, path: &Path) -> Result<WordIndex> {
    let mut rows: Vec<(String, Vec<DocId>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let bad = |m: &str| Error::format(path, i + 1, m);
        let (word, ids) = line.split_once('\t').ok_or_else(|| bad("expected word<TAB>ids"))?;
        let ids = ids
            .split(',')
            .map(|s| s.parse::<DocId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(&format!("bad document id: {e}")))?;
        if rows.last().is_some_and(|(prev, _)| prev.as_str() >= word) {
            return Err(bad("words are not in ascending order"));
        }
        rows.push((word.to_string(), ids));
    }
    WordIndex::from_entries(rows).map_err(|w| Error::Data(format!("{}: ids for {w:?} not ascending", path.display())))
}

pub fn read_index(path: &Path) -> Result<WordIndex> {
    parse_index(&read_text(path)?, path)
}

pub fn format_dictionary(dict: &SpellingDictionary) -> String {
    let mut out = String::new();
    for e in dict.entries() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", e.key(), e.correct_phrase(), e.provenance, e.iteration);
    }
    out
}

/// A row whose key was already loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyConflict {
    /// 1-based row number of the ignored row.
    pub line: usize,
    pub key: String,
    pub kept: String,
    pub ignored: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DictionaryLoad {
    pub dictionary: SpellingDictionary,
    /// Same key, different correction; the first row wins.
    pub conflicts: Vec<KeyConflict>,
    /// Same key and correction repeated.
    pub duplicates: usize,
}

/// Parses `incorrect<TAB>correct<TAB>provenance<TAB>iteration` rows.
/// Fields are NFC-normalized; any malformed row is an error.
pub fn parse_dictionary(text: &str, path: &Path) -> Result<DictionaryLoad> {
    let mut load = DictionaryLoad::default();
    for (i, line) in text.lines().enumerate() {
        let bad = |m: String| Error::format(path, i + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        let [incorrect, correct, provenance, iteration] = fields[..] else {
            return Err(bad(format!("expected 4 tab-separated fields, found {}", fields.len())));
        };
        let provenance: Provenance = provenance.parse().map_err(|e| bad(format!("{e}")))?;
        let iteration: u32 = iteration.parse().map_err(|e| bad(format!("bad iteration: {e}")))?;
        let entry = SpellingEntry::from_phrases(&normalize(incorrect), &normalize(correct), provenance, iteration)
            .map_err(|e| bad(e.to_string()))?;
        let key = entry.key();
        match load.dictionary.insert(entry.clone()).map_err(|e| bad(e.to_string()))? {
            InsertOutcome::Added => {}
            InsertOutcome::Duplicate => load.duplicates += 1,
            InsertOutcome::Conflict => {
                let kept = load.dictionary.get(&key).map(SpellingEntry::correct_phrase).unwrap_or_default();
                log::warn!("{}:{}: conflicting correction for {key:?} ignored", path.display(), i + 1);
                load.conflicts.push(KeyConflict { line: i + 1, key, kept, ignored: entry.correct_phrase() });
            }
        }
    }
    Ok(load)
}

pub fn load_dictionary(path: &Path) -> Result<DictionaryLoad> {
    parse_dictionary(&read_text(path)?, path)
}

pub fn save_dictionary(dict: &SpellingDictionary, path: &Path) -> Result<()> {
    write_text(path, &format_dictionary(dict))
}

/// Folded, deduplicated lexicon words, one per line.
pub fn load_lexicon(path: &Path) -> Result<Vec<String>> {
    let mut words: Vec<String> = read_text(path)?
        .lines()
        .map(|l| fold(&normalize(l)))
        .filter(|w| !w.is_empty() && !w.starts_with('#'))
        .collect();
    words.sort();
    words.dedup();
    Ok(words)
}

pub fn load_suffix_rules(path: &Path) -> Result<Vec<SuffixRule>> {
    parse_suffix_rules(&read_text(path)?).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

pub fn format_report(reports: &[IterationReport]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.iteration, r.dict_size, r.extracted_texts, r.distinct_words, r.dict_delta
        );
    }
    out
}

pub fn parse_report(text: &str, path: &Path) -> Result<Vec<IterationReport>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, REPORT_HEADER)) => {}
        _ => return Err(Error::format(path, 1, "missing report header")),
    }
    lines
        .map(|(i, line)| {
            let n: Vec<usize> = line
                .split('\t')
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| Error::format(path, i + 1, format!("{e}")))?;
            let [iteration, dict_size, extracted_texts, distinct_words, dict_delta] = n[..] else {
                return Err(Error::format(path, i + 1, "expected 5 columns"));
            };
            Ok(IterationReport { iteration, dict_size, extracted_texts, distinct_words, dict_delta })
        })
        .collect()
}

pub fn format_parallel<S: AsRef<str>, T: AsRef<str>>(pairs: impl IntoIterator<Item = (S, T)>) -> String {
    let mut out = String::new();
    for (s, t) in pairs {
        let _ = writeln!(out, "{}\t{}", s.as_ref(), t.as_ref());
    }
    out
}

pub fn parse_parallel(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let (s, t) = line
                .split_once('\t')
                .filter(|(_, t)| !t.contains('\t'))
                .ok_or_else(|| Error::format(path, i + 1, "expected source<TAB>corrected"))?;
            Ok((s.to_string(), t.to_string()))
        })
        .collect()
}

pub fn read_parallel(path: &Path) -> Result<Vec<(String, String)>> {
    parse_parallel(&read_text(path)?, path)
}

pub fn format_lines<S: AsRef<str>>(lines: impl IntoIterator<Item = S>) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(l.as_ref());
        out.push('\n');
    }
    out
}
