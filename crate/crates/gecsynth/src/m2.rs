//! M2 annotation files.
//!
//! ```text
//! S Bu bir cümle .
//! A 1 2|||SPELL|||şu|||REQUIRED|||-NONE-|||0
//!
//! ```
//!
//! A document with no edits is written with the annotator-0 noop line.

use std::fmt::Write as _;
use std::path::Path;

use gecsynth_core::gecscore::{classify, DocumentError, NOOP_TYPE};
use gecsynth_core::text::tokenize_words;
use gecsynth_core::{EditSpan, M2Document, ParallelPair};

use crate::error::{Error, Result};
use crate::formats::{read_text, write_text};

const NONE: &str = "-NONE-";
const REQUIRED: &str = "REQUIRED";

fn push_noop(out: &mut String, annotator: u32) {
    let _ = writeln!(out, "A -1 -1|||{NOOP_TYPE}|||{NONE}|||{REQUIRED}|||{NONE}|||{annotator}");
}

pub fn format_document(out: &mut String, doc: &M2Document) {
    out.push_str("S ");
    out.push_str(&doc.source_tokens.join(" "));
    out.push('\n');
    for e in &doc.edits {
        let replacement = if e.replacement.is_empty() { NONE.to_string() } else { e.replacement.join(" ") };
        let _ = writeln!(
            out,
            "A {} {}|||{}|||{}|||{REQUIRED}|||{NONE}|||{}",
            e.start, e.end, e.error_type, replacement, e.annotator
        );
    }
    if doc.edits.is_empty() && doc.noop_annotators.is_empty() {
        push_noop(out, 0);
    }
    for &a in &doc.noop_annotators {
        push_noop(out, a);
    }
    out.push('\n');
}

/// The inserter's own edits as an annotator-0 document.
pub fn document_from_pair(pair: &ParallelPair) -> M2Document {
    let source_tokens: Vec<String> = tokenize_words(&pair.source).into_iter().map(String::from).collect();
    let edits = pair
        .edits
        .iter()
        .map(|e| {
            let mut span = EditSpan {
                start: e.start,
                end: e.end,
                replacement: e.replacement.clone(),
                error_type: String::new(),
                annotator: 0,
            };
            span.error_type = classify(&span, &source_tokens).as_str().to_string();
            span
        })
        .collect();
    M2Document { source_tokens, edits, noop_annotators: Vec::new() }
}

pub fn format_m2(docs: &[M2Document]) -> String {
    let mut out = String::new();
    for doc in docs {
        format_document(&mut out, doc);
    }
    out
}

pub fn write_m2(docs: &[M2Document], path: &Path) -> Result<()> {
    write_text(path, &format_m2(docs))
}

/// A well-formed document whose edits do not fit its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedDocument {
    /// 0-based position among the file's documents.
    pub index: usize,
    /// 1-based line of the document's `S` line.
    pub line: usize,
    pub error: DocumentError,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct M2File {
    pub documents: Vec<M2Document>,
    pub rejected: Vec<RejectedDocument>,
}

enum Annotation {
    Edit(EditSpan),
    Noop(u32),
}

fn parse_annotation(body: &str) -> std::result::Result<Annotation, String> {
    let fields: Vec<&str> = body.split("|||").collect();
    let [span, error_type, replacement, _required, _comment, annotator] = fields[..] else {
        return Err(format!("expected 6 |||-separated fields, found {}", fields.len()));
    };
    let annotator: u32 = annotator.trim().parse().map_err(|e| format!("bad annotator id: {e}"))?;
    let (start, end) = span.split_once(' ').ok_or("expected `start end`")?;
    if (start, end) == ("-1", "-1") {
        return if error_type == NOOP_TYPE { Ok(Annotation::Noop(annotator)) } else { Err("-1 -1 span on a non-noop edit".into()) };
    }
    let start: usize = start.parse().map_err(|e| format!("bad start offset: {e}"))?;
    let end: usize = end.parse().map_err(|e| format!("bad end offset: {e}"))?;
    let replacement = match replacement {
        NONE | "" => Vec::new(),
        r => r.split(' ').map(String::from).collect(),
    };
    Ok(Annotation::Edit(EditSpan { start, end, replacement, error_type: error_type.to_string(), annotator }))
}

/// Parses M2 text. Malformed lines are errors; documents whose edits are
/// out of range or inconsistent are collected in `rejected`.
pub fn parse_m2(text: &str, path: &Path) -> Result<M2File> {
    let mut file = M2File::default();
    let mut current: Option<(usize, M2Document)> = None;
    let mut index = 0;
    let mut finish = |current: &mut Option<(usize, M2Document)>, file: &mut M2File| {
        if let Some((line, mut doc)) = current.take() {
            if doc.edits.is_empty() && doc.noop_annotators == [0] {
                doc.noop_annotators.clear();
            }
            match doc.validate() {
                Ok(()) => file.documents.push(doc),
                Err(error) => {
                    log::warn!("{}:{line}: document rejected: {error}", path.display());
                    file.rejected.push(RejectedDocument { index, line, error });
                }
            }
            index += 1;
        }
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.is_empty() {
            finish(&mut current, &mut file);
        } else if let Some(rest) = line.strip_prefix('S').filter(|r| r.is_empty() || r.starts_with(' ')) {
            if current.is_some() {
                return Err(Error::format(path, lineno, "`S` line without a preceding blank line"));
            }
            let rest = rest.strip_prefix(' ').unwrap_or(rest);
            let tokens = if rest.is_empty() { Vec::new() } else { rest.split(' ').map(String::from).collect() };
            current = Some((lineno, M2Document::new(tokens)));
        } else if let Some(body) = line.strip_prefix("A ") {
            let Some((_, doc)) = current.as_mut() else {
                return Err(Error::format(path, lineno, "`A` line outside a document"));
            };
            match parse_annotation(body).map_err(|m| Error::format(path, lineno, m))? {
                Annotation::Edit(e) => doc.edits.push(e),
                Annotation::Noop(a) => doc.noop_annotators.push(a),
            }
        } else {
            return Err(Error::format(path, lineno, "expected an `S` or `A` line"));
        }
    }
    finish(&mut current, &mut file);
    Ok(file)
}

pub fn read_m2(path: &Path) -> Result<M2File> {
    parse_m2(&read_text(path)?, path)
}
