use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};
use core::str::FromStr;

use thiserror::Error;

use super::{M2Document, NOOP_TYPE};

/// What counts as one unit when comparing hypothesis to gold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoreMode {
    /// Span and replacement must both match.
    #[default]
    SpanCorrection,
    /// Span must match.
    SpanDetection,
    /// Each covered source token (or insertion point) is a unit.
    TokenDetection,
}

impl ScoreMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScoreMode::SpanCorrection => "span-correction",
            ScoreMode::SpanDetection => "span-detection",
            ScoreMode::TokenDetection => "token-detection",
        }
    }
}

impl fmt::Display for ScoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "span-correction" => Ok(ScoreMode::SpanCorrection),
            "span-detection" => Ok(ScoreMode::SpanDetection),
            "token-detection" => Ok(ScoreMode::TokenDetection),
            other => Err(alloc::format!(
                "unknown scoring mode `{other}` (expected span-correction, span-detection or token-detection)"
            )),
        }
    }
}

/// True/false positive and false negative counts; a commutative monoid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, rhs: Counts) -> Counts {
        Counts { tp: self.tp + rhs.tp, fp: self.fp + rhs.fp, fn_: self.fn_ + rhs.fn_ }
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, rhs: Counts) {
        *self = *self + rhs;
    }
}

impl core::iter::Sum for Counts {
    fn sum<I: Iterator<Item = Counts>>(iter: I) -> Counts {
        iter.fold(Counts::default(), Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_half: f64,
}

/// F-beta of a precision/recall pair; 0 when both are 0.
pub fn f_beta(precision: f64, recall: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * precision + recall;
    if denom == 0.0 {
        0.0
    } else {
        (1.0 + b2) * precision * recall / denom
    }
}

impl Scores {
    /// Precision is 1 without hypothesis units and recall is 1 without gold
    /// units.
    pub fn from_counts(c: Counts) -> Self {
        let ratio = |num: usize, den: usize| if den == 0 { 1.0 } else { num as f64 / den as f64 };
        let precision = ratio(c.tp, c.tp + c.fp);
        let recall = ratio(c.tp, c.tp + c.fn_);
        Scores { tp: c.tp, fp: c.fp, fn_: c.fn_, precision, recall, f_half: f_beta(precision, recall, 0.5) }
    }

    pub fn counts(&self) -> Counts {
        Counts { tp: self.tp, fp: self.fp, fn_: self.fn_ }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("gold has {gold} documents but hypothesis has {hyp}")]
    LengthMismatch { gold: usize, hyp: usize },
    #[error("source tokens differ at document {index}")]
    SourceMismatch { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Unit<'a> {
    Span(usize, usize),
    Correction(usize, usize, &'a [String]),
}

fn units(doc: &M2Document, mode: ScoreMode) -> BTreeSet<Unit<'_>> {
    let mut out = BTreeSet::new();
    for e in doc.edits_by(0).filter(|e| e.error_type != NOOP_TYPE) {
        match mode {
            ScoreMode::SpanCorrection => {
                out.insert(Unit::Correction(e.start, e.end, &e.replacement));
            }
            ScoreMode::SpanDetection => {
                out.insert(Unit::Span(e.start, e.end));
            }
            ScoreMode::TokenDetection if e.start == e.end => {
                out.insert(Unit::Span(e.start, e.start));
            }
            ScoreMode::TokenDetection => out.extend((e.start..e.end).map(|t| Unit::Span(t, t + 1))),
        }
    }
    out
}

/// Counts for one document pair (annotator 0 only).
pub fn document_counts(gold: &M2Document, hyp: &M2Document, mode: ScoreMode) -> Counts {
    let g = units(gold, mode);
    let h = units(hyp, mode);
    let tp = h.intersection(&g).count();
    Counts { tp, fp: h.len() - tp, fn_: g.len() - tp }
}

/// Corpus-level scores: counts summed over documents, then P/R/F0.5.
pub fn score(gold: &[M2Document], hyp: &[M2Document], mode: ScoreMode) -> Result<Scores, ScoreError> {
    if gold.len() != hyp.len() {
        return Err(ScoreError::LengthMismatch { gold: gold.len(), hyp: hyp.len() });
    }
    let mut total = Counts::default();
    for (index, (g, h)) in gold.iter().zip(hyp).enumerate() {
        if g.source_tokens != h.source_tokens {
            return Err(ScoreError::SourceMismatch { index });
        }
        total += document_counts(g, h, mode);
    }
    Ok(Scores::from_counts(total))
}

/// Per-document counts; callers may reduce them in any order.
pub fn counts_per_document(gold: &[M2Document], hyp: &[M2Document], mode: ScoreMode) -> Result<Vec<Counts>, ScoreError> {
    if gold.len() != hyp.len() {
        return Err(ScoreError::LengthMismatch { gold: gold.len(), hyp: hyp.len() });
    }
    gold.iter()
        .zip(hyp)
        .enumerate()
        .map(|(index, (g, h))| {
            if g.source_tokens == h.source_tokens {
                Ok(document_counts(g, h, mode))
            } else {
                Err(ScoreError::SourceMismatch { index })
            }
        })
        .collect()
}
