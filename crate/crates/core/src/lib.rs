//! Core algorithms for building synthetic grammatical-error-correction corpora
//! from organic text and scoring correction systems against M2 annotations.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, parallel
//! drivers and the command line live in the `gecsynth` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod candidates;
pub mod corpus;
pub mod expansion;
pub mod gecscore;
pub mod inserter;
pub mod lexicon;
pub mod morphology;
pub mod text;

pub use candidates::{CandidateConfig, CandidateSet, Generator, Resolution};
pub use corpus::{DocId, Document, WordIndex};
pub use expansion::{ExpansionContext, ExpansionRun, IterationReport};
pub use gecscore::{EditSpan, M2Document, ScoreMode, Scores};
pub use inserter::{ParallelPair, TokenEdit};
pub use lexicon::{Provenance, SpellingDictionary, SpellingEntry};
pub use morphology::{AnalyzabilityOracle, Analyzer};
