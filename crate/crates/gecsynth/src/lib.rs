//! File formats, parallel drivers, the annotation client and the command
//! line for building synthetic grammatical error correction corpora.

pub mod annotate;
pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod m2;
pub mod pipeline;

pub use error::{Error, Result};
