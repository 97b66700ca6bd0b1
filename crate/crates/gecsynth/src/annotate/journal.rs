//! Append-only checkpoint journal, one `id<TAB>status<TAB>corrected` line
//! per finished record.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::Status;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JournalEntry {
    pub status: Status,
    pub corrected: String,
}

/// Reads finished records. A final line without its newline is the trace of
/// an interrupted write and is ignored, as are later duplicates of an id.
/// Returns the entries and the byte length of the intact prefix.
pub fn read_journal(path: &Path) -> Result<(HashMap<String, JournalEntry>, u64)> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((HashMap::new(), 0)),
        Err(e) => return Err(Error::io(path, e)),
    };
    let intact = text.rfind('\n').map_or(0, |i| i + 1);
    let mut entries = HashMap::new();
    for (i, line) in text[..intact].lines().enumerate() {
        let mut fields = line.splitn(3, '\t');
        let (Some(id), Some(status), corrected) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::format(path, i + 1, "expected id<TAB>status<TAB>corrected"));
        };
        let status: Status = status.parse().map_err(|e: String| Error::format(path, i + 1, e))?;
        entries
            .entry(id.to_string())
            .or_insert(JournalEntry { status, corrected: corrected.unwrap_or_default().to_string() });
    }
    Ok((entries, intact as u64))
}

pub struct JournalWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl JournalWriter {
    /// Opens for appending after dropping any torn final line.
    pub fn open(path: &Path, intact_len: u64) -> Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| Error::io(path, e))?;
        if file.metadata().map_err(|e| Error::io(path, e))?.len() > intact_len {
            file.set_len(intact_len).map_err(|e| Error::io(path, e))?;
        }
        Ok(Self { path: path.to_path_buf(), out: BufWriter::new(file) })
    }

    /// Appends one record and flushes it to the OS.
    pub fn append(&mut self, id: &str, status: Status, corrected: &str) -> Result<()> {
        writeln!(self.out, "{id}\t{status}\t{corrected}")
            .and_then(|()| self.out.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}
