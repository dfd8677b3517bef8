use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub n: u64,
    pub exact_k: u64,
    pub composite: bool,
}

/// Progress of a scan over `[lo, hi]`; `next` is the first unscanned value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub lo: u64,
    pub hi: u64,
    pub next: u64,
    pub hits: Vec<Hit>,
    pub schema_version: u32,
}

impl ScanCheckpoint {
    pub fn new(lo: u64, hi: u64) -> Self {
        ScanCheckpoint {
            lo,
            hi,
            next: lo,
            hits: Vec::new(),
            schema_version: SCHEMA_VERSION,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.next > self.hi
    }

    pub fn composite_hits(&self) -> impl Iterator<Item = &Hit> {
        self.hits.iter().filter(|h| h.composite)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "payload schema version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if !(self.lo <= self.next && self.next <= self.hi.saturating_add(1)) {
            return Err(format!(
                "next = {} outside [{}, {}]",
                self.next,
                self.lo,
                self.hi + 1
            ));
        }
        if !self.hits.windows(2).all(|w| w[0].n < w[1].n) {
            return Err("hits are not strictly ascending".into());
        }
        if self.hits.iter().any(|h| h.n < self.lo || h.n >= self.next) {
            return Err("hit outside the scanned part of the range".into());
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema_version: u32,
    crc32: u32,
    payload: ScanCheckpoint,
}

fn payload_crc(cp: &ScanCheckpoint) -> Result<u32> {
    Ok(crc32fast::hash(&serde_json::to_vec(cp)?))
}

/// Writes the checkpoint through a temporary file in the same directory,
/// synced and then renamed over `path`.
pub fn save_checkpoint(path: &Path, cp: &ScanCheckpoint) -> Result<()> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        crc32: payload_crc(cp)?,
        payload: cp.clone(),
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    serde_json::to_writer_pretty(&mut tmp, &envelope)?;
    tmp.write_all(b"\n").map_err(|e| Error::io(tmp.path(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<ScanCheckpoint> {
    let corrupt = |reason: String| Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let envelope: Envelope = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if envelope.schema_version != SCHEMA_VERSION {
        return Err(corrupt(format!(
            "schema version {} (expected {SCHEMA_VERSION})",
            envelope.schema_version
        )));
    }
    let crc = payload_crc(&envelope.payload)?;
    if crc != envelope.crc32 {
        return Err(corrupt(format!(
            "CRC32 mismatch: stored {:08x}, computed {crc:08x}",
            envelope.crc32
        )));
    }
    envelope.payload.validate().map_err(corrupt)?;
    Ok(envelope.payload)
}
