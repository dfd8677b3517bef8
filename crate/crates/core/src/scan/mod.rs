//! Checkpointed range scans for `φ(n) | n - 1`, batch verdicts over
//! Carmichael numbers, the constant regression suite and report output.

mod batch;
mod checkpoint;
mod constants;
mod report;

use std::path::Path;

use rayon::prelude::*;

use crate::arith::sieve::SegmentSieve;
use crate::error::{Error, Result};
use crate::lehmer::lehmer_check;

pub use batch::{batch_verdicts, carmichael_verdicts, BatchSummary, DEFAULT_BATCH_LIMIT};
pub use checkpoint::{load_checkpoint, save_checkpoint, Hit, ScanCheckpoint, SCHEMA_VERSION};
pub use constants::{verify_paper_constants, CheckStatus, ConstantCheck};
pub use report::{write_records, RecordType, ReportFormat, ReportRecord, COLUMNS};

/// Default upper end accepted by [`scan_totient_divisibility`].
pub const DEFAULT_SCAN_LIMIT: u64 = 100_000_000;
/// Hard ceiling on [`ScanOptions::limit`].
pub const MAX_SCAN_LIMIT: u64 = 1_000_000_000;
pub const DEFAULT_SCAN_SEGMENT: u64 = 1 << 16;
/// Environment variable read by [`default_jobs`].
pub const JOBS_ENV: &str = "LEHMER_JOBS";

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Worker threads; 0 means [`default_jobs`].
    pub jobs: usize,
    pub segment: u64,
    pub limit: u64,
    /// Stop, with the checkpoint saved, after this many segments.
    pub stop_after: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: 0,
            segment: DEFAULT_SCAN_SEGMENT,
            limit: DEFAULT_SCAN_LIMIT,
            stop_after: None,
        }
    }
}

/// Worker count from `LEHMER_JOBS`, else the available parallelism.
pub fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Scans `[lo, hi]` for `n` with `φ(n) | n - 1`.
///
/// With a checkpoint path, progress is loaded from it when the file exists
/// and saved after every batch of segments. The returned checkpoint is
/// complete unless `opts.stop_after` cut the scan short. A composite hit
/// saves progress up to and including it and returns [`Error::CompositeHit`].
pub fn scan_totient_divisibility(
    lo: u64,
    hi: u64,
    checkpoint: Option<&Path>,
    opts: &ScanOptions,
) -> Result<ScanCheckpoint> {
    let limit = opts.limit.min(MAX_SCAN_LIMIT);
    if lo < 2 || lo > hi || hi > limit {
        return Err(Error::invalid(format!(
            "invalid range [{lo}, {hi}]; need 2 <= lo <= hi <= {limit}"
        )));
    }
    let mut cp = match checkpoint {
        Some(path) if path.exists() => {
            let cp = load_checkpoint(path)?;
            if (cp.lo, cp.hi) != (lo, hi) {
                return Err(Error::invalid(format!(
                    "checkpoint {} covers [{}, {}], not [{lo}, {hi}]",
                    path.display(),
                    cp.lo,
                    cp.hi
                )));
            }
            cp
        }
        _ => ScanCheckpoint::new(lo, hi),
    };
    let jobs = if opts.jobs == 0 {
        default_jobs()
    } else {
        opts.jobs
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {jobs} workers: {e}")))?;
    let segment = opts.segment.max(1);
    let batch_len = (jobs * 4).max(1);
    let sieve = SegmentSieve::new(hi);
    let mut budget = opts.stop_after;

    while !cp.is_complete() {
        let mut starts = Vec::with_capacity(batch_len);
        let mut s = cp.next;
        while starts.len() < batch_len && s <= hi && budget != Some(starts.len()) {
            starts.push(s);
            s = s.saturating_add(segment);
        }
        if starts.is_empty() {
            break;
        }
        let batch_end = (starts[starts.len() - 1].saturating_add(segment - 1)).min(hi);
        let found: Vec<Vec<Hit>> = pool.install(|| {
            starts
                .par_iter()
                .map(|&start| {
                    scan_segment(&sieve, start, start.saturating_add(segment - 1).min(hi))
                })
                .collect()
        });
        if let Some(b) = budget.as_mut() {
            *b -= starts.len();
        }
        let hits: Vec<Hit> = found.into_iter().flatten().collect();
        if let Some(pos) = hits.iter().position(|h| h.composite) {
            let hit = hits[pos].clone();
            cp.hits.extend(hits.into_iter().take(pos + 1));
            cp.next = hit.n + 1;
            if let Some(path) = checkpoint {
                save_checkpoint(path, &cp)?;
            }
            let report = match lehmer_check(&hit.n) {
                Ok(v) => serde_json::to_string_pretty(&v)?,
                Err(e) => format!("lehmer_check failed: {e}"),
            };
            return Err(Error::CompositeHit {
                n: hit.n,
                exact_k: hit.exact_k,
                report,
            });
        }
        cp.hits.extend(hits);
        cp.next = batch_end + 1;
        if let Some(path) = checkpoint {
            save_checkpoint(path, &cp)?;
        }
        if budget == Some(0) {
            break;
        }
    }
    Ok(cp)
}

fn scan_segment(sieve: &SegmentSieve, lo: u64, hi: u64) -> Vec<Hit> {
    (lo..=hi)
        .zip(sieve.totients(lo, hi))
        .filter(|&(n, phi)| (n - 1) % phi == 0)
        .map(|(n, phi)| Hit {
            n,
            exact_k: (n - 1) / phi,
            composite: phi != n - 1,
        })
        .collect()
}
