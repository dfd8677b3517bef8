use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::report::{write_records, ReportFormat, ReportRecord};
use crate::carmichael::carmichael_in_range;
use crate::error::{Error, Result};
use crate::lehmer::{lehmer_check, LehmerVerdict};

/// Largest bound accepted by [`batch_verdicts`].
pub const DEFAULT_BATCH_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub bound: u64,
    pub path: PathBuf,
    pub count: usize,
    /// Number of Carmichael numbers per proven `min_k`.
    pub min_k_distribution: BTreeMap<u64, usize>,
}

/// Verdicts for every Carmichael number up to `bound`, ascending.
pub fn carmichael_verdicts(bound: u64) -> Result<Vec<LehmerVerdict>> {
    if bound > DEFAULT_BATCH_LIMIT {
        return Err(Error::invalid(format!(
            "bound {bound} exceeds {DEFAULT_BATCH_LIMIT}"
        )));
    }
    if bound < 2 {
        return Ok(Vec::new());
    }
    carmichael_in_range(2, bound)?
        .into_par_iter()
        .map(|n| lehmer_check(&n))
        .collect()
}

/// Writes one verdict record per Carmichael number up to `bound` to `out`.
pub fn batch_verdicts(bound: u64, out: &Path, format: ReportFormat) -> Result<BatchSummary> {
    let verdicts = carmichael_verdicts(bound)?;
    let records: Vec<ReportRecord> = verdicts.iter().map(ReportRecord::from_verdict).collect();
    let file = File::create(out).map_err(|e| Error::io(out, e))?;
    write_records(&file, &records, format).map_err(|e| Error::io(out, e))?;
    file.sync_all().map_err(|e| Error::io(out, e))?;
    let mut min_k_distribution = BTreeMap::new();
    for v in &verdicts {
        if let Some(k) = v.min_k {
            *min_k_distribution.entry(k).or_insert(0) += 1;
        }
    }
    Ok(BatchSummary {
        bound,
        path: out.to_path_buf(),
        count: verdicts.len(),
        min_k_distribution,
    })
}
