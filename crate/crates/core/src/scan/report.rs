use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use super::checkpoint::Hit;
use super::constants::ConstantCheck;
use crate::arith::rational::fraction_string;
use crate::error::{Error, Result};
use crate::lehmer::LehmerVerdict;
use crate::scalar::serde_scalar;

/// Column order shared by the JSONL and CSV outputs.
pub const COLUMNS: [&str; 9] = [
    "type", "n", "exact_k", "min_k", "rules", "lhs", "rhs", "name", "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordType {
    Hit,
    Verdict,
    ConstantCheck,
}

impl RecordType {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordType::Hit => "hit",
            RecordType::Verdict => "verdict",
            RecordType::ConstantCheck => "constant-check",
        }
    }
}

/// One report line. Every key is always present, `null` when it does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    #[serde(rename = "type")]
    pub kind: RecordType,
    #[serde(serialize_with = "serde_scalar::option")]
    pub n: Option<BigUint>,
    pub exact_k: Option<u64>,
    pub min_k: Option<u64>,
    pub rules: Vec<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub name: Option<String>,
    pub status: Option<String>,
}

impl ReportRecord {
    fn empty(kind: RecordType) -> Self {
        ReportRecord {
            kind,
            n: None,
            exact_k: None,
            min_k: None,
            rules: Vec::new(),
            lhs: None,
            rhs: None,
            name: None,
            status: None,
        }
    }

    pub fn from_hit(hit: &Hit) -> Self {
        ReportRecord {
            n: Some(BigUint::from(hit.n)),
            exact_k: Some(hit.exact_k),
            rules: vec![if hit.composite { "composite" } else { "prime" }.to_string()],
            ..Self::empty(RecordType::Hit)
        }
    }

    /// `lhs` is `ψ″` of the witness group and `rhs` its lower bound.
    pub fn from_verdict(v: &LehmerVerdict) -> Self {
        ReportRecord {
            n: Some(v.n.clone()),
            exact_k: v.exact_k,
            min_k: v.min_k,
            rules: v.rules.clone(),
            lhs: v.witness_psi_double_prime.as_ref().map(fraction_string),
            rhs: v.witness_lower_bound.as_ref().map(fraction_string),
            ..Self::empty(RecordType::Verdict)
        }
    }

    /// `lhs` is the computed value and `rhs` the expected one.
    pub fn from_check(c: &ConstantCheck) -> Self {
        ReportRecord {
            rules: vec![c.derivation.clone()],
            lhs: Some(c.computed.clone()),
            rhs: Some(c.expected.clone()),
            name: Some(c.name.clone()),
            status: Some(c.status.as_str().to_string()),
            ..Self::empty(RecordType::ConstantCheck)
        }
    }

    fn csv_row(&self) -> [String; 9] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let num = |v: Option<u64>| v.map(|k| k.to_string()).unwrap_or_default();
        [
            self.kind.as_str().to_string(),
            self.n.as_ref().map(|n| n.to_string()).unwrap_or_default(),
            num(self.exact_k),
            num(self.min_k),
            self.rules.join(";"),
            opt(&self.lhs),
            opt(&self.rhs),
            opt(&self.name),
            opt(&self.status),
        ]
    }

    fn text_line(&self) -> String {
        let mut parts = vec![self.kind.as_str().to_string()];
        if let Some(name) = &self.name {
            parts.push(name.clone());
        }
        if let Some(n) = &self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(k) = self.exact_k {
            parts.push(format!("k={k}"));
        }
        if let Some(k) = self.min_k {
            parts.push(format!("min_k={k}"));
        }
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            parts.push(format!("lhs={l} rhs={r}"));
        }
        if let Some(s) = &self.status {
            parts.push(s.to_uppercase());
        }
        if !self.rules.is_empty() {
            parts.push(format!("[{}]", self.rules.join("; ")));
        }
        parts.join("  ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "jsonl" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            _ => Err(Error::invalid(format!(
                "unknown format {s:?}; expected json, csv or text"
            ))),
        }
    }
}

/// Writes JSON Lines, CSV with a header row, or plain text.
pub fn write_records<W: Write>(
    out: W,
    records: &[ReportRecord],
    format: ReportFormat,
) -> io::Result<()> {
    match format {
        ReportFormat::Json => {
            let mut out = io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS).map_err(io::Error::other)?;
            for r in records {
                w.write_record(r.csv_row()).map_err(io::Error::other)?;
            }
            w.flush()
        }
        ReportFormat::Text => {
            let mut out = io::BufWriter::new(out);
            for r in records {
                writeln!(out, "{}", r.text_line())?;
            }
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_key_order_is_stable() {
        let r = ReportRecord::from_hit(&Hit {
            n: 7,
            exact_k: 1,
            composite: false,
        });
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], ReportFormat::Json).unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert_eq!(
            line,
            "{\"type\":\"hit\",\"n\":7,\"exact_k\":1,\"min_k\":null,\"rules\":[\"prime\"],\
             \"lhs\":null,\"rhs\":null,\"name\":null,\"status\":null}\n"
        );
    }

    #[test]
    fn csv_mirrors_columns() {
        let v = crate::lehmer::lehmer_check(&561u64).unwrap();
        let mut buf = Vec::new();
        write_records(
            &mut buf,
            &[ReportRecord::from_verdict(&v)],
            ReportFormat::Csv,
        )
        .unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), COLUMNS);
        let row = rd.records().next().unwrap().unwrap();
        assert_eq!(&row[0], "verdict");
        assert_eq!(&row[1], "561");
        assert_eq!(&row[3], "4");
        assert!(row[5].contains('/'));
    }

    #[test]
    fn big_n_is_a_string() {
        let mut r = ReportRecord::from_hit(&Hit {
            n: 3,
            exact_k: 1,
            composite: false,
        });
        r.n = Some(BigUint::from(u64::MAX) + 1u8);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], "18446744073709551616");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
