//! CSV and JSON emission for census records.

use super::count::CensusRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "n,H,mode,seed,label,count,runtime_ms";

pub fn records_to_csv(records: &[CensusRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    for r in records {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        w.write_record([
            r.n.to_string(),
            r.h.to_string(),
            r.mode.clone(),
            seed,
            r.label.clone(),
            r.count.to_string(),
            r.runtime_ms.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Parses the output of [`records_to_csv`].
pub fn records_from_csv(text: &str) -> Result<Vec<CensusRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let headers = rd.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Parse(format!("expected header `{CSV_HEADER}`")));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| -> Result<u64> { field(i).parse().map_err(|_| Error::Parse(format!("bad number `{}`", field(i)))) };
        out.push(CensusRecord {
            n: num(0)? as usize,
            h: field(1).parse().map_err(|_| Error::Parse(format!("bad height `{}`", field(1))))?,
            mode: field(2).to_string(),
            seed: if field(3).is_empty() { None } else { Some(num(3)?) },
            label: field(4).to_string(),
            count: num(5)?,
            runtime_ms: num(6)?,
        });
    }
    Ok(out)
}

pub fn records_to_json(records: &[CensusRecord]) -> Result<String> {
    serde_json::to_string_pretty(records).map_err(|e| Error::Internal(format!("json: {e}")))
}
