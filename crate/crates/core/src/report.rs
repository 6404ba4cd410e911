//! Flat per-run records for batch output.

use serde::{Deserialize, Serialize};

/// One solver run on one instance, optionally scored against an oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: usize,
    /// FNV-1a hash of the canonical instance, as 16 hex digits.
    pub hash: String,
    pub algorithm: String,
    pub trial: usize,
    pub seed: u64,
    pub budget: i64,
    pub epsilon: Option<String>,
    pub delta: Option<f64>,
    pub k: Option<usize>,
    pub b: Option<usize>,
    pub objective: i64,
    pub spend: i64,
    pub wall_ms: Option<f64>,
    pub optimum: Option<i64>,
    pub objective_ok: Option<bool>,
    pub budget_ok: Option<bool>,
}

impl RunRecord {
    pub fn success(&self) -> Option<bool> {
        Some(self.objective_ok? && self.budget_ok?)
    }
}

pub fn write_csv<W: std::io::Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<RunRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn hash_hex(hash: u64) -> String {
    format!("{hash:016x}")
}
