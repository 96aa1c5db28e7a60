use std::io::Write;

use serde::Serialize;

use super::HarnessError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope of every JSON report: seed, crate version, effective config and
/// the result itself.
#[derive(Debug, Clone, Serialize)]
pub struct Meta<C: Serialize, R: Serialize> {
    pub seed: u64,
    pub version: &'static str,
    pub config: C,
    pub result: R,
}

impl<C: Serialize, R: Serialize> Meta<C, R> {
    pub fn new(seed: u64, config: C, result: R) -> Meta<C, R> {
        Meta { seed, version: VERSION, config, result }
    }
}

/// Writes a header and rows as CSV.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| HarnessError::Output(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    w.flush().map_err(|e| HarnessError::Output(e.to_string()))
}
