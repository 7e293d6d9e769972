use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::HarnessError;

pub const REPORT_COLUMNS: [&str; 8] = [
    "family",
    "n",
    "start",
    "advice_bits",
    "steps_used",
    "completed",
    "bound_checked",
    "bound_value",
];

/// One (instance, start) run. `bound_checked` says whether `steps_used`
/// stayed within `bound_value`, the algorithm's time bound on this instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub n: usize,
    pub start: usize,
    pub advice_bits: usize,
    pub steps_used: usize,
    pub completed: bool,
    pub bound_checked: bool,
    pub bound_value: u64,
}

fn write_rows<W: Write>(rows: &[ReportRow], out: W) -> Result<(), HarnessError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(REPORT_COLUMNS)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn report_to_string(rows: &[ReportRow]) -> Result<String, HarnessError> {
    let mut buf = Vec::new();
    write_rows(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Writes a header line and one line per row.
pub fn emit_report(rows: &[ReportRow], path: &Path) -> Result<(), HarnessError> {
    write_rows(rows, File::create(path)?)
}
